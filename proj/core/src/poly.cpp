// Copyright 2026 The ellhyp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ellhyp/poly.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace ellhyp {

namespace {

constexpr Real kEvalZeroTol = 1e-12;

bool nearly_zero_at(const Polynomial& p, Scalar z) {
  const Real s = p.scale_at(z);
  return s == 0.0 || std::abs(p(z)) <= kEvalZeroTol * s;
}

}  // namespace

Polynomial::Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Polynomial::Polynomial(std::initializer_list<Scalar> coeffs) : coeffs_(coeffs) { normalize(); }

Polynomial Polynomial::constant(Scalar c) { return Polynomial(std::vector<Scalar>{c}); }

Polynomial Polynomial::monomial(int power, Scalar c) {
  std::vector<Scalar> v(static_cast<size_t>(power) + 1, Scalar{});
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(std::span<const Scalar> roots, Scalar lead) {
  Polynomial p = constant(lead);
  for (Scalar r : roots) p *= Polynomial{-r, 1.0};
  return p;
}

void Polynomial::normalize() {
  Real m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  if (m == 0.0) {
    coeffs_.clear();
    return;
  }
  while (!coeffs_.empty() && std::abs(coeffs_.back()) <= kNormalizeTolerance * m) coeffs_.pop_back();
}

Scalar Polynomial::operator[](int i) const noexcept {
  return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<size_t>(i)] : Scalar{};
}

Scalar Polynomial::leading() const noexcept { return coeffs_.empty() ? Scalar{} : coeffs_.back(); }

Scalar Polynomial::operator()(Scalar z) const noexcept {
  Scalar acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Scalar> d(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<Real>(i) * coeffs_[i];
  return Polynomial(std::move(d));
}

Real Polynomial::max_abs_coeff() const noexcept {
  Real m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Real Polynomial::scale_at(Scalar z) const noexcept {
  const Real r = std::abs(z);
  Real acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

Polynomial Polynomial::deflate(Scalar root) const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Scalar> q(coeffs_.size() - 1);
  Scalar acc{};
  for (size_t i = coeffs_.size() - 1; i >= 1; --i) {
    acc = acc * root + coeffs_[i];
    q[i - 1] = acc;
  }
  return Polynomial(std::move(q));
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  normalize();
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<Scalar> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, Scalar{});
  for (size_t i = 0; i < lhs.coeffs_.size(); ++i)
    for (size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) { return *this = *this * rhs; }

Polynomial& Polynomial::operator*=(Scalar s) {
  for (auto& c : coeffs_) c *= s;
  normalize();
  return *this;
}

PolyDivision divmod(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw Error(ErrorCode::ZeroDivisor, "division by the zero polynomial");
  if (num.degree() < den.degree()) return {Polynomial{}, num};
  std::vector<Scalar> r(num.coeffs().begin(), num.coeffs().end());
  const int dn = den.degree();
  std::vector<Scalar> q(static_cast<size_t>(num.degree() - dn) + 1, Scalar{});
  const Scalar lead = den.leading();
  for (int k = num.degree() - dn; k >= 0; --k) {
    const Scalar t = r[static_cast<size_t>(k + dn)] / lead;
    q[static_cast<size_t>(k)] = t;
    for (int j = 0; j <= dn; ++j) r[static_cast<size_t>(k + j)] -= t * den[j];
  }
  r.resize(static_cast<size_t>(dn));
  // Remainder terms are the residue of cancellations; judge them against num.
  const Real cut = kNormalizeTolerance * num.max_abs_coeff();
  while (!r.empty() && std::abs(r.back()) <= cut) r.pop_back();
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

Scalar newton_polish(const Polynomial& p, Scalar z, int max_iter) {
  const Polynomial dp = p.derivative();
  Scalar best = z;
  Real best_res = std::abs(p(z));
  for (int it = 0; it < max_iter && best_res > 0.0; ++it) {
    const Scalar d = dp(z);
    if (d == Scalar{}) break;
    z -= p(z) / d;
    const Real res = std::abs(p(z));
    if (res < best_res) {
      best = z;
      best_res = res;
    } else if (res > 4.0 * best_res) {
      break;
    }
  }
  return best;
}

std::pair<Scalar, Scalar> quadratic_roots(Scalar a, Scalar b, Scalar c) {
  const Scalar s = std::sqrt(b * b - 4.0 * a * c);
  // Pick the sign that avoids cancellation, then recover the partner from c/a.
  const Scalar minus = -b - s;
  const Scalar plus = -b + s;
  if (std::abs(minus) >= std::abs(plus)) {
    const Scalar r1 = minus / (2.0 * a);
    const Scalar r2 = (minus == Scalar{}) ? Scalar{} : (2.0 * c) / minus;
    return {r1, r2};
  }
  const Scalar r2 = plus / (2.0 * a);
  const Scalar r1 = (2.0 * c) / plus;
  return {r1, r2};
}

std::vector<Scalar> roots(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) throw Error(ErrorCode::ConstantPolynomial, "root finding needs degree >= 1");
  if (n == 1) return {-p[0] / p[1]};
  if (n == 2) {
    auto [r1, r2] = quadratic_roots(p[2], p[1], p[0]);
    return {newton_polish(p, r1), newton_polish(p, r2)};
  }
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  const Scalar lead = p.leading();
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -p[i] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<Scalar> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(newton_polish(p, es.eigenvalues()[i]));
  return out;
}

RationalFunction::RationalFunction(Polynomial numer)
    : numer_(std::move(numer)), denom_(Polynomial::constant(1.0)) {}

RationalFunction::RationalFunction(Polynomial numer, Polynomial denom)
    : numer_(std::move(numer)), denom_(std::move(denom)) {
  if (denom_.is_zero()) throw Error(ErrorCode::ZeroDivisor, "rational function with zero denominator");
}

Scalar RationalFunction::operator()(Scalar z) const {
  Polynomial n = numer_;
  Polynomial d = denom_;
  while (d.degree() >= 1 && nearly_zero_at(d, z)) {
    if (!nearly_zero_at(n, z)) throw Error(ErrorCode::PoleEvaluation, "non-removable pole", std::nullopt, z);
    if (n.is_zero()) return Scalar{};
    n = n.deflate(z);
    d = d.deflate(z);
  }
  return n(z) / d(z);
}

RationalFunction RationalFunction::operator-() const { return {-numer_, denom_}; }

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return {a.numer_ * b.denom_ + b.numer_ * a.denom_, a.denom_ * b.denom_};
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return {a.numer_ * b.numer_, a.denom_ * b.denom_};
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.numer_.is_zero()) throw Error(ErrorCode::ZeroDivisor, "division by the zero rational function");
  return {a.numer_ * b.denom_, a.denom_ * b.numer_};
}

RationalFunction operator/(const Polynomial& num, const Polynomial& den) { return {num, den}; }

}  // namespace ellhyp
