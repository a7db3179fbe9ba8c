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


#include "ellhyp/curve.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/SVD>

namespace ellhyp {

namespace {

constexpr Real kLeadTol = 1e-13;
constexpr Real kTangentTol = 1e-12;
constexpr Real kOnCurveTol = 1e-8;
constexpr Real kBranchTol = 1e-13;

using Grid = BiquadraticCurve::Grid;

/// alpha + beta x + gamma y
struct Linear2 {
  Scalar alpha, beta, gamma;
};

Grid product(const Linear2& l, const Linear2& r) {
  Grid g{};
  g[0][0] = l.alpha * r.alpha;
  g[1][0] = l.alpha * r.beta + l.beta * r.alpha;
  g[0][1] = l.alpha * r.gamma + l.gamma * r.alpha;
  g[2][0] = l.beta * r.beta;
  g[1][1] = l.beta * r.gamma + l.gamma * r.beta;
  g[0][2] = l.gamma * r.gamma;
  return g;
}

RootPair slice_roots(const std::array<Polynomial, 3>& view, Scalar at, std::optional<Scalar> hint) {
  const Scalar a = view[2](at);
  const Scalar b = view[1](at);
  const Scalar c = view[0](at);
  const Scalar s = std::sqrt(b * b - 4.0 * a * c);
  auto [lo, hi] = quadratic_roots(a, b, c);
  RootPair rp{lo, hi, at, s};
  if (hint && std::abs(hi - *hint) < std::abs(lo - *hint)) {
    std::swap(rp.lo, rp.hi);
    rp.sqrt_disc = -s;
  }
  return rp;
}

bool lead_negligible(const std::array<Polynomial, 3>& view, Scalar at) {
  const Real s = std::max({view[0].scale_at(at), view[1].scale_at(at), view[2].scale_at(at)});
  return std::abs(view[2](at)) <= kLeadTol * s;
}

}  // namespace

BiquadraticCurve::BiquadraticCurve(const Grid& c) : c_(c) {
  for (int j = 0; j < 3; ++j)
    xv_[static_cast<size_t>(j)] = Polynomial{c_[0][j], c_[1][j], c_[2][j]};
  for (int i = 0; i < 3; ++i)
    yv_[static_cast<size_t>(i)] = Polynomial{c_[i][0], c_[i][1], c_[i][2]};
  if (xv_[2].is_zero()) throw Error(ErrorCode::ValidationError, "curve: X_2 vanishes identically");
  if (yv_[2].is_zero()) throw Error(ErrorCode::ValidationError, "curve: Y_2 vanishes identically");
  p_ = xv_[1] * xv_[1] - 4.0 * xv_[0] * xv_[2];
  q_ = yv_[1] * yv_[1] - 4.0 * yv_[0] * yv_[2];
  if (p_.is_zero()) throw Error(ErrorCode::ValidationError, "curve: P vanishes identically (double line)");
}

Scalar BiquadraticCurve::operator()(Scalar x, Scalar y) const noexcept {
  return xv_[0](x) + y * (xv_[1](x) + y * xv_[2](x));
}

Scalar BiquadraticCurve::dFdx(Scalar x, Scalar y) const noexcept {
  return yv_[1](y) + 2.0 * x * yv_[2](y);
}

Scalar BiquadraticCurve::dFdy(Scalar x, Scalar y) const noexcept {
  return xv_[1](x) + 2.0 * y * xv_[2](x);
}

Real BiquadraticCurve::scale_at(Scalar x, Scalar y) const noexcept {
  const Real ax = std::abs(x), ay = std::abs(y);
  Real s = 0.0, px = 1.0;
  for (int i = 0; i < 3; ++i, px *= ax) {
    Real py = 1.0;
    for (int j = 0; j < 3; ++j, py *= ay) s += std::abs(c_[i][j]) * px * py;
  }
  return s;
}

Real BiquadraticCurve::coeff_scale() const noexcept {
  Real m = 0.0;
  for (const auto& row : c_)
    for (const auto& v : row) m = std::max(m, std::abs(v));
  return m;
}

bool BiquadraticCurve::is_branch_point(Scalar x) const noexcept {
  const Scalar a = xv_[2](x), b = xv_[1](x), c = xv_[0](x);
  const Real mag = std::norm(b) + 4.0 * std::abs(a) * std::abs(c);
  return std::abs(b * b - 4.0 * a * c) <= kBranchTol * mag;
}

bool BiquadraticCurve::is_leading_x_negligible(Scalar x) const noexcept { return lead_negligible(xv_, x); }
bool BiquadraticCurve::is_leading_y_negligible(Scalar y) const noexcept { return lead_negligible(yv_, y); }

RootPair BiquadraticCurve::y_roots(Scalar x, std::optional<Scalar> hint) const {
  if (lead_negligible(xv_, x))
    throw Error(ErrorCode::LeadingCoefficientVanishes, "X_2(x) = 0, one y-root at infinity", std::nullopt, x);
  return slice_roots(xv_, x, hint);
}

RootPair BiquadraticCurve::x_roots(Scalar y, std::optional<Scalar> hint) const {
  if (lead_negligible(yv_, y))
    throw Error(ErrorCode::LeadingCoefficientVanishes, "Y_2(y) = 0, one x-root at infinity", std::nullopt, y);
  return slice_roots(yv_, y, hint);
}

Scalar BiquadraticCurve::dy_dx(Scalar x, Scalar y) const {
  const Real s = scale_at(x, y);
  if (std::abs((*this)(x, y)) > kOnCurveTol * s)
    throw Error(ErrorCode::OffCurve, "dy/dx requested off the curve", std::nullopt, x);
  const Scalar fy = dFdy(x, y);
  if (std::abs(fy) <= kTangentTol * s)
    throw Error(ErrorCode::VerticalTangent, "F_y vanishes (branch point)", std::nullopt, x);
  return -dFdx(x, y) / fy;
}

BiquadraticCurve BiquadraticCurve::transposed() const {
  Grid t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[j][i] = c_[i][j];
  return BiquadraticCurve(t);
}

BiquadraticCurve linear_curve(Scalar x0, Scalar y0, Scalar h) {
  const Scalar s = y0 - x0;
  return BiquadraticCurve(product({-s, -1.0, 1.0}, {-s - h, -1.0, 1.0}));
}

BiquadraticCurve geometric_curve(Scalar a, Scalar b, Scalar u, Scalar v, Scalar q) {
  // b v (Y' - X')(Y' - q X') with X' = (x - a)/b, Y' = (y - u)/v, cleared of denominators.
  return BiquadraticCurve(product({v * a - b * u, -v, b}, {q * v * a - b * u, -q * v, b}));
}

BiquadraticCurve askey_wilson_curve(Scalar a, Scalar b, Scalar c, Scalar q) {
  const Scalar r = std::sqrt(q);
  const Scalar k = r + 1.0 / r;
  const Scalar m = b * c * (r - 1.0 / r) * (r - 1.0 / r);
  // (y-a)^2 - k (x-a)(y-a) + (x-a)^2 + m
  Grid g{};
  g[0][2] = 1.0;
  g[2][0] = 1.0;
  g[1][1] = -k;
  g[0][1] = -2.0 * a + k * a;
  g[1][0] = -2.0 * a + k * a;
  g[0][0] = 2.0 * a * a - k * a * a + m;
  return BiquadraticCurve(g);
}

CurveFit fit_curve(std::span<const std::pair<Scalar, Scalar>> points) {
  if (points.size() < 9) throw Error(ErrorCode::ValidationError, "fit_curve needs at least 9 points");
  Eigen::MatrixXcd design(static_cast<Eigen::Index>(points.size()), 9);
  for (size_t r = 0; r < points.size(); ++r) {
    const auto [x, y] = points[r];
    Real norm = 0.0;
    std::array<Scalar, 9> row{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        row[static_cast<size_t>(3 * i + j)] = std::pow(x, i) * std::pow(y, j);
        norm = std::max(norm, std::abs(row[static_cast<size_t>(3 * i + j)]));
      }
    for (int k = 0; k < 9; ++k) design(static_cast<Eigen::Index>(r), k) = row[static_cast<size_t>(k)] / norm;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(design, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Eigen::VectorXcd nullv = svd.matrixV().col(8);
  Eigen::Index imax = 0;
  nullv.cwiseAbs().maxCoeff(&imax);
  const Scalar norm = nullv(imax);
  Grid g{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Scalar v = nullv(3 * i + j) / norm;
      if (std::abs(v) < 1e-14) v = 0.0;
      g[i][j] = v;
    }
  return {BiquadraticCurve(g), sv(8) / sv(0)};
}

}  // namespace ellhyp
