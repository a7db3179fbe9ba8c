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


#include "ellhyp/diffops.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/SVD>

namespace ellhyp {

namespace {

constexpr Real kSpotTol = 1e-8;
constexpr Real kPoleTol = 1e-15;

bool finite(Scalar z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

RootPair roots_off_branch(const BiquadraticCurve& curve, Scalar x) {
  if (curve.is_branch_point(x))
    throw Error(ErrorCode::BranchPointEvaluation, "D evaluated at a branch point", std::nullopt, x);
  return curve.y_roots(x);
}

/// Scaled polynomials for the power sums and the difference quotients.
/// S_d = s_d X_2^(d-1) with s_d = (u^d - v^d)/(u - v);
/// P_d = p_d X_2^d with p_d = u^d + v^d.
struct SymmetricTables {
  std::vector<Polynomial> S, P, X0pow, X2pow;
};

SymmetricTables symmetric_tables(const BiquadraticCurve& curve, int deg) {
  const Polynomial& X0 = curve.X(0);
  const Polynomial& X1 = curve.X(1);
  const Polynomial& X2 = curve.X(2);
  const Polynomial X0X2 = X0 * X2;
  SymmetricTables t;
  const size_t n = static_cast<size_t>(deg) + 2;
  t.S.resize(n);
  t.P.resize(n);
  t.X0pow.resize(n);
  t.X2pow.resize(n);
  t.S[0] = Polynomial{};
  t.S[1] = Polynomial::constant(1.0);
  t.P[0] = Polynomial::constant(2.0);
  t.P[1] = -X1;
  for (size_t d = 1; d + 1 < n; ++d) {
    t.S[d + 1] = -X1 * t.S[d] - (d >= 1 ? X0X2 * t.S[d - 1] : Polynomial{});
    t.P[d + 1] = -X1 * t.P[d] - X0X2 * t.P[d - 1];
  }
  t.X0pow[0] = t.X2pow[0] = Polynomial::constant(1.0);
  for (size_t k = 1; k < n; ++k) {
    t.X0pow[k] = t.X0pow[k - 1] * X0;
    t.X2pow[k] = t.X2pow[k - 1] * X2;
  }
  return t;
}

RationalFunction symbolic_D(const BiquadraticCurve& curve, const RationalFunction& f) {
  const Polynomial& N = f.numer();
  const Polynomial& M = f.denom();
  const int n = std::max(N.degree(), 0);
  const int m = std::max(M.degree(), 0);
  const int top = std::max(n, m);
  if (N.is_zero() || top == 0) return RationalFunction(Polynomial{});
  const SymmetricTables t = symmetric_tables(curve, top);
  const auto idx = [](int v) { return static_cast<size_t>(v); };

  // (N(u)M(v) - N(v)M(u)) / (u - v) = sum N_i M_j sgn(i-j) e2^min s_|i-j|,
  // brought over the common denominator X_2^(top-1).
  Polynomial num;
  for (int i = 0; i <= N.degree(); ++i)
    for (int j = 0; j <= M.degree(); ++j) {
      if (i == j) continue;
      const int k = std::min(i, j), d = std::abs(i - j), mx = std::max(i, j);
      Polynomial term = t.X0pow[idx(k)] * t.S[idx(d)] * t.X2pow[idx(top - mx)];
      num += (i > j ? N[i] * M[j] : -N[i] * M[j]) * term;
    }
  // M(u) M(v) over X_2^m.
  Polynomial den;
  for (int i = 0; i <= m; ++i) {
    den += (M[i] * M[i]) * (t.X0pow[idx(i)] * t.X2pow[idx(m - i)]);
    for (int j = i + 1; j <= m; ++j) den += (M[i] * M[j]) * (t.X0pow[idx(i)] * t.P[idx(j - i)] * t.X2pow[idx(m - j)]);
  }
  // g = num X_2^(m - top + 1) / den.
  const int shift = m - top + 1;
  if (shift >= 0) return {num * t.X2pow[idx(shift)], den};
  return {num, den * t.X2pow[idx(-shift)]};
}

std::vector<Scalar> spot_points(const RationalFunction& f) {
  Real r = 1.0;
  for (const auto& c : f.numer().coeffs()) r = std::max(r, std::abs(c));
  std::vector<Scalar> pts;
  for (int k = 0; k < 12; ++k) pts.push_back(std::polar(0.37 * r * (1.0 + 0.29 * k), 0.4 + 2.2 * k));
  return pts;
}

bool spot_check(const BiquadraticCurve& curve, const RationalFunction& f, const RationalFunction& g) {
  int checked = 0;
  for (Scalar z : spot_points(f)) {
    Scalar want, got;
    try {
      want = apply_D(curve, f, z);
      got = g(z);
    } catch (const Error&) {
      continue;
    }
    if (!(std::abs(got - want) <= kSpotTol * std::max(1.0, std::abs(want)))) return false;
    if (++checked == 3) return true;
  }
  return checked > 0;
}

/// Linearized rational interpolation: N(z_k) - g_k D(z_k) = 0, SVD null vector.
RationalFunction reconstruct(const BiquadraticCurve& curve, const RationalFunction& f, int dn, int dd) {
  const int unknowns = dn + dd + 2;
  std::vector<Scalar> zs, gs;
  const int want = 2 * unknowns + 4;
  for (int k = 0; static_cast<int>(zs.size()) < want && k < 40 * want; ++k) {
    const Scalar z = std::polar(0.8 + 0.9 * ((k * 7) % 11) / 11.0, 0.61 * k + 0.2);
    try {
      gs.push_back(apply_D(curve, f, z));
      zs.push_back(z);
    } catch (const Error&) {
    }
  }
  if (static_cast<int>(zs.size()) < unknowns) throw Error(ErrorCode::ReconstructionFallback, "too few samples");
  Eigen::MatrixXcd A(static_cast<Eigen::Index>(zs.size()), unknowns);
  for (size_t r = 0; r < zs.size(); ++r) {
    const auto row = static_cast<Eigen::Index>(r);
    Scalar zp = 1.0;
    for (int i = 0; i <= dn; ++i, zp *= zs[r]) A(row, i) = zp;
    zp = 1.0;
    for (int j = 0; j <= dd; ++j, zp *= zs[r]) A(row, dn + 1 + j) = -gs[r] * zp;
    A.row(row) /= A.row(row).norm();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
  const Eigen::VectorXcd v = svd.matrixV().col(unknowns - 1);
  std::vector<Scalar> nc(static_cast<size_t>(dn) + 1), dc(static_cast<size_t>(dd) + 1);
  for (int i = 0; i <= dn; ++i) nc[static_cast<size_t>(i)] = v(i);
  for (int j = 0; j <= dd; ++j) dc[static_cast<size_t>(j)] = v(dn + 1 + j);
  return {Polynomial(nc), Polynomial(dc)};
}

Scalar prod_diff(Scalar z, const std::function<Scalar(long)>& pts, long from, long to) {
  Scalar p = 1.0;
  for (long k = from; k <= to; ++k) p *= z - pts(k);
  return p;
}

Scalar checked_ratio(Scalar num, Scalar den, CnMethod method, long n) {
  const Scalar v = num / den;
  if (den == Scalar{} || !finite(v))
    throw Error(ErrorCode::MethodDegenerate, "C_n formula " + std::to_string(static_cast<int>(method)) +
                                                 " divides by zero", n);
  return v;
}

}  // namespace

Scalar apply_D(const BiquadraticCurve& curve, const ScalarFn& f, Scalar x) {
  const RootPair rp = roots_off_branch(curve, x);
  return (f(rp.hi) - f(rp.lo)) / (rp.hi - rp.lo);
}

Scalar apply_M(const BiquadraticCurve& curve, const ScalarFn& f, Scalar x) {
  const RootPair rp = curve.y_roots(x);
  return 0.5 * (f(rp.lo) + f(rp.hi));
}

RationalD apply_D_rational(const BiquadraticCurve& curve, const RationalFunction& f,
                           std::vector<Diagnostic>* log, bool force_reconstruction) {
  RationalFunction g = symbolic_D(curve, f);
  if (g.numer().is_zero()) return {g, false};
  if (!force_reconstruction && spot_check(curve, f, g)) return {g, false};
  if (log) log->push_back({ErrorCode::ReconstructionFallback, "symbolic D failed its spot check; rebuilt from samples", {}});
  RationalFunction r = reconstruct(curve, f, g.numer().degree(), g.denom().degree());
  return {r, true};
}

BasisPair::BasisPair(Lattice unprimed, Lattice primed) : unprimed_(std::move(unprimed)), primed_(std::move(primed)) {
  if (unprimed_.curve().coeffs() != primed_.curve().coeffs())
    throw Error(ErrorCode::ValidationError, "basis lattices must share one curve");
}

void BasisPair::ensure(long n) {
  unprimed_.ensure(-1, n + 1);
  primed_.ensure(0, n + 1);
}

Scalar basis_eval(const BasisPair& pair, BasisKind kind, long n, Scalar z) {
  const Lattice& u = pair.unprimed();
  const Lattice& p = pair.primed();
  const bool isx = kind == BasisKind::X;
  Scalar acc = 1.0;
  bool zero = false;
  std::optional<long> pole;
  for (long k = 0; k < n; ++k) {
    const Scalar top = z - (isx ? u.x(k) : u.y(k));
    const Scalar pk = isx ? p.x(k + 1) : p.y(k + 1);
    const Scalar bot = z - pk;
    if (top == Scalar{}) zero = true;
    if (std::abs(bot) <= kPoleTol * std::max(1.0, std::abs(z))) {
      pole = k + 1;
      continue;
    }
    acc *= top / bot;
  }
  if (zero) return Scalar{};
  if (pole) throw Error(ErrorCode::PoleEvaluation, "basis function evaluated at a pole", *pole, z);
  return acc;
}

Scalar compute_Cn(const BasisPair& pair, long n, CnMethod method) {
  if (n < 0) throw Error(ErrorCode::ValidationError, "C_n needs n >= 0", n);
  if (n == 0) return Scalar{};
  const BiquadraticCurve& cv = pair.curve();
  const auto X2 = [&](Scalar t) { return cv.X(2)(t); };
  const auto Xb = [&](long k, Scalar t) { return basis_eval(pair, BasisKind::X, k, t); };
  const auto Yb = [&](long k, Scalar t) { return basis_eval(pair, BasisKind::Y, k, t); };
  const auto ys = [&](long k) { return pair.y(k); };
  const auto yps = [&](long k) { return pair.yp(k); };
  try {
    switch (method) {
      case CnMethod::AtXm1: {
        const Scalar xm = pair.x(-1);
        const Scalar num = -Yb(n, pair.y(-1)) * (xm - pair.xp(0)) * (xm - pair.xp(n));
        const Scalar den = (pair.y(0) - pair.y(-1)) * X2(xm) * Xb(n - 1, xm);
        return checked_ratio(num, den, method, n);
      }
      case CnMethod::AtXn1: {
        const Scalar xa = pair.x(n - 1);
        const Scalar num = Yb(n, pair.y(n)) * (xa - pair.xp(0)) * (xa - pair.xp(n));
        const Scalar den = (pair.y(n) - pair.y(n - 1)) * X2(xa) * Xb(n - 1, xa);
        return checked_ratio(num, den, method, n);
      }
      case CnMethod::ResXp0: {
        // Residue of Y_n at y'_1 = psi(x'_0).
        const Scalar x0 = pair.xp(0), y1 = pair.yp(1);
        const Scalar res_num = prod_diff(y1, ys, 0, n - 1);
        const Scalar res_den = cv.dy_dx(x0, y1) * prod_diff(y1, yps, 2, n);
        const Scalar num = res_num * (x0 - pair.xp(n));
        const Scalar den = res_den * (y1 - pair.yp(0)) * X2(x0) * Xb(n - 1, x0);
        return checked_ratio(num, den, method, n);
      }
      case CnMethod::ResXpn: {
        // Residue of Y_n at y'_n = phi(x'_n).
        const Scalar xn = pair.xp(n), yn = pair.yp(n);
        const Scalar res_num = prod_diff(yn, ys, 0, n - 1);
        const Scalar res_den = prod_diff(yn, yps, 1, n - 1) * cv.dy_dx(xn, yn);
        const Scalar num = -res_num * (xn - pair.xp(0));
        const Scalar den = res_den * (pair.yp(n + 1) - yn) * X2(xn) * Xb(n - 1, xn);
        return checked_ratio(num, den, method, n);
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotMaterialized) throw;
    if (e.code() == ErrorCode::MethodDegenerate) throw;
    throw Error(ErrorCode::MethodDegenerate, std::string(to_string(e.code())) + ": " + e.detail(), n);
  }
  throw Error(ErrorCode::InternalInconsistency, "unknown C_n method");
}

CnAll compute_Cn_all(const BasisPair& pair, long n) {
  CnAll out{};
  std::vector<Scalar> have;
  for (size_t i = 0; i < kAllCnMethods.size(); ++i) {
    try {
      out.values[i] = compute_Cn(pair, n, kAllCnMethods[i]);
      have.push_back(*out.values[i]);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MethodDegenerate) throw;
    }
  }
  if (have.size() < 2) throw Error(ErrorCode::MethodDegenerate, "fewer than two C_n formulas usable", n);
  out.value = have.front();
  Real big = 0.0, diff = 0.0;
  for (size_t i = 0; i < have.size(); ++i) {
    big = std::max(big, std::abs(have[i]));
    for (size_t j = i + 1; j < have.size(); ++j) diff = std::max(diff, std::abs(have[i] - have[j]));
  }
  out.spread = big > 0.0 ? diff / big : 0.0;
  return out;
}

Scalar compute_Cn(const BasisPair& pair, long n) {
  try {
    return compute_Cn(pair, n, CnMethod::AtXm1);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MethodDegenerate) throw;
    return compute_Cn(pair, n, CnMethod::AtXn1);
  }
}

Scalar dn_point(const BasisPair& pair, long n, DnPoint at) {
  switch (at) {
    case DnPoint::Xm1:
      return pair.x(-1);
    case DnPoint::Xn1:
      return pair.x(n - 1);
    case DnPoint::Xp0:
      return pair.xp(0);
    case DnPoint::Xpn:
      return pair.xp(n);
  }
  throw Error(ErrorCode::InternalInconsistency, "unknown D_n point");
}

Scalar eval_Dn(const BasisPair& pair, long n, DnPoint at) {
  if (n == 0) return 1.0;
  const Scalar c = compute_Cn(pair, n);
  const Scalar x = dn_point(pair, n, at);
  const Scalar x2 = pair.curve().X(2)(x);
  switch (at) {
    case DnPoint::Xm1:
      return -c * x2 * (pair.y(0) - pair.y(-1)) / 2.0;
    case DnPoint::Xn1:
      return c * x2 * (pair.y(n) - pair.y(n - 1)) / 2.0;
    case DnPoint::Xp0:
      return c * x2 * (pair.yp(1) - pair.yp(0)) / 2.0;
    case DnPoint::Xpn:
      return -c * x2 * (pair.yp(n + 1) - pair.yp(n)) / 2.0;
  }
  throw Error(ErrorCode::InternalInconsistency, "unknown D_n point");
}

Scalar Dn_direct(const BasisPair& pair, long n, Scalar x) {
  const Scalar m = apply_M(pair.curve(), [&](Scalar t) { return basis_eval(pair, BasisKind::Y, n, t); }, x);
  if (n == 0) return m;
  const Scalar xb = basis_eval(pair, BasisKind::X, n - 1, x);
  if (xb == Scalar{}) throw Error(ErrorCode::PoleEvaluation, "X_{n-1} vanishes at the evaluation point", n, x);
  return m * (x - pair.xp(0)) * (x - pair.xp(n)) / xb;
}

Polynomial Dn_quadratic(const BasisPair& pair, long n, const std::vector<Scalar>& samples) {
  std::vector<Scalar> zs, vs;
  for (Scalar z : samples) {
    if (zs.size() == 3) break;
    try {
      vs.push_back(Dn_direct(pair, n, z));
      zs.push_back(z);
    } catch (const Error&) {
    }
  }
  if (zs.size() < 3) throw Error(ErrorCode::NoValidSamples, "need three usable samples for D_n", n);
  Polynomial out;
  for (size_t i = 0; i < 3; ++i) {
    Polynomial basis = Polynomial::constant(vs[i]);
    for (size_t j = 0; j < 3; ++j)
      if (j != i) basis *= Polynomial{-zs[j], 1.0} * (1.0 / (zs[i] - zs[j]));
    out += basis;
  }
  return out;
}

Real verify_M_basis_quadratic(const BasisPair& pair, long n, const std::vector<Scalar>& samples) {
  std::vector<Scalar> usable;
  std::vector<Scalar> vals;
  for (Scalar z : samples) {
    try {
      vals.push_back(Dn_direct(pair, n, z));
      usable.push_back(z);
    } catch (const Error&) {
    }
  }
  if (usable.size() < 4) throw Error(ErrorCode::NoValidSamples, "need four usable samples for the D_n fit", n);
  const Polynomial q = Dn_quadratic(pair, n, usable);
  Real worst = 0.0;
  for (size_t i = 3; i < usable.size(); ++i)
    worst = std::max(worst, std::abs(q(usable[i]) - vals[i]) / std::max(std::abs(vals[i]), 1e-300));
  return worst;
}

Real verify_D_basis_identity(const BasisPair& pair, long n, const std::vector<Scalar>& samples) {
  if (n == 0) return 0.0;
  const Scalar c = compute_Cn(pair, n);
  const BiquadraticCurve& cv = pair.curve();
  Real worst = 0.0;
  int used = 0;
  for (Scalar x : samples) {
    Scalar lhs, rhs;
    try {
      lhs = apply_D(cv, [&](Scalar t) { return basis_eval(pair, BasisKind::Y, n, t); }, x);
      rhs = c * cv.X(2)(x) * basis_eval(pair, BasisKind::X, n - 1, x) / ((x - pair.xp(0)) * (x - pair.xp(n)));
    } catch (const Error&) {
      continue;
    }
    if (!finite(lhs) || !finite(rhs)) continue;
    const Real scale = std::max(std::abs(lhs), std::abs(rhs));
    if (scale > 0.0) worst = std::max(worst, std::abs(lhs - rhs) / scale);
    ++used;
  }
  if (used == 0) throw Error(ErrorCode::NoValidSamples, "no sample point was usable", n);
  return worst;
}

std::vector<Scalar> sample_points(const BasisPair& pair, int count, std::uint64_t seed) {
  const Lattice& u = pair.unprimed();
  const Lattice& p = pair.primed();
  std::vector<Scalar> xs, ys;
  for (long k = u.n_min(); k <= u.n_max(); ++k) {
    xs.push_back(u.x(k));
    ys.push_back(u.y(k));
  }
  for (long k = p.n_min(); k <= p.n_max(); ++k) {
    xs.push_back(p.x(k));
    ys.push_back(p.y(k));
  }
  std::vector<Real> mags;
  for (Scalar x : xs) mags.push_back(std::abs(x));
  std::nth_element(mags.begin(), mags.begin() + static_cast<long>(mags.size() / 2), mags.end());
  const Real rmed = std::max(mags[mags.size() / 2], 0.5);
  const Real gap = 0.02 * rmed;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Real> rad(0.5 * rmed, 1.5 * rmed);
  std::uniform_real_distribution<Real> ang(0.0, 2.0 * 3.14159265358979323846);
  const BiquadraticCurve& cv = pair.curve();
  std::vector<Scalar> out;
  for (int tries = 0; static_cast<int>(out.size()) < count && tries < 200 * count; ++tries) {
    const Scalar z = std::polar(rad(rng), ang(rng));
    const auto near = [&](Scalar w, const std::vector<Scalar>& pts) {
      return std::any_of(pts.begin(), pts.end(), [&](Scalar q) { return std::abs(w - q) < gap; });
    };
    if (near(z, xs)) continue;
    if (cv.is_leading_x_negligible(z) || cv.is_branch_point(z)) continue;
    const RootPair rp = cv.y_roots(z);
    if (std::abs(rp.hi - rp.lo) < 1e-3 * (1.0 + std::abs(rp.hi) + std::abs(rp.lo))) continue;
    if (near(rp.lo, ys) || near(rp.hi, ys)) continue;
    out.push_back(z);
  }
  return out;
}

}  // namespace ellhyp
