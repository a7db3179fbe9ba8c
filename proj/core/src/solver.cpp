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


#include "ellhyp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ellhyp/convergence.hpp"

namespace ellhyp {

namespace {

constexpr Real kFactorTol = 1e-12;
constexpr Real kCertTol = 1e-9;
constexpr Real kC1Warn = 1e-8;
constexpr Real kC1Fail = 1e-6;
constexpr Real kClosedWarn = 1e-7;
constexpr Real kOracleTol = 1e-13;
constexpr Real kPoleTol = 1e-15;

bool finite(Scalar z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

Real rel_diff(Scalar a, Scalar b) {
  const Real m = std::max(std::abs(a), std::abs(b));
  return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

/// Splits p = (u x + v) X_2 + remainder and checks the remainder.
std::pair<Scalar, Scalar> linear_factor(const Polynomial& p, const Polynomial& X2, const char* name) {
  if (p.is_zero()) return {Scalar{}, Scalar{}};
  const auto [q, r] = divmod(p, X2);
  if (q.degree() > 1)
    throw Error(ErrorCode::DegreeMismatch, std::string(name) + " / X_2 must have degree <= 1");
  const Real rn = r.is_zero() ? 0.0 : r.max_abs_coeff();
  if (rn > kFactorTol * p.max_abs_coeff())
    throw Error(ErrorCode::MissingFactor, std::string(name) + " is not divisible by X_2");
  return {q[1], q[0]};
}

Certificate make_certificate(const DifferenceEquation& eq, Scalar x, Scalar phi, Scalar psi, Real s) {
  const Scalar ax = eq.a(x), cx = eq.c(x), diff = psi - phi;
  Certificate cert{std::abs(ax + s * cx * diff / 2.0) / eq.scale(x), std::nullopt};
  if (cx != Scalar{} && diff != Scalar{}) cert.sign = ((ax / diff) / (cx / 2.0)).real();
  return cert;
}

struct Candidate {
  Scalar x{};
  RootPair roots{};
  bool m1_ok = false, p0_ok = false;
  Scalar m1_phi{}, m1_psi{}, p0_phi{}, p0_psi{};
  Certificate m1_cert{}, p0_cert{};
};

/// Ordering of the root pair under which the condition holds best; ties
/// (c(x) = 0) keep (lo, hi).
void assign_orderings(const DifferenceEquation& eq, Candidate& c) {
  const auto& r = c.roots;
  const Certificate m1a = certificate_m1(eq, c.x, r.lo, r.hi), m1b = certificate_m1(eq, c.x, r.hi, r.lo);
  const Certificate p0a = certificate_p0(eq, c.x, r.lo, r.hi), p0b = certificate_p0(eq, c.x, r.hi, r.lo);
  const bool m1_flip = m1b.residual < m1a.residual;
  c.m1_phi = m1_flip ? r.hi : r.lo;
  c.m1_psi = m1_flip ? r.lo : r.hi;
  c.m1_cert = m1_flip ? m1b : m1a;
  c.m1_ok = c.m1_cert.residual <= kCertTol;
  const bool p0_flip = p0b.residual < p0a.residual;
  c.p0_phi = p0_flip ? r.hi : r.lo;
  c.p0_psi = p0_flip ? r.lo : r.hi;
  c.p0_cert = p0_flip ? p0b : p0a;
  c.p0_ok = c.p0_cert.residual <= kCertTol;
}

Scalar prod_range(long from, long to, const std::function<Scalar(long)>& f) {
  Scalar p = 1.0;
  for (long k = from; k <= to; ++k) p *= f(k);
  return p;
}

/// Quantities of the coefficient recurrence shared by both modes.
struct Recurrence {
  const DifferenceEquation& eq;
  const BasisPair& pair;
  const std::vector<Scalar>& C;

  Scalar A(long k) const {
    const Scalar x = pair.x(k);
    return eq.a(x) - eq.c(x) * (pair.y(k + 1) - pair.y(k)) / 2.0;
  }
  Scalar Ap(long k) const {
    const Scalar x = pair.xp(k);
    return eq.a(x) + eq.c(x) * (pair.yp(k + 1) - pair.yp(k)) / 2.0;
  }
  Scalar xi(long n) const {
    const Scalar x = pair.xp(n);
    return C[static_cast<size_t>(n)] * Ap(n) / ((x - pair.x(-1)) * (x - pair.xp(0)) * (x - pair.x(n - 1)));
  }
  Scalar eta(long n) const {
    const Scalar x = pair.x(n - 1);
    return C[static_cast<size_t>(n)] * A(n - 1) / ((x - pair.x(-1)) * (x - pair.xp(0)) * (x - pair.xp(n)));
  }
  /// c_{n+1} from c_n.
  Scalar next(Scalar cn, long n, Real eta_floor) const {
    const Scalar xn = xi(n), en = eta(n + 1);
    if (en == Scalar{} || std::abs(en) <= eta_floor * std::abs(xn))
      throw Error(ErrorCode::SmallDivisor, "eta vanishes in the coefficient ratio", n + 1);
    return -cn * xn / en;
  }
};

std::vector<Scalar> cn_table(const BasisPair& pair, long N) {
  std::vector<Scalar> C(static_cast<size_t>(N) + 1);
  for (long n = 0; n <= N; ++n) C[static_cast<size_t>(n)] = compute_Cn(pair, n);
  return C;
}

void finish_disagreement(ExpansionSolution& sol) {
  Real worst = 0.0;
  for (size_t n = 1; n < sol.coeffs.size(); ++n) worst = std::max(worst, rel_diff(sol.coeffs[n], sol.coeffs_check[n]));
  sol.route_disagreement = worst;
  if (worst > kClosedWarn)
    sol.diagnostics.push_back({ErrorCode::InternalInconsistency,
                               "coefficient routes disagree by " + std::to_string(worst), std::nullopt});
}

}  // namespace

DifferenceEquation DifferenceEquation::from_polynomials(const BiquadraticCurve& curve, Polynomial a, Polynomial c,
                                                        Polynomial d) {
  if (a.degree() > 3) throw Error(ErrorCode::DegreeMismatch, "deg a must be <= 3");
  DifferenceEquation eq{curve, std::move(a), std::move(c), std::move(d)};
  std::tie(eq.beta, eq.gamma) = linear_factor(eq.c, curve.X(2), "c");
  std::tie(eq.delta, eq.epsilon) = linear_factor(eq.d, curve.X(2), "d");
  return eq;
}

DifferenceEquation DifferenceEquation::from_factors(const BiquadraticCurve& curve, Polynomial a, Scalar beta,
                                                    Scalar gamma, Scalar delta, Scalar epsilon) {
  if (a.degree() > 3) throw Error(ErrorCode::DegreeMismatch, "deg a must be <= 3");
  DifferenceEquation eq{curve, std::move(a), Polynomial{gamma, beta} * curve.X(2),
                        Polynomial{epsilon, delta} * curve.X(2)};
  eq.beta = beta;
  eq.gamma = gamma;
  eq.delta = delta;
  eq.epsilon = epsilon;
  return eq;
}

Real DifferenceEquation::scale(Scalar z) const noexcept {
  const Real m = std::max({a.max_abs_coeff(), c.max_abs_coeff(), d.max_abs_coeff()});
  return std::max(m, std::numeric_limits<Real>::min()) * std::pow(std::max(1.0, std::abs(z)), 3);
}

SymmetricForm convert_equation_form(const Polynomial& a_pt, const Polynomial& b_pt, const Polynomial& c_pt) {
  return {(b_pt - a_pt) * 0.5, (a_pt + b_pt) * -0.5, -c_pt};
}

Certificate certificate_m1(const DifferenceEquation& eq, Scalar x, Scalar phi, Scalar psi) {
  return make_certificate(eq, x, phi, psi, +1.0);
}

Certificate certificate_p0(const DifferenceEquation& eq, Scalar x, Scalar phi, Scalar psi) {
  return make_certificate(eq, x, phi, psi, -1.0);
}

SpecialPoints locate_special_points(const DifferenceEquation& eq, const SpecialSelect& select) {
  const BiquadraticCurve& cv = eq.curve;
  const bool log_mode = eq.logarithmic();
  SpecialPoints sp{};
  std::vector<Scalar> raw;
  if (log_mode) {
    if (eq.a.degree() != 3) throw Error(ErrorCode::DegreeMismatch, "logarithmic mode needs a cubic a");
    raw = roots(eq.a);
  } else {
    const Polynomial bg{eq.gamma, eq.beta};
    const Polynomial sq = 4.0 * eq.a * eq.a - bg * bg * cv.P();
    if (sq.degree() < 1) throw Error(ErrorCode::NoSpecialPoint, "special-point polynomial is constant");
    raw = roots(sq);
  }
  std::sort(raw.begin(), raw.end(), [](Scalar l, Scalar r) {
    return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
  });
  sp.candidates = raw;

  std::vector<Candidate> cands;
  for (size_t i = 0; i < raw.size(); ++i) {
    const Scalar x = raw[i];
    if (cv.is_leading_x_negligible(x) || cv.is_branch_point(x)) {
      sp.log.push_back({ErrorCode::NoSpecialPoint, "candidate excluded: X_2 or P vanishes there", static_cast<long>(i)});
      cands.push_back({.x = x});
      continue;
    }
    Candidate c{.x = x, .roots = cv.y_roots(x)};
    assign_orderings(eq, c);
    if (!c.m1_ok && !c.p0_ok)
      sp.log.push_back({ErrorCode::NoSpecialPoint, "candidate excluded: both branch orderings fail",
                        static_cast<long>(i)});
    cands.push_back(c);
  }

  const Real dtol = kCertTol;
  const auto d_ok = [&](Scalar x) { return !log_mode || std::abs(eq.d(x)) <= dtol * eq.scale(x); };

  size_t im1 = cands.size(), ip0 = cands.size();
  if (const auto* idx = std::get_if<ByCandidateIndex>(&select)) {
    const auto in = [&](int k) { return k >= 0 && static_cast<size_t>(k) < cands.size(); };
    if (!in(idx->m1) || !in(idx->p0) || idx->m1 == idx->p0)
      throw Error(ErrorCode::ValidationError, "special-point indices out of range or equal");
    im1 = static_cast<size_t>(idx->m1);
    ip0 = static_cast<size_t>(idx->p0);
    if (!cands[im1].m1_ok) throw Error(ErrorCode::NoSpecialPoint, "selected x_{-1} fails its condition", idx->m1);
    if (!cands[ip0].p0_ok) throw Error(ErrorCode::NoSpecialPoint, "selected x'_0 fails its condition", idx->p0);
    if (!d_ok(cands[im1].x))
      throw Error(ErrorCode::NoSpecialPoint, "logarithmic mode needs d(x_{-1}) = 0", idx->m1);
  } else {
    const Scalar z = std::get<NearestTo>(select).z;
    Real best = std::numeric_limits<Real>::infinity();
    for (size_t i = 0; i < cands.size(); ++i)
      if (cands[i].m1_ok && d_ok(cands[i].x) && std::abs(cands[i].x - z) < best) {
        best = std::abs(cands[i].x - z);
        im1 = i;
      }
    if (im1 == cands.size()) throw Error(ErrorCode::NoSpecialPoint, "no admissible x_{-1}");
    Real far = -1.0;
    const Real sep = 1e-9 * std::max(1.0, std::abs(cands[im1].x));
    for (size_t i = 0; i < cands.size(); ++i)
      if (i != im1 && cands[i].p0_ok && std::abs(cands[i].x - cands[im1].x) > sep && std::abs(cands[i].x - z) > far) {
        far = std::abs(cands[i].x - z);
        ip0 = i;
      }
    if (ip0 == cands.size()) throw Error(ErrorCode::NoSpecialPoint, "no admissible x'_0");
  }

  const Candidate& m1 = cands[im1];
  const Candidate& p0 = cands[ip0];
  sp.x_m1 = m1.x;
  sp.y_m1 = m1.m1_phi;
  sp.y_0 = m1.m1_psi;
  sp.cert_m1 = m1.m1_cert;
  sp.x_p0 = p0.x;
  sp.yp_0 = p0.p0_phi;
  sp.yp_1 = p0.p0_psi;
  sp.cert_p0 = p0.p0_cert;
  if (log_mode) {
    for (size_t i = 0; i < cands.size(); ++i)
      if (i != im1 && i != ip0) sp.zeta = cands[i].x;
  }
  return sp;
}

BasisPair build_lattices(const DifferenceEquation& eq, const SpecialPoints& sp) {
  Lattice unprimed(LatticeSpec{eq.curve, sp.x_m1, sp.y_m1, ByIndex{0}, -1});
  Lattice primed(LatticeSpec{eq.curve, sp.x_p0, sp.yp_0, ByIndex{0}, 0});
  unprimed.ensure(-1, 0);
  primed.ensure(0, 1);
  const Certificate cm = certificate_m1(eq, sp.x_m1, unprimed.y(-1), unprimed.y(0));
  const Certificate cp = certificate_p0(eq, sp.x_p0, primed.y(0), primed.y(1));
  if (cm.residual > kCertTol) throw Error(ErrorCode::BranchAssignmentFailed, "x_{-1} ordering fails", -1, sp.x_m1);
  if (cp.residual > kCertTol) throw Error(ErrorCode::BranchAssignmentFailed, "x'_0 ordering fails", 0, sp.x_p0);
  return BasisPair(std::move(unprimed), std::move(primed));
}

ExpansionSolution expansion_coefficients(const DifferenceEquation& eq, BasisPair pair, const SpecialPoints& sp,
                                         long N, Real eta_floor) {
  if (eq.logarithmic()) throw Error(ErrorCode::ValidationError, "general mode needs c != 0");
  pair.ensure(N + 1);
  ExpansionSolution sol{.eq = eq, .pair = std::move(pair), .special = sp, .mode = Mode::General};
  const BasisPair& bp = sol.pair;
  const Scalar xm = bp.x(-1);
  const Scalar lin_c = eq.beta * xm + eq.gamma;
  if (lin_c == Scalar{}) throw Error(ErrorCode::ZeroDivisor, "beta x_{-1} + gamma vanishes", -1, xm);

  sol.Cn = cn_table(bp, N);
  const Recurrence rec{eq, bp, sol.Cn};
  sol.coeffs.resize(static_cast<size_t>(N) + 1);
  sol.coeffs_check.resize(static_cast<size_t>(N) + 1);

  sol.coeffs[0] = -(eq.delta * xm + eq.epsilon) / lin_c;
  sol.coeffs_check[0] = eq.d(xm) / (eq.a(xm) / (bp.y(0) - bp.y(-1)) - eq.c(xm) / 2.0);
  if (N == 0) return sol;

  const Scalar c1 = (eq.delta + eq.beta * sol.coeffs[0]) / rec.eta(1);
  const Scalar x0 = bp.x(0), xp0 = bp.xp(0), xp1 = bp.xp(1);
  const Scalar c1_alt = (eq.gamma * eq.delta - eq.beta * eq.epsilon) * (bp.y(-1) - bp.yp(1)) * eq.curve.X(2)(xm) *
                        (x0 - xm) * (x0 - xp0) * (x0 - xp1) / (lin_c * (xm - xp0) * (xm - xp1) * rec.A(0));
  sol.c1_alt = c1_alt;
  const Real c1_gap = rel_diff(c1, c1_alt);
  if (c1_gap > kC1Fail)
    throw Error(ErrorCode::InternalInconsistency, "the two c_1 expressions disagree by " + std::to_string(c1_gap), 1);
  if (c1_gap > kC1Warn)
    sol.diagnostics.push_back({ErrorCode::InternalInconsistency, "c_1 expressions differ by " + std::to_string(c1_gap), 1});
  sol.coeffs[1] = c1;
  sol.coeffs_check[1] = c1_alt;

  for (long n = 1; n < N; ++n) sol.coeffs[static_cast<size_t>(n + 1)] = rec.next(sol.coeffs[static_cast<size_t>(n)], n, eta_floor);

  // Closed product from c_1.
  Scalar running = 1.0;
  const Scalar lead = c1 * sol.Cn[1] / (xp1 - x0);
  for (long n = 2; n <= N; ++n) {
    const long k = n - 1;
    const Scalar xk = bp.x(k), xpk = bp.xp(k);
    running *= rec.Ap(k) / rec.A(k) * (xk - xm) * (xk - xp0) / ((xpk - xm) * (xpk - xp0));
    sol.coeffs_check[static_cast<size_t>(n)] = lead * (bp.xp(n) - bp.x(n - 1)) / sol.Cn[static_cast<size_t>(n)] * running;
  }
  finish_disagreement(sol);
  return sol;
}

ExpansionSolution expansion_coefficients_log(const DifferenceEquation& eq, BasisPair pair, const SpecialPoints& sp,
                                             long N, Scalar c0_free, Real eta_floor) {
  if (!eq.logarithmic()) throw Error(ErrorCode::ValidationError, "logarithmic mode needs c = 0");
  if (eq.a.degree() != 3) throw Error(ErrorCode::DegreeMismatch, "logarithmic mode needs a cubic a");
  if (!sp.zeta) throw Error(ErrorCode::NoSpecialPoint, "third root of a missing");
  pair.ensure(N + 1);
  ExpansionSolution sol{.eq = eq, .pair = std::move(pair), .special = sp, .mode = Mode::Logarithmic};
  sol.c0_free = c0_free;
  const BasisPair& bp = sol.pair;
  sol.Cn = cn_table(bp, N);
  const Recurrence rec{eq, bp, sol.Cn};
  sol.coeffs.resize(static_cast<size_t>(N) + 1);
  sol.coeffs_check.resize(static_cast<size_t>(N) + 1);
  sol.coeffs[0] = sol.coeffs_check[0] = c0_free;
  if (N == 0) return sol;

  const Scalar c1 = eq.delta / rec.eta(1);
  sol.coeffs[1] = sol.coeffs_check[1] = c1;
  for (long n = 1; n < N; ++n)
    sol.coeffs_check[static_cast<size_t>(n + 1)] = rec.next(sol.coeffs_check[static_cast<size_t>(n)], n, eta_floor);

  const Scalar xm = bp.x(-1), ym = bp.y(-1), zeta = *sp.zeta;
  const Scalar lead = c1 * sol.Cn[1] / (bp.xp(1) - bp.x(0)) * eq.curve.X(2)(xm);
  for (long n = 2; n <= N; ++n) {
    const Scalar num = prod_range(1, n, [&](long k) { return ym - bp.yp(k); }) *
                       prod_range(0, n - 2, [&](long k) { return xm - bp.x(k); });
    const Scalar den = prod_range(1, n - 1, [&](long k) { return ym - bp.y(k); }) *
                       prod_range(0, n, [&](long k) { return xm - bp.xp(k); });
    const Scalar zf = prod_range(1, n - 1, [&](long k) { return (bp.xp(k) - zeta) / (bp.x(k) - zeta); });
    sol.coeffs[static_cast<size_t>(n)] = lead * (bp.xp(n) - bp.x(n - 1)) * num / den * zf;
  }
  finish_disagreement(sol);
  return sol;
}

ExpansionSolution solve(const DifferenceEquation& eq, const SolveOptions& opts) {
  if (opts.N < 0) throw Error(ErrorCode::ValidationError, "N must be >= 0");
  const bool log_mode = eq.logarithmic();
  if (log_mode && !opts.c0_free) throw Error(ErrorCode::MissingField, "c0_free");
  const SpecialPoints sp = locate_special_points(eq, opts.select);
  BasisPair pair = build_lattices(eq, sp);
  ExpansionSolution sol = log_mode ? expansion_coefficients_log(eq, std::move(pair), sp, opts.N, *opts.c0_free, opts.eta_floor)
                                   : expansion_coefficients(eq, std::move(pair), sp, opts.N, opts.eta_floor);
  for (const auto& d : sp.log) sol.diagnostics.push_back(d);
  for (const auto& s : detect_small_divisors(sol.pair, opts.N, opts.small_divisor_threshold)) {
    sol.smalldiv_flags.push_back(s.index);
    sol.diagnostics.push_back({ErrorCode::SmallDivisor, "near return |y_{-1} - y_{n-1}| = " + std::to_string(s.magnitude), s.index});
  }
  return sol;
}

std::vector<Scalar> stepwise_oracle(const DifferenceEquation& eq, const BasisPair& pair, long K, Scalar f0) {
  std::vector<Scalar> f{f0};
  for (long k = 0; k < K; ++k) {
    const Scalar x = pair.x(k);
    const Scalar ad = eq.a(x) / (pair.y(k + 1) - pair.y(k));
    const Scalar ch = eq.c(x) / 2.0;
    const Scalar den = ad - ch;
    if (!finite(ad) || std::abs(den) <= kOracleTol * (std::abs(ad) + std::abs(ch)))
      throw Error(ErrorCode::HitSingularLattice, "oracle step divides by zero", k, x);
    f.push_back(((ad + ch) * f.back() + eq.d(x)) / den);
  }
  return f;
}

std::vector<Scalar> stepwise_oracle(const ExpansionSolution& sol, long K) {
  Scalar f0 = sol.c0_free.value_or(Scalar{});
  if (sol.mode == Mode::General) {
    // The recurrence at x_{-1}, where f(y_{-1}) drops out.
    const Scalar xm = sol.pair.x(-1);
    f0 = sol.eq.d(xm) / (sol.eq.a(xm) / (sol.pair.y(0) - sol.pair.y(-1)) - sol.eq.c(xm) / 2.0);
  }
  return stepwise_oracle(sol.eq, sol.pair, K, f0);
}

std::vector<Scalar> expansion_terms(const ExpansionSolution& sol, long N, Scalar z) {
  std::vector<Scalar> out(static_cast<size_t>(N) + 1);
  Scalar basis = 1.0;
  for (long k = 0; k <= N; ++k) {
    out[static_cast<size_t>(k)] = sol.coeffs.at(static_cast<size_t>(k)) * basis;
    if (k == N || basis == Scalar{}) {
      if (basis == Scalar{}) std::fill(out.begin() + k, out.end(), Scalar{});
      if (basis == Scalar{}) break;
      continue;
    }
    const Scalar pole = sol.pair.yp(k + 1);
    if (std::abs(z - pole) <= kPoleTol * std::max(1.0, std::abs(z)))
      throw Error(ErrorCode::PoleEvaluation, "partial sum evaluated at a pole", k + 1, z);
    basis *= (z - sol.pair.y(k)) / (z - pole);
  }
  return out;
}

Scalar evaluate_partial_sum(const ExpansionSolution& sol, long N, Scalar z) {
  Scalar s{};
  for (Scalar t : expansion_terms(sol, N, z)) s += t;
  return s;
}

Scalar residual(const ExpansionSolution& sol, long N, Scalar z) {
  const BiquadraticCurve& cv = sol.eq.curve;
  if (cv.is_branch_point(z)) throw Error(ErrorCode::BranchPointEvaluation, "residual at a branch point", std::nullopt, z);
  const RootPair rp = cv.y_roots(z);
  const Scalar s_lo = evaluate_partial_sum(sol, N, rp.lo);
  const Scalar s_hi = evaluate_partial_sum(sol, N, rp.hi);
  return sol.eq.a(z) * (s_hi - s_lo) / (rp.hi - rp.lo) - sol.eq.c(z) * (s_lo + s_hi) / 2.0 - sol.eq.d(z);
}

InterpolationReport verify_interpolation(const ExpansionSolution& sol, long N, Real tol) {
  InterpolationReport rep;
  std::vector<Scalar> oracle;
  long reach = N;
  try {
    oracle = stepwise_oracle(sol, N);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::HitSingularLattice) throw;
    reach = e.index().value_or(0);
    oracle = stepwise_oracle(sol, reach);
  }
  rep.errors.assign(static_cast<size_t>(N) + 1, std::numeric_limits<Real>::quiet_NaN());
  for (long j = 0; j <= N; ++j) {
    if (j > reach) {
      rep.oracle_singular.push_back(j);
      continue;
    }
    const Scalar f = oracle[static_cast<size_t>(j)];
    const Real err = std::abs(evaluate_partial_sum(sol, N, sol.pair.y(j)) - f) / (1.0 + std::abs(f));
    rep.errors[static_cast<size_t>(j)] = err;
    rep.max_error = std::max(rep.max_error, err);
    if (!(err <= tol)) rep.failing.push_back(j);
  }
  return rep;
}

}  // namespace ellhyp
