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


#include <cmath>
#include <random>

#include "doctest.h"
#include "ellhyp/convergence.hpp"
#include "ellhyp/solver.hpp"
#include "equations.hpp"
#include "fixtures.hpp"

using ellhyp::BiquadraticCurve;
using ellhyp::ByCandidateIndex;
using ellhyp::DifferenceEquation;
using ellhyp::Error;
using ellhyp::ErrorCode;
using ellhyp::ExpansionSolution;
using ellhyp::Polynomial;
using ellhyp::Real;
using ellhyp::Scalar;
using ellhyp::SolveOptions;
using fixtures::rand_complex;

using fixtures::general_eqs;
using fixtures::linear_log_eq;
using fixtures::random_cubic;
using fixtures::random_eq;
using fixtures::solve_n;

TEST_CASE("equation construction") {
  const auto cv = ellhyp::askey_wilson_curve(0.1, 1.0, 0.5, 0.5);
  const Polynomial X2 = cv.X(2);
  const auto eq = DifferenceEquation::from_polynomials(cv, Polynomial{1.0, 2.0}, Polynomial{3.0, 4.0} * X2,
                                                       Polynomial{-1.0, 0.5} * X2);
  CHECK(std::abs(eq.beta - 4.0) < 1e-12);
  CHECK(std::abs(eq.gamma - 3.0) < 1e-12);
  CHECK(std::abs(eq.delta - 0.5) < 1e-12);
  CHECK(std::abs(eq.epsilon + 1.0) < 1e-12);

  std::mt19937_64 rng(3);
  const BiquadraticCurve rc = fixtures::random_curve(rng);
  REQUIRE(rc.X(2).degree() == 2);
  try {
    (void)DifferenceEquation::from_polynomials(rc, Polynomial{1.0, 2.0},
                                               Polynomial{3.0, 4.0} * rc.X(2) + Polynomial{0.1}, Polynomial{});
    FAIL("missing factor accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingFactor);
  }
  try {
    (void)DifferenceEquation::from_polynomials(cv, Polynomial{1, 0, 0, 0, 1}, Polynomial{}, Polynomial{});
    FAIL("quartic a accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeMismatch);
  }
}

TEST_CASE("convert_equation_form") {
  const auto s1 = ellhyp::convert_equation_form(Polynomial{-1.0}, Polynomial{1.0}, Polynomial{});
  CHECK(s1.beta.is_zero());
  CHECK(s1.gamma.is_zero());
  CHECK(std::abs(s1.half_diff(0.3) - 1.0) < 1e-15);

  const auto s2 = ellhyp::convert_equation_form(Polynomial{-0.5}, Polynomial{-0.5}, Polynomial{2.0});
  CHECK(s2.half_diff.is_zero());

  // Both forms give the same f(psi) from f(phi).
  std::mt19937_64 rng(5);
  const auto cv = ellhyp::linear_curve(0.0, 0.0, 1.0);
  const Polynomial a = random_cubic(rng), b = random_cubic(rng), c = random_cubic(rng);
  const auto s = ellhyp::convert_equation_form(a, b, c);
  for (int t = 0; t < 10; ++t) {
    const Scalar x = rand_complex(rng, -2, 2), fphi = rand_complex(rng);
    const auto r = cv.y_roots(x);
    const Scalar diff = r.hi - r.lo;
    const Scalar direct = -(a(x) * fphi + c(x)) / b(x);
    // half_diff diff (fpsi - fphi) / diff = beta (fphi + fpsi) + gamma.
    const Scalar symmetric = (s.beta(x) * fphi + s.gamma(x) + s.half_diff(x) * fphi) / (s.half_diff(x) - s.beta(x));
    CHECK(std::abs(diff) > 0.5);
    CHECK(fixtures::rel_err(symmetric, direct) < 1e-12);
  }
}

TEST_CASE("special points: certificates and selection") {
  for (const auto& eq : general_eqs()) {
    const auto sp = ellhyp::locate_special_points(eq, ellhyp::NearestTo{0.0});
    CHECK(sp.cert_m1.residual <= 1e-9);
    CHECK(sp.cert_p0.residual <= 1e-9);
    REQUIRE(sp.cert_m1.sign);
    REQUIRE(sp.cert_p0.sign);
    CHECK(std::abs(*sp.cert_m1.sign + 1.0) < 1e-6);
    CHECK(std::abs(*sp.cert_p0.sign - 1.0) < 1e-6);
    CHECK(sp.x_m1 != sp.x_p0);
    // Every candidate solves the squared condition.
    const Polynomial bg{eq.gamma, eq.beta};
    const Polynomial sq = 4.0 * eq.a * eq.a - bg * bg * eq.curve.P();
    for (Scalar x : sp.candidates) CHECK(std::abs(sq(x)) <= 1e-9 * sq.scale_at(x));
    // Index selection reproduces the same pair.
    const auto pos = [&](Scalar x) {
      return static_cast<int>(std::find(sp.candidates.begin(), sp.candidates.end(), x) - sp.candidates.begin());
    };
    const auto sp2 = ellhyp::locate_special_points(eq, ByCandidateIndex{pos(sp.x_m1), pos(sp.x_p0)});
    CHECK(sp2.x_m1 == sp.x_m1);
    CHECK(sp2.x_p0 == sp.x_p0);
    CHECK(sp2.y_0 == sp.y_0);
  }
}

TEST_CASE("special points: hand-solvable linear case") {
  // On (y - x)(y - x - 1), psi - phi = +-1 and X_2 = 1, so the x_{-1} condition
  // k (x - s) +- (beta x + gamma)/2 = 0 is linear in x for each sign.
  const auto cv = ellhyp::linear_curve(0.0, 0.0, 1.0);
  const Scalar k = 2.0, s = Scalar(0.3, 0.1), beta = 0.5, gamma = Scalar(-0.2, 0.4);
  const auto eq = DifferenceEquation::from_factors(cv, Polynomial{-k * s, k}, beta, gamma, 1.0, 0.0);
  const Scalar r_plus = (k * s - gamma / 2.0) / (k + beta / 2.0);
  const Scalar r_minus = (k * s + gamma / 2.0) / (k - beta / 2.0);
  const auto sp = ellhyp::locate_special_points(eq, ellhyp::NearestTo{r_plus});
  REQUIRE(sp.candidates.size() == 2);
  CHECK(std::abs(sp.x_m1 - r_plus) < 1e-12);
  CHECK(std::abs(sp.x_p0 - r_minus) < 1e-12);
  CHECK(std::abs(sp.y_0 - sp.y_m1 - 1.0) < 1e-12);
  CHECK(std::abs(sp.yp_1 - sp.yp_0 - 1.0) < 1e-12);
}

TEST_CASE("special points: logarithmic mode and d-independence") {
  const Scalar r1(0.2, 0.1), r2(3.1, -0.4), r3(-1.7, 0.9);
  const auto eq = linear_log_eq(r1, r2, r3, 1.0);
  const auto sp = ellhyp::locate_special_points(eq, ellhyp::NearestTo{2.0});
  // d vanishes only at r1, so x_{-1} is forced there.
  CHECK(std::abs(sp.x_m1 - r1) < 1e-12);
  CHECK((std::abs(sp.x_p0 - r2) < 1e-12 || std::abs(sp.x_p0 - r3) < 1e-12));
  REQUIRE(sp.zeta);
  CHECK(std::abs(*sp.zeta - (sp.x_p0 == r2 ? r3 : r2)) < 1e-10);

  try {
    const auto bad = ellhyp::locate_special_points(eq, ByCandidateIndex{2, 0});
    FAIL("x_{-1} with d(x_{-1}) != 0 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoSpecialPoint);
  }

  for (const auto& base : general_eqs()) {
    const auto other = DifferenceEquation::from_factors(base.curve, base.a, base.beta, base.gamma,
                                                        base.delta * 3.0 + 1.0, base.epsilon - 2.0);
    const auto s1 = ellhyp::locate_special_points(base, ellhyp::NearestTo{0.0});
    const auto s2 = ellhyp::locate_special_points(other, ellhyp::NearestTo{0.0});
    CHECK(s1.x_m1 == s2.x_m1);
    CHECK(s1.x_p0 == s2.x_p0);
  }
}

TEST_CASE("build_lattices") {
  for (const auto& eq : general_eqs()) {
    const auto sp = ellhyp::locate_special_points(eq, ellhyp::NearestTo{0.0});
    const auto pair = ellhyp::build_lattices(eq, sp);
    const auto& cv = eq.curve;
    for (auto [x, y] : {std::pair{pair.x(-1), pair.y(-1)}, std::pair{pair.x(-1), pair.y(0)},
                        std::pair{pair.xp(0), pair.yp(0)}, std::pair{pair.xp(0), pair.yp(1)}})
      CHECK(std::abs(cv(x, y)) <= 1e-9 * cv.scale_at(x, y));
    CHECK(pair.x(-1) == sp.x_m1);
    CHECK(std::abs(pair.y(0) - sp.y_0) < 1e-12);
    CHECK(std::abs(pair.yp(1) - sp.yp_1) < 1e-12);

    // Swapping y'_0 and y'_1 flips the certificate sign and breaks the condition.
    const auto good = ellhyp::certificate_p0(eq, pair.xp(0), pair.yp(0), pair.yp(1));
    const auto swapped = ellhyp::certificate_p0(eq, pair.xp(0), pair.yp(1), pair.yp(0));
    REQUIRE(good.sign);
    REQUIRE(swapped.sign);
    CHECK(*good.sign * *swapped.sign < 0);
    CHECK(swapped.residual > 1e-6);
  }

  // Logarithmic linear case: arithmetic progressions through two roots of a.
  const Scalar r1(0.2, 0.1), r2(3.1, -0.4), r3(-1.7, 0.9);
  const auto eq = linear_log_eq(r1, r2, r3, 1.0);
  const auto sp = ellhyp::locate_special_points(eq, ellhyp::NearestTo{2.0});
  auto pair = ellhyp::build_lattices(eq, sp);
  pair.ensure(8);
  const Scalar h = pair.x(0) - pair.x(-1), hp = pair.xp(1) - pair.xp(0);
  CHECK(std::abs(std::abs(h) - 1.0) < 1e-12);
  CHECK(std::abs(std::abs(hp) - 1.0) < 1e-12);
  for (long n = -1; n <= 8; ++n) CHECK(std::abs(pair.x(n) - (r1 + Scalar(static_cast<Real>(n + 1)) * h)) < 1e-11);
  for (long n = 0; n <= 8; ++n) CHECK(std::abs(pair.xp(n) - (sp.x_p0 + Scalar(static_cast<Real>(n)) * hp)) < 1e-11);
}

TEST_CASE("coefficients: trivial right side") {
  const auto base = random_eq(11);
  const auto eq = DifferenceEquation::from_factors(base.curve, base.a, base.beta, base.gamma, 0.0, 0.0);
  const auto sol = solve_n(eq, 8);
  for (Scalar c : sol.coeffs) CHECK(c == Scalar(0.0));
  for (Scalar f : ellhyp::stepwise_oracle(sol, 8)) CHECK(f == Scalar(0.0));
  for (Scalar z : {Scalar(0.3, 0.2), Scalar(-1.1, 0.7)}) CHECK(ellhyp::residual(sol, 8, z) == Scalar(0.0));
}

TEST_CASE("coefficients: c_0, c_1 and two-route agreement") {
  for (const auto& eq : general_eqs()) {
    const auto sol = solve_n(eq, 10);
    const Scalar xm = sol.pair.x(-1);
    CHECK(fixtures::rel_err(sol.coeffs[0], -(eq.delta * xm + eq.epsilon) / (eq.beta * xm + eq.gamma)) < 1e-14);
    // f(y_0) from the equation at x_{-1}.
    CHECK(fixtures::rel_err(sol.coeffs[0], sol.coeffs_check[0]) < 1e-9);
    REQUIRE(sol.c1_alt);
    CHECK(fixtures::rel_err(sol.coeffs[1], *sol.c1_alt) < 1e-8);
    CHECK(std::abs(sol.coeffs[3] - sol.coeffs_check[3]) <= 1e-8 * std::abs(sol.coeffs[3]));
    CHECK(sol.route_disagreement <= 1e-7);
    CHECK(sol.Cn[0] == Scalar(0.0));
  }
}

TEST_CASE("interpolation against the stepwise oracle") {
  for (const auto& eq : general_eqs()) {
    for (long N : {0L, 1L, 8L, 10L}) {
      const auto sol = solve_n(eq, N);
      const auto rep = ellhyp::verify_interpolation(sol, N);
      CHECK(rep.max_error <= 1e-7);
      CHECK(rep.failing.empty());
      CHECK(rep.oracle_singular.empty());
      // The oracle's f(y_0) is computed from d / (a / (y_0 - y_{-1}) - c / 2), not from c_0.
      if (N == 0) CHECK(rep.max_error <= 1e-14);
    }
    const auto sol = solve_n(eq, 1);
    const auto f = ellhyp::stepwise_oracle(sol, 1);
    const Scalar s1 = sol.coeffs[0] + sol.coeffs[1] * ellhyp::basis_eval(sol.pair, ellhyp::BasisKind::Y, 1, sol.pair.y(1));
    CHECK(fixtures::rel_err(s1, f[1]) < 1e-10);
  }
}

TEST_CASE("partial sums and residuals") {
  for (const auto& eq : general_eqs()) {
    const auto sol = solve_n(eq, 10);
    for (Scalar z : {Scalar(0.37, -0.21), Scalar(1.3, 0.8)}) CHECK(ellhyp::evaluate_partial_sum(sol, 0, z) == sol.coeffs[0]);
    for (long N : {1L, 5L, 10L}) CHECK(std::abs(ellhyp::evaluate_partial_sum(sol, N, sol.pair.y(0)) - sol.coeffs[0]) < 1e-15);
    for (long j = 0; j <= 9; ++j) {
      const Scalar x = sol.pair.x(j);
      CHECK(std::abs(ellhyp::residual(sol, 10, x)) <= 1e-7 * eq.scale(x));
    }
    try {
      (void)ellhyp::evaluate_partial_sum(sol, 10, sol.pair.yp(3));
      FAIL("pole accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::PoleEvaluation);
    }
  }
}

TEST_CASE("negative control: corrupted coefficient") {
  for (const auto& eq : general_eqs()) {
    auto sol = solve_n(eq, 8);
    sol.coeffs[5] *= 1.01;
    const auto rep = ellhyp::verify_interpolation(sol, 8);
    CHECK(rep.failing == std::vector<long>{5, 6, 7, 8});
  }
}

TEST_CASE("logarithmic mode") {
  const Scalar r1(0.2, 0.1), r2(3.1, -0.4), r3(-1.7, 0.9);
  const auto eq = linear_log_eq(r1, r2, r3, Scalar(0.7, -0.3));
  SolveOptions opts;
  opts.N = 10;
  try {
    (void)ellhyp::solve(eq, opts);
    FAIL("missing c0_free accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingField);
    CHECK(std::string(e.what()).find("c0_free") != std::string::npos);
  }
  opts.c0_free = Scalar(0.25, 0.5);
  const auto sol = ellhyp::solve(eq, opts);
  CHECK(sol.mode == ellhyp::Mode::Logarithmic);
  CHECK(sol.coeffs[0] == *opts.c0_free);
  for (long n = 1; n <= 6; ++n)
    CHECK(std::abs(sol.coeffs[static_cast<size_t>(n)] - sol.coeffs_check[static_cast<size_t>(n)]) <=
          1e-8 * std::abs(sol.coeffs[static_cast<size_t>(n)]));
  CHECK(ellhyp::verify_interpolation(sol, 10).max_error <= 1e-7);

  // Homogeneous right side leaves only the constant.
  const auto zero = linear_log_eq(r1, r2, r3, 0.0);
  const auto zsol = ellhyp::solve(zero, opts);
  for (size_t n = 1; n < zsol.coeffs.size(); ++n) CHECK(zsol.coeffs[n] == Scalar(0.0));

  std::mt19937_64 rng(17);
  for (int t = 0; t < 3; ++t) {
    const auto cv = fixtures::random_curve(rng);
    const Scalar a1 = rand_complex(rng), a2 = rand_complex(rng, -3, 3), a3 = rand_complex(rng, -3, 3);
    const auto req = DifferenceEquation::from_factors(cv, Polynomial::from_roots(std::vector<Scalar>{a1, a2, a3}), 0.0, 0.0,
                                                      Scalar(1.0, 0.2), -Scalar(1.0, 0.2) * a1);
    SolveOptions o;
    o.N = 8;
    o.c0_free = 1.0;
    o.select = ellhyp::NearestTo{a1};
    const auto rsol = ellhyp::solve(req, o);
    CHECK(rsol.route_disagreement <= 1e-8);
    CHECK(ellhyp::verify_interpolation(rsol, 8).max_error <= 1e-7);
  }
}

TEST_CASE("logarithmic mode: telescoping oracle on the linear curve") {
  // a = (x - x_{-1})(x - x'_0)(x - x'_0 - 1), d = delta (x - x_{-1}), so that
  // f(y_{k+1}) - f(y_k) = delta (u_{k-1} - u_k) with u_k = 1 / (x_k - x'_0).
  const Scalar xm(0.2, 0.1), xp0(-2.6, 0.35), delta(0.9, 0.4), c0(-0.3, 0.1);
  const auto eq = linear_log_eq(xm, xp0, xp0 + 1.0, delta);
  const auto sp = ellhyp::locate_special_points(eq, ellhyp::NearestTo{xm});
  REQUIRE(std::abs(sp.x_m1 - xm) < 1e-12);
  const long N = 10;
  const auto sol = ellhyp::expansion_coefficients_log(eq, ellhyp::build_lattices(eq, sp), sp, N, c0);
  const auto& p = sol.pair;
  if (std::abs(sp.x_p0 - xp0) < 1e-12) {
    REQUIRE(std::abs(p.x(0) - p.x(-1) - 1.0) < 1e-12);
  }
  const Scalar x_p0 = sp.x_p0;
  const Scalar h = p.x(0) - p.x(-1);
  const auto u = [&](long k) { return 1.0 / (p.x(k) - x_p0); };
  // With zeta = x'_0 + h the increments telescope; otherwise rely on the recurrence.
  if (sp.zeta && std::abs(*sp.zeta - (x_p0 + h)) < 1e-12) {
    for (long j = 0; j <= N; ++j) {
      const Scalar want = c0 + delta * (u(-1) - u(j - 1));
      CHECK(fixtures::rel_err(ellhyp::evaluate_partial_sum(sol, N, p.y(j)), want) < 1e-10);
    }
  } else {
    FAIL("fixture ordering changed: zeta != x'_0 + h");
  }
}
