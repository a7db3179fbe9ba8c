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
#include "ellhyp/diffops.hpp"
#include "fixtures.hpp"

using ellhyp::BasisKind;
using ellhyp::BasisPair;
using ellhyp::BiquadraticCurve;
using ellhyp::CnMethod;
using ellhyp::DnPoint;
using ellhyp::Error;
using ellhyp::ErrorCode;
using ellhyp::Polynomial;
using ellhyp::RationalFunction;
using ellhyp::Scalar;
using fixtures::rand_complex;

namespace {

std::vector<BasisPair> all_pairs() {
  return {fixtures::linear_pair(), fixtures::random_pair(1), fixtures::random_pair(2), fixtures::aw_pair(),
          fixtures::geometric_pair()};
}

}  // namespace

TEST_CASE("pointwise D and M") {
  const BiquadraticCurve lin = ellhyp::linear_curve(0.0, 0.0, 1.0);
  CHECK(std::abs(ellhyp::apply_D(lin, [](Scalar t) { return t * t; }, 0.0) - Scalar(1.0)) < 1e-14);
  CHECK(std::abs(ellhyp::apply_M(lin, [](Scalar t) { return t; }, 0.0) - Scalar(0.5)) < 1e-14);

  std::mt19937_64 rng(4);
  const BiquadraticCurve cv = fixtures::random_curve(rng);
  for (int t = 0; t < 10; ++t) {
    const Scalar x = rand_complex(rng, -2, 2);
    CHECK(ellhyp::apply_D(cv, [](Scalar) { return Scalar(3.0); }, x) == Scalar(0.0));
    CHECK(std::abs(ellhyp::apply_M(cv, [](Scalar) { return Scalar(3.0); }, x) - Scalar(3.0)) < 1e-15);
  }

  // phi = -psi at x = 0 on y^2 = 1 + x^2 (+ x^2 y^2 to keep Y_2 alive).
  BiquadraticCurve::Grid g{};
  g[0][2] = 1.0;
  g[0][0] = -1.0;
  g[2][0] = -1.0;
  g[2][2] = 1.0;
  const BiquadraticCurve sym(g);
  CHECK(std::abs(ellhyp::apply_M(sym, [](Scalar t) { return t * t * t; }, 0.0)) < 1e-15);

  const BiquadraticCurve aw = ellhyp::askey_wilson_curve(0.0, 1.0, 1.0, 0.5);
  try {
    (void)ellhyp::apply_D(aw, [](Scalar t) { return t; }, 2.0);
    FAIL("expected BranchPointEvaluation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BranchPointEvaluation);
  }
}

TEST_CASE("property: D and M are symmetric and D is linear") {
  std::mt19937_64 rng(21);
  const BiquadraticCurve cv = fixtures::random_curve(rng);
  const auto f = [](Scalar t) { return std::exp(t) / (t - 3.0); };
  const auto h = [](Scalar t) { return t * t * t - 2.0 * t; };
  for (int k = 0; k < 20; ++k) {
    const Scalar x = rand_complex(rng, -1.5, 1.5);
    const auto rp = cv.y_roots(x);
    const Scalar d1 = (f(rp.hi) - f(rp.lo)) / (rp.hi - rp.lo);
    const Scalar d2 = (f(rp.lo) - f(rp.hi)) / (rp.lo - rp.hi);
    CHECK(std::abs(d1 - d2) <= 1e-14 * std::abs(d1));
    CHECK(std::abs(ellhyp::apply_D(cv, f, x) - d1) <= 1e-14 * std::abs(d1));
    const Scalar a(0.3, -1.2), b(2.0, 0.5);
    const Scalar lin = ellhyp::apply_D(cv, [&](Scalar t) { return a * f(t) + b * h(t); }, x);
    const Scalar sep = a * ellhyp::apply_D(cv, f, x) + b * ellhyp::apply_D(cv, h, x);
    CHECK(std::abs(lin - sep) <= 1e-12 * (1 + std::abs(sep)));
  }
}

TEST_CASE("symbolic D of a simple fraction") {
  std::mt19937_64 rng(31);
  for (int c = 0; c < 3; ++c) {
    const BiquadraticCurve cv = fixtures::random_curve(rng);
    for (int a = 0; a < 3; ++a) {
      const Scalar A = rand_complex(rng, -2, 2);
      const RationalFunction f(Polynomial{1.0}, Polynomial{-A, 1.0});
      const auto g = ellhyp::apply_D_rational(cv, f);
      CHECK_FALSE(g.reconstructed);
      const auto xr = cv.x_roots(A);
      for (int k = 0; k < 20; ++k) {
        const Scalar x = rand_complex(rng, -2, 2);
        const Scalar closed = -cv.X(2)(x) / (cv.Y(2)(A) * (x - xr.lo) * (x - xr.hi));
        const Scalar point = ellhyp::apply_D(cv, [&](Scalar t) { return 1.0 / (t - A); }, x);
        CHECK(std::abs(g.value(x) - point) <= 1e-9 * std::abs(point));
        CHECK(std::abs(closed - point) <= 1e-9 * std::abs(point));
      }
    }
  }
}

TEST_CASE("symbolic D of constants, polynomials and basis functions") {
  const BasisPair pair = fixtures::random_pair(5);
  const BiquadraticCurve& cv = pair.curve();
  CHECK(ellhyp::apply_D_rational(cv, RationalFunction(Polynomial{4.0})).value.numer().is_zero());

  const RationalFunction cube(Polynomial{1.0, -2.0, 0.5, 1.0});
  const auto dc = ellhyp::apply_D_rational(cv, cube);
  std::mt19937_64 rng(6);
  for (int k = 0; k < 10; ++k) {
    const Scalar x = rand_complex(rng, -2, 2);
    const Scalar want = ellhyp::apply_D(cv, cube, x);
    CHECK(std::abs(dc.value(x) - want) <= 1e-9 * std::max(1.0, std::abs(want)));
  }

  // Y_2 as a rational function.
  const Polynomial num = Polynomial{-pair.y(0), 1.0} * Polynomial{-pair.y(1), 1.0};
  const Polynomial den = Polynomial{-pair.yp(1), 1.0} * Polynomial{-pair.yp(2), 1.0};
  const auto dy2 = ellhyp::apply_D_rational(cv, RationalFunction(num, den));
  const Scalar c2 = ellhyp::compute_Cn(pair, 2);
  for (Scalar x : ellhyp::sample_points(pair, 20, 77)) {
    const Scalar want = c2 * cv.X(2)(x) * ellhyp::basis_eval(pair, BasisKind::X, 1, x) /
                        ((x - pair.xp(0)) * (x - pair.xp(2)));
    CHECK(std::abs(dy2.value(x) - want) <= 1e-8 * std::abs(want));
  }
}

TEST_CASE("property: symbolic D of a proper fraction carries the X_2 factor") {
  std::mt19937_64 rng(12);
  for (int c = 0; c < 5; ++c) {
    const BiquadraticCurve cv = fixtures::random_curve(rng);
    for (int t = 0; t < 5; ++t) {
      std::vector<Scalar> nc(static_cast<size_t>(1 + t % 2)), dc(static_cast<size_t>(2 + t % 2));
      for (auto& v : nc) v = rand_complex(rng);
      for (auto& v : dc) v = rand_complex(rng);
      const auto g = ellhyp::apply_D_rational(cv, RationalFunction(Polynomial(nc), Polynomial(dc)));
      const auto [q, r] = ellhyp::divmod(g.value.numer(), cv.X(2));
      const double rn = r.is_zero() ? 0.0 : r.max_abs_coeff();
      CHECK(rn <= 1e-9 * g.value.numer().max_abs_coeff());
    }
  }
}

TEST_CASE("forced reconstruction agrees with the symbolic route") {
  std::mt19937_64 rng(13);
  const BiquadraticCurve cv = fixtures::random_curve(rng);
  const RationalFunction f(Polynomial{0.5, 1.0}, Polynomial{Scalar(0.3, 0.2), -1.0, 1.0});
  std::vector<ellhyp::Diagnostic> log;
  const auto sym = ellhyp::apply_D_rational(cv, f);
  const auto rec = ellhyp::apply_D_rational(cv, f, &log, true);
  CHECK(rec.reconstructed);
  REQUIRE(log.size() == 1);
  CHECK(log[0].code == ErrorCode::ReconstructionFallback);
  for (int k = 0; k < 10; ++k) {
    const Scalar x = rand_complex(rng, -1, 1);
    CHECK(std::abs(rec.value(x) - sym.value(x)) <= 1e-7 * std::abs(sym.value(x)));
  }
}

TEST_CASE("basis functions") {
  const BasisPair lin = fixtures::linear_pair();
  CHECK(ellhyp::basis_eval(lin, BasisKind::Y, 0, Scalar(7.3, 2.0)) == Scalar(1.0));
  for (long j = 0; j < 4; ++j) CHECK(ellhyp::basis_eval(lin, BasisKind::Y, 4, lin.y(j)) == Scalar(0.0));
  CHECK(std::abs(ellhyp::basis_eval(lin, BasisKind::Y, 2, 5.0) - Scalar(20.0 / 8.75)) < 1e-14);
  try {
    (void)ellhyp::basis_eval(lin, BasisKind::Y, 3, 2.5);
    FAIL("expected PoleEvaluation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PoleEvaluation);
  }
}

TEST_CASE("C_n formulas agree") {
  const BasisPair lin = fixtures::linear_pair();
  for (auto m : ellhyp::kAllCnMethods) CHECK(ellhyp::compute_Cn(lin, 0, m) == Scalar(0.0));
  const auto c1 = ellhyp::compute_Cn_all(lin, 1);
  CHECK(std::isfinite(std::abs(c1.value)));
  CHECK(c1.spread <= 1e-10);
  for (const auto& pair : all_pairs()) {
    for (long n = 1; n <= 10; ++n) {
      const auto all = ellhyp::compute_Cn_all(pair, n);
      CHECK(all.spread <= 1e-8);
      const Scalar a = ellhyp::compute_Cn(pair, n, CnMethod::AtXm1);
      const Scalar b = ellhyp::compute_Cn(pair, n, CnMethod::AtXn1);
      CHECK(std::abs(a - b) <= 1e-8 * std::abs(a));
    }
  }
}

TEST_CASE("C_n on a symmetric pair: residue formulas degenerate at vertical tangents") {
  // Seeding the primed lattice at a branch point makes y'_0 = y'_1, so the
  // residue formulas are unusable but the two derivative-free ones still agree.
  const BiquadraticCurve aw = ellhyp::askey_wilson_curve(0.0, 1.0, 1.0, 0.5);
  const Scalar ybp = -aw.X(1)(2.0) / (2.0 * aw.X(2)(2.0));
  BasisPair pair(ellhyp::Lattice({aw, Scalar(0.3, 0.4), std::nullopt}), ellhyp::Lattice({aw, 2.0, ybp}));
  pair.ensure(4);
  CHECK_THROWS_AS((void)ellhyp::compute_Cn(pair, 2, CnMethod::ResXp0), Error);
}

TEST_CASE("D_n closed forms") {
  for (const auto& pair : all_pairs()) {
    CHECK(ellhyp::eval_Dn(pair, 0, DnPoint::Xp0) == Scalar(1.0));
    const auto samples = ellhyp::sample_points(pair, 16, 3);
    for (long n = 1; n <= 6; ++n) {
      const Polynomial q = ellhyp::Dn_quadratic(pair, n, samples);
      for (auto at : {DnPoint::Xm1, DnPoint::Xn1, DnPoint::Xp0, DnPoint::Xpn}) {
        const Scalar closed = ellhyp::eval_Dn(pair, n, at);
        const Scalar fitted = q(ellhyp::dn_point(pair, n, at));
        CHECK(std::abs(closed - fitted) <= 1e-7 * std::max(std::abs(closed), q.max_abs_coeff()));
      }
      // Direct evaluation where it is defined.
      const Scalar xm = pair.x(-1);
      CHECK(std::abs(ellhyp::Dn_direct(pair, n, xm) - ellhyp::eval_Dn(pair, n, DnPoint::Xm1)) <=
            1e-8 * std::abs(ellhyp::eval_Dn(pair, n, DnPoint::Xm1)));
      const Scalar ratio = ellhyp::eval_Dn(pair, n, DnPoint::Xm1) / ellhyp::eval_Dn(pair, n, DnPoint::Xp0);
      const auto X2 = pair.curve().X(2);
      const Scalar want = -X2(pair.x(-1)) * (pair.y(0) - pair.y(-1)) / (X2(pair.xp(0)) * (pair.yp(1) - pair.yp(0)));
      CHECK(std::abs(ratio - want) <= 1e-10 * std::abs(want));
    }
  }
  const BasisPair lin = fixtures::linear_pair();
  const Scalar c1 = ellhyp::compute_Cn(lin, 1);
  CHECK(std::abs(ellhyp::eval_Dn(lin, 1, DnPoint::Xp0) - c1 * (lin.yp(1) - lin.yp(0)) / 2.0) < 1e-15);
}

TEST_CASE("D Y_n and M Y_n identities") {
  for (const auto& pair : all_pairs()) {
    const auto samples = ellhyp::sample_points(pair, 20, 11);
    REQUIRE(samples.size() == 20);
    CHECK(ellhyp::verify_D_basis_identity(pair, 0, samples) == 0.0);
    for (long n = 1; n <= 8; ++n) {
      CHECK(ellhyp::verify_D_basis_identity(pair, n, samples) <= 1e-7);
      CHECK(ellhyp::verify_M_basis_quadratic(pair, n, samples) <= 1e-8);
    }
  }
  const BasisPair lin = fixtures::linear_pair();
  CHECK_THROWS_AS((void)ellhyp::verify_D_basis_identity(lin, 2, {lin.xp(0)}), Error);
}

TEST_CASE("sample points are reproducible") {
  const BasisPair pair = fixtures::random_pair(9);
  CHECK(ellhyp::sample_points(pair, 10, 5) == ellhyp::sample_points(pair, 10, 5));
}
