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


// Shared test fixtures: curves, lattices and random generators.

#ifndef ELLHYP_TESTS_FIXTURES_HPP
#define ELLHYP_TESTS_FIXTURES_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "ellhyp/curve.hpp"
#include "ellhyp/diffops.hpp"
#include "ellhyp/lattice.hpp"

namespace fixtures {

using ellhyp::Real;
using ellhyp::Scalar;

inline Real rel_err(Scalar got, Scalar want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

inline Scalar rand_complex(std::mt19937_64& rng, Real lo = -1.0, Real hi = 1.0) {
  std::uniform_real_distribution<Real> u(lo, hi);
  const Real re = u(rng);
  return {re, u(rng)};
}

inline Real rand_real(std::mt19937_64& rng, Real lo, Real hi) {
  return std::uniform_real_distribution<Real>(lo, hi)(rng);
}

/// Random curve; imaginary parts scaled by `im`.
inline ellhyp::BiquadraticCurve random_curve(std::mt19937_64& rng, Real span = 1.0, Real im = 0.3) {
  ellhyp::BiquadraticCurve::Grid g{};
  for (auto& row : g)
    for (auto& v : row) {
      const Real re = rand_real(rng, -span, span);
      v = {re, im * rand_real(rng, -span, span)};
    }
  return ellhyp::BiquadraticCurve(g);
}

/// Random point on the curve: random x, lower root in y.
inline std::pair<Scalar, Scalar> point_on(const ellhyp::BiquadraticCurve& cv, Scalar x) {
  return {x, cv.y_roots(x).lo};
}

/// y_n = x_n = n and y'_n = x'_n = n + 1/2 on the h = 1 linear curve.
inline ellhyp::BasisPair linear_pair(long n = 12) {
  const auto cv = ellhyp::linear_curve(0.0, 0.0, 1.0);
  ellhyp::BasisPair pair(ellhyp::Lattice({cv, 0.0, 0.0}), ellhyp::Lattice({cv, 0.5, 0.5}));
  pair.ensure(n);
  return pair;
}

/// Two lattices on a random complex curve.
inline ellhyp::BasisPair random_pair(std::uint64_t seed, long n = 12) {
  std::mt19937_64 rng(seed);
  const auto cv = random_curve(rng);
  const Scalar x0 = rand_complex(rng), xp0 = rand_complex(rng);
  ellhyp::BasisPair pair(ellhyp::Lattice({cv, x0, std::nullopt}), ellhyp::Lattice({cv, xp0, std::nullopt}));
  pair.ensure(n);
  return pair;
}

/// Two lattices on an Askey-Wilson curve with complex q.
inline ellhyp::BasisPair aw_pair(long n = 12) {
  const auto cv = ellhyp::askey_wilson_curve(0.1, 1.0, Scalar(0.8, 0.3), Scalar(0.7, 0.4));
  ellhyp::BasisPair pair(ellhyp::Lattice({cv, Scalar(0.4, 0.2), std::nullopt}),
                         ellhyp::Lattice({cv, Scalar(-0.9, 0.5), std::nullopt}));
  pair.ensure(n);
  return pair;
}

/// Geometric lattices with complex q (off the real axis, so no collapse over a few dozen steps).
inline ellhyp::BasisPair geometric_pair(long n = 12) {
  const auto cv = ellhyp::geometric_curve(0.2, 1.0, -0.1, 1.3, Scalar(0.8, 0.45));
  ellhyp::BasisPair pair(ellhyp::Lattice({cv, Scalar(1.1, 0.3), std::nullopt}),
                         ellhyp::Lattice({cv, Scalar(-0.7, 1.2), std::nullopt}));
  pair.ensure(n);
  return pair;
}

}  // namespace fixtures

#endif  // ELLHYP_TESTS_FIXTURES_HPP
