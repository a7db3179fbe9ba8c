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


#include "ellhyp/lattice.hpp"

#include <cmath>
#include <string>
#include <type_traits>

namespace ellhyp {

namespace {

constexpr Real kSeedTol = 1e-10;
constexpr Real kFlatTol = 1e-13;
constexpr int kFlatSteps = 3;

bool finite(Scalar z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// The root of F(., y) = 0 other than `known`.
Scalar x_complement(const BiquadraticCurve& cv, Scalar y, Scalar known, long n) {
  if (cv.is_leading_y_negligible(y))
    throw Error(ErrorCode::LatticeSingularity, "Y_2(y) vanishes", n, y);
  const Scalar r = -cv.Y(1)(y) / cv.Y(2)(y) - known;
  if (!finite(r)) throw Error(ErrorCode::LatticeSingularity, "non-finite lattice point", n, y);
  return r;
}

/// The root of F(x, .) = 0 other than `known`.
Scalar y_complement(const BiquadraticCurve& cv, Scalar x, Scalar known, long n) {
  if (cv.is_leading_x_negligible(x))
    throw Error(ErrorCode::LatticeSingularity, "X_2(x) vanishes", n, x);
  const Scalar r = -cv.X(1)(x) / cv.X(2)(x) - known;
  if (!finite(r)) throw Error(ErrorCode::LatticeSingularity, "non-finite lattice point", n, x);
  return r;
}

Scalar pick_y0(const LatticeSpec& s) {
  if (s.y0) return *s.y0;
  const RootPair rp = s.curve.y_roots(s.x0);
  return std::visit(
      [&](const auto& c) -> Scalar {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, ByHint>) {
          return std::abs(rp.lo - c.hint) <= std::abs(rp.hi - c.hint) ? rp.lo : rp.hi;
        } else {
          if (c.index != 0 && c.index != 1)
            throw Error(ErrorCode::ValidationError, "root index must be 0 or 1");
          return c.index == 0 ? rp.lo : rp.hi;
        }
      },
      s.choice);
}

}  // namespace

Lattice::Lattice(LatticeSpec spec) : spec_(std::move(spec)), seed_(spec_.seed_index) {
  const Scalar y0 = pick_y0(spec_);
  spec_.y0 = y0;
  const Real s = spec_.curve.scale_at(spec_.x0, y0);
  if (std::abs(spec_.curve(spec_.x0, y0)) > kSeedTol * s)
    throw Error(ErrorCode::ValidationError, "seed (x0, y0) is not on the curve", seed_, spec_.x0);
  fx_.push_back(spec_.x0);
  fy_.push_back(y0);
}

Scalar Lattice::x(long n) const {
  if (!has(n)) throw Error(ErrorCode::NotMaterialized, "lattice index not generated", n);
  return n >= seed_ ? fx_[static_cast<size_t>(n - seed_)] : bx_[static_cast<size_t>(seed_ - 1 - n)];
}

Scalar Lattice::y(long n) const {
  if (!has(n)) throw Error(ErrorCode::NotMaterialized, "lattice index not generated", n);
  return n >= seed_ ? fy_[static_cast<size_t>(n - seed_)] : by_[static_cast<size_t>(seed_ - 1 - n)];
}

void Lattice::check_stagnation(Scalar dx, Scalar dy, long n, int& run) const {
  if (std::abs(dx) < kFlatTol && std::abs(dy) < kFlatTol) {
    if (++run >= kFlatSteps)
      throw Error(ErrorCode::LatticeStagnation, "lattice stopped moving", n);
  } else {
    run = 0;
  }
}

void Lattice::step_forward() {
  const long n = n_max();
  const Scalar xn = fx_.back(), yn = fy_.back();
  const Scalar y1 = y_complement(spec_.curve, xn, yn, n + 1);
  const Scalar x1 = x_complement(spec_.curve, y1, xn, n + 1);
  check_stagnation(x1 - xn, y1 - yn, n + 1, fwd_flat_);
  fx_.push_back(x1);
  fy_.push_back(y1);
}

void Lattice::step_backward() {
  const long n = n_min();
  const Scalar xn = bx_.empty() ? fx_.front() : bx_.back();
  const Scalar yn = by_.empty() ? fy_.front() : by_.back();
  const Scalar xm = x_complement(spec_.curve, yn, xn, n - 1);
  const Scalar ym = y_complement(spec_.curve, xm, yn, n - 1);
  check_stagnation(xn - xm, yn - ym, n - 1, bwd_flat_);
  bx_.push_back(xm);
  by_.push_back(ym);
}

void Lattice::ensure(long lo, long hi) {
  while (n_max() < hi) step_forward();
  while (n_min() > lo) step_backward();
}

Lattice generate(const LatticeSpec& spec, long n_min, long n_max) {
  if (n_min > spec.seed_index || n_max < spec.seed_index)
    throw Error(ErrorCode::ValidationError, "generate range must contain the seed index");
  Lattice lat(spec);
  lat.ensure(n_min, n_max);
  return lat;
}

std::pair<Scalar, Scalar> oracle_lattice(const OracleKind& kind, long n) {
  const Real rn = static_cast<Real>(n);
  return std::visit(
      [&](const auto& k) -> std::pair<Scalar, Scalar> {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, LinearLattice>) {
          return {k.x0 + rn * k.h, k.y0 + rn * k.h};
        } else if constexpr (std::is_same_v<T, GeometricLattice>) {
          const Scalar qn = std::pow(k.q, rn);
          return {k.a + k.b * qn, k.u + k.v * qn};
        } else {
          const Scalar qn = std::pow(k.q, rn);
          const Scalar r = std::sqrt(k.q);
          return {k.a + k.b * qn + k.c / qn, k.a + k.b * qn / r + k.c * r / qn};
        }
      },
      kind);
}

BiquadraticCurve oracle_curve(const OracleKind& kind) {
  return std::visit(
      [](const auto& k) -> BiquadraticCurve {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, LinearLattice>) {
          return linear_curve(k.x0, k.y0, k.h);
        } else if constexpr (std::is_same_v<T, GeometricLattice>) {
          return geometric_curve(k.a, k.b, k.u, k.v, k.q);
        } else {
          return askey_wilson_curve(k.a, k.b, k.c, k.q);
        }
      },
      kind);
}

LatticeSpec oracle_spec(const OracleKind& kind) {
  const auto [x0, y0] = oracle_lattice(kind, 0);
  return LatticeSpec{oracle_curve(kind), x0, y0, ByIndex{0}, 0};
}

}  // namespace ellhyp
