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


#ifndef ELLHYP_LATTICE_HPP
#define ELLHYP_LATTICE_HPP

#include <utility>
#include <variant>
#include <vector>

#include "ellhyp/curve.hpp"

namespace ellhyp {

/// Picks y0 as the root of F(x0, .) nearest to a hint.
struct ByHint {
  Scalar hint;
};
/// Picks y0 as RootPair::lo (0) or RootPair::hi (1).
struct ByIndex {
  int index;
};
using RootChoice = std::variant<ByHint, ByIndex>;

/// Seed of an elliptic lattice. When y0 is absent it is chosen among the
/// roots of F(x0, .) = 0 by `choice`; y1 is always the other root.
struct LatticeSpec {
  BiquadraticCurve curve;
  Scalar x0;
  std::optional<Scalar> y0;
  RootChoice choice = ByIndex{0};
  /// Lattice index carried by the seed point.
  long seed_index = 0;
};

/**
 * Points (x_n, y_n), n in Z, with (x_n, y_n) and (x_n, y_{n+1}) on the curve.
 *
 * Each step takes the complementary root through the Vieta sum, so no square
 * root is ever re-taken. Points are cached in both directions and only grow.
 */
class Lattice {
 public:
  /// Throws ValidationError when the seed is off the curve.
  explicit Lattice(LatticeSpec spec);

  /// Materializes indices [n_min, n_max]. Throws LatticeSingularity or
  /// LatticeStagnation with the failing index; points already built are kept.
  void ensure(long n_min, long n_max);

  /// Throw NotMaterialized outside the cached range.
  Scalar x(long n) const;
  Scalar y(long n) const;

  long n_min() const noexcept { return seed_ - static_cast<long>(bx_.size()); }
  long n_max() const noexcept { return seed_ + static_cast<long>(fx_.size()) - 1; }
  bool has(long n) const noexcept { return n >= n_min() && n <= n_max(); }

  const LatticeSpec& spec() const noexcept { return spec_; }
  const BiquadraticCurve& curve() const noexcept { return spec_.curve; }

 private:
  void step_forward();
  void step_backward();
  void check_stagnation(Scalar dx, Scalar dy, long n, int& run) const;

  LatticeSpec spec_;
  long seed_;
  std::vector<Scalar> fx_, fy_;  // indices seed, seed+1, ...
  std::vector<Scalar> bx_, by_;  // indices seed-1, seed-2, ...
  int fwd_flat_ = 0;
  int bwd_flat_ = 0;
};

/// Lattice materialized on [n_min, n_max]; requires n_min <= seed <= n_max.
Lattice generate(const LatticeSpec& spec, long n_min, long n_max);

struct LinearLattice {
  Scalar x0, y0, h;
};
struct GeometricLattice {
  Scalar a, b, u, v, q;
};
struct AskeyWilsonLattice {
  Scalar a, b, c, q;
};
using OracleKind = std::variant<LinearLattice, GeometricLattice, AskeyWilsonLattice>;

/// Closed-form (x_n, y_n) of the degenerate families.
std::pair<Scalar, Scalar> oracle_lattice(const OracleKind& kind, long n);
/// Curve carrying the closed-form family.
BiquadraticCurve oracle_curve(const OracleKind& kind);
/// Seed at index 0 reproducing the closed-form family.
LatticeSpec oracle_spec(const OracleKind& kind);

}  // namespace ellhyp

#endif  // ELLHYP_LATTICE_HPP
