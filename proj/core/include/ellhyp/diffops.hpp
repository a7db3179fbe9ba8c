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


#ifndef ELLHYP_DIFFOPS_HPP
#define ELLHYP_DIFFOPS_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ellhyp/lattice.hpp"

namespace ellhyp {

using ScalarFn = std::function<Scalar(Scalar)>;

/// (f(psi(x)) - f(phi(x))) / (psi(x) - phi(x)) over the y-roots at x.
/// Throws BranchPointEvaluation when the roots coincide.
Scalar apply_D(const BiquadraticCurve& curve, const ScalarFn& f, Scalar x);
/// (f(phi(x)) + f(psi(x))) / 2.
Scalar apply_M(const BiquadraticCurve& curve, const ScalarFn& f, Scalar x);

struct RationalD {
  RationalFunction value;
  /// Set when the symbolic route failed its spot check and the result was
  /// rebuilt from samples.
  bool reconstructed = false;
};

/**
 * D applied to a rational function, expanded through the symmetric functions
 * phi + psi = -X_1/X_2 and phi psi = X_0/X_2. The result is spot-checked
 * against apply_D; on mismatch it is rebuilt by rational interpolation of
 * pointwise values and a ReconstructionFallback entry is appended to `log`.
 */
RationalD apply_D_rational(const BiquadraticCurve& curve, const RationalFunction& f,
                           std::vector<Diagnostic>* log = nullptr, bool force_reconstruction = false);

/// Two lattices on one curve: (x_n, y_n) carries the zeros of the basis and
/// (x'_n, y'_n) its poles.
class BasisPair {
 public:
  /// Throws ValidationError unless both lattices use the same curve.
  BasisPair(Lattice unprimed, Lattice primed);

  /// Materializes what C_n, D_n and the basis up to index n need:
  /// unprimed [-1, n + 1], primed [0, n + 1].
  void ensure(long n);

  const BiquadraticCurve& curve() const noexcept { return unprimed_.curve(); }
  const Lattice& unprimed() const noexcept { return unprimed_; }
  const Lattice& primed() const noexcept { return primed_; }
  Scalar x(long n) const { return unprimed_.x(n); }
  Scalar y(long n) const { return unprimed_.y(n); }
  Scalar xp(long n) const { return primed_.x(n); }
  Scalar yp(long n) const { return primed_.y(n); }

 private:
  Lattice unprimed_;
  Lattice primed_;
};

enum class BasisKind { X, Y };

/// X_n(z) = prod_{k<n} (z - x_k) / prod_{k=1..n} (z - x'_k), and the same
/// with y for Y_n. Throws PoleEvaluation at a pole.
Scalar basis_eval(const BasisPair& pair, BasisKind kind, long n, Scalar z);

enum class CnMethod { AtXm1, AtXn1, ResXp0, ResXpn };
inline constexpr std::array<CnMethod, 4> kAllCnMethods = {CnMethod::AtXm1, CnMethod::AtXn1, CnMethod::ResXp0,
                                                          CnMethod::ResXpn};

/// C_n such that D Y_n = C_n X_2 X_{n-1} / ((x - x'_0)(x - x'_n)). C_0 = 0.
/// Throws MethodDegenerate when the chosen formula divides by zero.
Scalar compute_Cn(const BasisPair& pair, long n, CnMethod method);

struct CnAll {
  std::array<std::optional<Scalar>, 4> values;
  /// First available value in method order.
  Scalar value;
  /// max |v_i - v_j| / max |v_i| over available methods.
  Real spread;
};

/// All four formulas; needs at least two non-degenerate ones.
CnAll compute_Cn_all(const BasisPair& pair, long n);

/// C_n with AtXm1, falling back to AtXn1 when the former degenerates.
Scalar compute_Cn(const BasisPair& pair, long n);

enum class DnPoint { Xm1, Xn1, Xp0, Xpn };

/// Closed-form value of the quadratic D_n at one of the four special points,
/// where M Y_n = D_n X_{n-1} / ((x - x'_0)(x - x'_n)). D_0 = 1.
Scalar eval_Dn(const BasisPair& pair, long n, DnPoint at);
/// Abscissa of a DnPoint.
Scalar dn_point(const BasisPair& pair, long n, DnPoint at);
/// (M Y_n)(x) (x - x'_0)(x - x'_n) / X_{n-1}(x).
Scalar Dn_direct(const BasisPair& pair, long n, Scalar x);
/// Quadratic through Dn_direct at the first three samples.
Polynomial Dn_quadratic(const BasisPair& pair, long n, const std::vector<Scalar>& samples);
/// Fits D_n through three samples and returns the max relative mismatch of
/// Dn_direct at the remaining ones. Throws NoValidSamples if fewer than four
/// samples are usable.
Real verify_M_basis_quadratic(const BasisPair& pair, long n, const std::vector<Scalar>& samples);

/// Max relative discrepancy of D Y_n = C_n X_2 X_{n-1} / ((x - x'_0)(x - x'_n))
/// over the samples. Samples where either side cannot be evaluated are
/// skipped; throws NoValidSamples if none remain.
Real verify_D_basis_identity(const BasisPair& pair, long n, const std::vector<Scalar>& samples);

/// Reproducible sample points on an annulus around the materialized lattice
/// points, kept away from lattice points and from branch points.
std::vector<Scalar> sample_points(const BasisPair& pair, int count, std::uint64_t seed);

}  // namespace ellhyp

#endif  // ELLHYP_DIFFOPS_HPP
