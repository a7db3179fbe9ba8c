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


#ifndef ELLHYP_SOLVER_HPP
#define ELLHYP_SOLVER_HPP

#include <optional>
#include <variant>
#include <vector>

#include "ellhyp/diffops.hpp"

namespace ellhyp {

/**
 * a(x) (D f)(x) = c(x) (M f)(x) + d(x) on a biquadratic curve, with
 * c = (beta x + gamma) X_2 and d = (delta x + epsilon) X_2, deg a <= 3.
 */
struct DifferenceEquation {
  BiquadraticCurve curve;
  Polynomial a, c, d;
  Scalar beta{}, gamma{}, delta{}, epsilon{};

  /// Extracts beta..epsilon by division by X_2. Throws DegreeMismatch when
  /// deg a > 3 or a quotient has degree > 1, MissingFactor when a remainder
  /// exceeds 1e-12 of the coefficient scale.
  static DifferenceEquation from_polynomials(const BiquadraticCurve& curve, Polynomial a, Polynomial c,
                                             Polynomial d);
  static DifferenceEquation from_factors(const BiquadraticCurve& curve, Polynomial a, Scalar beta, Scalar gamma,
                                         Scalar delta, Scalar epsilon);

  bool logarithmic() const noexcept { return c.is_zero(); }
  /// max coefficient modulus of a, c, d times max(1, |z|)^3.
  Real scale(Scalar z) const noexcept;
};

/// a f(phi) + b f(psi) + c = 0 rewritten as
/// alpha (D f) = beta (f(phi) + f(psi)) + gamma with alpha = half_diff (psi - phi).
struct SymmetricForm {
  Polynomial half_diff;  // (b - a) / 2
  Polynomial beta;       // -(a + b) / 2
  Polynomial gamma;      // -c
};
SymmetricForm convert_equation_form(const Polynomial& a_pt, const Polynomial& b_pt, const Polynomial& c_pt);

/// Picks candidates by position in the list sorted by (Re, Im).
struct ByCandidateIndex {
  int m1;
  int p0;
};
/// x_{-1} nearest z, x'_0 the distinct candidate farthest from z.
struct NearestTo {
  Scalar z;
};
using SpecialSelect = std::variant<ByCandidateIndex, NearestTo>;

/// Normalized defect |a(x) + s c(x) (psi - phi)/2| / scale(x) with s = +1 at
/// x_{-1} and s = -1 at x'_0, and the signed ratio (a/(psi - phi)) / (c/2),
/// which is -1 at x_{-1} and +1 at x'_0 (undefined when c(x) = 0).
struct Certificate {
  Real residual;
  std::optional<Real> sign;
};
Certificate certificate_m1(const DifferenceEquation& eq, Scalar x, Scalar phi, Scalar psi);
Certificate certificate_p0(const DifferenceEquation& eq, Scalar x, Scalar phi, Scalar psi);

struct SpecialPoints {
  Scalar x_m1, y_m1, y_0;   // phi(x_{-1}) = y_{-1}, psi(x_{-1}) = y_0
  Scalar x_p0, yp_0, yp_1;  // phi(x'_0) = y'_0, psi(x'_0) = y'_1
  Certificate cert_m1, cert_p0;
  /// Third root of a in logarithmic mode.
  std::optional<Scalar> zeta;
  /// Candidates sorted by (Re, Im).
  std::vector<Scalar> candidates;
  std::vector<Diagnostic> log;
};

/// Roots of 4 a^2 - (beta x + gamma)^2 P (of a in logarithmic mode), each
/// assigned the branch ordering that satisfies the unsquared condition.
/// Throws NoSpecialPoint when no admissible pair exists.
SpecialPoints locate_special_points(const DifferenceEquation& eq, const SpecialSelect& select);

/// Unprimed lattice seeded at index -1 with (x_{-1}, y_{-1}), primed lattice
/// seeded at index 0 with (x'_0, y'_0). Throws BranchAssignmentFailed when a
/// stored ordering fails its certificate.
BasisPair build_lattices(const DifferenceEquation& eq, const SpecialPoints& sp);

enum class Mode { General, Logarithmic };

struct ExpansionSolution {
  DifferenceEquation eq;
  BasisPair pair;
  SpecialPoints special;
  Mode mode = Mode::General;
  std::optional<Scalar> c0_free{};
  /// c_0..c_N, the primary route.
  std::vector<Scalar> coeffs{};
  /// Same coefficients by the independent route: the closed product in
  /// general mode, the ratio recurrence in logarithmic mode.
  std::vector<Scalar> coeffs_check{};
  /// C_0..C_{N+1}.
  std::vector<Scalar> Cn{};
  /// c_1 by the expanded closed form (general mode).
  std::optional<Scalar> c1_alt{};
  /// max_n |coeffs[n] - coeffs_check[n]| / |coeffs[n]| over n >= 1.
  Real route_disagreement = 0.0;
  /// Indices flagged by the small-divisor detector.
  std::vector<long> smalldiv_flags{};
  std::vector<Diagnostic> diagnostics{};

  long N() const noexcept { return static_cast<long>(coeffs.size()) - 1; }
};

struct SolveOptions {
  long N = 10;
  SpecialSelect select = NearestTo{Scalar{}};
  /// Required in logarithmic mode.
  std::optional<Scalar> c0_free;
  /// Relative threshold of the small-divisor detector.
  Real small_divisor_threshold = 1e-3;
  /// |eta_{n+1}| below this multiple of |xi_n| raises SmallDivisor.
  Real eta_floor = 1e-14;
};

/// Coefficients through the ratio recurrence c_{n+1} / c_n = -xi_n / eta_{n+1}
/// with the closed product as cross-check. `pair` must be built for `eq`.
ExpansionSolution expansion_coefficients(const DifferenceEquation& eq, BasisPair pair, const SpecialPoints& sp,
                                         long N, Real eta_floor = 1e-14);
/// Logarithmic mode (c = 0, a cubic with roots x_{-1}, x'_0, zeta).
ExpansionSolution expansion_coefficients_log(const DifferenceEquation& eq, BasisPair pair, const SpecialPoints& sp,
                                             long N, Scalar c0_free, Real eta_floor = 1e-14);

/// Locates special points, builds lattices and coefficients.
ExpansionSolution solve(const DifferenceEquation& eq, const SolveOptions& opts);

/// f(y_0), ..., f(y_K) from the two-point recurrence, starting at f0.
/// Throws HitSingularLattice at a vanishing denominator.
std::vector<Scalar> stepwise_oracle(const DifferenceEquation& eq, const BasisPair& pair, long K, Scalar f0);
/// Oracle started at the solution's own f(y_0).
std::vector<Scalar> stepwise_oracle(const ExpansionSolution& sol, long K);

/// c_k Y_k(z), k = 0..N, with running products.
std::vector<Scalar> expansion_terms(const ExpansionSolution& sol, long N, Scalar z);
/// S_N(z) = sum_{k<=N} c_k Y_k(z).
Scalar evaluate_partial_sum(const ExpansionSolution& sol, long N, Scalar z);
/// a D S_N - c M S_N - d at z.
Scalar residual(const ExpansionSolution& sol, long N, Scalar z);

struct InterpolationReport {
  /// |S_N(y_j) - f(y_j)| / (1 + |f(y_j)|), j = 0..N (NaN where the oracle failed).
  std::vector<Real> errors;
  Real max_error = 0.0;
  /// Indices above `tol`.
  std::vector<long> failing;
  /// Indices where the oracle hit a singular step.
  std::vector<long> oracle_singular;
};
InterpolationReport verify_interpolation(const ExpansionSolution& sol, long N, Real tol = 1e-7);

}  // namespace ellhyp

#endif  // ELLHYP_SOLVER_HPP
