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


#ifndef ELLHYP_CURVE_HPP
#define ELLHYP_CURVE_HPP

#include <array>
#include <optional>
#include <span>
#include <utility>

#include "ellhyp/poly.hpp"

namespace ellhyp {

/// The two roots of a quadratic slice of the curve at a fixed coordinate.
/// `hi - lo == sqrt_disc / lead` where lead is X_2 (or Y_2) at `at`.
struct RootPair {
  Scalar lo;
  Scalar hi;
  Scalar at;
  Scalar sqrt_disc;
};

/**
 * F(x, y) = sum_{i,j <= 2} c[i][j] x^i y^j.
 *
 * Viewed as a quadratic in y it reads X_0(x) + X_1(x) y + X_2(x) y^2 with
 * discriminant P = X_1^2 - 4 X_0 X_2; as a quadratic in x it reads
 * Y_0(y) + Y_1(y) x + Y_2(y) x^2 with discriminant Q.
 */
class BiquadraticCurve {
 public:
  using Grid = std::array<std::array<Scalar, 3>, 3>;

  /// Throws ValidationError unless both quadratic views exist and P is not
  /// identically zero.
  explicit BiquadraticCurve(const Grid& c);

  const Grid& coeffs() const noexcept { return c_; }
  Scalar coeff(int i, int j) const noexcept { return c_[i][j]; }

  Scalar operator()(Scalar x, Scalar y) const noexcept;
  Scalar dFdx(Scalar x, Scalar y) const noexcept;
  Scalar dFdy(Scalar x, Scalar y) const noexcept;
  /// sum |c_ij| |x|^i |y|^j
  Real scale_at(Scalar x, Scalar y) const noexcept;
  Real coeff_scale() const noexcept;

  /// X_j, j = 0..2.
  const Polynomial& X(int j) const { return xv_.at(static_cast<size_t>(j)); }
  /// Y_i, i = 0..2.
  const Polynomial& Y(int i) const { return yv_.at(static_cast<size_t>(i)); }
  const Polynomial& P() const noexcept { return p_; }
  const Polynomial& Q() const noexcept { return q_; }

  /// Roots of F(x, .) = 0. With a hint, the root nearer the hint is `lo`.
  /// Throws LeadingCoefficientVanishes when X_2(x) is negligible.
  RootPair y_roots(Scalar x, std::optional<Scalar> hint = std::nullopt) const;
  /// Roots of F(., y) = 0, mirror of y_roots.
  RootPair x_roots(Scalar y, std::optional<Scalar> hint = std::nullopt) const;

  /// -F_x / F_y at a point of the curve. Throws OffCurve or VerticalTangent.
  Scalar dy_dx(Scalar x, Scalar y) const;

  /// True when P(x) vanishes to rounding, i.e. the two y-roots coincide.
  bool is_branch_point(Scalar x) const noexcept;

  bool is_leading_x_negligible(Scalar x) const noexcept;
  bool is_leading_y_negligible(Scalar y) const noexcept;

  BiquadraticCurve transposed() const;

 private:
  Grid c_;
  std::array<Polynomial, 3> xv_;
  std::array<Polynomial, 3> yv_;
  Polynomial p_;
  Polynomial q_;
};

/// Curve carrying x_n = x0 + n h, y_n = y0 + n h.
BiquadraticCurve linear_curve(Scalar x0, Scalar y0, Scalar h);
/// Curve carrying x_n = a + b q^n, y_n = u + v q^n.
BiquadraticCurve geometric_curve(Scalar a, Scalar b, Scalar u, Scalar v, Scalar q);
/// Curve carrying x_n = a + b q^n + c q^-n, y_n = a + b q^(n-1/2) + c q^-(n-1/2),
/// with q^(1/2) the principal root.
BiquadraticCurve askey_wilson_curve(Scalar a, Scalar b, Scalar c, Scalar q);

struct CurveFit {
  BiquadraticCurve curve;
  /// Smallest over largest singular value of the design matrix.
  Real residual;
};

/// Least-squares biquadratic through the given points (at least 9), as the
/// null vector of the monomial design matrix. The result is scaled so its
/// largest coefficient is 1.
CurveFit fit_curve(std::span<const std::pair<Scalar, Scalar>> points);

}  // namespace ellhyp

#endif  // ELLHYP_CURVE_HPP
