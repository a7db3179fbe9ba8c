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

#ifndef ELLHYP_POLY_HPP
#define ELLHYP_POLY_HPP

#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "ellhyp/error.hpp"

namespace ellhyp {

/// Coefficients below this fraction of the largest coefficient modulus are
/// treated as zero when they would otherwise become the leading term.
inline constexpr Real kNormalizeTolerance = 1e-13;

/**
 * Univariate polynomial with complex coefficients, stored in ascending order
 * of degree.
 *
 * The representation is normalized: the leading coefficient is nonzero, and
 * the zero polynomial has no coefficients at all (degree -1).
 */
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coeffs);
  Polynomial(std::initializer_list<Scalar> coeffs);

  static Polynomial constant(Scalar c);
  /// c * x^power
  static Polynomial monomial(int power, Scalar c = 1.0);
  /// lead * prod (x - r)
  static Polynomial from_roots(std::span<const Scalar> roots, Scalar lead = 1.0);

  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::span<const Scalar> coeffs() const noexcept { return coeffs_; }
  /// Coefficient of x^i; zero past the degree.
  Scalar operator[](int i) const noexcept;
  Scalar leading() const noexcept;

  /// Horner evaluation.
  Scalar operator()(Scalar z) const noexcept;
  Polynomial derivative() const;

  Real max_abs_coeff() const noexcept;
  /// sum_i |c_i| |z|^i, the natural magnitude against which p(z) is small.
  Real scale_at(Scalar z) const noexcept;

  /// Quotient by (x - root); the remainder p(root) is dropped.
  Polynomial deflate(Scalar root) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(Scalar s);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
  friend Polynomial operator*(Polynomial p, Scalar s) { return p *= s; }
  friend Polynomial operator*(Scalar s, Polynomial p) { return p *= s; }

 private:
  void normalize();
  std::vector<Scalar> coeffs_;
};

struct PolyDivision {
  Polynomial quotient;
  Polynomial remainder;
};

/// Euclidean division. Throws ZeroDivisor when the divisor is identically zero.
PolyDivision divmod(const Polynomial& num, const Polynomial& den);

/// Newton iteration on p started at z; keeps the iterate with the smallest
/// residual.
Scalar newton_polish(const Polynomial& p, Scalar z, int max_iter = 40);

/// All complex roots with multiplicity, Newton-polished. Quadratics use the
/// cancellation-free pairing (large root from the classic formula, small root
/// from the product). Throws ConstantPolynomial for degree < 1.
std::vector<Scalar> roots(const Polynomial& p);

/// Roots of a t^2 + b t + c, returned as ((-b - s)/2a, (-b + s)/2a) with s the
/// principal square root of the discriminant. Requires a != 0.
std::pair<Scalar, Scalar> quadratic_roots(Scalar a, Scalar b, Scalar c);

/**
 * Ratio of two polynomials. Common factors are allowed to persist; evaluation
 * at a common root removes it locally by deflation.
 */
class RationalFunction {
 public:
  RationalFunction() : numer_(), denom_(Polynomial::constant(1.0)) {}
  RationalFunction(Polynomial numer);  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial numer, Polynomial denom);

  const Polynomial& numer() const noexcept { return numer_; }
  const Polynomial& denom() const noexcept { return denom_; }

  /// Throws PoleEvaluation at a non-removable pole.
  Scalar operator()(Scalar z) const;

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

 private:
  Polynomial numer_;
  Polynomial denom_;
};

/// Rational quotient of two polynomials.
RationalFunction operator/(const Polynomial& num, const Polynomial& den);

}  // namespace ellhyp

#endif  // ELLHYP_POLY_HPP
