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


#ifndef ELLHYP_CONVERGENCE_HPP
#define ELLHYP_CONVERGENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "ellhyp/solver.hpp"

namespace ellhyp {

struct SmallDivisor {
  long index;
  Real magnitude;  // |y_{-1} - y_{n-1}|
};

/// Indices n in [1, N] where |y_{-1} - y_{n-1}| < threshold * median of the
/// same quantity over [1, N]. A near return of y_{n-1} to y_{-1} makes term n
/// spike (and term n + 1 dip back).
std::vector<SmallDivisor> detect_small_divisors(const BasisPair& pair, long N, Real threshold);

struct RateReport {
  Real empirical_rate = 0.0;
  std::optional<Real> predicted_rate;
  long n_min = 0;
  long n_max = 0;
  std::vector<long> smalldiv_flags;
  Scalar z{};
  /// Set when the empirical rate is >= 1.
  bool not_converging = false;
};

/// Least-squares slope of log|t_n| against n over the window, skipping the
/// listed indices and zero terms. Throws WindowTooSmall with fewer than five
/// usable points.
Real fit_log_slope(const std::vector<Scalar>& terms, long n_min, long n_max, const std::vector<long>& exclude = {});

/// exp(slope) of log|c_n Y_n(z)| over [n_min, n_max], excluding indices flagged
/// as small divisors in the solution.
RateReport empirical_rate(const ExpansionSolution& sol, Scalar z, long n_min, long n_max);

/// Uniformizing coordinate along a path: integral of dv / sqrt(disc(v)) with
/// the square root continued from `start_branch` at path.front(). Gauss-Legendre
/// on each segment; each segment is bisected until the root varies smoothly.
struct PathIntegral {
  Scalar value;
  /// sqrt(disc) at the last point of the path on the continued branch.
  Scalar end_branch;
};
PathIntegral branch_integral(const Polynomial& disc, const std::vector<Scalar>& path, Scalar start_branch);

/// Period: closed-path integral of dv / sqrt(P) along the ordered samples
/// (the first point is appended at the end to close the loop). The branch at
/// the first sample is the principal root unless given. Throws RefinePath on a
/// branch jump and LocusNotClosed when the continued root fails to return to
/// its starting value.
Scalar period_quadrature(const Polynomial& disc, const std::vector<Scalar>& locus,
                         std::optional<Scalar> start_branch = std::nullopt);

/// Closed polygon through lattice points sorted by angle about their centroid.
std::vector<Scalar> locus_polygon(const std::vector<Scalar>& points);

/// Potential-theoretic rate prediction, logarithmic mode only.
class RatePredictor {
 public:
  /// Throws ValidationError when the solution is not logarithmic.
  RatePredictor(const ExpansionSolution& sol, long locus_points = 60);
  /// exp(d_y(z) - d_x(zeta)). Throws PathThroughBranchPoint when the path from
  /// the base point to z meets a branch point.
  Real operator()(Scalar z) const;
  Scalar period_x() const noexcept { return omega_x_; }
  Scalar period_y() const noexcept { return omega_y_; }
  /// Normalized transverse coordinate 2 pi Im((xi_p - xi_base) / omega) in the
  /// y-plane, oriented so that the primed lattice lies on the positive side.
  Real level_y(Scalar z) const;
  Real level_x(Scalar x) const;

 private:
  Real level(const Polynomial& disc, Scalar base, Scalar base_branch, Scalar omega, Real orient, Scalar p) const;

  Polynomial P_, Q_;
  Scalar base_x_, base_y_, branch_x_, branch_y_;
  Scalar omega_x_, omega_y_;
  Real orient_x_ = 1.0, orient_y_ = 1.0;
  Scalar zeta_;
};

/// predicted_rate for a logarithmic solution; nullopt in general mode.
std::optional<Real> predicted_rate(const ExpansionSolution& sol, Scalar z);

struct RateMapCell {
  Scalar z;
  Real empirical = 0.0;
  std::optional<Real> predicted;
  std::vector<std::string> flags;
};

struct RateMapGrid {
  Scalar lower_left;
  Scalar upper_right;
  int nx = 41;
  int ny = 41;
};

/// Empirical and predicted rates over a rectangular grid, fanned out over
/// `threads` worker threads (0 = hardware concurrency). Cells are returned in
/// row-major order (imaginary part outer).
std::vector<RateMapCell> rate_map(const ExpansionSolution& sol, const RateMapGrid& grid, long n_min, long n_max,
                                  unsigned threads = 0);

}  // namespace ellhyp

#endif  // ELLHYP_CONVERGENCE_HPP
