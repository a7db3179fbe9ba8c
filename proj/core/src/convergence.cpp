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


#include "ellhyp/convergence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace ellhyp {

std::vector<SmallDivisor> detect_small_divisors(const BasisPair& pair, long N, Real threshold) {
  std::vector<SmallDivisor> out;
  if (N < 1 || !(threshold > 0.0)) return out;
  std::vector<Real> mags;
  for (long n = 1; n <= N; ++n) mags.push_back(std::abs(pair.y(-1) - pair.y(n - 1)));
  std::vector<Real> sorted = mags;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
  const Real median = sorted[sorted.size() / 2];
  for (long n = 1; n <= N; ++n)
    if (mags[static_cast<size_t>(n - 1)] < threshold * median) out.push_back({n, mags[static_cast<size_t>(n - 1)]});
  return out;
}

Real fit_log_slope(const std::vector<Scalar>& terms, long n_min, long n_max, const std::vector<long>& exclude) {
  std::vector<Real> ns, ls;
  for (long n = std::max(0L, n_min); n <= n_max && n < static_cast<long>(terms.size()); ++n) {
    if (std::find(exclude.begin(), exclude.end(), n) != exclude.end()) continue;
    const Real m = std::abs(terms[static_cast<size_t>(n)]);
    if (!(m > 0.0) || !std::isfinite(m)) continue;
    ns.push_back(static_cast<Real>(n));
    ls.push_back(std::log(m));
  }
  if (ns.size() < 5) throw Error(ErrorCode::WindowTooSmall, "fewer than five usable terms in the window");
  const Real k = static_cast<Real>(ns.size());
  Real sn = 0, sl = 0;
  for (size_t i = 0; i < ns.size(); ++i) {
    sn += ns[i];
    sl += ls[i];
  }
  const Real mn = sn / k, ml = sl / k;
  Real num = 0, den = 0;
  for (size_t i = 0; i < ns.size(); ++i) {
    num += (ns[i] - mn) * (ls[i] - ml);
    den += (ns[i] - mn) * (ns[i] - mn);
  }
  return num / den;
}

RateReport empirical_rate(const ExpansionSolution& sol, Scalar z, long n_min, long n_max) {
  if (n_max - n_min < 5) throw Error(ErrorCode::WindowTooSmall, "window shorter than five terms");
  if (n_max > sol.N()) throw Error(ErrorCode::ValidationError, "window exceeds the computed coefficients");
  RateReport rep;
  rep.z = z;
  rep.n_min = n_min;
  rep.n_max = n_max;
  for (long i : sol.smalldiv_flags)
    if (i >= n_min && i <= n_max) rep.smalldiv_flags.push_back(i);
  rep.empirical_rate = std::exp(fit_log_slope(expansion_terms(sol, n_max, z), n_min, n_max, rep.smalldiv_flags));
  rep.not_converging = rep.empirical_rate >= 1.0;
  rep.predicted_rate = predicted_rate(sol, z);
  return rep;
}

RatePredictor::RatePredictor(const ExpansionSolution& sol, long locus_points)
    : P_(sol.eq.curve.P()), Q_(sol.eq.curve.Q()) {
  if (sol.mode != Mode::Logarithmic || !sol.special.zeta)
    throw Error(ErrorCode::ValidationError, "rate prediction needs a logarithmic solution");
  if (locus_points < 3) throw Error(ErrorCode::ValidationError, "locus needs at least 3 points");
  BasisPair pair = sol.pair;
  pair.ensure(locus_points);
  const BiquadraticCurve& cv = pair.curve();
  zeta_ = *sol.special.zeta;

  base_x_ = pair.x(0);
  base_y_ = pair.y(0);
  // Both branches come from the same differential dx / F_y = -dy / F_x.
  branch_x_ = cv.dFdy(base_x_, base_y_);
  branch_y_ = -cv.dFdx(base_x_, base_y_);

  std::vector<Scalar> xs, ys;
  for (long n = 0; n < locus_points; ++n) {
    xs.push_back(pair.x(n));
    ys.push_back(pair.y(n));
  }
  const auto loop_from_base = [](std::vector<Scalar> poly, Scalar base) {
    const auto it = std::find(poly.begin(), poly.end(), base);
    std::rotate(poly.begin(), it, poly.end());
    return poly;
  };
  omega_x_ = period_quadrature(P_, loop_from_base(locus_polygon(xs), base_x_), branch_x_);
  omega_y_ = period_quadrature(Q_, loop_from_base(locus_polygon(ys), base_y_), branch_y_);

  // Orientation: the primed lattice sits on the positive side.
  const Real sx = level(P_, base_x_, branch_x_, omega_x_, 1.0, pair.xp(1));
  const Real sy = level(Q_, base_y_, branch_y_, omega_y_, 1.0, pair.yp(1));
  orient_x_ = sx < 0 ? -1.0 : 1.0;
  orient_y_ = sy < 0 ? -1.0 : 1.0;
}

Real RatePredictor::level(const Polynomial& disc, Scalar base, Scalar base_branch, Scalar omega, Real orient,
                          Scalar p) const {
  const Scalar d = p - base;
  if (disc.degree() >= 1) {
    for (Scalar r : roots(disc)) {
      const Real t = std::clamp(d == Scalar{} ? 0.0 : ((r - base) * std::conj(d)).real() / std::norm(d), 0.0, 1.0);
      if (std::abs(base + t * d - r) <= 1e-8 * std::max(1.0, std::abs(r)))
        throw Error(ErrorCode::PathThroughBranchPoint, "straight path meets a branch point", std::nullopt, r);
    }
  }
  const Scalar xi = branch_integral(disc, {base, p}, base_branch).value;
  return orient * 2.0 * std::numbers::pi * (xi / omega).imag();
}

Real RatePredictor::level_y(Scalar z) const { return level(Q_, base_y_, branch_y_, omega_y_, orient_y_, z); }

Real RatePredictor::level_x(Scalar x) const { return level(P_, base_x_, branch_x_, omega_x_, orient_x_, x); }

Real RatePredictor::operator()(Scalar z) const { return std::exp(level_y(z) - level_x(zeta_)); }

std::optional<Real> predicted_rate(const ExpansionSolution& sol, Scalar z) {
  if (sol.mode != Mode::Logarithmic) return std::nullopt;
  return RatePredictor(sol)(z);
}

std::vector<RateMapCell> rate_map(const ExpansionSolution& sol, const RateMapGrid& grid, long n_min, long n_max,
                                  unsigned threads) {
  if (grid.nx < 1 || grid.ny < 1) throw Error(ErrorCode::ValidationError, "grid needs at least one cell");
  if (n_max - n_min < 5) throw Error(ErrorCode::WindowTooSmall, "window shorter than five terms");
  std::optional<RatePredictor> pred;
  if (sol.mode == Mode::Logarithmic) pred.emplace(sol);

  const long total = static_cast<long>(grid.nx) * grid.ny;
  std::vector<RateMapCell> cells(static_cast<size_t>(total));
  const Scalar span = grid.upper_right - grid.lower_left;
  const auto coord = [&](int i, int n) { return n == 1 ? 0.0 : static_cast<Real>(i) / (n - 1); };
  std::vector<long> flags;
  for (long i : sol.smalldiv_flags)
    if (i >= n_min && i <= n_max) flags.push_back(i);

  const auto work = [&](long idx) {
    const int ix = static_cast<int>(idx % grid.nx), iy = static_cast<int>(idx / grid.nx);
    RateMapCell& cell = cells[static_cast<size_t>(idx)];
    cell.z = grid.lower_left + Scalar{span.real() * coord(ix, grid.nx), span.imag() * coord(iy, grid.ny)};
    try {
      cell.empirical = std::exp(fit_log_slope(expansion_terms(sol, n_max, cell.z), n_min, n_max, flags));
      if (cell.empirical >= 1.0) cell.flags.emplace_back("NotConverging");
    } catch (const Error& e) {
      cell.empirical = std::numeric_limits<Real>::quiet_NaN();
      cell.flags.emplace_back(to_string(e.code()));
    }
    if (pred) {
      try {
        cell.predicted = (*pred)(cell.z);
      } catch (const Error& e) {
        cell.flags.emplace_back(to_string(e.code()));
      }
    }
    if (!flags.empty()) cell.flags.emplace_back("SmallDivisor");
  };

  unsigned nt = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  nt = static_cast<unsigned>(std::min<long>(nt, total));
  std::atomic<long> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nt; ++t)
    pool.emplace_back([&] {
      for (long i = next++; i < total; i = next++) work(i);
    });
  for (long i = next++; i < total; i = next++) work(i);
  for (auto& th : pool) th.join();
  return cells;
}

}  // namespace ellhyp
