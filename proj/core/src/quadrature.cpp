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


#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <boost/math/quadrature/gauss.hpp>

#include "ellhyp/convergence.hpp"

namespace ellhyp {

namespace {

using Rule = boost::math::quadrature::gauss<double, 20>;

constexpr int kMaxDepth = 40;
constexpr Real kSmoothJump = 0.5;
constexpr Real kRefineTol = 1e-14;

struct Segment {
  Scalar value;
  Scalar end_branch;
};

/// Square root of w on the branch nearer `prev`.
Scalar continue_root(Scalar w, Scalar prev) {
  const Scalar s = std::sqrt(w);
  return std::abs(s - prev) <= std::abs(s + prev) ? s : -s;
}

class Integrator {
 public:
  explicit Integrator(const Polynomial& disc) : disc_(disc), scale_(disc.max_abs_coeff()) {}

  Segment run(Scalar a, Scalar b, Scalar sa, int depth) const {
    if (a == b) return {Scalar{}, sa};
    Scalar whole{};
    Scalar sb{};
    const bool smooth = rule(a, b, sa, whole, sb);
    const Scalar m = 0.5 * (a + b);
    if (depth >= kMaxDepth) {
      if (!smooth) throw Error(ErrorCode::RefinePath, "branch of sqrt could not be tracked along the path", std::nullopt, m);
      return {whole, sb};
    }
    // Halves are always computed, which doubles as the accuracy check.
    Segment left{}, right{};
    Scalar s_left_end{};
    const bool lsmooth = rule(a, m, sa, left.value, s_left_end);
    Scalar right_end{};
    const bool rsmooth = lsmooth && rule(m, b, s_left_end, right.value, right_end);
    const Scalar halves = left.value + right.value;
    if (smooth && lsmooth && rsmooth && std::abs(halves - whole) <= kRefineTol * std::max(1.0, std::abs(halves)) &&
        std::abs(right_end - sb) <= kSmoothJump * std::abs(sb)) {
      return {halves, right_end};
    }
    const Segment l = run(a, m, sa, depth + 1);
    const Segment r = run(m, b, l.end_branch, depth + 1);
    return {l.value + r.value, r.end_branch};
  }

 private:
  Scalar root_at(Scalar v, Scalar prev) const {
    const Scalar w = disc_(v);
    if (std::abs(w) <= 1e-14 * scale_ * std::pow(std::max(1.0, std::abs(v)), disc_.degree()))
      throw Error(ErrorCode::PathThroughBranchPoint, "path meets a zero of the discriminant", std::nullopt, v);
    return continue_root(w, prev);
  }

  /// 20-point Gauss-Legendre on [a, b] with the root continued node by node
  /// from sa. Returns false when consecutive roots jump.
  bool rule(Scalar a, Scalar b, Scalar sa, Scalar& value, Scalar& sb) const {
    const auto& absc = Rule::abscissa();
    const auto& wts = Rule::weights();
    // Nodes on [-1, 1] in increasing order with their weights.
    std::array<std::pair<Real, Real>, 2 * std::tuple_size_v<std::decay_t<decltype(absc)>>> nodes{};
    size_t cnt = 0;
    for (size_t i = 0; i < absc.size(); ++i) {
      if (absc[i] == 0.0) {
        nodes[cnt++] = {0.0, wts[i]};
      } else {
        nodes[cnt++] = {absc[i], wts[i]};
        nodes[cnt++] = {-absc[i], wts[i]};
      }
    }
    std::sort(nodes.begin(), nodes.begin() + static_cast<long>(cnt));
    const Scalar half = 0.5 * (b - a), mid = 0.5 * (a + b);
    Scalar prev = sa;
    bool smooth = true;
    value = Scalar{};
    for (size_t i = 0; i < cnt; ++i) {
      const Scalar s = root_at(mid + half * nodes[i].first, prev);
      if (std::abs(s - prev) > kSmoothJump * std::abs(prev)) smooth = false;
      value += nodes[i].second / s;
      prev = s;
    }
    value *= half;
    sb = root_at(b, prev);
    if (std::abs(sb - prev) > kSmoothJump * std::abs(prev)) smooth = false;
    return smooth;
  }

  const Polynomial& disc_;
  Real scale_;
};

}  // namespace

PathIntegral branch_integral(const Polynomial& disc, const std::vector<Scalar>& path, Scalar start_branch) {
  if (path.empty()) throw Error(ErrorCode::ValidationError, "empty path");
  if (disc.degree() < 0) throw Error(ErrorCode::ValidationError, "zero discriminant");
  const Integrator integ(disc);
  const Scalar w0 = disc(path.front());
  if (std::abs(start_branch * start_branch - w0) > 1e-8 * std::max(1.0, std::abs(w0)))
    throw Error(ErrorCode::ValidationError, "start branch is not a square root of the discriminant");
  PathIntegral out{Scalar{}, start_branch};
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    const Segment s = integ.run(path[i], path[i + 1], out.end_branch, 0);
    out.value += s.value;
    out.end_branch = s.end_branch;
  }
  return out;
}

Scalar period_quadrature(const Polynomial& disc, const std::vector<Scalar>& locus, std::optional<Scalar> start_branch) {
  if (locus.size() < 3) throw Error(ErrorCode::ValidationError, "a closed locus needs at least 3 samples");
  const Scalar s0 = start_branch.value_or(std::sqrt(disc(locus.front())));
  std::vector<Scalar> path = locus;
  path.push_back(locus.front());
  const PathIntegral pi = branch_integral(disc, path, s0);
  if (std::abs(pi.end_branch - s0) > 1e-6 * std::abs(s0))
    throw Error(ErrorCode::LocusNotClosed, "square root changes sign around the locus");
  return pi.value;
}

std::vector<Scalar> locus_polygon(const std::vector<Scalar>& points) {
  if (points.empty()) return {};
  const Scalar centroid = std::accumulate(points.begin(), points.end(), Scalar{}) / static_cast<Real>(points.size());
  std::vector<Scalar> out = points;
  std::sort(out.begin(), out.end(), [&](Scalar l, Scalar r) { return std::arg(l - centroid) < std::arg(r - centroid); });
  return out;
}

}  // namespace ellhyp
