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


#include "commands.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <span>

#include "json.hpp"

namespace ellhyp::cli {

namespace {

using Json = nlohmann::ordered_json;

Json cjson(Scalar z) { return Json::array({z.real(), z.imag()}); }

Json cjson(std::span<const Scalar> v) {
  Json a = Json::array();
  for (Scalar z : v) a.push_back(cjson(z));
  return a;
}

Json pjson(const Polynomial& p) { return cjson(p.coeffs()); }

Json cert_json(const Certificate& c) {
  Json j;
  j["residual"] = c.residual;
  j["sign"] = c.sign ? Json(*c.sign) : Json(nullptr);
  return j;
}

std::string cstr(Scalar z) { return fmt::format("({}, {})", z.real(), z.imag()); }

std::string num(Real v) { return fmt::format("{}", v); }

std::string index_list(const std::vector<long>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

ExpansionSolution solve_scenario(const Scenario& s) { return solve(make_equation(s), make_solve_options(s)); }

struct Check {
  std::string name;
  bool pass;
  std::string detail;
};

}  // namespace

Report run_lattice(const Scenario& s) {
  if (!s.lattice_seed) throw Error(ErrorCode::MissingField, "lattice_seed");
  const long lo = s.params.n_min.value_or(0), hi = s.params.n_max.value_or(s.params.N);
  if (lo > hi) throw Error(ErrorCode::ValidationError, "params.n_min must not exceed params.n_max");
  const SeedConfig& seed = *s.lattice_seed;
  const long anchor = std::clamp(0L, lo, hi);
  LatticeSpec spec{make_curve(s), seed.x0, seed.y0, seed.choice, anchor};
  Lattice lat = generate(spec, lo, hi);
  Report r;
  r.output = "n,re_x,im_x,re_y,im_y\n";
  for (long n = lo; n <= hi; ++n)
    r.output += fmt::format("{},{},{},{},{}\n", n, lat.x(n).real(), lat.x(n).imag(), lat.y(n).real(), lat.y(n).imag());
  r.summary = fmt::format("lattice: {} points, n in [{}, {}]\n", hi - lo + 1, lo, hi);
  return r;
}

std::string solution_json(const ExpansionSolution& sol, const InterpolationReport& interp) {
  const auto& eq = sol.eq;
  const auto& sp = sol.special;
  Json j;
  j["mode"] = sol.mode == Mode::General ? "general" : "logarithmic";
  Json grid = Json::array();
  for (size_t i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (size_t k = 0; k < 3; ++k) row.push_back(cjson(eq.curve.coeff(static_cast<int>(i), static_cast<int>(k))));
    grid.push_back(row);
  }
  j["curve"] = grid;
  j["equation"] = {{"a", pjson(eq.a)}, {"c", pjson(eq.c)}, {"d", pjson(eq.d)},
                   {"beta", cjson(eq.beta)}, {"gamma", cjson(eq.gamma)}, {"delta", cjson(eq.delta)},
                   {"epsilon", cjson(eq.epsilon)}};
  if (sol.c0_free) j["equation"]["c0_free"] = cjson(*sol.c0_free);
  j["special_points"] = {{"x_m1", cjson(sp.x_m1)}, {"y_m1", cjson(sp.y_m1)}, {"y_0", cjson(sp.y_0)},
                         {"x_p0", cjson(sp.x_p0)}, {"yp_0", cjson(sp.yp_0)}, {"yp_1", cjson(sp.yp_1)},
                         {"certificate_m1", cert_json(sp.cert_m1)}, {"certificate_p0", cert_json(sp.cert_p0)},
                         {"zeta", sp.zeta ? cjson(*sp.zeta) : Json(nullptr)}, {"candidates", cjson(sp.candidates)}};
  j["lattices"] = {{"unprimed", {{"n_min", sol.pair.unprimed().n_min()}, {"n_max", sol.pair.unprimed().n_max()}}},
                   {"primed", {{"n_min", sol.pair.primed().n_min()}, {"n_max", sol.pair.primed().n_max()}}}};
  j["N"] = sol.N();
  j["coefficients"] = cjson(sol.coeffs);
  j["coefficients_check"] = cjson(sol.coeffs_check);
  j["C"] = cjson(sol.Cn);
  j["route_disagreement"] = sol.route_disagreement;
  j["interpolation"] = {{"max_error", interp.max_error}, {"failing", interp.failing},
                        {"oracle_singular", interp.oracle_singular}};
  j["small_divisors"] = sol.smalldiv_flags;
  Json diags = Json::array();
  for (const auto& d : sol.diagnostics) {
    Json e;
    e["code"] = std::string(to_string(d.code));
    e["detail"] = d.detail;
    e["index"] = d.index ? Json(*d.index) : Json(nullptr);
    diags.push_back(e);
  }
  j["diagnostics"] = diags;
  return j.dump(2) + "\n";
}

Report run_solve(const Scenario& s) {
  const ExpansionSolution sol = solve_scenario(s);
  const InterpolationReport interp = verify_interpolation(sol, sol.N());
  Report r;
  r.output = solution_json(sol, interp);
  std::string& t = r.summary;
  t += fmt::format("mode: {}, N = {}\n", sol.mode == Mode::General ? "general" : "logarithmic", sol.N());
  t += fmt::format("x_-1 = {}  certificate {:.3e}\n", cstr(sol.special.x_m1), sol.special.cert_m1.residual);
  t += fmt::format("x'_0 = {}  certificate {:.3e}\n", cstr(sol.special.x_p0), sol.special.cert_p0.residual);
  t += "  k  |c_k|\n";
  for (long k = 0; k <= sol.N(); ++k) t += fmt::format("{:>3}  {:.6e}\n", k, std::abs(sol.coeffs[static_cast<size_t>(k)]));
  if (std::all_of(sol.coeffs.begin(), sol.coeffs.end(), [](Scalar c) { return c == Scalar{}; }))
    t += "trivial solution: all coefficients vanish\n";
  t += fmt::format("interpolation max error: {:.3e}{}\n", interp.max_error, interp.failing.empty() ? "" : " (FAILING)");
  t += fmt::format("route disagreement: {:.3e}\n", sol.route_disagreement);
  if (!sol.smalldiv_flags.empty()) t += "small divisors at n = " + index_list(sol.smalldiv_flags) + "\n";
  return r;
}

Report run_verify(const Scenario& s) {
  ExpansionSolution sol = solve_scenario(s);
  const long N = sol.N();
  std::vector<Check> checks;

  const Real cert = std::max(sol.special.cert_m1.residual, sol.special.cert_p0.residual);
  checks.push_back({"special_point_certificates", cert <= 1e-9, "max " + num(cert)});

  {
    Real worst = 0.0;
    const auto& cv = sol.eq.curve;
    for (const Lattice* lat : {&sol.pair.unprimed(), &sol.pair.primed()})
      for (long n = lat->n_min(); n <= lat->n_max(); ++n) {
        const Scalar x = lat->x(n);
        worst = std::max({worst, std::abs(cv(x, lat->y(n))) / cv.scale_at(x, lat->y(n))});
        if (lat->has(n + 1)) worst = std::max(worst, std::abs(cv(x, lat->y(n + 1))) / cv.scale_at(x, lat->y(n + 1)));
      }
    checks.push_back({"lattice_on_curve", worst <= 1e-9, "max " + num(worst)});
  }

  {
    Real worst = 0.0;
    std::vector<long> bad;
    for (long n = 1; n <= N; ++n) {
      try {
        const Real sp = compute_Cn_all(sol.pair, n).spread;
        worst = std::max(worst, sp);
        if (!(sp <= 1e-8)) bad.push_back(n);
      } catch (const Error&) {
        bad.push_back(n);
      }
    }
    checks.push_back({"cn_four_way", bad.empty(), "max spread " + num(worst) + (bad.empty() ? "" : " failing n=" + index_list(bad))});
  }

  {
    const auto samples = sample_points(sol.pair, 10, s.params.seed);
    Real worst = 0.0;
    std::vector<long> bad;
    for (long n = 1; n <= std::min(N, 8L); ++n) {
      try {
        const Real e = verify_D_basis_identity(sol.pair, n, samples);
        worst = std::max(worst, e);
        if (!(e <= 1e-7)) bad.push_back(n);
      } catch (const Error&) {
        bad.push_back(n);
      }
    }
    checks.push_back({"d_basis_identity", bad.empty(), "max " + num(worst) + (bad.empty() ? "" : " failing n=" + index_list(bad))});
  }

  if (s.params.corrupt) {
    const long k = s.params.corrupt->index;
    if (k < 0 || k > N) throw Error(ErrorCode::ValidationError, "params.corrupt.index outside [0, N]");
    sol.coeffs[static_cast<size_t>(k)] *= s.params.corrupt->factor;
  }

  {
    std::vector<long> bad;
    Real worst = 0.0;
    for (long n = 1; n <= N; ++n) {
      const Scalar c = sol.coeffs[static_cast<size_t>(n)], ck = sol.coeffs_check[static_cast<size_t>(n)];
      const Real m = std::max(std::abs(c), std::abs(ck));
      const Real e = m == 0.0 ? 0.0 : std::abs(c - ck) / m;
      worst = std::max(worst, e);
      if (!(e <= 1e-7)) bad.push_back(n);
    }
    checks.push_back({"coefficient_routes", bad.empty(), "max " + num(worst) + (bad.empty() ? "" : " failing n=" + index_list(bad))});
  }

  {
    const InterpolationReport rep = verify_interpolation(sol, N);
    checks.push_back({"interpolation", rep.failing.empty() && rep.oracle_singular.empty(),
                      "max " + num(rep.max_error) + (rep.failing.empty() ? "" : " failing j=" + index_list(rep.failing))});
  }

  {
    std::vector<long> bad;
    Real worst = 0.0;
    for (long j = 0; j < N; ++j) {
      const Scalar x = sol.pair.x(j);
      const Real e = std::abs(residual(sol, N, x)) / sol.eq.scale(x);
      worst = std::max(worst, e);
      if (!(e <= 1e-7)) bad.push_back(j);
    }
    checks.push_back({"lattice_residual", bad.empty(), "max " + num(worst) + (bad.empty() ? "" : " failing j=" + index_list(bad))});
  }

  Report r;
  long passed = 0;
  for (const auto& c : checks) {
    r.output += fmt::format("{} {} {}\n", c.pass ? "PASS" : "FAIL", c.name, c.detail);
    passed += c.pass;
  }
  r.ok = passed == static_cast<long>(checks.size());
  r.summary = fmt::format("verify: {}/{} checks passed\n", passed, checks.size());
  return r;
}

Report run_ratemap(const Scenario& s) {
  if (!s.params.grid) throw Error(ErrorCode::MissingField, "params.grid");
  const ExpansionSolution sol = solve_scenario(s);
  const long N = sol.N();
  const auto [lo, hi] = s.params.window.value_or(std::pair<long, long>{std::max(0L, N - 20), N});
  if (hi > N) throw Error(ErrorCode::ValidationError, "params.window exceeds N");
  const auto cells = rate_map(sol, *s.params.grid, lo, hi, s.params.threads);
  Report r;
  r.output = "re_z,im_z,empirical_rate,predicted_rate,flags\n";
  long finite = 0;
  for (const auto& c : cells) {
    std::string flags;
    for (size_t i = 0; i < c.flags.size(); ++i) flags += (i ? ";" : "") + c.flags[i];
    r.output += fmt::format("{},{},{},{},{}\n", c.z.real(), c.z.imag(), c.empirical, c.predicted ? num(*c.predicted) : "",
                            flags);
    finite += std::isfinite(c.empirical) ? 1 : 0;
  }
  r.summary = fmt::format("ratemap: {} cells, {} with a finite empirical rate, window [{}, {}]\n", cells.size(), finite,
                          lo, hi);
  return r;
}

int run_command(RunKind kind, const std::filesystem::path& config, const RunOptions& opts, std::ostream& out,
                std::ostream& err) {
  try {
    Scenario s = load_scenario(config);
    if (s.run && *s.run != kind)
      throw Error(ErrorCode::ValidationError,
                  fmt::format("run: scenario is for '{}', not '{}'", to_string(*s.run), to_string(kind)));
    if (opts.n) {
      if (*opts.n < 0) throw Error(ErrorCode::Usage, "--n must be >= 0");
      s.params.N = *opts.n;
    }
    Report r;
    switch (kind) {
      case RunKind::Lattice: r = run_lattice(s); break;
      case RunKind::Solve: r = run_solve(s); break;
      case RunKind::Verify: r = run_verify(s); break;
      case RunKind::RateMap: r = run_ratemap(s); break;
    }
    const std::optional<std::filesystem::path> path =
        opts.out ? opts.out : (s.params.output ? std::optional<std::filesystem::path>(*s.params.output) : std::nullopt);
    if (path) {
      std::ofstream f(*path, std::ios::binary);
      if (!f) throw Error(ErrorCode::Io, "cannot write " + path->string());
      f << r.output;
      if (!f) throw Error(ErrorCode::Io, "write failed for " + path->string());
    } else {
      out << r.output;
    }
    if (!opts.quiet) err << r.summary;
    return r.ok ? 0 : 3;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "InternalError: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace ellhyp::cli
