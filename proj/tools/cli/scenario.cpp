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


#include "scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ellhyp::cli {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ValidationError, path + ": " + what);
}

void only_keys(const Json& j, const std::string& path, std::set<std::string> allowed) {
  if (!j.is_object()) invalid(path, "expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) invalid(path.empty() ? k : path + "." + k, "unknown field");
}

const Json& need(const Json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw Error(ErrorCode::MissingField, path.empty() ? key : path + "." + key);
  return j.at(key);
}

Real as_real(const Json& j, const std::string& path) {
  if (!j.is_number()) invalid(path, "expected a number");
  return j.get<Real>();
}

long as_long(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) invalid(path, "expected an integer");
  return j.get<long>();
}

Scalar as_complex(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    invalid(path, "expected a complex number [re, im]");
  return {j[0].get<Real>(), j[1].get<Real>()};
}

Polynomial as_poly(const Json& j, const std::string& path) {
  if (!j.is_array()) invalid(path, "expected a list of [re, im] coefficients (ascending powers)");
  std::vector<Scalar> c;
  for (size_t i = 0; i < j.size(); ++i) c.push_back(as_complex(j[i], path + "[" + std::to_string(i) + "]"));
  return Polynomial(std::move(c));
}

RunKind as_run(const Json& j, const std::string& path) {
  if (!j.is_string()) invalid(path, "expected one of lattice, solve, verify, ratemap");
  const auto s = j.get<std::string>();
  if (s == "lattice") return RunKind::Lattice;
  if (s == "solve") return RunKind::Solve;
  if (s == "verify") return RunKind::Verify;
  if (s == "ratemap") return RunKind::RateMap;
  invalid(path, "unknown run '" + s + "'");
}

BiquadraticCurve::Grid as_grid(const Json& j) {
  if (!j.is_array() || j.size() != 3) invalid("curve", "expected a 3x3 grid of [re, im] (row i = power of x)");
  BiquadraticCurve::Grid g{};
  for (size_t i = 0; i < 3; ++i) {
    const std::string row = "curve[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 3) invalid(row, "expected 3 entries");
    for (size_t k = 0; k < 3; ++k) g[i][k] = as_complex(j[i][k], row + "[" + std::to_string(k) + "]");
  }
  return g;
}

EquationConfig as_equation(const Json& j) {
  const std::string p = "equation";
  only_keys(j, p, {"mode", "a", "c", "d", "c0_free"});
  EquationConfig e;
  if (j.contains("mode")) {
    const Json& m = j.at("mode");
    if (!m.is_string() || (m != "log" && m != "general")) invalid(p + ".mode", "expected \"log\" or \"general\"");
    e.logarithmic = m == "log";
  }
  e.a = as_poly(need(j, "a", p), p + ".a");
  e.d = as_poly(need(j, "d", p), p + ".d");
  if (e.logarithmic) {
    if (j.contains("c") && !as_poly(j.at("c"), p + ".c").is_zero()) invalid(p + ".c", "must be zero in log mode");
    if (!j.contains("c0_free")) throw Error(ErrorCode::MissingField, "c0_free");
    e.c0_free = as_complex(j.at("c0_free"), p + ".c0_free");
  } else {
    e.c = as_poly(need(j, "c", p), p + ".c");
    if (j.contains("c0_free")) e.c0_free = as_complex(j.at("c0_free"), p + ".c0_free");
  }
  return e;
}

SeedConfig as_seed(const Json& j) {
  const std::string p = "lattice_seed";
  only_keys(j, p, {"x0", "y0", "selector"});
  SeedConfig s;
  s.x0 = as_complex(need(j, "x0", p), p + ".x0");
  if (j.contains("y0")) s.y0 = as_complex(j.at("y0"), p + ".y0");
  if (j.contains("selector")) {
    const Json& sel = j.at("selector");
    only_keys(sel, p + ".selector", {"index", "hint"});
    if (sel.contains("index") == sel.contains("hint")) invalid(p + ".selector", "give exactly one of index, hint");
    if (sel.contains("index")) {
      const long k = as_long(sel.at("index"), p + ".selector.index");
      if (k != 0 && k != 1) invalid(p + ".selector.index", "must be 0 or 1");
      s.choice = ByIndex{static_cast<int>(k)};
    } else {
      s.choice = ByHint{as_complex(sel.at("hint"), p + ".selector.hint")};
    }
  }
  return s;
}

Params as_params(const Json& j) {
  const std::string p = "params";
  only_keys(j, p,
            {"N", "n_min", "n_max", "window", "grid", "small_divisor_threshold", "special", "threads", "corrupt",
             "output", "seed"});
  Params out;
  if (j.contains("N")) {
    out.N = as_long(j.at("N"), p + ".N");
    if (out.N < 0) invalid(p + ".N", "must be >= 0");
  }
  if (j.contains("n_min")) out.n_min = as_long(j.at("n_min"), p + ".n_min");
  if (j.contains("n_max")) out.n_max = as_long(j.at("n_max"), p + ".n_max");
  if (j.contains("window")) {
    const Json& w = j.at("window");
    if (!w.is_array() || w.size() != 2) invalid(p + ".window", "expected [n_min, n_max]");
    out.window = {as_long(w[0], p + ".window[0]"), as_long(w[1], p + ".window[1]")};
  }
  if (j.contains("grid")) {
    const Json& g = j.at("grid");
    only_keys(g, p + ".grid", {"lower_left", "upper_right", "nx", "ny"});
    RateMapGrid grid{as_complex(need(g, "lower_left", p + ".grid"), p + ".grid.lower_left"),
                     as_complex(need(g, "upper_right", p + ".grid"), p + ".grid.upper_right")};
    if (g.contains("nx")) grid.nx = static_cast<int>(as_long(g.at("nx"), p + ".grid.nx"));
    if (g.contains("ny")) grid.ny = static_cast<int>(as_long(g.at("ny"), p + ".grid.ny"));
    if (grid.nx < 1 || grid.ny < 1) invalid(p + ".grid", "nx and ny must be >= 1");
    out.grid = grid;
  }
  if (j.contains("small_divisor_threshold")) {
    out.small_divisor_threshold = as_real(j.at("small_divisor_threshold"), p + ".small_divisor_threshold");
    if (out.small_divisor_threshold < 0) invalid(p + ".small_divisor_threshold", "must be >= 0");
  }
  if (j.contains("special")) {
    const Json& s = j.at("special");
    only_keys(s, p + ".special", {"nearest", "index"});
    if (s.contains("nearest") == s.contains("index")) invalid(p + ".special", "give exactly one of nearest, index");
    if (s.contains("nearest")) {
      out.select = NearestTo{as_complex(s.at("nearest"), p + ".special.nearest")};
    } else {
      const Json& ix = s.at("index");
      if (!ix.is_array() || ix.size() != 2) invalid(p + ".special.index", "expected [m1, p0]");
      out.select = ByCandidateIndex{static_cast<int>(as_long(ix[0], p + ".special.index[0]")),
                                    static_cast<int>(as_long(ix[1], p + ".special.index[1]"))};
    }
  }
  if (j.contains("threads")) {
    const long t = as_long(j.at("threads"), p + ".threads");
    if (t < 0) invalid(p + ".threads", "must be >= 0");
    out.threads = static_cast<unsigned>(t);
  }
  if (j.contains("corrupt")) {
    const Json& c = j.at("corrupt");
    only_keys(c, p + ".corrupt", {"index", "factor"});
    out.corrupt = Corruption{as_long(need(c, "index", p + ".corrupt"), p + ".corrupt.index"),
                             as_complex(need(c, "factor", p + ".corrupt"), p + ".corrupt.factor")};
  }
  if (j.contains("output")) {
    if (!j.at("output").is_string()) invalid(p + ".output", "expected a path");
    out.output = j.at("output").get<std::string>();
  }
  if (j.contains("seed")) out.seed = static_cast<std::uint64_t>(as_long(j.at("seed"), p + ".seed"));
  return out;
}

}  // namespace

std::string_view to_string(RunKind kind) noexcept {
  switch (kind) {
    case RunKind::Lattice: return "lattice";
    case RunKind::Solve: return "solve";
    case RunKind::Verify: return "verify";
    case RunKind::RateMap: return "ratemap";
  }
  return "unknown";
}

Scenario parse_scenario(const std::string& text) {
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw Error(ErrorCode::Usage, "empty scenario");
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ValidationError, std::string("malformed JSON at byte ") + std::to_string(e.byte));
  }
  if (j.is_object() && j.empty()) throw Error(ErrorCode::Usage, "empty scenario");
  only_keys(j, "", {"run", "curve", "equation", "lattice_seed", "params"});
  Scenario s;
  if (j.contains("run")) s.run = as_run(j.at("run"), "run");
  s.curve = as_grid(need(j, "curve", ""));
  if (j.contains("equation")) s.equation = as_equation(j.at("equation"));
  if (j.contains("lattice_seed")) s.lattice_seed = as_seed(j.at("lattice_seed"));
  if (j.contains("params")) s.params = as_params(j.at("params"));
  (void)make_curve(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

BiquadraticCurve make_curve(const Scenario& s) { return BiquadraticCurve(s.curve); }

DifferenceEquation make_equation(const Scenario& s) {
  if (!s.equation) throw Error(ErrorCode::MissingField, "equation");
  const EquationConfig& e = *s.equation;
  return DifferenceEquation::from_polynomials(make_curve(s), e.a, e.logarithmic ? Polynomial{} : e.c, e.d);
}

SolveOptions make_solve_options(const Scenario& s) {
  SolveOptions o;
  o.N = s.params.N;
  o.select = s.params.select;
  o.small_divisor_threshold = s.params.small_divisor_threshold;
  if (s.equation) o.c0_free = s.equation->c0_free;
  return o;
}

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ValidationError:
    case ErrorCode::MissingField:
    case ErrorCode::Usage:
    case ErrorCode::DegreeMismatch:
    case ErrorCode::MissingFactor:
      return 2;
    case ErrorCode::Io:
      return 4;
    default:
      return 3;
  }
}

}  // namespace ellhyp::cli
