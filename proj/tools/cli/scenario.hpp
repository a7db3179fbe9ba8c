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


// Scenario documents for the command line tool.

#ifndef ELLHYP_CLI_SCENARIO_HPP
#define ELLHYP_CLI_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "ellhyp/convergence.hpp"
#include "ellhyp/lattice.hpp"
#include "ellhyp/solver.hpp"

namespace ellhyp::cli {

enum class RunKind { Lattice, Solve, Verify, RateMap };
std::string_view to_string(RunKind kind) noexcept;

struct EquationConfig {
  bool logarithmic = false;
  Polynomial a, c, d;
  std::optional<Scalar> c0_free;
};

struct SeedConfig {
  Scalar x0;
  std::optional<Scalar> y0;
  RootChoice choice = ByIndex{0};
};

/// Multiplies coefficient `index` before verification (negative control).
struct Corruption {
  long index;
  Scalar factor;
};

struct Params {
  long N = 10;
  /// Lattice dump range; defaults to [0, N].
  std::optional<long> n_min, n_max;
  /// Rate fit window; defaults to the last 20 terms.
  std::optional<std::pair<long, long>> window;
  std::optional<RateMapGrid> grid;
  Real small_divisor_threshold = 1e-3;
  SpecialSelect select = NearestTo{Scalar{}};
  unsigned threads = 0;
  std::optional<Corruption> corrupt;
  std::optional<std::string> output;
  std::uint64_t seed = 1;
};

struct Scenario {
  std::optional<RunKind> run;
  BiquadraticCurve::Grid curve{};
  std::optional<EquationConfig> equation;
  std::optional<SeedConfig> lattice_seed;
  Params params;
};

/// Parses and validates a JSON scenario. Complex numbers are [re, im] arrays.
/// Throws Usage for an empty document, MissingField / ValidationError naming
/// the offending field otherwise.
Scenario parse_scenario(const std::string& text);
/// Throws Io when the file cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

BiquadraticCurve make_curve(const Scenario& s);
/// Throws MissingField when the scenario has no equation.
DifferenceEquation make_equation(const Scenario& s);
SolveOptions make_solve_options(const Scenario& s);

/// 0 ok, 2 validation, 3 numerical, 4 I/O.
int exit_code(ErrorCode code) noexcept;

}  // namespace ellhyp::cli

#endif  // ELLHYP_CLI_SCENARIO_HPP
