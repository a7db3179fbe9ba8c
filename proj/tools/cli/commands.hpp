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


#ifndef ELLHYP_CLI_COMMANDS_HPP
#define ELLHYP_CLI_COMMANDS_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "scenario.hpp"

namespace ellhyp::cli {

/// Machine-readable output (CSV or JSON), a human summary, and whether every
/// check held (only verify can fail without throwing).
struct Report {
  std::string output;
  std::string summary;
  bool ok = true;
};

/// CSV n, re_x, im_x, re_y, im_y over [n_min, n_max] (default [0, N]).
Report run_lattice(const Scenario& s);
/// Solution JSON; the summary lists |c_k|, certificates and the interpolation error.
Report run_solve(const Scenario& s);
/// One PASS/FAIL line per invariant check.
Report run_verify(const Scenario& s);
/// CSV re_z, im_z, empirical_rate, predicted_rate, flags.
Report run_ratemap(const Scenario& s);

std::string solution_json(const ExpansionSolution& sol, const InterpolationReport& interp);

struct RunOptions {
  std::optional<long> n;
  std::optional<std::filesystem::path> out;
  bool quiet = false;
};

/// Loads the scenario, runs it and writes the output to --out, params.output
/// or `out`. Errors go to `err` as "Code: detail". Returns the exit status.
int run_command(RunKind kind, const std::filesystem::path& config, const RunOptions& opts, std::ostream& out,
                std::ostream& err);

}  // namespace ellhyp::cli

#endif  // ELLHYP_CLI_COMMANDS_HPP
