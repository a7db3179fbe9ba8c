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


#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using ellhyp::cli::RunKind;
  CLI::App app{"Elliptic lattices and interpolatory expansions for first-order difference equations", "ellhyp"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  long n = -1;
  bool quiet = false;
  const auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config, "Scenario JSON")->required();
    sub->add_option("--out", out, "Output path (default: stdout)");
    sub->add_option("--n", n, "Override params.N")->check(CLI::NonNegativeNumber);
    sub->add_flag("--quiet", quiet, "Suppress the summary on stderr");
    return sub;
  };
  CLI::App* lattice = add("lattice", "Dump lattice points as CSV");
  CLI::App* solve = add("solve", "Solve the scenario equation and write the solution JSON");
  CLI::App* verify = add("verify", "Run invariant checks on the scenario");
  CLI::App* ratemap = add("ratemap", "Empirical and predicted convergence rates over a grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  RunKind kind = RunKind::Lattice;
  if (solve->parsed()) kind = RunKind::Solve;
  if (verify->parsed()) kind = RunKind::Verify;
  if (ratemap->parsed()) kind = RunKind::RateMap;
  (void)lattice;

  ellhyp::cli::RunOptions opts;
  if (n >= 0) opts.n = n;
  if (!out.empty()) opts.out = out;
  opts.quiet = quiet;
  return ellhyp::cli::run_command(kind, config, opts, std::cout, std::cerr);
}
