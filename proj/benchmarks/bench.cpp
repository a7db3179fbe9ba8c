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


#include <benchmark/benchmark.h>

#include <complex>

#include "ellhyp/convergence.hpp"
#include "ellhyp/lattice.hpp"
#include "ellhyp/solver.hpp"
#include "equations.hpp"

namespace {

void BM_LatticeGenerate(benchmark::State& state) {
  const auto eq = fixtures::random_eq(11);
  const long n = state.range(0);
  for (auto _ : state) {
    auto lat = ellhyp::generate(ellhyp::LatticeSpec{eq.curve, 0.3, std::nullopt}, -n, n);
    benchmark::DoNotOptimize(lat.x(n));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_LatticeGenerate)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_SolveGeneral(benchmark::State& state) {
  const auto eq = fixtures::random_eq(11);
  for (auto _ : state) benchmark::DoNotOptimize(fixtures::solve_n(eq, state.range(0)));
}
BENCHMARK(BM_SolveGeneral)->Arg(10)->Arg(40)->Arg(160);

void BM_SolveLog(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fixtures::rotation_solution(fixtures::generic_theta(), state.range(0)));
}
BENCHMARK(BM_SolveLog)->Arg(26)->Arg(100);

void BM_PartialSum(benchmark::State& state) {
  const auto sol = fixtures::rotation_solution(fixtures::generic_theta(), 100);
  const ellhyp::Scalar z = std::polar(1.2, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(ellhyp::evaluate_partial_sum(sol, state.range(0), z));
}
BENCHMARK(BM_PartialSum)->Arg(26)->Arg(100);

void BM_PredictedRate(benchmark::State& state) {
  const auto sol = fixtures::rotation_solution(fixtures::generic_theta(), 26);
  const ellhyp::Scalar z = std::polar(1.2, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(ellhyp::predicted_rate(sol, z));
}
BENCHMARK(BM_PredictedRate);

void BM_RateMapRow(benchmark::State& state) {
  const auto sol = fixtures::rotation_solution(fixtures::generic_theta(), 26);
  const ellhyp::RateMapGrid row{{-3.0, 0.5}, {3.0, 0.5}, 41, 1};
  for (auto _ : state) benchmark::DoNotOptimize(ellhyp::rate_map(sol, row, 6, 26, 1));
}
BENCHMARK(BM_RateMapRow)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
