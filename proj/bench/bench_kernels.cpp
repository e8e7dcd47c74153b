// Copyright 2026 The matchplan Authors
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

// Serial reference versus OpenMP kernels.

#include <benchmark/benchmark.h>

#include "matchplan/evaluator.hpp"
#include "matchplan/harness.hpp"
#include "matchplan/low_value.hpp"
#include "matchplan/oracle.hpp"

namespace {

using namespace matchplan;

MarketInstance bench_instance() {
  GenConfig cfg;
  cfg.n = 100;
  cfg.m = 100;
  cfg.seed = 7;
  return generate_instance(cfg);
}

void BM_MonteCarlo(benchmark::State& state) {
  const MarketInstance inst = bench_instance();
  const MenuSet menus = plan_low_value(inst).menus;
  const auto execution = state.range(0) ? Execution::kParallel : Execution::kSerial;
  for (auto _ : state) {
    benchmark::DoNotOptimize(monte_carlo_expected_matches(
        inst, menus, 4096, 1, Estimator::kRaoBlackwell, execution));
  }
}
BENCHMARK(BM_MonteCarlo)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const MarketInstance inst(3, {{0.5, 1.0}, {0.8, 2.0}, {1.5, 1.0}, {0.3, 0.5}, {2.0, 3.0}});
  const auto execution = state.range(0) ? Execution::kParallel : Execution::kSerial;
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_optimal(inst, kDefaultOracleBudget, execution));
  }
}
BENCHMARK(BM_Oracle)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Table(benchmark::State& state) {
  TableConfig cfg;
  cfg.rows = {{100, 1, 1}};
  cfg.instances_per_row = 8;
  const auto execution = state.range(0) ? Execution::kParallel : Execution::kSerial;
  for (auto _ : state) benchmark::DoNotOptimize(run_table(cfg, execution));
}
BENCHMARK(BM_Table)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
