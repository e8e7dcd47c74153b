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

#ifndef MATCHPLAN_HARNESS_HPP_
#define MATCHPLAN_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "matchplan/evaluator.hpp"
#include "matchplan/market.hpp"

namespace matchplan {

struct GenConfig {
  std::size_t n = 100;
  std::size_t m = 100;
  double lambda_v = 1.0;
  double lambda_o = 1.0;
  std::uint64_t seed = 0;
};

// v_j = 1 / (1 + z_j) and q_j = 1 + w_j with z_j, w_j exponential of mean
// lambda_v and lambda_o (z = -lambda_v ln U), so larger lambda_v means
// weaker suppliers. One SplitMix64 stream keyed by cfg.seed: the n draws of
// z come first, then the n draws of w. Throws DomainError on non-positive
// parameters.
MarketInstance generate_instance(const GenConfig& cfg);

struct RowSpec {
  std::size_t m = 0;
  double lambda_v = 1.0;
  double lambda_o = 1.0;

  friend bool operator==(const RowSpec&, const RowSpec&) = default;
};

enum class TableEvaluation { kMonteCarlo, kExact };

struct TableConfig {
  std::vector<RowSpec> rows;
  std::size_t n = 100;
  std::size_t instances_per_row = 25;
  std::size_t sims_per_instance = 30;
  std::uint64_t seed = 0;
  TableEvaluation evaluation = TableEvaluation::kMonteCarlo;
};

struct TableRow {
  std::size_t m = 0;
  double lambda_v = 0.0;
  double lambda_o = 0.0;
  double avg_alg = 0.0;
  double avg_ub = 0.0;
  double ratio_mean = 0.0;
  double ratio_min = 0.0;
  double ratio_median = 0.0;

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

struct InstanceOutcome {
  std::size_t row = 0;
  std::size_t index = 0;
  double alg = 0.0;  // average matches of the low-value plan
  double ub = 0.0;   // continuous allocation bound on the generated instance
  double ratio = 0.0;
};

struct TableResult {
  std::vector<TableRow> rows;
  std::vector<InstanceOutcome> instances;  // row-major
};

// Seed of instance `index` in row `row`; the planner's Monte Carlo stream
// uses split_seed(instance_seed, 1).
std::uint64_t instance_seed(std::uint64_t master, std::size_t row, std::size_t index);

// Generates, plans with the low-value pipeline, evaluates and aggregates.
// Every instance is independent and seeded by instance_seed, so parallel
// and serial runs agree exactly.
TableResult run_table(const TableConfig& config, Execution execution = Execution::kParallel);

// m in {50, 75, 100, 125, 150, 200} crossed with (lambda_v, lambda_o) in {1, 10}^2.
std::vector<RowSpec> standard_grid();

inline constexpr const char* kTableCsvHeader =
    "m,lambda_v,lambda_o,avg_alg,avg_ub,ratio_mean,ratio_min,ratio_median";

std::string table_to_csv(const std::vector<TableRow>& rows);
// Throws DomainError on a malformed document.
std::vector<TableRow> table_from_csv(const std::string& csv);

}  // namespace matchplan

#endif  // MATCHPLAN_HARNESS_HPP_
