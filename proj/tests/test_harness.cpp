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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>

#include "matchplan/errors.hpp"
#include "matchplan/harness.hpp"
#include "matchplan/rng.hpp"

using namespace matchplan;

TEST_CASE("generated instances stay in range") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const MarketInstance inst = generate_instance({50, 7, 1.0, 10.0, seed});
    CHECK(inst.num_customers() == 7);
    CHECK(inst.num_suppliers() == 50);
    for (const Supplier& s : inst.suppliers()) {
      CHECK(s.v > 0.0);
      CHECK(s.v <= 1.0);
      CHECK(s.q >= 1.0);
    }
  }
  CHECK_THROWS_AS(generate_instance({5, 5, 0.0, 1.0, 1}), DomainError);
  CHECK_THROWS_AS(generate_instance({5, 5, 1.0, -1.0, 1}), DomainError);
}

TEST_CASE("generation is deterministic in the seed") {
  CHECK(generate_instance({30, 5, 1.0, 1.0, 9}) == generate_instance({30, 5, 1.0, 1.0, 9}));
  CHECK_FALSE(generate_instance({30, 5, 1.0, 1.0, 9}) == generate_instance({30, 5, 1.0, 1.0, 10}));
}

TEST_CASE("generator draws v first, then q, from one stream") {
  const MarketInstance inst = generate_instance({3, 1, 2.0, 0.5, 77});
  SplitMix64 rng(77);
  std::vector<double> z, w;
  for (int j = 0; j < 3; ++j) z.push_back(-std::log(rng.uniform_open0()) * 2.0);
  for (int j = 0; j < 3; ++j) w.push_back(-std::log(rng.uniform_open0()) * 0.5);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(inst.supplier(j).v == 1.0 / (1.0 + z[j]));
    CHECK(inst.supplier(j).q == 1.0 + w[j]);
  }
}

TEST_CASE("larger lambda_v gives weaker suppliers on average") {
  const MarketInstance one = generate_instance({10000, 1, 1.0, 1.0, 3});
  const MarketInstance ten = generate_instance({10000, 1, 10.0, 1.0, 3});
  double mean_one = 0.0, mean_ten = 0.0;
  for (const Supplier& s : one.suppliers()) mean_one += s.v;
  for (const Supplier& s : ten.suppliers()) mean_ten += s.v;
  CHECK(mean_ten < mean_one);
}

TEST_CASE("splitmix64 reference outputs") {
  // First outputs of the canonical SplitMix64 generator seeded with 0.
  SplitMix64 rng(0);
  CHECK(rng() == 0xE220A8397B1DCDAFULL);
  CHECK(rng() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng() == 0x06C45D188009454FULL);
  for (int t = 0; t < 1000; ++t) {
    const double u = rng.uniform_open0();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
  CHECK(split_seed(5, 1) != split_seed(5, 2));
  CHECK(split_seed(5, {1, 2}) == split_seed(split_seed(5, 1), 2));
}

TEST_CASE("one instance per row gives well-formed output") {
  TableConfig cfg;
  cfg.rows = {{10, 1.0, 1.0}, {20, 10.0, 10.0}};
  cfg.n = 15;
  cfg.instances_per_row = 1;
  cfg.sims_per_instance = 1;
  cfg.seed = 3;
  const TableResult result = run_table(cfg);
  REQUIRE(result.rows.size() == 2);
  REQUIRE(result.instances.size() == 2);
  for (const TableRow& row : result.rows) {
    CHECK(row.ratio_mean == row.ratio_min);
    CHECK(row.ratio_mean == row.ratio_median);
  }
  const std::string csv = table_to_csv(result.rows);
  std::istringstream lines(csv);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == 3);
  CHECK(csv.rfind(std::string(kTableCsvHeader) + "\n", 0) == 0);
}

TEST_CASE("table ratios are sound and parallel runs match serial runs") {
  TableConfig cfg;
  cfg.rows = {{30, 1.0, 1.0}, {60, 10.0, 1.0}, {45, 1.0, 10.0}};
  cfg.n = 40;
  cfg.instances_per_row = 5;
  cfg.sims_per_instance = 10;
  cfg.seed = 12;
  const TableResult parallel = run_table(cfg, Execution::kParallel);
  const TableResult serial = run_table(cfg, Execution::kSerial);
  CHECK(parallel.rows == serial.rows);
  for (const InstanceOutcome& o : parallel.instances) {
    CHECK(o.ratio > 0.0);
    CHECK(o.ratio <= 1.0);
  }
  for (const TableRow& row : parallel.rows) {
    CHECK(row.avg_alg <= row.avg_ub);
    CHECK(row.ratio_min <= row.ratio_median);
    CHECK(row.ratio_median <= 1.0);
    CHECK(row.ratio_min > 0.0);
  }

  cfg.evaluation = TableEvaluation::kExact;
  const TableResult exact = run_table(cfg);
  for (const InstanceOutcome& o : exact.instances) CHECK(o.ratio <= 1.0);
  for (std::size_t r = 0; r < exact.rows.size(); ++r) {
    CHECK(exact.rows[r].avg_ub == parallel.rows[r].avg_ub);
  }
}

TEST_CASE("csv round trip") {
  const std::vector<TableRow> rows{{50, 1.0, 10.0, 5.123456789012345, 12.1, 0.4212345678901234,
                                    0.1 + 0.2, 1.0 / 3.0}};
  CHECK(table_from_csv(table_to_csv(rows)) == rows);
  CHECK(table_from_csv(table_to_csv({})).empty());
  CHECK_THROWS_AS(table_from_csv("m,x\n"), DomainError);
  CHECK_THROWS_AS(table_from_csv(std::string(kTableCsvHeader) + "\n1,2,3\n"), DomainError);
  CHECK_THROWS_AS(table_from_csv(std::string(kTableCsvHeader) + "\n1,a,3,4,5,6,7,8\n"),
                  DomainError);
}

TEST_CASE("standard grid") {
  const auto grid = standard_grid();
  CHECK(grid.size() == 24);
  CHECK(grid.front() == RowSpec{50, 1.0, 1.0});
  CHECK(grid.back() == RowSpec{200, 10.0, 10.0});
}
