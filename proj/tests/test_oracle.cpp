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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "matchplan/errors.hpp"
#include "matchplan/evaluator.hpp"
#include "matchplan/oracle.hpp"
#include "support/test_support.hpp"

using namespace matchplan;

namespace {

// Exhaustive search scored by the joint-outcome reference evaluator.
double reference_optimum(const MarketInstance& inst) {
  const std::size_t m = inst.num_customers();
  const std::size_t n = inst.num_suppliers();
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::vector<std::uint64_t> masks(m, 0);
  double best = 0.0;
  while (true) {
    MenuSet menus = empty_menus(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (masks[i] >> j & 1) menus.menus[i].push_back(j);
      }
    }
    best = std::max(best, testing::enumerate_expected_matches(inst, menus));
    std::size_t i = 0;
    for (; i < m; ++i) {
      if (++masks[i] < limit) break;
      masks[i] = 0;
    }
    if (i == m) return best;
  }
}

}  // namespace

TEST_CASE("oracle hand examples") {
  const OracleResult a = brute_force_optimal(MarketInstance(1, {{1.0, 1.0}}));
  CHECK(a.menus.menus == std::vector<Menu>{{0}});
  CHECK(a.value == doctest::Approx(0.25));
  CHECK(a.profiles == 2);

  const OracleResult b = brute_force_optimal(MarketInstance(1, {{1.0, 1.0}, {1.0, 1.0}}));
  CHECK(b.menus.menus == std::vector<Menu>{{0, 1}});
  CHECK(b.value == doctest::Approx(1.0 / 3.0));

  const OracleResult c = brute_force_optimal(MarketInstance(0, {{1.0, 1.0}, {2.0, 0.0}}));
  CHECK(c.menus.menus.empty());
  CHECK(c.value == 0.0);
}

TEST_CASE("oracle refuses oversized searches") {
  const MarketInstance inst(3, std::vector<Supplier>(7, {0.5, 1.0}));
  CHECK(profile_count(3, 7) == (std::uint64_t{1} << 21));
  CHECK_THROWS_AS(brute_force_optimal(inst), SizeError);
  CHECK_NOTHROW(brute_force_optimal(inst, std::uint64_t{1} << 21));
  CHECK(profile_count(10, 10) == std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("oracle agrees with a reference search") {
  testing::Sampler rng(401);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = rng.integer(1, 3);
    const std::size_t n = rng.integer(1, 3);
    const MarketInstance inst = rng.mixed_instance(m, n, 0.0, 4.0);
    const OracleResult r = brute_force_optimal(inst);
    CHECK(r.value == doctest::Approx(reference_optimum(inst)).epsilon(1e-12));
    CHECK(r.value == doctest::Approx(exact_expected_matches(inst, r.menus).expected_matches));
  }
}

TEST_CASE("oracle serial and parallel runs return the same profile") {
  testing::Sampler rng(403);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = rng.integer(1, 3);
    const std::size_t n = rng.integer(1, 3);
    const MarketInstance inst = rng.mixed_instance(m, n, 0.0, 4.0);
    const OracleResult s = brute_force_optimal(inst, kDefaultOracleBudget, Execution::kSerial);
    const OracleResult p = brute_force_optimal(inst, kDefaultOracleBudget, Execution::kParallel);
    CHECK(s.menus == p.menus);
    CHECK(s.value == p.value);
    CHECK(s.profiles == p.profiles);
  }
}

TEST_CASE("oracle value is invariant under supplier relabeling") {
  testing::Sampler rng(405);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = rng.integer(1, 3);
    const std::size_t n = rng.integer(2, 3);
    const MarketInstance inst = rng.mixed_instance(m, n, 0.0, 4.0);
    std::vector<Supplier> shuffled(inst.suppliers().rbegin(), inst.suppliers().rend());
    const MarketInstance relabeled(m, shuffled);
    CHECK(brute_force_optimal(relabeled).value ==
          doctest::Approx(brute_force_optimal(inst).value).epsilon(1e-12));
  }
}

TEST_CASE("hardness instance arithmetic") {
  const std::vector<std::int64_t> a{1, 1, 1};
  const HardnessInstance h = hardness_instance(a, 3);
  CHECK(h.instance.num_customers() == 1);
  REQUIRE(h.instance.num_suppliers() == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(h.normalized_scores[j] == doctest::Approx(1.0 / 3.0));
    CHECK(h.instance.supplier(j).v == doctest::Approx(72.0));
    CHECK(h.instance.supplier(j).q == 0.0);
  }
  CHECK(h.scale == doctest::Approx(216.0));
}

TEST_CASE("hardness instance rejects invalid partitions") {
  const std::vector<std::int64_t> small{1, 1, 5};
  CHECK_THROWS_AS(hardness_instance(small, 7), DomainError);
  const std::vector<std::int64_t> two{1, 1};
  CHECK_THROWS_AS(hardness_instance(two, 2), DomainError);
  const std::vector<std::int64_t> sum{2, 2, 2};
  CHECK_THROWS_AS(hardness_instance(sum, 5), DomainError);
  // Sums to 60, not 3 * 18, and 9 and 10 are outside (B/4, B/2).
  const std::vector<std::int64_t> listed{5, 5, 5, 6, 6, 9, 7, 7, 10};
  CHECK_THROWS_AS(hardness_instance(listed, 18), DomainError);
}

TEST_CASE("oracle menus on the single-triple hardness instance") {
  const std::vector<std::int64_t> a{1, 1, 1};
  const HardnessInstance h = hardness_instance(a, 3);
  const OracleResult r = brute_force_optimal(h.instance);
  CHECK(r.menus.menus == std::vector<Menu>{{0, 1, 2}});
  CHECK(menus_disjoint(r.menus));
  CHECK(menus_balanced(h, r.menus));
}

TEST_CASE("disjoint and balanced predicates") {
  CHECK(menus_disjoint(MenuSet{{{0, 1}, {2}}}));
  CHECK_FALSE(menus_disjoint(MenuSet{{{0, 1}, {1}}}));
  const std::vector<std::int64_t> a{4, 5, 6, 4, 5, 6};
  const HardnessInstance h = hardness_instance(a, 15);
  CHECK(menus_balanced(h, MenuSet{{{0, 1, 2}, {3, 4, 5}}}));
  CHECK_FALSE(menus_balanced(h, MenuSet{{{0, 1, 3}, {2, 4, 5}}}));
}
