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
#include <set>
#include <vector>

#include "matchplan/bucketing.hpp"
#include "matchplan/errors.hpp"
#include "matchplan/evaluator.hpp"
#include "support/test_support.hpp"

using namespace matchplan;

TEST_CASE("bucket of single suppliers") {
  const BucketIndex a = bucket_of({0.3, 5.0});
  CHECK(a.k1 == 2);
  CHECK(a.k2 == 2);
  CHECK(a.representative_score() == 0.25);
  CHECK(a.representative_outside_option() == 4.0);

  const BucketIndex b = bucket_of({1.0, 1.0});
  CHECK(b.k1 == 0);
  CHECK(b.k2 == 0);
  CHECK(b.representative_score() == 1.0);
  CHECK(b.representative_outside_option() == 1.0);

  const BucketIndex c = bucket_of({0.5, 2.0});
  CHECK(c.k1 == 1);
  CHECK(c.k2 == 1);
  CHECK(c.representative_score() == 0.5);
  CHECK(c.representative_outside_option() == 2.0);
}

TEST_CASE("power-of-two boundaries land on the closed endpoint") {
  for (int k = 0; k < 60; ++k) {
    const double v = std::ldexp(1.0, -k);
    CHECK(bucket_of({v, 1.0}).k1 == k);
    CHECK(bucket_of({std::nextafter(v, 0.0), 1.0}).k1 == k + 1);
    const double q = std::ldexp(1.0, k);
    CHECK(bucket_of({1.0, q}).k2 == k);
    if (k > 0) CHECK(bucket_of({1.0, std::nextafter(q, 0.0)}).k2 == k - 1);
  }
}

TEST_CASE("bucket preconditions") {
  CHECK_THROWS_AS(bucket_of({1.5, 1.0}), DomainError);
  CHECK_THROWS_AS(bucket_of({0.5, 0.5}), DomainError);
  CHECK_THROWS_AS(build_buckets(MarketInstance(1, {{0.5, 1.0}, {0.5, 0.2}})), DomainError);
}

TEST_CASE("buckets partition suppliers and respect their intervals") {
  testing::Sampler rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = rng.integer(1, 60);
    const MarketInstance inst = rng.low_instance(3, n, 1.0, 300.0);
    const BucketTable table = build_buckets(inst);
    std::multiset<SupplierIndex> seen;
    for (std::size_t k = 0; k < table.size(); ++k) {
      const Bucket& b = table.buckets[k];
      CHECK(!b.members.empty());
      if (k > 0) CHECK(table.buckets[k - 1].index < b.index);
      CHECK(b.w == std::ldexp(1.0, -b.index.k1));
      CHECK(b.q_rep == std::ldexp(1.0, b.index.k2));
      for (SupplierIndex j : b.members) {
        const Supplier& s = inst.supplier(j);
        CHECK(b.w <= s.v);
        CHECK(s.v < 2.0 * b.w);
        CHECK(b.q_rep <= s.q);
        CHECK(s.q < 2.0 * b.q_rep);
        seen.insert(j);
      }
      CHECK(std::is_sorted(b.members.begin(), b.members.end()));
      CHECK(table.find(b.index) == &b);
    }
    CHECK(seen.size() == n);
    CHECK(std::set<SupplierIndex>(seen.begin(), seen.end()).size() == n);
  }
  CHECK(build_buckets(MarketInstance(1, {})).empty());
}

TEST_CASE("clamp low outside options") {
  const ClampResult a = clamp_low_q(MarketInstance(2, {{0.5, 0.3}, {0.5, 2.0}}));
  CHECK(a.instance.supplier(0).q == 1.0);
  CHECK(a.instance.supplier(1).q == 2.0);
  CHECK(a.clamped == std::vector<SupplierIndex>{0});

  const MarketInstance untouched(2, {{0.5, 1.0}, {0.5, 5.0}});
  const ClampResult b = clamp_low_q(untouched);
  CHECK(b.instance == untouched);
  CHECK(b.clamped.empty());
}

TEST_CASE("clamping keeps at least half of the matches and never gains") {
  testing::Sampler rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = rng.integer(1, 3);
    const std::size_t n = rng.integer(1, 3);
    const MarketInstance inst = rng.low_instance(m, n, 0.0, 2.0);
    const MenuSet menus = rng.random_menus(m, n);
    const double before = exact_expected_matches(inst, menus).expected_matches;
    const double after = exact_expected_matches(clamp_low_q(inst).instance, menus).expected_matches;
    CHECK(after <= before + 1e-12);
    CHECK(before <= 2.0 * after + 1e-12);
  }
}

TEST_CASE("cap drops large outside options") {
  const CapResult a = cap_high_q(MarketInstance(3, {{0.5, 1.0}, {0.5, 9.0}}), 3);
  CHECK(a.instance.num_suppliers() == 1);
  CHECK(a.dropped == std::vector<SupplierIndex>{1});
  CHECK(a.original_index == std::vector<SupplierIndex>{0});
  CHECK(a.additive_loss_bound() == doctest::Approx(3.0 / 8.0));

  const MarketInstance small(3, {{0.5, 1.0}, {0.5, 2.0}});
  const CapResult b = cap_high_q(small, 3);
  CHECK(b.instance == small);
  CHECK(b.dropped.empty());

  const CapResult boundary = cap_high_q(MarketInstance(1, {{0.5, 8.0}, {0.5, 7.99}}), 3);
  CHECK(boundary.dropped == std::vector<SupplierIndex>{0});
  CHECK(boundary.original_index == std::vector<SupplierIndex>{1});

  CHECK_THROWS_AS(cap_high_q(small, 0), DomainError);
}

TEST_CASE("default cap exponent") {
  CHECK(default_cap_exponent(0) == 1);
  CHECK(default_cap_exponent(7) == 7);
  CHECK(default_cap_exponent(40) == 40);
  CHECK(default_cap_exponent(1000) == 40);

  testing::Sampler rng(9);
  const MarketInstance inst = rng.low_instance(100, 50, 1.0, 1e6);
  CHECK(cap_high_q(inst, default_cap_exponent(100)).dropped.empty());
}
