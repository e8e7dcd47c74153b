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

#ifndef MATCHPLAN_BUCKETING_HPP_
#define MATCHPLAN_BUCKETING_HPP_

#include <compare>
#include <cstddef>
#include <vector>

#include "matchplan/market.hpp"

namespace matchplan {

// Dyadic bucket key. Bucket (k1, k2) holds suppliers with
// v in [2^-k1, 2^(1-k1)) and q in [2^k2, 2^(k2+1)).
struct BucketIndex {
  int k1 = 0;
  int k2 = 0;

  double representative_score() const;          // w_k = 2^-k1
  double representative_outside_option() const;  // q_rep = 2^k2

  friend auto operator<=>(const BucketIndex&, const BucketIndex&) = default;
};

struct Bucket {
  BucketIndex index;
  double w = 1.0;
  double q_rep = 1.0;
  std::vector<SupplierIndex> members;  // ascending supplier index

  std::size_t size() const { return members.size(); }
};

// Non-empty buckets only, ascending by (k1, k2).
struct BucketTable {
  std::vector<Bucket> buckets;

  std::size_t size() const { return buckets.size(); }
  bool empty() const { return buckets.empty(); }
  const Bucket* find(BucketIndex index) const;
};

struct ClampResult {
  MarketInstance instance;
  std::vector<SupplierIndex> clamped;  // suppliers whose q was raised to 1
};

// Raises every q_j < 1 to 1. Any menu set keeps at least half its expected
// matches under the clamped instance and never gains.
ClampResult clamp_low_q(const MarketInstance& instance);

struct CapResult {
  MarketInstance instance;                    // survivors, original relative order
  std::vector<SupplierIndex> original_index;  // survivor position -> original index
  std::vector<SupplierIndex> dropped;
  int cap_exponent = 1;

  // Upper bound on optimal expected matches lost by dropping: m / 2^cap.
  double additive_loss_bound() const;
};

// min(m, 40), and at least 1.
int default_cap_exponent(std::size_t num_customers);

// Drops suppliers with q_j >= 2^cap_exponent. Throws DomainError if cap_exponent < 1.
CapResult cap_high_q(const MarketInstance& instance, int cap_exponent);

// Bucket of a single supplier via exact binary exponent extraction.
// Throws DomainError unless 0 < v <= 1 and q >= 1.
BucketIndex bucket_of(const Supplier& supplier);

// Throws DomainError when some supplier violates 0 < v <= 1, q >= 1.
BucketTable build_buckets(const MarketInstance& instance);

}  // namespace matchplan

#endif  // MATCHPLAN_BUCKETING_HPP_
