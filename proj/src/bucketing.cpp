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

#include "matchplan/bucketing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "matchplan/errors.hpp"

namespace matchplan {

double BucketIndex::representative_score() const { return std::ldexp(1.0, -k1); }

double BucketIndex::representative_outside_option() const { return std::ldexp(1.0, k2); }

const Bucket* BucketTable::find(BucketIndex index) const {
  auto it = std::lower_bound(buckets.begin(), buckets.end(), index,
                             [](const Bucket& b, BucketIndex k) { return b.index < k; });
  if (it == buckets.end() || it->index != index) return nullptr;
  return &*it;
}

ClampResult clamp_low_q(const MarketInstance& instance) {
  ClampResult result;
  std::vector<Supplier> suppliers = instance.suppliers();
  for (std::size_t j = 0; j < suppliers.size(); ++j) {
    if (suppliers[j].q < 1.0) {
      suppliers[j].q = 1.0;
      result.clamped.push_back(j);
    }
  }
  result.instance = MarketInstance(instance.num_customers(), std::move(suppliers));
  return result;
}

double CapResult::additive_loss_bound() const {
  return static_cast<double>(instance.num_customers()) / std::ldexp(1.0, cap_exponent);
}

int default_cap_exponent(std::size_t num_customers) {
  return static_cast<int>(std::clamp<std::size_t>(num_customers, 1, 40));
}

CapResult cap_high_q(const MarketInstance& instance, int cap_exponent) {
  if (cap_exponent < 1) {
    throw DomainError("cap_high_q: cap_exponent must be >= 1, got " +
                      std::to_string(cap_exponent));
  }
  const double cap = std::ldexp(1.0, cap_exponent);
  CapResult result;
  result.cap_exponent = cap_exponent;
  std::vector<Supplier> survivors;
  for (std::size_t j = 0; j < instance.num_suppliers(); ++j) {
    const Supplier& s = instance.supplier(j);
    if (s.q >= cap) {
      result.dropped.push_back(j);
    } else {
      survivors.push_back(s);
      result.original_index.push_back(j);
    }
  }
  result.instance = MarketInstance(instance.num_customers(), std::move(survivors));
  return result;
}

BucketIndex bucket_of(const Supplier& supplier) {
  if (!(supplier.v > 0.0 && supplier.v <= 1.0) || !(supplier.q >= 1.0)) {
    throw DomainError("build_buckets: need 0 < v <= 1 and q >= 1 (got v=" +
                      std::to_string(supplier.v) + ", q=" + std::to_string(supplier.q) + ")");
  }
  // frexp: x = f * 2^e with f in [0.5, 1), i.e. x in [2^(e-1), 2^e).
  int ev = 0;
  std::frexp(supplier.v, &ev);
  int eq = 0;
  std::frexp(supplier.q, &eq);
  return BucketIndex{1 - ev, eq - 1};
}

BucketTable build_buckets(const MarketInstance& instance) {
  std::map<BucketIndex, std::vector<SupplierIndex>> groups;
  for (std::size_t j = 0; j < instance.num_suppliers(); ++j) {
    groups[bucket_of(instance.supplier(j))].push_back(j);
  }
  BucketTable table;
  table.buckets.reserve(groups.size());
  for (auto& [index, members] : groups) {
    table.buckets.push_back(Bucket{index, index.representative_score(),
                                   index.representative_outside_option(), std::move(members)});
  }
  return table;
}

}  // namespace matchplan
