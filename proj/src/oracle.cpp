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

#include "matchplan/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "matchplan/errors.hpp"

namespace matchplan {

namespace {

using Mask = std::uint64_t;
constexpr std::size_t kMaxCustomers = 64;

// Exact expected matches of a bitmask profile. Same recursion as
// exact_expected_matches, without allocation per call.
class MaskScorer {
 public:
  explicit MaskScorer(const MarketInstance& instance)
      : n_(instance.num_suppliers()), m_(instance.num_customers()),
        v_(instance.scores()), q_(instance.outside_options()), mass_(Mask{1} << n_, 0.0) {
    for (Mask mask = 1; mask < mass_.size(); ++mask) {
      const auto low = static_cast<std::size_t>(std::countr_zero(mask));
      mass_[mask] = mass_[mask & (mask - 1)] + v_[low];
    }
  }

  double score(const Mask* masks) {
    for (std::size_t i = 0; i < m_; ++i) inv_denom_[i] = 1.0 / (1.0 + mass_[masks[i]]);
    double total = 0.0;
    for (std::size_t j = 0; j < n_; ++j) {
      const Mask bit = Mask{1} << j;
      std::size_t len = 0;
      pmf_[0] = 1.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!(masks[i] & bit)) continue;
        const double p = v_[j] * inv_denom_[i];
        pmf_[len + 1] = pmf_[len] * p;
        for (std::size_t t = len; t > 0; --t) pmf_[t] = pmf_[t] * (1.0 - p) + pmf_[t - 1] * p;
        pmf_[0] *= 1.0 - p;
        ++len;
      }
      for (std::size_t t = 1; t <= len; ++t) total += pmf_[t] * supplier_match_probability(q_[j], t);
    }
    return total;
  }

 private:
  std::size_t n_;
  std::size_t m_;
  std::vector<double> v_;
  std::vector<double> q_;
  std::vector<double> mass_;
  std::array<double, kMaxCustomers> inv_denom_{};
  std::array<double, kMaxCustomers + 1> pmf_{};
};

struct Best {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<Mask> profile;
  std::uint64_t profiles = 0;
};

bool improves(double candidate, double incumbent) {
  if (std::isinf(incumbent)) return candidate > incumbent;
  return candidate > incumbent + 1e-12 * std::max(1.0, std::abs(incumbent));
}

// All profiles with customer 0's mask fixed to `first`.
Best search_chunk(const MarketInstance& instance, Mask first) {
  const std::size_t m = instance.num_customers();
  const Mask limit = Mask{1} << instance.num_suppliers();
  MaskScorer scorer(instance);
  std::vector<Mask> masks(m, 0);
  masks[0] = first;
  Best best;
  while (true) {
    const double value = scorer.score(masks.data());
    ++best.profiles;
    if (improves(value, best.value)) {
      best.value = value;
      best.profile = masks;
    }
    // Odometer over customers 1..m-1, last customer fastest.
    std::size_t digit = m;
    while (true) {
      if (digit == 1) return best;
      --digit;
      if (++masks[digit] < limit) break;
      masks[digit] = 0;
    }
  }
}

}  // namespace

std::uint64_t profile_count(std::size_t num_customers, std::size_t num_suppliers) {
  const std::size_t bits = num_customers * num_suppliers;
  if (num_suppliers != 0 && bits / num_suppliers != num_customers) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  if (bits >= 64) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{1} << bits;
}

OracleResult brute_force_optimal(const MarketInstance& instance, std::uint64_t max_profiles,
                                 Execution execution) {
  const std::size_t m = instance.num_customers();
  const std::size_t n = instance.num_suppliers();
  const std::uint64_t count = profile_count(m, n);
  if (count > max_profiles) {
    throw SizeError("brute_force_optimal: " + std::to_string(m) + " customers x " +
                    std::to_string(n) + " suppliers needs " +
                    (count == std::numeric_limits<std::uint64_t>::max()
                         ? std::string("more than 2^64")
                         : std::to_string(count)) +
                    " profiles, budget is " + std::to_string(max_profiles));
  }
  OracleResult result;
  if (m == 0) {
    result.profiles = 1;
    return result;
  }

  const std::size_t chunks = std::size_t{1} << n;
  std::vector<Best> partial(chunks);
  if (execution == Execution::kParallel) {
    const auto total = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t c = 0; c < total; ++c) {
      partial[static_cast<std::size_t>(c)] = search_chunk(instance, static_cast<Mask>(c));
    }
  } else {
    for (std::size_t c = 0; c < chunks; ++c) partial[c] = search_chunk(instance, c);
  }

  Best best;
  for (const Best& chunk : partial) {
    best.profiles += chunk.profiles;
    if (improves(chunk.value, best.value)) {
      best.value = chunk.value;
      best.profile = chunk.profile;
    }
  }
  result.value = best.value;
  result.profiles = best.profiles;
  result.menus = empty_menus(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (best.profile[i] & (Mask{1} << j)) result.menus.menus[i].push_back(j);
    }
  }
  return result;
}

HardnessInstance hardness_instance(std::span<const std::int64_t> a, std::int64_t target) {
  if (a.empty() || a.size() % 3 != 0) {
    throw DomainError("hardness_instance: need 3m' > 0 integers, got " + std::to_string(a.size()));
  }
  const std::size_t m = a.size() / 3;
  std::int64_t sum = 0;
  for (std::int64_t value : a) {
    if (value <= 0 || !(4 * value > target) || !(2 * value < target)) {
      throw DomainError("hardness_instance: every a_j must satisfy B/4 < a_j < B/2 (a_j = " +
                        std::to_string(value) + ", B = " + std::to_string(target) + ")");
    }
    sum += value;
  }
  if (sum != static_cast<std::int64_t>(m) * target) {
    throw DomainError("hardness_instance: sum(a) = " + std::to_string(sum) + " != m' * B = " +
                      std::to_string(static_cast<std::int64_t>(m) * target));
  }

  HardnessInstance out;
  const double total = static_cast<double>(sum);
  double v_min = std::numeric_limits<double>::infinity();
  for (std::int64_t value : a) {
    out.normalized_scores.push_back(static_cast<double>(value) / total);
    v_min = std::min(v_min, out.normalized_scores.back());
  }
  out.scale = 8.0 * static_cast<double>(m) / (v_min * v_min * v_min);
  std::vector<Supplier> suppliers;
  for (double v : out.normalized_scores) suppliers.push_back({v * out.scale, 0.0});
  out.instance = MarketInstance(m, std::move(suppliers));
  return out;
}

bool menus_disjoint(const MenuSet& menus) {
  std::vector<SupplierIndex> all;
  for (const Menu& menu : menus.menus) all.insert(all.end(), menu.begin(), menu.end());
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

bool menus_balanced(const HardnessInstance& hard, const MenuSet& menus, double tol) {
  const double target = 1.0 / static_cast<double>(hard.instance.num_customers());
  for (const Menu& menu : menus.menus) {
    double mass = 0.0;
    for (SupplierIndex j : menu) mass += hard.normalized_scores.at(j);
    if (std::abs(mass - target) > tol) return false;
  }
  return true;
}

}  // namespace matchplan
