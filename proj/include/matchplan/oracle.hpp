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

#ifndef MATCHPLAN_ORACLE_HPP_
#define MATCHPLAN_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "matchplan/evaluator.hpp"
#include "matchplan/market.hpp"

namespace matchplan {

inline constexpr std::uint64_t kDefaultOracleBudget = 1'000'000;

struct OracleResult {
  MenuSet menus;
  double value = 0.0;
  std::uint64_t profiles = 0;  // number of menu profiles scored
};

// Number of menu profiles, (2^n)^m; saturates at UINT64_MAX.
std::uint64_t profile_count(std::size_t num_customers, std::size_t num_suppliers);

// Exhaustive search over all menu profiles (menus as bitmasks, odometer
// over customers with customer 0 as the most significant digit). Returns
// the best profile; among profiles within 1e-12 of each other the one
// enumerated first, i.e. the lexicographically smallest, wins. Parallel
// execution splits the range of customer 0's mask and merges in mask order,
// so both executions return the same profile.
// Throws SizeError when profile_count exceeds max_profiles.
OracleResult brute_force_optimal(const MarketInstance& instance,
                                 std::uint64_t max_profiles = kDefaultOracleBudget,
                                 Execution execution = Execution::kParallel);

struct HardnessInstance {
  MarketInstance instance;
  std::vector<double> normalized_scores;  // a_j / sum(a)
  double scale = 1.0;                     // stored v_j = normalized_scores[j] * scale
};

// Market built from a 3-partition input: v_j = a_j / sum(a), q_j = 0,
// m = |a| / 3 customers, customer outside option v_min^3 / (8m), then every
// score rescaled by 8m / v_min^3 so the outside option is 1 again.
// Throws DomainError unless |a| = 3m', B/4 < a_j < B/2 and sum(a) = m' B.
HardnessInstance hardness_instance(std::span<const std::int64_t> a, std::int64_t target);

bool menus_disjoint(const MenuSet& menus);

// Every menu carries normalized score mass exactly 1/m (within tol).
bool menus_balanced(const HardnessInstance& hard, const MenuSet& menus, double tol = 1e-9);

}  // namespace matchplan

#endif  // MATCHPLAN_ORACLE_HPP_
