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

#ifndef MATCHPLAN_LOW_VALUE_HPP_
#define MATCHPLAN_LOW_VALUE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "matchplan/bucketing.hpp"
#include "matchplan/market.hpp"

namespace matchplan {

// Per-customer, per-bucket counts of the bucket LP. Bucket positions follow
// BucketTable::buckets.
struct FractionalPlan {
  std::size_t num_customers = 0;
  std::size_t num_buckets = 0;
  std::vector<double> x;  // row-major: x[i * num_buckets + k]
  double objective = 0.0;

  // Common per-customer value when the plan came from solve_lp.
  std::vector<double> symmetric;
  // Position of the last bucket that received mass in greedy order, if any.
  std::optional<std::size_t> last_filled;

  double at(std::size_t i, std::size_t k) const { return x[i * num_buckets + k]; }
  static FractionalPlan zeros(std::size_t num_customers, std::size_t num_buckets);
  double& at(std::size_t i, std::size_t k) { return x[i * num_buckets + k]; }
};

struct IntegralPlan {
  std::size_t num_customers = 0;
  std::size_t num_buckets = 0;
  std::vector<std::int64_t> x;       // row-major like FractionalPlan
  std::vector<int> levels;           // distinct k1 values, ascending
  std::vector<std::int64_t> y;       // y[i * levels.size() + l]

  std::int64_t at(std::size_t i, std::size_t k) const { return x[i * num_buckets + k]; }
  std::int64_t& at(std::size_t i, std::size_t k) { return x[i * num_buckets + k]; }
};

// counts[k][t] = number of menus holding buckets[k].members[t].
struct ShowCounts {
  std::vector<std::vector<std::int64_t>> counts;
};

// LP objective sum_k (2/q_rep) sum_i w_k x_{i,k}.
double lp_objective(const FractionalPlan& plan, const BucketTable& buckets);

// Optimal solution of the bucket LP
//   max  sum_k (2/q_rep_k) sum_i w_k x_{i,k}
//   s.t. sum_k w_k x_{i,k} <= 1                 for every customer i
//        (2/q_rep_k) sum_i w_k x_{i,k} <= |S_k| for every bucket k
//        0 <= x_{i,k} <= |S_k|.
// The LP is invariant under customer permutations, so a symmetric optimum
// x_{i,k} = x_k exists. In symmetric form it is a fractional knapsack with
// unit budget, density 2m/q_rep and cap min(|S_k|, q_rep |S_k| / (2 m w_k)),
// solved greedily by ascending q_rep (ties by ascending k1).
FractionalPlan solve_lp(const BucketTable& buckets, std::size_t num_customers);

// Sound bound on the optimal expected matches of the bucketed instance.
double lp_upper_bound(const FractionalPlan& plan);

// Deterministic rounding: floor entries >= 1, then, level by level in k1,
// give one unit of bucket k to the ceil(s_k) eligible customers with the
// fewest units at that level (ties by lowest customer index).
IntegralPlan round_plan(const FractionalPlan& plan, const BucketTable& buckets,
                        std::size_t num_customers);

struct ConstructedMenus {
  MenuSet menus;
  ShowCounts counts;
};

// Menus in bucket-table order; within a bucket each customer takes the
// x_{i,k} least shown suppliers (ties by lowest supplier index). Supplier
// indices refer to the instance the bucket table was built from.
// Throws DomainError if some x_{i,k} exceeds |S_k|.
ConstructedMenus construct_menus(const IntegralPlan& plan, const BucketTable& buckets,
                                 std::size_t num_customers);

inline constexpr double kRoundingMassConstant = 5.0;

struct RoundingCheck {
  double lpopt = 0.0;
  double rounded_objective = 0.0;  // sum_k min{(2/q_rep) sum_i w_k x_{i,k}, |S_k|}
  double max_customer_mass = 0.0;  // max_i sum_k w_k x_{i,k}
  double max_cap_excess = 0.0;     // max_k lhs - (|S_k| + 2 w_k / q_rep), <= 0 is good
  bool objective_ok = false;       // rounded_objective >= lpopt / 2
  bool mass_ok = false;            // max_customer_mass <= c
  bool cap_ok = false;             // max_cap_excess <= 0

  bool ok() const { return objective_ok && mass_ok && cap_ok; }
};

RoundingCheck check_rounding(const FractionalPlan& plan, const IntegralPlan& rounded,
                             const BucketTable& buckets, double c = kRoundingMassConstant);

struct MenuCheck {
  bool totals_ok = false;       // sum_j c_{k,j} == sum_i x_{i,k}
  bool show_bound_ok = false;   // c_{k,j} <= 2 + q_rep / (2 w_k)
  std::int64_t max_count = 0;

  bool ok() const { return totals_ok && show_bound_ok; }
};

MenuCheck check_menu_construction(const IntegralPlan& rounded, const ShowCounts& counts,
                                  const BucketTable& buckets);

struct LowValueOptions {
  std::optional<int> cap_exponent;  // default: default_cap_exponent(m)
};

struct LowValueDiagnostics {
  double lpopt = 0.0;
  // Bound on the optimum of the input instance:
  // (any q clamped ? 2 : 1) * (2 * lpopt + m / 2^cap).
  double upper_bound = 0.0;
  double additive_slack = 0.0;  // m / 2^cap
  int cap_exponent = 1;
  std::vector<SupplierIndex> clamped;
  std::vector<SupplierIndex> dropped;
  std::size_t num_buckets = 0;
  RoundingCheck rounding;
  MenuCheck menu_check;
  double max_menu_mass = 0.0;  // max_i sum_{j in menu_i} v_j
};

struct LowValuePlan {
  MenuSet menus;
  LowValueDiagnostics diagnostics;
};

// clamp_low_q -> cap_high_q -> build_buckets -> solve_lp -> round_plan ->
// construct_menus. Menus use the input's supplier indices; dropped
// suppliers never appear. Throws RegimeError if some v_j > 1.
LowValuePlan plan_low_value(const MarketInstance& instance, const LowValueOptions& options = {});

}  // namespace matchplan

#endif  // MATCHPLAN_LOW_VALUE_HPP_
