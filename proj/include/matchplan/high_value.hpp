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

#ifndef MATCHPLAN_HIGH_VALUE_HPP_
#define MATCHPLAN_HIGH_VALUE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "matchplan/market.hpp"

namespace matchplan {

// Integral assignment of customers to suppliers with sum(x) == m.
struct Allocation {
  std::vector<std::int64_t> x;
  double value = 0.0;  // sum_j x_j / (x_j + q_j)

  std::int64_t total() const;
};

// sum_j x_j / (x_j + q_j), where a term with x_j == 0 is 0 and a term with
// q_j == 0 < x_j is 1.
double allocation_value(std::span<const double> q, std::span<const std::int64_t> x);
double allocation_value(std::span<const double> q, std::span<const double> x);

// Exact maximizer of sum_j x_j/(x_j+q_j) over integral x >= 0 with
// sum x = m: every term is concave in x_j, so taking the largest marginal
// gain m times is optimal. Ties go to the lowest index.
// Throws InfeasibleError when m > 0 and q is empty.
Allocation greedy_allocation(std::span<const double> q, std::size_t m);

struct Relaxation {
  std::vector<double> x;
  double value = 0.0;
  double lambda = 0.0;  // common marginal value q_j / (x_j + q_j)^2 of interior entries
};

// max sum_{j<prefix} x_j/(x_j+q_j)  s.t.  sum x_j = m, x_j >= lower_bound,
// over the first `prefix` entries of q. KKT gives
// x_j(lambda) = max(lower_bound, sqrt(q_j/lambda) - q_j); lambda is found by
// geometric bisection until |sum x - m| <= 1e-9. Suppliers with q_j == 0
// gain nothing beyond any positive mass and stay at the lower bound.
// Throws InfeasibleError if m < prefix * lower_bound.
Relaxation waterfill_relaxation(std::span<const double> q, double m, std::size_t prefix,
                                double lower_bound = 1.0);

// x_j = floor(x'_j) for j >= 1 and x_0 = m - sum_{j>=1} x_j. When every
// x'_j >= 1 this keeps x_j >= x'_j / 2, hence at least half the value.
Allocation round_relaxation(std::span<const double> x_cont, std::size_t m,
                            std::span<const double> q);

// Sorts by q ascending, solves the water-filling relaxation for every
// prefix 1..min(n, m), rounds each and returns the best. Guaranteed to reach
// half of the exact optimum.
Allocation half_approx_allocation(std::span<const double> q, std::size_t m);

// Customers in index order: the first x_0 get {0}, the next x_1 get {1}, ...
// Throws DomainError if sum(x) != m.
MenuSet singleton_menus(const Allocation& allocation, std::size_t m);

enum class BoundKind { kInteger, kContinuous };

// Upper bound on optimal expected matches valid for every instance. The
// integer form is the greedy optimum; the continuous form relaxes to real
// x >= 0 and is never smaller.
double allocation_upper_bound(std::span<const double> q, std::size_t m, BoundKind kind);

enum class AllocationMethod { kGreedy, kHalfApprox };

struct HighValueOptions {
  AllocationMethod method = AllocationMethod::kGreedy;
};

struct HighValueDiagnostics {
  Allocation allocation;
  double upper_bound = 0.0;  // integer allocation bound
  AllocationMethod method = AllocationMethod::kGreedy;
  // Worst-case ratio (1/8)(1 - e^{-1/24}) carried by the singleton
  // construction; informational only.
  double proof_constant = 0.0;
};

struct HighValuePlan {
  MenuSet menus;
  HighValueDiagnostics diagnostics;
};

// Singleton menus from an allocation. Throws RegimeError if some v_j < 1.
HighValuePlan plan_high_value(const MarketInstance& instance, const HighValueOptions& options = {});

}  // namespace matchplan

#endif  // MATCHPLAN_HIGH_VALUE_HPP_
