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

#include "matchplan/high_value.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "matchplan/errors.hpp"

namespace matchplan {

namespace {

double term(double q, double x) {
  if (x <= 0.0) return 0.0;
  return x / (x + q);
}

double marginal_gain(double q, std::int64_t x) {
  const auto xd = static_cast<double>(x);
  return term(q, xd + 1.0) - term(q, xd);
}

constexpr double kSumTolerance = 1e-9;
constexpr int kMaxBisection = 200;

}  // namespace

std::int64_t Allocation::total() const { return std::accumulate(x.begin(), x.end(), std::int64_t{0}); }

double allocation_value(std::span<const double> q, std::span<const std::int64_t> x) {
  double total = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) total += term(q[j], static_cast<double>(x[j]));
  return total;
}

double allocation_value(std::span<const double> q, std::span<const double> x) {
  double total = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) total += term(q[j], x[j]);
  return total;
}

Allocation greedy_allocation(std::span<const double> q, std::size_t m) {
  const std::size_t n = q.size();
  Allocation out;
  out.x.assign(n, 0);
  if (m == 0) return out;
  if (n == 0) throw InfeasibleError("greedy_allocation: no suppliers for m > 0 customers");

  struct Entry {
    double gain;
    std::size_t j;
  };
  // Max-heap on gain; equal gains pop the lowest index first.
  auto lower = [](const Entry& a, const Entry& b) {
    return a.gain != b.gain ? a.gain < b.gain : a.j > b.j;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower)> heap(lower);
  for (std::size_t j = 0; j < n; ++j) heap.push({marginal_gain(q[j], 0), j});
  for (std::size_t step = 0; step < m; ++step) {
    const Entry top = heap.top();
    heap.pop();
    ++out.x[top.j];
    heap.push({marginal_gain(q[top.j], out.x[top.j]), top.j});
  }
  out.value = allocation_value(q, out.x);
  return out;
}

Relaxation waterfill_relaxation(std::span<const double> q, double m, std::size_t prefix,
                                double lower_bound) {
  if (prefix > q.size()) throw DomainError("waterfill_relaxation: prefix exceeds supplier count");
  const double floor_mass = static_cast<double>(prefix) * lower_bound;
  if (m < floor_mass - kSumTolerance) {
    throw InfeasibleError("waterfill_relaxation: m = " + std::to_string(m) +
                          " below the minimum mass " + std::to_string(floor_mass));
  }
  Relaxation out;
  out.x.assign(prefix, lower_bound);
  if (prefix == 0) return out;

  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < prefix; ++j) {
    if (q[j] > 0.0) active.push_back(j);
  }
  const double residual =
      m - lower_bound * static_cast<double>(prefix - active.size());  // mass for active entries
  const double active_floor = lower_bound * static_cast<double>(active.size());

  if (active.empty()) {
    out.x[0] += m - floor_mass;
  } else if (residual - active_floor > kSumTolerance) {
    auto fill = [&](double lambda) {
      double sum = 0.0;
      for (std::size_t j : active) {
        out.x[j] = std::max(lower_bound, std::sqrt(q[j] / lambda) - q[j]);
        sum += out.x[j];
      }
      return sum - residual;
    };
    // hi: every entry at its lower bound. lo: a single entry already holds
    // the whole residual.
    double hi = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t j : active) {
      hi = std::max(hi, q[j] / ((lower_bound + q[j]) * (lower_bound + q[j])));
      lo = std::min(lo, q[j] / ((residual + q[j]) * (residual + q[j])));
    }
    double lambda = std::sqrt(lo * hi);
    for (int it = 0; it < kMaxBisection; ++it) {
      lambda = std::sqrt(lo * hi);
      const double excess = fill(lambda);
      if (std::abs(excess) <= kSumTolerance * 0.1) break;
      if (excess > 0.0) {
        lo = lambda;
      } else {
        hi = lambda;
      }
      if (!(lo < hi) || hi / lo - 1.0 < 1e-16) break;
    }
    out.lambda = lambda;
  }
  out.value = allocation_value(q.first(prefix), std::span<const double>(out.x));
  return out;
}

Allocation round_relaxation(std::span<const double> x_cont, std::size_t m,
                            std::span<const double> q) {
  Allocation out;
  out.x.assign(x_cont.size(), 0);
  if (x_cont.empty()) {
    if (m != 0) throw DomainError("round_relaxation: empty input for m > 0");
    return out;
  }
  std::int64_t rest = 0;
  for (std::size_t j = 1; j < x_cont.size(); ++j) {
    // Snap values within tolerance of an integer so integral inputs survive.
    out.x[j] = static_cast<std::int64_t>(std::floor(x_cont[j] + kSumTolerance));
    rest += out.x[j];
  }
  out.x[0] = static_cast<std::int64_t>(m) - rest;
  if (out.x[0] < 0) throw DomainError("round_relaxation: input mass exceeds m");
  out.value = allocation_value(q.first(x_cont.size()), std::span<const std::int64_t>(out.x));
  return out;
}

Allocation half_approx_allocation(std::span<const double> q, std::size_t m) {
  const std::size_t n = q.size();
  Allocation best;
  best.x.assign(n, 0);
  if (m == 0) return best;
  if (n == 0) throw InfeasibleError("half_approx_allocation: no suppliers for m > 0");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return q[a] < q[b]; });
  std::vector<double> sorted(n);
  for (std::size_t t = 0; t < n; ++t) sorted[t] = q[order[t]];

  best.value = -1.0;
  const std::size_t prefixes = std::min(n, m);
  for (std::size_t i = 1; i <= prefixes; ++i) {
    const Relaxation relax = waterfill_relaxation(sorted, static_cast<double>(m), i, 1.0);
    const Allocation rounded = round_relaxation(relax.x, m, sorted);
    if (rounded.value > best.value) {
      best.value = rounded.value;
      std::fill(best.x.begin(), best.x.end(), 0);
      for (std::size_t t = 0; t < i; ++t) best.x[order[t]] = rounded.x[t];
    }
  }
  best.value = allocation_value(q, best.x);
  return best;
}

MenuSet singleton_menus(const Allocation& allocation, std::size_t m) {
  if (allocation.total() != static_cast<std::int64_t>(m)) {
    throw DomainError("singleton_menus: allocation sums to " + std::to_string(allocation.total()) +
                      ", expected m = " + std::to_string(m));
  }
  MenuSet out;
  out.menus.reserve(m);
  for (std::size_t j = 0; j < allocation.x.size(); ++j) {
    if (allocation.x[j] < 0) throw DomainError("singleton_menus: negative allocation");
    for (std::int64_t t = 0; t < allocation.x[j]; ++t) out.menus.push_back({j});
  }
  return out;
}

double allocation_upper_bound(std::span<const double> q, std::size_t m, BoundKind kind) {
  if (m == 0 || q.empty()) return 0.0;
  if (kind == BoundKind::kInteger) return greedy_allocation(q, m).value;

  // A supplier with q == 0 reaches value 1 with vanishing mass, so its
  // contribution to the supremum is exactly 1.
  std::vector<double> positive;
  std::size_t free_matches = 0;
  for (double qj : q) {
    if (qj > 0.0) {
      positive.push_back(qj);
    } else {
      ++free_matches;
    }
  }
  double bound = static_cast<double>(free_matches);
  if (!positive.empty()) {
    bound += waterfill_relaxation(positive, static_cast<double>(m), positive.size(), 0.0).value;
  }
  return bound;
}

HighValuePlan plan_high_value(const MarketInstance& instance, const HighValueOptions& options) {
  for (std::size_t j = 0; j < instance.num_suppliers(); ++j) {
    if (instance.supplier(j).v < 1.0) {
      throw RegimeError("plan_high_value: supplier " + std::to_string(j) + " has v = " +
                        std::to_string(instance.supplier(j).v) +
                        " < 1; use the combined planner");
    }
  }
  const std::size_t m = instance.num_customers();
  const std::vector<double> q = instance.outside_options();
  HighValuePlan plan;
  HighValueDiagnostics& diag = plan.diagnostics;
  diag.method = options.method;
  diag.proof_constant = (1.0 - std::exp(-1.0 / 24.0)) / 8.0;
  if (instance.num_suppliers() == 0) {
    plan.menus = empty_menus(m);
    diag.allocation.x.clear();
    return plan;
  }
  const Allocation exact = greedy_allocation(q, m);
  diag.upper_bound = exact.value;
  diag.allocation =
      options.method == AllocationMethod::kGreedy ? exact : half_approx_allocation(q, m);
  plan.menus = singleton_menus(diag.allocation, m);
  return plan;
}

}  // namespace matchplan
