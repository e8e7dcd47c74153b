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

#include "matchplan/low_value.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "matchplan/errors.hpp"

namespace matchplan {

namespace {

// Absorbs summation noise in ceil(s_k) so that an s_k that is integral in
// exact arithmetic does not round up by one.
constexpr double kCeilSlack = 1e-9;

double bucket_load(double w, double q_rep, double units) { return 2.0 / q_rep * w * units; }

}  // namespace

FractionalPlan FractionalPlan::zeros(std::size_t num_customers, std::size_t num_buckets) {
  FractionalPlan plan;
  plan.num_customers = num_customers;
  plan.num_buckets = num_buckets;
  plan.x.assign(num_customers * num_buckets, 0.0);
  plan.symmetric.assign(num_buckets, 0.0);
  return plan;
}

double lp_objective(const FractionalPlan& plan, const BucketTable& buckets) {
  double total = 0.0;
  for (std::size_t k = 0; k < plan.num_buckets; ++k) {
    double units = 0.0;
    for (std::size_t i = 0; i < plan.num_customers; ++i) units += plan.at(i, k);
    total += bucket_load(buckets.buckets[k].w, buckets.buckets[k].q_rep, units);
  }
  return total;
}

FractionalPlan solve_lp(const BucketTable& buckets, std::size_t num_customers) {
  const std::size_t num_buckets = buckets.size();
  FractionalPlan plan = FractionalPlan::zeros(num_customers, num_buckets);
  if (num_buckets == 0 || num_customers == 0) return plan;

  std::vector<std::size_t> order(num_buckets);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const BucketIndex& ka = buckets.buckets[a].index;
    const BucketIndex& kb = buckets.buckets[b].index;
    return ka.k2 != kb.k2 ? ka.k2 < kb.k2 : ka.k1 < kb.k1;
  });

  const double m = static_cast<double>(num_customers);
  double budget = 1.0;
  for (std::size_t pos : order) {
    const Bucket& bucket = buckets.buckets[pos];
    const double size = static_cast<double>(bucket.size());
    const double cap = std::min(size, bucket.q_rep * size / (2.0 * m * bucket.w));
    plan.last_filled = pos;
    if (cap * bucket.w >= budget) {
      plan.symmetric[pos] = budget / bucket.w;
      budget = 0.0;
      break;
    }
    plan.symmetric[pos] = cap;
    budget -= cap * bucket.w;
  }

  for (std::size_t i = 0; i < num_customers; ++i) {
    for (std::size_t k = 0; k < num_buckets; ++k) plan.at(i, k) = plan.symmetric[k];
  }
  plan.objective = lp_objective(plan, buckets);
  return plan;
}

double lp_upper_bound(const FractionalPlan& plan) { return 2.0 * plan.objective; }

IntegralPlan round_plan(const FractionalPlan& plan, const BucketTable& buckets,
                        std::size_t num_customers) {
  const std::size_t num_buckets = buckets.size();
  IntegralPlan out;
  out.num_customers = num_customers;
  out.num_buckets = num_buckets;
  out.x.assign(num_customers * num_buckets, 0);
  for (const Bucket& b : buckets.buckets) {
    if (out.levels.empty() || out.levels.back() != b.index.k1) out.levels.push_back(b.index.k1);
  }
  const std::size_t num_levels = out.levels.size();
  out.y.assign(num_customers * num_levels, 0);

  // Floor step.
  for (std::size_t i = 0; i < num_customers; ++i) {
    for (std::size_t k = 0; k < num_buckets; ++k) {
      const double v = plan.at(i, k);
      if (v >= 1.0) out.at(i, k) = static_cast<std::int64_t>(std::floor(v));
    }
  }

  // The table is sorted by (k1, k2), so each level is a contiguous run.
  std::vector<std::size_t> eligible;
  std::size_t k = 0;
  for (std::size_t level = 0; level < num_levels; ++level) {
    for (; k < num_buckets && buckets.buckets[k].index.k1 == out.levels[level]; ++k) {
      eligible.clear();
      double s = 0.0;
      for (std::size_t i = 0; i < num_customers; ++i) {
        const double v = plan.at(i, k);
        if (v < 1.0) {
          eligible.push_back(i);
          s += v;
        }
      }
      const auto need = std::min<std::size_t>(
          eligible.size(), static_cast<std::size_t>(std::max(0.0, std::ceil(s - kCeilSlack))));
      auto fewest = [&](std::size_t a, std::size_t b) {
        const std::int64_t ya = out.y[a * num_levels + level];
        const std::int64_t yb = out.y[b * num_levels + level];
        return ya != yb ? ya < yb : a < b;
      };
      std::partial_sort(eligible.begin(), eligible.begin() + static_cast<std::ptrdiff_t>(need),
                        eligible.end(), fewest);
      for (std::size_t t = 0; t < need; ++t) {
        const std::size_t i = eligible[t];
        out.at(i, k) = 1;
        ++out.y[i * num_levels + level];
      }
    }
  }
  return out;
}

ConstructedMenus construct_menus(const IntegralPlan& plan, const BucketTable& buckets,
                                 std::size_t num_customers) {
  ConstructedMenus out;
  out.menus = empty_menus(num_customers);
  out.counts.counts.resize(buckets.size());

  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < buckets.size(); ++k) {
    const Bucket& bucket = buckets.buckets[k];
    std::vector<std::int64_t>& c = out.counts.counts[k];
    c.assign(bucket.size(), 0);
    for (std::size_t i = 0; i < num_customers; ++i) {
      const std::int64_t want = plan.at(i, k);
      if (want < 0 || static_cast<std::size_t>(want) > bucket.size()) {
        throw DomainError("construct_menus: x[" + std::to_string(i) + "][" + std::to_string(k) +
                          "] = " + std::to_string(want) + " exceeds bucket size " +
                          std::to_string(bucket.size()));
      }
      if (want == 0) continue;
      order.resize(bucket.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::partial_sort(order.begin(), order.begin() + want, order.end(),
                        [&](std::size_t a, std::size_t b) {
                          return c[a] != c[b] ? c[a] < c[b] : a < b;
                        });
      for (std::int64_t t = 0; t < want; ++t) {
        const std::size_t pos = order[static_cast<std::size_t>(t)];
        ++c[pos];
        out.menus.menus[i].push_back(bucket.members[pos]);
      }
    }
  }
  for (Menu& menu : out.menus.menus) std::sort(menu.begin(), menu.end());
  return out;
}

RoundingCheck check_rounding(const FractionalPlan& plan, const IntegralPlan& rounded,
                             const BucketTable& buckets, double c) {
  RoundingCheck check;
  check.lpopt = lp_objective(plan, buckets);
  check.max_cap_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rounded.num_buckets; ++k) {
    const Bucket& b = buckets.buckets[k];
    double units = 0.0;
    for (std::size_t i = 0; i < rounded.num_customers; ++i) {
      units += static_cast<double>(rounded.at(i, k));
    }
    const double load = bucket_load(b.w, b.q_rep, units);
    const double size = static_cast<double>(b.size());
    check.rounded_objective += std::min(load, size);
    check.max_cap_excess = std::max(check.max_cap_excess, load - (size + 2.0 * b.w / b.q_rep));
  }
  for (std::size_t i = 0; i < rounded.num_customers; ++i) {
    double mass = 0.0;
    for (std::size_t k = 0; k < rounded.num_buckets; ++k) {
      mass += buckets.buckets[k].w * static_cast<double>(rounded.at(i, k));
    }
    check.max_customer_mass = std::max(check.max_customer_mass, mass);
  }
  if (rounded.num_buckets == 0) check.max_cap_excess = 0.0;
  constexpr double kTol = 1e-9;
  check.objective_ok = check.rounded_objective >= check.lpopt / 2.0 - kTol;
  check.mass_ok = check.max_customer_mass <= c + kTol;
  check.cap_ok = check.max_cap_excess <= kTol;
  return check;
}

MenuCheck check_menu_construction(const IntegralPlan& rounded, const ShowCounts& counts,
                                  const BucketTable& buckets) {
  MenuCheck check;
  check.totals_ok = counts.counts.size() == buckets.size();
  check.show_bound_ok = check.totals_ok;
  for (std::size_t k = 0; k < buckets.size() && k < counts.counts.size(); ++k) {
    const Bucket& b = buckets.buckets[k];
    std::int64_t shown = 0;
    const double bound = 2.0 + b.q_rep / (2.0 * b.w);
    for (std::int64_t c : counts.counts[k]) {
      shown += c;
      check.max_count = std::max(check.max_count, c);
      if (static_cast<double>(c) > bound) check.show_bound_ok = false;
    }
    std::int64_t requested = 0;
    for (std::size_t i = 0; i < rounded.num_customers; ++i) requested += rounded.at(i, k);
    if (shown != requested) check.totals_ok = false;
  }
  return check;
}

LowValuePlan plan_low_value(const MarketInstance& instance, const LowValueOptions& options) {
  for (std::size_t j = 0; j < instance.num_suppliers(); ++j) {
    if (instance.supplier(j).v > 1.0) {
      throw RegimeError("plan_low_value: supplier " + std::to_string(j) + " has v = " +
                        std::to_string(instance.supplier(j).v) +
                        " > 1; use the combined planner");
    }
  }
  const std::size_t m = instance.num_customers();
  LowValuePlan result;
  LowValueDiagnostics& diag = result.diagnostics;

  ClampResult clamped = clamp_low_q(instance);
  diag.clamped = clamped.clamped;
  diag.cap_exponent = options.cap_exponent.value_or(default_cap_exponent(m));
  CapResult capped = cap_high_q(clamped.instance, diag.cap_exponent);
  diag.dropped = capped.dropped;
  diag.additive_slack = capped.additive_loss_bound();

  const BucketTable buckets = build_buckets(capped.instance);
  diag.num_buckets = buckets.size();
  const FractionalPlan fractional = solve_lp(buckets, m);
  const IntegralPlan rounded = round_plan(fractional, buckets, m);
  ConstructedMenus built = construct_menus(rounded, buckets, m);

  diag.lpopt = fractional.objective;
  const double clamp_factor = diag.clamped.empty() ? 1.0 : 2.0;
  diag.upper_bound = clamp_factor * (lp_upper_bound(fractional) + diag.additive_slack);
  diag.rounding = check_rounding(fractional, rounded, buckets);
  diag.menu_check = check_menu_construction(rounded, built.counts, buckets);

  result.menus = std::move(built.menus);
  for (Menu& menu : result.menus.menus) {
    double mass = 0.0;
    for (SupplierIndex& j : menu) {
      j = capped.original_index[j];
      mass += instance.supplier(j).v;
    }
    diag.max_menu_mass = std::max(diag.max_menu_mass, mass);
  }
  return result;
}

}  // namespace matchplan
