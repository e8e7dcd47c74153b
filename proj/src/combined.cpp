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

#include "matchplan/combined.hpp"

namespace matchplan {

namespace {

MarketInstance sub_instance(const MarketInstance& instance, const std::vector<SupplierIndex>& keep,
                            std::size_t num_customers) {
  std::vector<Supplier> suppliers;
  suppliers.reserve(keep.size());
  for (SupplierIndex j : keep) suppliers.push_back(instance.supplier(j));
  return MarketInstance(num_customers, std::move(suppliers));
}

void scatter(const MenuSet& part, const std::vector<std::size_t>& customers,
             const std::vector<SupplierIndex>& suppliers, MenuSet& out) {
  for (std::size_t t = 0; t < customers.size(); ++t) {
    Menu& menu = out.menus[customers[t]];
    for (SupplierIndex j : part.menus[t]) menu.push_back(suppliers[j]);
  }
}

}  // namespace

RegimeSplit split_regimes(const MarketInstance& instance) {
  RegimeSplit split;
  for (std::size_t j = 0; j < instance.num_suppliers(); ++j) {
    (instance.supplier(j).v >= 1.0 ? split.high : split.low).push_back(j);
  }
  const std::size_t m = instance.num_customers();
  std::size_t high_customers = (m + 1) / 2;
  if (split.low.empty()) high_customers = m;
  if (split.high.empty()) high_customers = 0;
  for (std::size_t i = 0; i < m; ++i) {
    (i < high_customers ? split.customers_high : split.customers_low).push_back(i);
  }
  return split;
}

CombinedPlan plan_combined(const MarketInstance& instance, const CombinedOptions& options) {
  CombinedPlan plan;
  plan.split = split_regimes(instance);
  plan.menus = empty_menus(instance.num_customers());
  const RegimeSplit& split = plan.split;

  if (!split.customers_high.empty()) {
    HighValuePlan high =
        plan_high_value(sub_instance(instance, split.high, split.customers_high.size()), options.high);
    scatter(high.menus, split.customers_high, split.high, plan.menus);
    plan.high = std::move(high.diagnostics);
  }
  if (!split.customers_low.empty()) {
    LowValuePlan low =
        plan_low_value(sub_instance(instance, split.low, split.customers_low.size()), options.low);
    scatter(low.menus, split.customers_low, split.low, plan.menus);
    plan.low = std::move(low.diagnostics);
  }
  return plan;
}

}  // namespace matchplan
