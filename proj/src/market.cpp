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

#include "matchplan/market.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "matchplan/errors.hpp"

namespace matchplan {

MarketInstance::MarketInstance(std::size_t num_customers, std::vector<Supplier> suppliers)
    : num_customers_(num_customers), suppliers_(std::move(suppliers)) {
  for (std::size_t j = 0; j < suppliers_.size(); ++j) {
    const Supplier& s = suppliers_[j];
    if (!std::isfinite(s.v) || !(s.v > 0.0)) {
      throw DomainError("supplier " + std::to_string(j) + ": score v must be finite and > 0");
    }
    if (!std::isfinite(s.q) || !(s.q >= 0.0)) {
      throw DomainError("supplier " + std::to_string(j) +
                        ": outside option q must be finite and >= 0");
    }
  }
}

std::vector<double> MarketInstance::scores() const {
  std::vector<double> out;
  out.reserve(suppliers_.size());
  for (const Supplier& s : suppliers_) out.push_back(s.v);
  return out;
}

std::vector<double> MarketInstance::outside_options() const {
  std::vector<double> out;
  out.reserve(suppliers_.size());
  for (const Supplier& s : suppliers_) out.push_back(s.q);
  return out;
}

MenuSet empty_menus(std::size_t num_customers) {
  return MenuSet{std::vector<Menu>(num_customers)};
}

double ChoiceDistribution::prob_of(SupplierIndex j) const {
  for (std::size_t t = 0; t < suppliers.size(); ++t) {
    if (suppliers[t] == j) return probs[t];
  }
  return 0.0;
}

ChoiceDistribution customer_choice_distribution(const MarketInstance& instance,
                                                std::span<const SupplierIndex> menu) {
  const std::size_t n = instance.num_suppliers();
  double mass = 0.0;
  for (SupplierIndex j : menu) {
    if (j >= n) {
      throw IndexError("index " + std::to_string(j) + " out of range");
    }
    mass += instance.supplier(j).v;
  }
  const double denom = 1.0 + mass;
  ChoiceDistribution dist;
  dist.suppliers.assign(menu.begin(), menu.end());
  dist.probs.reserve(menu.size());
  for (SupplierIndex j : menu) dist.probs.push_back(instance.supplier(j).v / denom);
  dist.outside = 1.0 / denom;
  return dist;
}

double supplier_match_probability(double q, std::size_t t) {
  if (t == 0) return 0.0;
  const double td = static_cast<double>(t);
  return td / (td + q);
}

std::vector<ValidationError> validate(const MarketInstance& instance, const MenuSet& menu_set) {
  std::vector<ValidationError> errors;
  const std::size_t m = instance.num_customers();
  const std::size_t n = instance.num_suppliers();
  if (menu_set.size() != m) {
    errors.push_back({ValidationCode::kMenuCount, 0,
                      "menu count " + std::to_string(menu_set.size()) +
                          " != m=" + std::to_string(m)});
  }
  for (std::size_t i = 0; i < menu_set.size(); ++i) {
    const Menu& menu = menu_set.menus[i];
    std::vector<bool> seen(n, false);
    for (SupplierIndex j : menu) {
      if (j >= n) {
        errors.push_back({ValidationCode::kIndexOutOfRange, i,
                          "customer " + std::to_string(i) + ": index " + std::to_string(j) +
                              " out of range"});
        continue;
      }
      if (seen[j]) {
        errors.push_back({ValidationCode::kDuplicateIndex, i,
                          "customer " + std::to_string(i) + ": duplicate index " +
                              std::to_string(j)});
      }
      seen[j] = true;
    }
  }
  return errors;
}

void require_valid(const MarketInstance& instance, const MenuSet& menu_set) {
  const std::vector<ValidationError> errors = validate(instance, menu_set);
  if (errors.empty()) return;
  const ValidationError& first = errors.front();
  if (first.code == ValidationCode::kIndexOutOfRange) throw IndexError(first.message);
  throw DomainError(first.message);
}

}  // namespace matchplan
