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

#ifndef MATCHPLAN_MARKET_HPP_
#define MATCHPLAN_MARKET_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace matchplan {

using SupplierIndex = std::size_t;
using Menu = std::vector<SupplierIndex>;

// A supplier with public score v > 0 and outside-option score q >= 0.
struct Supplier {
  double v = 1.0;
  double q = 0.0;

  friend bool operator==(const Supplier&, const Supplier&) = default;
};

// Market with m identical customers (score and outside option normalized
// to 1) and an ordered list of suppliers addressed by position.
//
// The constructor checks the per-supplier invariants. Empty markets (m == 0
// or no suppliers) are representable because sub-markets produced by the
// planners can be empty; file loaders reject them at the boundary.
class MarketInstance {
 public:
  MarketInstance() = default;
  MarketInstance(std::size_t num_customers, std::vector<Supplier> suppliers);

  std::size_t num_customers() const { return num_customers_; }
  std::size_t num_suppliers() const { return suppliers_.size(); }
  const std::vector<Supplier>& suppliers() const { return suppliers_; }
  const Supplier& supplier(SupplierIndex j) const { return suppliers_[j]; }

  std::vector<double> scores() const;
  std::vector<double> outside_options() const;

  friend bool operator==(const MarketInstance&, const MarketInstance&) = default;

 private:
  std::size_t num_customers_ = 0;
  std::vector<Supplier> suppliers_;
};

// One menu per customer.
struct MenuSet {
  std::vector<Menu> menus;

  std::size_t size() const { return menus.size(); }
  friend bool operator==(const MenuSet&, const MenuSet&) = default;
};

MenuSet empty_menus(std::size_t num_customers);

// Multinomial-logit choice of one customer over menu ∪ {outside}.
struct ChoiceDistribution {
  Menu suppliers;              // same order as the menu
  std::vector<double> probs;   // probs[t] belongs to suppliers[t]
  double outside = 1.0;

  double prob_of(SupplierIndex j) const;
};

// probs[j] = v_j / (1 + sum of menu scores); throws IndexError on a bad index.
ChoiceDistribution customer_choice_distribution(const MarketInstance& instance,
                                                std::span<const SupplierIndex> menu);

// Probability that a supplier with outside option q accepts one of t
// requests: t / (t + q), and 0 when t == 0.
double supplier_match_probability(double q, std::size_t t);

enum class ValidationCode { kMenuCount, kIndexOutOfRange, kDuplicateIndex };

struct ValidationError {
  ValidationCode code;
  std::size_t customer = 0;
  std::string message;
};

// Checks a menu set against the instance dimensions; returns every
// violation found (empty means valid).
std::vector<ValidationError> validate(const MarketInstance& instance, const MenuSet& menu_set);

// Throws IndexError (for index faults) or DomainError (for shape faults)
// carrying the first violation.
void require_valid(const MarketInstance& instance, const MenuSet& menu_set);

}  // namespace matchplan

#endif  // MATCHPLAN_MARKET_HPP_
