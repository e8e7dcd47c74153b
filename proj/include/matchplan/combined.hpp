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

#ifndef MATCHPLAN_COMBINED_HPP_
#define MATCHPLAN_COMBINED_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "matchplan/high_value.hpp"
#include "matchplan/low_value.hpp"
#include "matchplan/market.hpp"

namespace matchplan {

// Suppliers with v >= 1 go high, the rest low. With both sides non-empty
// the first ceil(m/2) customers serve the high side and the rest the low
// side; otherwise every customer serves the non-empty side.
struct RegimeSplit {
  std::vector<SupplierIndex> high;
  std::vector<SupplierIndex> low;
  std::vector<std::size_t> customers_high;
  std::vector<std::size_t> customers_low;
};

RegimeSplit split_regimes(const MarketInstance& instance);

struct CombinedOptions {
  LowValueOptions low;
  HighValueOptions high;
};

struct CombinedPlan {
  MenuSet menus;
  RegimeSplit split;
  std::optional<LowValueDiagnostics> low;
  std::optional<HighValueDiagnostics> high;
};

CombinedPlan plan_combined(const MarketInstance& instance, const CombinedOptions& options = {});

}  // namespace matchplan

#endif  // MATCHPLAN_COMBINED_HPP_
