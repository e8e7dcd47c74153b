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

#include "matchplan/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "matchplan/errors.hpp"
#include "matchplan/rng.hpp"

namespace matchplan {

PoissonBinomialPMF poisson_binomial(std::span<const double> probs) {
  std::vector<double> pmf(probs.size() + 1, 0.0);
  pmf[0] = 1.0;
  std::size_t len = 1;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw DomainError("poisson_binomial: probability " + std::to_string(p) + " not in [0,1]");
    }
    // In place, highest count first.
    pmf[len] = pmf[len - 1] * p;
    for (std::size_t t = len - 1; t > 0; --t) {
      pmf[t] = pmf[t] * (1.0 - p) + pmf[t - 1] * p;
    }
    pmf[0] *= 1.0 - p;
    ++len;
  }
  return {std::move(pmf)};
}

EvalResult exact_expected_matches(const MarketInstance& instance, const MenuSet& menu_set) {
  require_valid(instance, menu_set);
  const std::size_t n = instance.num_suppliers();

  std::vector<std::vector<double>> requests(n);
  for (const Menu& menu : menu_set.menus) {
    const ChoiceDistribution dist = customer_choice_distribution(instance, menu);
    for (std::size_t t = 0; t < dist.suppliers.size(); ++t) {
      requests[dist.suppliers[t]].push_back(dist.probs[t]);
    }
  }

  EvalResult result;
  result.per_supplier.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (requests[j].empty()) continue;
    const PoissonBinomialPMF law = poisson_binomial(requests[j]);
    const double q = instance.supplier(j).q;
    double matched = 0.0;
    for (std::size_t t = 1; t < law.pmf.size(); ++t) {
      matched += law.pmf[t] * supplier_match_probability(q, t);
    }
    result.per_supplier[j] = matched;
    result.expected_matches += matched;
  }
  return result;
}

namespace {

// Flattened per-customer cumulative choice thresholds.
struct ChoiceTable {
  std::vector<std::size_t> offset;  // customer i owns [offset[i], offset[i+1])
  std::vector<SupplierIndex> supplier;
  std::vector<double> cumulative;
};

ChoiceTable build_choice_table(const MarketInstance& instance, const MenuSet& menu_set) {
  ChoiceTable table;
  table.offset.push_back(0);
  for (const Menu& menu : menu_set.menus) {
    const ChoiceDistribution dist = customer_choice_distribution(instance, menu);
    double acc = 0.0;
    for (std::size_t t = 0; t < dist.suppliers.size(); ++t) {
      acc += dist.probs[t];
      table.supplier.push_back(dist.suppliers[t]);
      table.cumulative.push_back(acc);
    }
    table.offset.push_back(table.supplier.size());
  }
  return table;
}

struct BlockStats {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<double> per_supplier;
};

BlockStats run_block(const MarketInstance& instance, const ChoiceTable& table,
                     std::size_t block, std::size_t trials_in_block, std::uint64_t seed,
                     Estimator estimator) {
  const std::size_t n = instance.num_suppliers();
  const std::size_t m = table.offset.size() - 1;
  SplitMix64 rng(split_seed(seed, block));

  BlockStats stats;
  stats.per_supplier.assign(n, 0.0);
  std::vector<std::size_t> counts(n, 0);
  std::vector<SupplierIndex> touched;
  touched.reserve(n);

  for (std::size_t trial = 0; trial < trials_in_block; ++trial) {
    for (std::size_t i = 0; i < m; ++i) {
      const double u = rng.uniform();
      for (std::size_t t = table.offset[i]; t < table.offset[i + 1]; ++t) {
        if (u < table.cumulative[t]) {
          const SupplierIndex j = table.supplier[t];
          if (counts[j]++ == 0) touched.push_back(j);
          break;
        }
      }
    }
    double matches = 0.0;
    for (SupplierIndex j : touched) {
      const double accept = supplier_match_probability(instance.supplier(j).q, counts[j]);
      double y = accept;
      if (estimator == Estimator::kRawTwoStage) y = rng.uniform() < accept ? 1.0 : 0.0;
      matches += y;
      stats.per_supplier[j] += y;
      counts[j] = 0;
    }
    touched.clear();
    stats.sum += matches;
    stats.sum_sq += matches * matches;
  }
  return stats;
}

}  // namespace

MonteCarloResult monte_carlo_expected_matches(const MarketInstance& instance,
                                              const MenuSet& menu_set, std::size_t trials,
                                              std::uint64_t seed, Estimator estimator,
                                              Execution execution) {
  if (trials == 0) throw DomainError("monte_carlo_expected_matches: trials must be >= 1");
  require_valid(instance, menu_set);
  const ChoiceTable table = build_choice_table(instance, menu_set);
  const std::size_t n = instance.num_suppliers();

  const std::size_t num_blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<BlockStats> blocks(num_blocks);
  auto trials_in = [&](std::size_t b) {
    return b + 1 < num_blocks ? kTrialsPerBlock : trials - b * kTrialsPerBlock;
  };

  if (execution == Execution::kParallel) {
    const auto nb = static_cast<std::ptrdiff_t>(num_blocks);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t b = 0; b < nb; ++b) {
      const auto ub = static_cast<std::size_t>(b);
      blocks[ub] = run_block(instance, table, ub, trials_in(ub), seed, estimator);
    }
  } else {
    for (std::size_t b = 0; b < num_blocks; ++b) {
      blocks[b] = run_block(instance, table, b, trials_in(b), seed, estimator);
    }
  }

  double sum = 0.0;
  double sum_sq = 0.0;
  MonteCarloResult result;
  result.trials = trials;
  result.per_supplier.assign(n, 0.0);
  for (const BlockStats& block : blocks) {
    sum += block.sum;
    sum_sq += block.sum_sq;
    for (std::size_t j = 0; j < n; ++j) result.per_supplier[j] += block.per_supplier[j];
  }
  const double count = static_cast<double>(trials);
  result.expected_matches = sum / count;
  for (double& p : result.per_supplier) p /= count;
  if (trials > 1) {
    const double var = std::max(0.0, (sum_sq - sum * sum / count) / (count - 1.0));
    result.standard_error = std::sqrt(var / count);
  }
  return result;
}

}  // namespace matchplan
