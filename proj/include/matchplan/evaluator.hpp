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

#ifndef MATCHPLAN_EVALUATOR_HPP_
#define MATCHPLAN_EVALUATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "matchplan/market.hpp"

namespace matchplan {

// Law of a sum of independent Bernoulli variables; pmf[t] = P(sum = t).
struct PoissonBinomialPMF {
  std::vector<double> pmf;
};

// Sequential convolution, O(len^2). Throws DomainError if some p is not in [0, 1].
PoissonBinomialPMF poisson_binomial(std::span<const double> probs);

struct EvalResult {
  double expected_matches = 0.0;
  std::vector<double> per_supplier;  // P(supplier j is matched)
};

// Exact expected number of matches. Customer choices are independent, so
// each supplier's request count is Poisson-binomial and
// E[Y_j] = sum_t pmf_j[t] * t / (t + q_j).
EvalResult exact_expected_matches(const MarketInstance& instance, const MenuSet& menu_set);

enum class Execution { kSerial, kParallel };

enum class Estimator {
  kRaoBlackwell,  // sample customers, integrate the supplier stage analytically
  kRawTwoStage,   // sample both stages
};

struct MonteCarloResult {
  double expected_matches = 0.0;
  double standard_error = 0.0;
  std::vector<double> per_supplier;
  std::size_t trials = 0;
};

// Trials are grouped in fixed blocks; block b draws from
// SplitMix64(split_seed(seed, b)) and block partial sums are reduced in
// block order. Serial and parallel execution therefore return bit-identical
// results for any thread count.
inline constexpr std::size_t kTrialsPerBlock = 256;

MonteCarloResult monte_carlo_expected_matches(const MarketInstance& instance,
                                              const MenuSet& menu_set, std::size_t trials,
                                              std::uint64_t seed,
                                              Estimator estimator = Estimator::kRaoBlackwell,
                                              Execution execution = Execution::kParallel);

}  // namespace matchplan

#endif  // MATCHPLAN_EVALUATOR_HPP_
