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

#ifndef MATCHPLAN_RNG_HPP_
#define MATCHPLAN_RNG_HPP_

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace matchplan {

// SplitMix64 finalizer (Steele, Lea & Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Derives an independent stream key from a parent seed and a lane index.
// Every parallel lane and every generated instance gets its key this way,
// so results never depend on the number of threads.
constexpr std::uint64_t split_seed(std::uint64_t seed, std::uint64_t lane) {
  return mix64(seed ^ mix64(lane + 0x9E3779B97F4A7C15ULL));
}

constexpr std::uint64_t split_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  for (std::uint64_t lane : path) seed = split_seed(seed, lane);
  return seed;
}

// Counter-based SplitMix64: the k-th output is mix64(key + k * golden).
// Pure integer arithmetic, so streams are bit-identical on every platform.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t key) : key_(key) {}

  constexpr std::uint64_t operator()() {
    ++counter_;
    return mix64(key_ + counter_ * 0x9E3779B97F4A7C15ULL);
  }

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  // Uniform on (0, 1]: 53 random bits, offset by one ulp so log() is finite.
  double uniform_open0() {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform on [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Exponential with rate lambda by inverse CDF.
  double exponential(double lambda) { return -std::log(uniform_open0()) / lambda; }

  // Exponential with the given mean, -mean * ln U.
  double exponential_mean(double mean) { return -std::log(uniform_open0()) * mean; }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace matchplan

#endif  // MATCHPLAN_RNG_HPP_
