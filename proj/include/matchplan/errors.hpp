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

#ifndef MATCHPLAN_ERRORS_HPP_
#define MATCHPLAN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace matchplan {

// Supplier index outside [0, n).
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Instance does not belong to the regime a planner handles.
class RegimeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive search refused because the enumeration budget is exceeded.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Optimization problem has an empty feasible set.
class InfeasibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace matchplan

#endif  // MATCHPLAN_ERRORS_HPP_
