// Copyright 2026 The Authors.
//
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

#ifndef ULSCHED_ERRORS_HPP_
#define ULSCHED_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ulsched {

// An exhaustive routine was asked to exceed its configured brute-force
// budget. The caller must shrink the instance or raise the budget; no
// routine silently substitutes an approximation.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite numeric input, or a factorization that failed its tolerance.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ulsched

#endif  // ULSCHED_ERRORS_HPP_
