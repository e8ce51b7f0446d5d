// Copyright 2026 The Bundling Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BUNDLING_SRC_TIES_HPP_
#define BUNDLING_SRC_TIES_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bundling::internal {

// Relative band inside which two condition operands count as equal.
inline constexpr double kTieTolerance = 1e-12;

// a <= b, treating values within the tie band as equal.
inline bool tie_le(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) return a <= b;
  return a <= b + kTieTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

inline bool tie_ge(double a, double b) { return tie_le(b, a); }

inline void require_nonnegative(double c, double e, const char* where) {
  if (!(c >= 0.0) || !(e >= 0.0) || !std::isfinite(c) || !std::isfinite(e)) {
    throw std::invalid_argument(std::string(where) +
                                ": cost and externality must be finite and >= 0");
  }
}

}  // namespace bundling::internal

#endif  // BUNDLING_SRC_TIES_HPP_
