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

#ifndef BUNDLING_CLI_CONFIG_HPP_
#define BUNDLING_CLI_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "bundling/comparison.hpp"
#include "bundling/feasibility.hpp"
#include "bundling/region.hpp"
#include "bundling/simulation.hpp"

namespace bundling::cli {

/// Malformed or out-of-range configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SweepVar { kRho, kC1, kE1, kC2, kE2 };

struct SweepSpec {
  SweepVar var = SweepVar::kRho;
  double from = -1.0;
  double to = 1.0;
  long steps = 201;

  /// Grid value k of steps; the last point is exactly `to`.
  double value(long k) const;
};

struct RegionMapSpec {
  RegionModel model = RegionModel::kSeparateContinuous;
  double rho = 0.0;
  std::pair<double, double> c_range{0.0, 3.0};
  std::pair<double, double> e_range{0.0, 3.0};
  long resolution = 101;
};

struct MonteCarloSpec {
  long n = 100'000;
  std::uint64_t seed = 42;
  SimMode mode = SimMode::kBundle;
  long max_rounds = 10'000;
};

struct TableSpec {
  TableModel model = TableModel::kDiscrete;
  std::optional<double> rho;
  long samples = 10'000;
  std::uint64_t seed = 1;
};

struct RunConfig {
  Scenario scenario;
  SolverConfig solver;
  QuadratureConfig quad;
  SweepSpec sweep;
  RegionMapSpec region;
  MonteCarloSpec montecarlo;
  TableSpec table;
  nlohmann::json raw;  // the document as read, for the output echo
};

/// Reads a real given either as a JSON number or as a string "p/q".
double parse_real(const nlohmann::json& value, const std::string& where);

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

std::string_view to_string(SweepVar var);

}  // namespace bundling::cli

#endif  // BUNDLING_CLI_CONFIG_HPP_
