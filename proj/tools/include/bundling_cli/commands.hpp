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

#ifndef BUNDLING_CLI_COMMANDS_HPP_
#define BUNDLING_CLI_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bundling_cli/config.hpp"

namespace bundling::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitTolerance = 3;
inline constexpr int kExitDiscrepancy = 4;

enum class Format { kCsv, kJson };

/// Command-line overrides of config values.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<long> steps;
  std::optional<Format> format;
};

struct SweepRow {
  double value = 0.0;
  OutcomeTriple outcome;
  std::string error;  // empty when the row solved
};

/// Scenario with the sweep variable set to `value`.
Scenario apply_sweep(const Scenario& base, SweepVar var, double value);

/// Validates the spec (throws ConfigError) and evaluates every grid point.
/// Solver failures are stored per row.
std::vector<SweepRow> sweep_rows(const RunConfig& cfg, const SweepSpec& spec);

struct RegionRow {
  double c = 0.0;
  double e = 0.0;
  std::string label;
  double lseq = 0.0;
  std::string error;
};

/// resolution x resolution grid, c outer, e inner.
std::vector<RegionRow> region_rows(const RegionMapSpec& spec);

int cmd_analyze(const RunConfig& cfg, const Overrides& ov, std::ostream& out);
int cmd_sweep(const RunConfig& cfg, const Overrides& ov, std::ostream& out);
int cmd_region_map(const RunConfig& cfg, const Overrides& ov, std::ostream& out);
int cmd_montecarlo(const RunConfig& cfg, const Overrides& ov, std::ostream& out);
int cmd_table(const RunConfig& cfg, const Overrides& ov, std::ostream& out);

}  // namespace bundling::cli

#endif  // BUNDLING_CLI_COMMANDS_HPP_
