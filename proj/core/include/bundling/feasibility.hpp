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

#ifndef BUNDLING_FEASIBILITY_HPP_
#define BUNDLING_FEASIBILITY_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bundling/comparison.hpp"

namespace bundling {

/// Which outcome table to rebuild.
///  kPositive: continuous affinities, rho = +1 (9 rows x 3 columns)
///  kNegative: continuous affinities, rho = -1 (9 x 2)
///  kDiscrete: Bernoulli affinities at a fixed rho, or rho drawn uniformly
///             from [-1, 1] per sample when rho is empty (9 x 4)
enum class TableModel { kPositive, kNegative, kDiscrete };

std::string_view to_string(TableModel model);
std::optional<TableModel> parse_table_model(std::string_view name);

/// a . (c1, e1, c2, e2) < b   (strict)   or   <= b   (non-strict).
struct LinearConstraint {
  std::array<double, 4> a{};
  double b = 0.0;
  bool strict = true;

  bool holds(const Scenario& sc) const;
  LinearConstraint negated() const;
};

/// Maximizes the common slack t of the strict constraints over the box
/// [0, 1e3]^4 x [0, 1] by vertex enumeration. Returns std::nullopt when even
/// the closure is infeasible.
std::optional<double> max_strict_slack(const std::vector<LinearConstraint>& constraints);

/// True when the conjunction has a solution with every strict inequality
/// strict (max slack above 1e-9).
bool strictly_feasible(const std::vector<LinearConstraint>& constraints);

enum class Verdict { kConfirmedTrue, kConfirmedFalse, kWitnessed, kNotFound };
std::string_view to_string(Verdict v);

/// Outcome of the condition algebra for one cell.
enum class Proof {
  kImplied,     // row conditions imply the column conditions
  kInfeasible,  // row and column conditions cannot hold together
  kFeasible,    // neither
  kRelaxed,     // rho sampled: only the rho-free part was checked, feasible
};
std::string_view to_string(Proof p);

struct FeasibilityCell {
  std::string row;     // e.g. "(0,1/2)"
  std::string column;  // e.g. "(3-rho)/4"
  std::string printed_outcomes;            // printed entry, e.g. "WL or WW"
  std::optional<bool> printed_annotation;  // printed True/False, if any
  Verdict verdict = Verdict::kNotFound;
  Proof proof = Proof::kFeasible;
  long hits = 0;  // row samples that landed in this column
  std::optional<Scenario> witness;
  std::set<std::string> observed;  // delta pairs seen, e.g. "WL"
  bool discrepancy = false;
  std::string note;
};

struct FeasibilityTable {
  TableModel model = TableModel::kDiscrete;
  std::optional<double> rho;  // discrete only
  long samples_per_row = 0;
  std::uint64_t seed = 0;
  std::vector<FeasibilityCell> cells;  // row-major

  long discrepancy_count() const;
  const FeasibilityCell* find(std::string_view row, std::string_view column) const;
};

/// Rebuilds a printed outcome table. Each row draws `samples_per_row`
/// parameter points: (c_i, e_i) uniform on [0, 3]^2, rejected until they
/// meet that service's row condition. Each draw is assigned to the column
/// whose conditions it satisfies and compared with `compare`.
FeasibilityTable feasibility_table(TableModel model, std::optional<double> rho,
                                   long samples_per_row, std::uint64_t seed);

}  // namespace bundling

#endif  // BUNDLING_FEASIBILITY_HPP_
