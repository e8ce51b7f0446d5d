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

#ifndef BUNDLING_COMPARISON_HPP_
#define BUNDLING_COMPARISON_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <utility>

#include "bundling/equilibrium.hpp"
#include "bundling/numerics.hpp"

namespace bundling {

struct ServiceParams {
  double c = 0.0;  // intrinsic cost
  double e = 0.0;  // externality strength
};

enum class AffinityModel { kContinuous, kDiscrete };

std::string_view to_string(AffinityModel model);
std::optional<AffinityModel> parse_affinity_model(std::string_view name);

struct Scenario {
  ServiceParams s1;
  ServiceParams s2;
  AffinityModel model = AffinityModel::kContinuous;
  double rho = 0.0;

  /// Throws std::invalid_argument on negative/non-finite parameters or rho
  /// outside [-1, 1].
  void validate() const;
  double bundle_c() const { return s1.c + s2.c; }
  double bundle_e() const { return s1.e + s2.e; }
  /// Services 1 and 2 exchanged.
  Scenario swapped() const { return {s2, s1, model, rho}; }
};

enum class Delta { kWin, kLose, kSame };

/// "W", "L" or "S".
char to_char(Delta d);

/// W when x_bun > x_sep + tol, L when x_bun < x_sep - tol, S otherwise.
Delta classify_delta(double x_sep, double x_bun, double tol);

struct OutcomeTriple {
  double x1 = 0.0;
  double x2 = 0.0;
  double xb = 0.0;
  Delta delta1 = Delta::kSame;
  Delta delta2 = Delta::kSame;
};

struct CompareOptions {
  double tol = 1e-9;
  SolverConfig solver;
  QuadratureConfig quad;
};

/// Lowest stable equilibrium of one service offered alone.
double separate_lseq(const ServiceParams& s, AffinityModel model);

/// Lowest stable equilibrium of the bundle. Closed forms where they exist
/// (discrete, and continuous rho in {-1, 0, 1}); best-response iteration on
/// the quadrature-backed curve otherwise.
double bundle_lseq(const Scenario& sc, const SolverConfig& solver = {},
                   const QuadratureConfig& quad = {});

OutcomeTriple compare(const Scenario& sc, double tol = 1e-9);
OutcomeTriple compare(const Scenario& sc, const CompareOptions& options);

/// Separate and bundled adoption curves of a scenario.
AdoptionCurve separate_curve(const ServiceParams& s, AffinityModel model);
AdoptionCurve bundle_curve(const Scenario& sc, const QuadratureConfig& quad = {});

/// Draws `n` scenarios with (c1, e1, c2, e2) uniform on [0, 3]^4 under
/// `model`/`rho` and counts the (delta1, delta2) outcomes.
std::map<std::pair<Delta, Delta>, long> sample_outcomes(AffinityModel model, double rho,
                                                        long n, std::uint64_t seed);

}  // namespace bundling

#endif  // BUNDLING_COMPARISON_HPP_
