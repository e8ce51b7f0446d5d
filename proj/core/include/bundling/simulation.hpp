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

#ifndef BUNDLING_SIMULATION_HPP_
#define BUNDLING_SIMULATION_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "bundling/affinity_continuous.hpp"
#include "bundling/comparison.hpp"

namespace bundling {

/// A frozen sample of per-agent affinities. Discrete affinities are stored
/// as 0.0 / 1.0.
struct Population {
  long n = 0;
  AffinityModel model = AffinityModel::kContinuous;
  double rho = 0.0;
  std::uint64_t seed = 0;
  std::vector<AffinityPair> affinities;
};

/// Draws n affinity pairs from a std::mt19937_64 seeded with `seed`.
Population make_population(AffinityModel model, double rho, long n, std::uint64_t seed);

enum class SimMode { kSeparate1, kSeparate2, kBundle };
std::string_view to_string(SimMode mode);
std::optional<SimMode> parse_sim_mode(std::string_view name);

struct Trajectory {
  std::vector<double> levels;  // levels[0] = 0 is the initial state
  bool converged = false;
  double final = 0.0;
  long rounds() const { return static_cast<long>(levels.size()) - 1; }
};

/// Synchronous best-response dynamics on a fixed population: each round every
/// agent adopts iff its utility at the current level is positive. Stops when
/// the adopter count repeats; converged == false when max_rounds runs out.
Trajectory run_dynamics(const Population& pop, const Scenario& sc, SimMode mode,
                        long max_rounds = 10'000);

/// 64-bit digest of the scenario fields (bit patterns of the doubles).
std::uint64_t scenario_hash(const Scenario& sc);

/// Seed of one run: mix_seed(seed, {scenario_hash(sc), mode}).
std::uint64_t run_seed(std::uint64_t seed, const Scenario& sc, SimMode mode);

/// Samples a population with run_seed(...) and runs the dynamics.
Trajectory simulate_adoption(const Scenario& sc, SimMode mode, long n, std::uint64_t seed,
                             long max_rounds = 10'000);

/// Analytic lseq the simulation should approach.
double analytic_lseq(const Scenario& sc, SimMode mode);

/// Product-moment correlation of the sampled pairs; std::nullopt when n < 2
/// or either coordinate has zero variance.
std::optional<double> empirical_corr(const Population& pop);

/// Writes "round,level" rows with a header.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

}  // namespace bundling

#endif  // BUNDLING_SIMULATION_HPP_
