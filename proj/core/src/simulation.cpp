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

#include "bundling/simulation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include "bundling/affinity_discrete.hpp"
#include "bundling/format.hpp"
#include "bundling/seeding.hpp"

namespace bundling {

Population make_population(AffinityModel model, double rho, long n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("make_population: n must be >= 1");
  if (!(rho >= -1.0 && rho <= 1.0)) {
    throw std::invalid_argument("make_population: rho must lie in [-1, 1]");
  }
  Population pop{n, model, rho, seed, {}};
  pop.affinities.reserve(static_cast<std::size_t>(n));
  std::mt19937_64 rng(seed);
  if (model == AffinityModel::kContinuous) {
    const CopulaParams params{rho, {}};
    for (long i = 0; i < n; ++i) pop.affinities.push_back(sample_pair(params, rng));
  } else {
    const BernoulliJoint joint = BernoulliJoint::from_rho(rho);
    for (long i = 0; i < n; ++i) {
      const BinaryAffinity b = sample_pair_disc(joint, rng);
      pop.affinities.push_back({static_cast<double>(b.u1), static_cast<double>(b.u2)});
    }
  }
  return pop;
}

std::string_view to_string(SimMode mode) {
  switch (mode) {
    case SimMode::kSeparate1:
      return "separate_1";
    case SimMode::kSeparate2:
      return "separate_2";
    case SimMode::kBundle:
      return "bundle";
  }
  return "unknown";
}

std::optional<SimMode> parse_sim_mode(std::string_view name) {
  if (name == "separate_1") return SimMode::kSeparate1;
  if (name == "separate_2") return SimMode::kSeparate2;
  if (name == "bundle") return SimMode::kBundle;
  return std::nullopt;
}

Trajectory run_dynamics(const Population& pop, const Scenario& sc, SimMode mode,
                        long max_rounds) {
  sc.validate();
  if (max_rounds < 1) throw std::invalid_argument("run_dynamics: max_rounds must be >= 1");
  double c = sc.bundle_c();
  double e = sc.bundle_e();
  if (mode == SimMode::kSeparate1) {
    c = sc.s1.c;
    e = sc.s1.e;
  } else if (mode == SimMode::kSeparate2) {
    c = sc.s2.c;
    e = sc.s2.e;
  }
  std::vector<double> u;
  u.reserve(pop.affinities.size());
  for (const AffinityPair& a : pop.affinities) {
    u.push_back(mode == SimMode::kSeparate1   ? a.u1
                : mode == SimMode::kSeparate2 ? a.u2
                                              : a.u1 + a.u2);
  }
  // Agents adopt iff u + e x - c > 0; with u sorted the adopters are a suffix.
  std::sort(u.begin(), u.end());
  const auto adopters = [&](double x) {
    long count = 0;
    // Boundary agents are settled with the literal utility expression.
    auto it = std::upper_bound(u.begin(), u.end(), c - e * x);
    while (it != u.begin() && *(it - 1) + e * x - c > 0.0) --it;
    while (it != u.end() && !(*it + e * x - c > 0.0)) ++it;
    count = static_cast<long>(u.end() - it);
    return count;
  };

  Trajectory traj;
  const double n = static_cast<double>(u.size());
  long count = 0;
  traj.levels.push_back(0.0);
  for (long round = 1; round <= max_rounds; ++round) {
    const long next = adopters(static_cast<double>(count) / n);
    if (next < count) throw std::logic_error("run_dynamics: adopter set shrank");
    traj.levels.push_back(static_cast<double>(next) / n);
    if (next == count) {
      traj.converged = true;
      break;
    }
    count = next;
  }
  traj.final = traj.levels.back();
  return traj;
}

std::uint64_t scenario_hash(const Scenario& sc) {
  return mix_seed(0, {std::bit_cast<std::uint64_t>(sc.s1.c), std::bit_cast<std::uint64_t>(sc.s1.e),
                      std::bit_cast<std::uint64_t>(sc.s2.c), std::bit_cast<std::uint64_t>(sc.s2.e),
                      std::bit_cast<std::uint64_t>(sc.rho),
                      static_cast<std::uint64_t>(sc.model)});
}

std::uint64_t run_seed(std::uint64_t seed, const Scenario& sc, SimMode mode) {
  return mix_seed(seed, {scenario_hash(sc), static_cast<std::uint64_t>(mode)});
}

Trajectory simulate_adoption(const Scenario& sc, SimMode mode, long n, std::uint64_t seed,
                             long max_rounds) {
  sc.validate();
  const Population pop = make_population(sc.model, sc.rho, n, run_seed(seed, sc, mode));
  return run_dynamics(pop, sc, mode, max_rounds);
}

double analytic_lseq(const Scenario& sc, SimMode mode) {
  switch (mode) {
    case SimMode::kSeparate1:
      return separate_lseq(sc.s1, sc.model);
    case SimMode::kSeparate2:
      return separate_lseq(sc.s2, sc.model);
    case SimMode::kBundle:
      return bundle_lseq(sc);
  }
  return 0.0;
}

std::optional<double> empirical_corr(const Population& pop) {
  const std::size_t n = pop.affinities.size();
  if (n < 2) return std::nullopt;
  double m1 = 0.0;
  double m2 = 0.0;
  for (const AffinityPair& a : pop.affinities) {
    m1 += a.u1;
    m2 += a.u2;
  }
  m1 /= static_cast<double>(n);
  m2 /= static_cast<double>(n);
  double s11 = 0.0;
  double s22 = 0.0;
  double s12 = 0.0;
  for (const AffinityPair& a : pop.affinities) {
    const double d1 = a.u1 - m1;
    const double d2 = a.u2 - m2;
    s11 += d1 * d1;
    s22 += d2 * d2;
    s12 += d1 * d2;
  }
  if (s11 == 0.0 || s22 == 0.0) return std::nullopt;
  return s12 / std::sqrt(s11 * s22);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "round,level\n";
  for (std::size_t t = 0; t < traj.levels.size(); ++t) {
    out << t << ',' << format_number(traj.levels[t]) << '\n';
  }
}

}  // namespace bundling
