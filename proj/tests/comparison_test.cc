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

#include "bundling/comparison.hpp"

#include <random>

#include "gtest/gtest.h"

namespace bundling {
namespace {

Scenario make(double c1, double e1, double c2, double e2, AffinityModel model, double rho) {
  return Scenario{{c1, e1}, {c2, e2}, model, rho};
}

TEST(ClassifyDelta, Trichotomy) {
  EXPECT_EQ(classify_delta(0.5, 0.5, 1e-9), Delta::kSame);
  EXPECT_EQ(classify_delta(0.0, 1.0, 1e-9), Delta::kWin);
  EXPECT_EQ(classify_delta(0.75, 0.5, 1e-9), Delta::kLose);
  EXPECT_EQ(classify_delta(0.5, 0.5 + 5e-10, 1e-9), Delta::kSame);
  EXPECT_EQ(to_char(Delta::kWin), 'W');
  EXPECT_EQ(to_char(Delta::kLose), 'L');
  EXPECT_EQ(to_char(Delta::kSame), 'S');
}

TEST(Compare, DiscreteBothWin) {
  const OutcomeTriple t =
      compare(make(4.0 / 3.0, 3.0, 1.0 / 3.0, 1.0 / 3.0, AffinityModel::kDiscrete, 0.0));
  EXPECT_EQ(t.x1, 0.0);
  EXPECT_EQ(t.x2, 0.5);
  EXPECT_EQ(t.xb, 1.0);
  EXPECT_EQ(t.delta1, Delta::kWin);
  EXPECT_EQ(t.delta2, Delta::kWin);
}

TEST(Compare, DiscreteNegativeCorrelationHurtsSecond) {
  const OutcomeTriple t =
      compare(make(4.0 / 3.0, 3.0, 1.0 / 3.0, 1.0 / 3.0, AffinityModel::kDiscrete, -0.6));
  EXPECT_EQ(t.x1, 0.0);
  EXPECT_EQ(t.x2, 0.5);
  EXPECT_DOUBLE_EQ(t.xb, 0.1);
  EXPECT_EQ(t.delta1, Delta::kWin);
  EXPECT_EQ(t.delta2, Delta::kLose);
}

TEST(Compare, ContinuousNegativeCorrelationAboveUnitCost) {
  // c = 1.2 > 1, so the bundle stays at 0 although each service alone is viable.
  const OutcomeTriple t = compare(make(0.6, 0.1, 0.6, 0.1, AffinityModel::kContinuous, -1.0));
  EXPECT_DOUBLE_EQ(t.x1, 4.0 / 9.0);
  EXPECT_DOUBLE_EQ(t.x2, 4.0 / 9.0);
  EXPECT_EQ(t.xb, 0.0);
  EXPECT_EQ(t.delta1, Delta::kLose);
  EXPECT_EQ(t.delta2, Delta::kLose);
}

TEST(Compare, IsSymmetricUnderSwap) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> param(0.0, 3.0);
  std::uniform_real_distribution<double> rho_dist(-1.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    const AffinityModel model = k % 2 == 0 ? AffinityModel::kContinuous : AffinityModel::kDiscrete;
    // Closed-form rho values keep the continuous half cheap.
    const double rho = model == AffinityModel::kDiscrete ? rho_dist(rng) : (k % 3) - 1.0;
    const Scenario sc = make(param(rng), param(rng), param(rng), param(rng), model, rho);
    const OutcomeTriple a = compare(sc);
    const OutcomeTriple b = compare(sc.swapped());
    EXPECT_EQ(a.xb, b.xb);
    EXPECT_EQ(a.x1, b.x2);
    EXPECT_EQ(a.x2, b.x1);
    EXPECT_EQ(a.delta1, b.delta2);
    EXPECT_EQ(a.delta2, b.delta1);
  }
}

TEST(Compare, NegativeCorrelationZeroPull) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> param(0.0, 3.0);
  int zero_pulls = 0;
  for (int k = 0; k < 10000; ++k) {
    const OutcomeTriple t = compare(
        make(param(rng), param(rng), param(rng), param(rng), AffinityModel::kContinuous, -1.0));
    if (t.x1 == 0.0 || t.x2 == 0.0) {
      EXPECT_EQ(t.xb, 0.0);
      ++zero_pulls;
    }
  }
  EXPECT_GT(zero_pulls, 1000);
}

TEST(Compare, QuadratureRhoMatchesNeighbouringClosedForms) {
  // Deep inside a region the lseq does not move between rho = 0 and 0.01.
  const Scenario a = make(0.2, 1.0, 0.2, 1.0, AffinityModel::kContinuous, 0.0);
  Scenario b = a;
  b.rho = 0.01;
  EXPECT_EQ(compare(a).xb, 1.0);
  EXPECT_NEAR(compare(b).xb, 1.0, 1e-8);
}

TEST(Scenario, Validate) {
  EXPECT_NO_THROW(make(1, 1, 1, 1, AffinityModel::kDiscrete, 0.5).validate());
  EXPECT_THROW(make(-1, 1, 1, 1, AffinityModel::kDiscrete, 0.5).validate(),
               std::invalid_argument);
  EXPECT_THROW(make(1, 1, 1, 1, AffinityModel::kDiscrete, 1.5).validate(),
               std::invalid_argument);
  EXPECT_DOUBLE_EQ(make(1, 2, 3, 4, AffinityModel::kDiscrete, 0).bundle_c(), 4.0);
  EXPECT_DOUBLE_EQ(make(1, 2, 3, 4, AffinityModel::kDiscrete, 0).bundle_e(), 6.0);
}

TEST(SampleOutcomes, PositiveCorrelationNeverLosesBoth) {
  const auto counts = sample_outcomes(AffinityModel::kContinuous, 1.0, 10000, 7);
  long total = 0;
  for (const auto& [key, n] : counts) total += n;
  EXPECT_EQ(total, 10000);
  EXPECT_EQ(counts.count({Delta::kLose, Delta::kLose}), 0u);
}

TEST(SampleOutcomes, NegativeCorrelationNeverSplits) {
  const auto counts = sample_outcomes(AffinityModel::kContinuous, -1.0, 10000, 7);
  EXPECT_EQ(counts.count({Delta::kWin, Delta::kLose}), 0u);
  EXPECT_EQ(counts.count({Delta::kLose, Delta::kWin}), 0u);
}

TEST(SampleOutcomes, Deterministic) {
  EXPECT_EQ(sample_outcomes(AffinityModel::kDiscrete, 0.2, 2000, 99),
            sample_outcomes(AffinityModel::kDiscrete, 0.2, 2000, 99));
}

TEST(AffinityModelNames, RoundTrip) {
  EXPECT_EQ(parse_affinity_model("continuous"), AffinityModel::kContinuous);
  EXPECT_EQ(parse_affinity_model("discrete"), AffinityModel::kDiscrete);
  EXPECT_FALSE(parse_affinity_model("uniform").has_value());
}

}  // namespace
}  // namespace bundling
