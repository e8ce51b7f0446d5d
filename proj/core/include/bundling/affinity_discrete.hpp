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

#ifndef BUNDLING_AFFINITY_DISCRETE_HPP_
#define BUNDLING_AFFINITY_DISCRETE_HPP_

#include <random>

namespace bundling {

/// Bernoulli affinities on {0,1}^2 with cell masses
///   (0,0): (1-p)/2   (0,1): p/2   (1,0): p/2   (1,1): (1-p)/2.
/// Both marginals are uniform on {0,1}; the correlation is 1 - 2p.
class BernoulliJoint {
 public:
  explicit BernoulliJoint(double p);
  static BernoulliJoint from_rho(double rho);

  double p() const { return p_; }
  double mass(int u1, int u2) const;
  double marginal_one() const { return mass(1, 0) + mass(1, 1); }

 private:
  double p_;
};

double corr(const BernoulliJoint& joint);

struct BinaryAffinity {
  int u1 = 0;
  int u2 = 0;
};

/// Maps a uniform draw w in [0, 1) to a cell by inverting the cumulative
/// cell masses in the order (0,0), (0,1), (1,0), (1,1).
BinaryAffinity cell_from_uniform(const BernoulliJoint& joint, double w);

template <typename URBG>
BinaryAffinity sample_pair_disc(const BernoulliJoint& joint, URBG& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  return cell_from_uniform(joint, uniform(rng));
}

/// Separate offering, U_i uniform on {0,1}: 0 for x <= l_i, 1/2 on
/// (l_i, r_i], 1 beyond r_i, with l_i = (c-1)/e and r_i = c/e.
double adoption_prob_disc_separate(double x, double c, double e);

/// Bundle: 0 for x <= l, (1+rho)/4 on (l, m], (3-rho)/4 on (m, r], 1 beyond.
double adoption_prob_disc_bundle(double x, double c, double e, double rho);

}  // namespace bundling

#endif  // BUNDLING_AFFINITY_DISCRETE_HPP_
