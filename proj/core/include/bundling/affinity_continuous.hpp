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

#ifndef BUNDLING_AFFINITY_CONTINUOUS_HPP_
#define BUNDLING_AFFINITY_CONTINUOUS_HPP_

#include <random>

#include "bundling/numerics.hpp"

namespace bundling {

// Correlated uniform affinities built from a pair of standard normals:
//   Y1 = Z1,  Y2 = rho * Z1 + sqrt(1 - rho^2) * Z2,  Ui = Phi(Yi).
// rho is the normal-scale correlation parameter. The product-moment
// correlation of (U1, U2) is realized_corr(rho).

struct CopulaParams {
  double rho = 0.0;
  QuadratureConfig quad;

  void validate() const;
  bool perfectly_positive() const { return rho == 1.0; }
  bool perfectly_negative() const { return rho == -1.0; }
  bool independent() const { return rho == 0.0; }
};

struct AffinityPair {
  double u1 = 0.0;
  double u2 = 0.0;
};

/// Adoption thresholds of an affinity supported on [0, 2]: l = (c-2)/e,
/// m = (c-1)/e, r = c/e. With e == 0 each threshold is the signed infinity of
/// its numerator, and 0/0 maps to +infinity.
struct BundleThresholds {
  double l;
  double m;
  double r;
};
BundleThresholds bundle_thresholds(double c, double e);

/// Divides by a nonnegative externality, mapping x/0 to a signed infinity and
/// 0/0 to +infinity.
double threshold_ratio(double numerator, double e);

/// Normal-scale parameter whose realized uniform correlation is `target_corr`.
double effective_rho(double target_corr);

/// Product-moment correlation of (U1, U2): (6/pi) asin(rho/2).
double realized_corr(double rho);

/// Deterministic core of the sampler: maps two independent standard normal
/// deviates to a correlated affinity pair.
AffinityPair pair_from_normals(double z1, double z2, double rho);

/// Draws one pair using two standard normal deviates from `rng`.
template <typename URBG>
AffinityPair sample_pair(const CopulaParams& params, URBG& rng) {
  std::normal_distribution<double> normal;
  const double z1 = normal(rng);
  const double z2 = normal(rng);
  return pair_from_normals(z1, z2, params.rho);
}

/// Joint CDF F(u1, u2). Closed forms at rho in {-1, 0, 1}; otherwise the
/// single integral over v1 in [0, u1]. Throws ToleranceError if the
/// quadrature does not converge.
double joint_cdf(double u1, double u2, const CopulaParams& params);
/// Always integrates; requires |rho| < 1.
double joint_cdf_quadrature(double u1, double u2, const CopulaParams& params);

/// Joint density on (0,1)^2; rejects |rho| == 1, where the mass sits on a line.
double joint_pdf(double u1, double u2, const CopulaParams& params);

/// CDF of U = U1 + U2 on [0, 2].
double sum_cdf(double u, const CopulaParams& params);
double sum_cdf_quadrature(double u, const CopulaParams& params);

/// Density of U on (0, 2); rejects |rho| == 1.
double sum_pdf(double u, const CopulaParams& params);
double sum_pdf_quadrature(double u, const CopulaParams& params);

/// Probability that a random user adopts the bundle at adoption level x,
/// h(x) = P(U > c - e x), evaluated branch by branch on l, m, r. At
/// rho == -1 the printed convention h(x) = 1 for x >= m is used.
double adoption_prob_cont(double x, double c, double e, const CopulaParams& params);

}  // namespace bundling

#endif  // BUNDLING_AFFINITY_CONTINUOUS_HPP_
