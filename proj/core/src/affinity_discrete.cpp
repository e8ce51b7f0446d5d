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

#include "bundling/affinity_discrete.hpp"

#include <stdexcept>
#include <string>

#include "bundling/affinity_continuous.hpp"

namespace bundling {

namespace {

void require_params(double x, double c, double e, const char* where) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(std::string(where) + ": x outside [0, 1]");
  }
  if (!(c >= 0.0) || !(e >= 0.0)) {
    throw std::invalid_argument(std::string(where) + ": c and e must be >= 0");
  }
}

}  // namespace

BernoulliJoint::BernoulliJoint(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("BernoulliJoint: p must lie in [0, 1]");
  }
}

BernoulliJoint BernoulliJoint::from_rho(double rho) {
  if (!(rho >= -1.0 && rho <= 1.0)) {
    throw std::invalid_argument("BernoulliJoint: rho must lie in [-1, 1]");
  }
  return BernoulliJoint((1.0 - rho) / 2.0);
}

double BernoulliJoint::mass(int u1, int u2) const {
  if ((u1 != 0 && u1 != 1) || (u2 != 0 && u2 != 1)) {
    throw std::invalid_argument("BernoulliJoint::mass: cells are {0,1}^2");
  }
  return u1 == u2 ? (1.0 - p_) / 2.0 : p_ / 2.0;
}

double corr(const BernoulliJoint& joint) { return 1.0 - 2.0 * joint.p(); }

BinaryAffinity cell_from_uniform(const BernoulliJoint& joint, double w) {
  const double p = joint.p();
  if (w < (1.0 - p) / 2.0) return {0, 0};
  if (w < 0.5) return {0, 1};
  if (w < (1.0 + p) / 2.0) return {1, 0};
  return {1, 1};
}

double adoption_prob_disc_separate(double x, double c, double e) {
  require_params(x, c, e, "adoption_prob_disc_separate");
  if (x <= threshold_ratio(c - 1.0, e)) return 0.0;
  if (x <= threshold_ratio(c, e)) return 0.5;
  return 1.0;
}

double adoption_prob_disc_bundle(double x, double c, double e, double rho) {
  require_params(x, c, e, "adoption_prob_disc_bundle");
  if (!(rho >= -1.0 && rho <= 1.0)) {
    throw std::invalid_argument("adoption_prob_disc_bundle: rho must lie in [-1, 1]");
  }
  const BundleThresholds t = bundle_thresholds(c, e);
  if (x <= t.l) return 0.0;
  if (x <= t.m) return (1.0 + rho) / 4.0;
  if (x <= t.r) return (3.0 - rho) / 4.0;
  return 1.0;
}

}  // namespace bundling
