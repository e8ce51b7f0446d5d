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

#include <cmath>
#include <random>
#include <stdexcept>

#include "bundling/affinity_continuous.hpp"
#include "bundling/seeding.hpp"

namespace bundling {

std::string_view to_string(AffinityModel model) {
  return model == AffinityModel::kContinuous ? "continuous" : "discrete";
}

std::optional<AffinityModel> parse_affinity_model(std::string_view name) {
  if (name == "continuous") return AffinityModel::kContinuous;
  if (name == "discrete") return AffinityModel::kDiscrete;
  return std::nullopt;
}

void Scenario::validate() const {
  for (const ServiceParams& s : {s1, s2}) {
    if (!std::isfinite(s.c) || !std::isfinite(s.e) || s.c < 0.0 || s.e < 0.0) {
      throw std::invalid_argument("Scenario: costs and externalities must be finite and >= 0");
    }
  }
  if (!(rho >= -1.0 && rho <= 1.0)) {
    throw std::invalid_argument("Scenario: rho must lie in [-1, 1]");
  }
}

char to_char(Delta d) {
  switch (d) {
    case Delta::kWin:
      return 'W';
    case Delta::kLose:
      return 'L';
    case Delta::kSame:
      return 'S';
  }
  return '?';
}

Delta classify_delta(double x_sep, double x_bun, double tol) {
  if (x_bun > x_sep + tol) return Delta::kWin;
  if (x_bun < x_sep - tol) return Delta::kLose;
  return Delta::kSame;
}

AdoptionCurve separate_curve(const ServiceParams& s, AffinityModel model) {
  return model == AffinityModel::kContinuous ? separate_continuous_curve(s.c, s.e)
                                             : separate_discrete_curve(s.c, s.e);
}

AdoptionCurve bundle_curve(const Scenario& sc, const QuadratureConfig& quad) {
  sc.validate();
  if (sc.model == AffinityModel::kDiscrete) {
    return bundle_discrete_curve(sc.bundle_c(), sc.bundle_e(), sc.rho);
  }
  return bundle_continuous_curve(sc.bundle_c(), sc.bundle_e(), CopulaParams{sc.rho, quad});
}

double separate_lseq(const ServiceParams& s, AffinityModel model) {
  return model == AffinityModel::kContinuous ? lseq_separate_continuous(s.c, s.e)
                                             : lseq_separate_discrete(s.c, s.e);
}

double bundle_lseq(const Scenario& sc, const SolverConfig& solver,
                   const QuadratureConfig& quad) {
  sc.validate();
  const double c = sc.bundle_c();
  const double e = sc.bundle_e();
  if (sc.model == AffinityModel::kDiscrete) return lseq_bundle_discrete(c, e, sc.rho);
  if (sc.rho == 1.0) return lseq_bundle_poscorr(c, e);
  if (sc.rho == -1.0) return lseq_bundle_negcorr(c, e);
  if (sc.rho == 0.0) return lseq_bundle_indep(c, e);
  return lowest_stable(bundle_curve(sc, quad), solver).value;
}

OutcomeTriple compare(const Scenario& sc, double tol) {
  CompareOptions options;
  options.tol = tol;
  return compare(sc, options);
}

OutcomeTriple compare(const Scenario& sc, const CompareOptions& options) {
  sc.validate();
  OutcomeTriple out;
  out.x1 = separate_lseq(sc.s1, sc.model);
  out.x2 = separate_lseq(sc.s2, sc.model);
  out.xb = bundle_lseq(sc, options.solver, options.quad);
  out.delta1 = classify_delta(out.x1, out.xb, options.tol);
  out.delta2 = classify_delta(out.x2, out.xb, options.tol);
  return out;
}

std::map<std::pair<Delta, Delta>, long> sample_outcomes(AffinityModel model, double rho,
                                                        long n, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("sample_outcomes: n must be >= 0");
  std::mt19937_64 rng(mix_seed(seed, {static_cast<std::uint64_t>(model)}));
  std::uniform_real_distribution<double> param(0.0, 3.0);
  std::map<std::pair<Delta, Delta>, long> counts;
  for (long k = 0; k < n; ++k) {
    Scenario sc;
    sc.model = model;
    sc.rho = rho;
    sc.s1.c = param(rng);
    sc.s1.e = param(rng);
    sc.s2.c = param(rng);
    sc.s2.e = param(rng);
    const OutcomeTriple t = compare(sc);
    ++counts[{t.delta1, t.delta2}];
  }
  return counts;
}

}  // namespace bundling
