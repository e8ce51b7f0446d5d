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

#ifndef BUNDLING_EQUILIBRIUM_HPP_
#define BUNDLING_EQUILIBRIUM_HPP_

#include <string>
#include <vector>

#include "bundling/adoption_curve.hpp"

namespace bundling {

enum class Stability { kStable, kUnstable };

struct Equilibrium {
  double x_star = 0.0;
  Stability stability = Stability::kStable;
  // Which closed-form family produced the point, e.g. "xi_l-"; empty for
  // numerically located equilibria.
  std::string tag;
};

struct EquilibriumReport {
  std::vector<Equilibrium> equilibria;  // ascending in x_star
  double lseq = 0.0;
};

struct SolverConfig {
  double tol = 1e-10;
  long max_iter = 1'000'000;
};

struct IterationResult {
  double value = 0.0;
  long iterations = 0;
  bool converged = false;
  std::vector<double> iterates;  // filled only when requested
};

/// Best-response dynamics x_{k+1} = h(x_k) from x_0 = 0. Stops once
/// |x_{k+1} - x_k| < tol; otherwise returns the last iterate with
/// converged == false.
IterationResult lseq_by_iteration(const AdoptionCurve& curve, double tol,
                                  long max_iter, bool record_iterates = false);

/// Smallest x >= start with h(x) <= x, located by a 1e-4 scan and bisection
/// to `tol`. Assumes h(start) >= start.
double smallest_fixed_point(const AdoptionCurve& curve, double start, double tol);

enum class LseqMethod { kIteration, kFallbackBisection };

struct LseqResult {
  double value = 0.0;
  long iterations = 0;
  LseqMethod method = LseqMethod::kIteration;
};

/// Iteration, falling back to smallest_fixed_point from the last iterate when
/// the iteration budget runs out (tangential approach). Quadrature-backed
/// curves use tol >= 1e-8 and at most 20000 iterations, since their values
/// carry ~1e-9 noise.
LseqResult lowest_stable(const AdoptionCurve& curve, const SolverConfig& cfg = {});

/// All fixed points of h on [0, 1] with stability labels. Step curves are
/// enumerated exactly plateau by plateau; continuous curves are sign-scanned
/// at resolution 1e-4 and bisected to `tol`. Stability is probed 1e-6 to
/// either side (one-sided at 0 and 1).
EquilibriumReport find_equilibria(const AdoptionCurve& curve, double tol = 1e-10);

// Closed-form lowest stable equilibria. Boundary ties (within a relative
// 1e-12) resolve toward the lower equilibrium.

/// Uniform affinity, separate offering: 0, (1-c)/(1-e) or 1.
double lseq_separate_continuous(double c, double e);
/// Perfect positive correlation, U uniform on [0, 2]: 0, (2-c)/(2-e) or 1.
double lseq_bundle_poscorr(double c, double e);
/// Perfect negative correlation, U = 1: 0 or 1 depending on c vs 1 only.
double lseq_bundle_negcorr(double c, double e);
/// Independent uniform affinities: the root catalog xi_{l,+-}, xi_{r,+-}
/// plus the boundary equilibria 0 and 1.
EquilibriumReport equilibria_bundle_indep(double c, double e);
double lseq_bundle_indep(double c, double e);
/// Bernoulli affinity, separate offering: 0, 1/2 or 1.
double lseq_separate_discrete(double c, double e);
/// Bernoulli affinities, bundle: 0, (1+rho)/4, (3-rho)/4 or 1.
double lseq_bundle_discrete(double c, double e, double rho);

/// Interior roots of h(x) = x for independent affinities, with the
/// discriminants that decide whether they exist.
struct IndependentRoots {
  double disc_l;  // 2(c-2)e + 1
  double disc_r;  // 2(e-c)e + 1
  double xi_l_minus, xi_l_plus;
  double xi_r_minus, xi_r_plus;  // NaN when the discriminant is negative
};
IndependentRoots independent_roots(double c, double e);

const char* to_string(Stability s);

}  // namespace bundling

#endif  // BUNDLING_EQUILIBRIUM_HPP_
