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

#include "bundling/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ties.hpp"

namespace bundling {

using internal::require_nonnegative;
using internal::tie_ge;
using internal::tie_le;

namespace {

constexpr double kScanStep = 1e-4;
constexpr double kProbe = 1e-6;
constexpr double kQuadratureTol = 1e-8;
constexpr long kQuadratureMaxIter = 20'000;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double gap(const AdoptionCurve& h, double x) { return h(x) - x; }

Stability probe_stability(const AdoptionCurve& h, double x) {
  const bool below_ok = x - kProbe < 0.0 || gap(h, x - kProbe) > 0.0;
  const bool above_ok = x + kProbe > 1.0 || gap(h, x + kProbe) < 0.0;
  return below_ok && above_ok ? Stability::kStable : Stability::kUnstable;
}

double bisect_root(const AdoptionCurve& h, double lo, double hi, double tol) {
  const bool lo_positive = gap(h, lo) > 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if ((gap(h, mid) > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

template <typename F>
double golden_min(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = f(a);
  double fb = f(b);
  while (hi - lo > tol) {
    if (fa < fb) {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = f(a);
    } else {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = f(b);
    }
  }
  return 0.5 * (lo + hi);
}

void finish_report(const AdoptionCurve& curve, EquilibriumReport& report) {
  std::sort(report.equilibria.begin(), report.equilibria.end(),
            [](const Equilibrium& a, const Equilibrium& b) { return a.x_star < b.x_star; });
  for (const Equilibrium& eq : report.equilibria) {
    if (eq.stability == Stability::kStable) {
      report.lseq = eq.x_star;
      return;
    }
  }
  report.lseq = lowest_stable(curve).value;
}

double independent_sum_cdf(double u) {
  u = std::clamp(u, 0.0, 2.0);
  return u <= 1.0 ? u * u / 2.0 : 1.0 - (2.0 - u) * (2.0 - u) / 2.0;
}

}  // namespace

const char* to_string(Stability s) {
  return s == Stability::kStable ? "stable" : "unstable";
}

IterationResult lseq_by_iteration(const AdoptionCurve& curve, double tol,
                                  long max_iter, bool record_iterates) {
  if (!(tol > 0.0)) throw std::invalid_argument("lseq_by_iteration: tol must be > 0");
  if (max_iter < 1) throw std::invalid_argument("lseq_by_iteration: max_iter must be >= 1");
  IterationResult result;
  double x = 0.0;
  if (record_iterates) result.iterates.push_back(x);
  for (long k = 1; k <= max_iter; ++k) {
    const double next = curve(x);
    if (record_iterates) result.iterates.push_back(next);
    if (next == x || std::abs(next - x) < tol) {
      result.value = next;
      result.iterations = k;
      result.converged = true;
      return result;
    }
    x = next;
  }
  result.value = x;
  result.iterations = max_iter;
  result.converged = false;
  return result;
}

double smallest_fixed_point(const AdoptionCurve& curve, double start, double tol) {
  double x = std::clamp(start, 0.0, 1.0);
  if (gap(curve, x) <= 0.0) return x;
  while (x < 1.0) {
    const double next = std::min(x + kScanStep, 1.0);
    if (gap(curve, next) <= 0.0) {
      double lo = x;
      double hi = next;
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (gap(curve, mid) > 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return hi;
    }
    x = next;
  }
  return 1.0;
}

LseqResult lowest_stable(const AdoptionCurve& curve, const SolverConfig& cfg) {
  // Quadrature noise (~1e-9) would keep a 1e-10 step test from ever firing.
  const double tol = curve.uses_quadrature() ? std::max(cfg.tol, kQuadratureTol) : cfg.tol;
  const long max_iter =
      curve.uses_quadrature() ? std::min(cfg.max_iter, kQuadratureMaxIter) : cfg.max_iter;
  const IterationResult it = lseq_by_iteration(curve, tol, max_iter);
  if (it.converged) return {it.value, it.iterations, LseqMethod::kIteration};
  return {smallest_fixed_point(curve, it.value, tol), it.iterations,
          LseqMethod::kFallbackBisection};
}

EquilibriumReport find_equilibria(const AdoptionCurve& curve, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("find_equilibria: tol must be > 0");
  EquilibriumReport report;
  if (curve.kind() == CurveKind::kStep) {
    for (const StepSegment& seg : curve.segments()) {
      if (seg.contains(seg.level)) {
        report.equilibria.push_back({seg.level, probe_stability(curve, seg.level), {}});
      }
    }
    finish_report(curve, report);
    return report;
  }

  const int n = static_cast<int>(std::lround(1.0 / kScanStep));
  std::vector<double> g(n + 1);
  for (int i = 0; i <= n; ++i) g[i] = gap(curve, static_cast<double>(i) / n);
  auto add = [&](double x) {
    report.equilibria.push_back({x, probe_stability(curve, x), {}});
  };
  bool in_zero_run = false;
  for (int i = 0; i <= n; ++i) {
    const double x = static_cast<double>(i) / n;
    const bool zero = std::abs(g[i]) <= tol;
    if (zero && !in_zero_run) add(x);
    in_zero_run = zero;
    if (i < n && !zero && std::abs(g[i + 1]) > tol && (g[i] > 0.0) != (g[i + 1] > 0.0)) {
      add(bisect_root(curve, x, static_cast<double>(i + 1) / n, tol));
    }
    // A touching point or a root pair inside one cell leaves no sign change
    // on the grid; it shows up as a local minimum of |g|.
    if (i > 0 && i < n && !zero && std::abs(g[i - 1]) > tol && std::abs(g[i + 1]) > tol &&
        (g[i - 1] > 0.0) == (g[i] > 0.0) && (g[i + 1] > 0.0) == (g[i] > 0.0) &&
        std::abs(g[i]) <= std::abs(g[i - 1]) && std::abs(g[i]) < std::abs(g[i + 1])) {
      const double lo = static_cast<double>(i - 1) / n;
      const double hi = static_cast<double>(i + 1) / n;
      const double sign = g[i] > 0.0 ? 1.0 : -1.0;
      const double xe = golden_min([&](double t) { return sign * gap(curve, t); }, lo, hi, tol);
      const double ge = gap(curve, xe);
      if ((ge > 0.0) != (g[i] > 0.0) && std::abs(ge) > tol) {
        add(bisect_root(curve, lo, xe, tol));
        add(bisect_root(curve, xe, hi, tol));
      } else if (std::abs(ge) <= tol) {
        add(xe);
      }
    }
  }
  finish_report(curve, report);
  return report;
}

double lseq_separate_continuous(double c, double e) {
  require_nonnegative(c, e, "lseq_separate_continuous");
  if (tie_ge(c, 1.0)) return 0.0;
  if (tie_le(c, e)) return 1.0;
  return (1.0 - c) / (1.0 - e);
}

double lseq_bundle_poscorr(double c, double e) {
  require_nonnegative(c, e, "lseq_bundle_poscorr");
  if (tie_ge(c, 2.0)) return 0.0;
  if (tie_le(c, e)) return 1.0;
  return (2.0 - c) / (2.0 - e);
}

double lseq_bundle_negcorr(double c, double e) {
  require_nonnegative(c, e, "lseq_bundle_negcorr");
  return tie_ge(c, 1.0) ? 0.0 : 1.0;
}

IndependentRoots independent_roots(double c, double e) {
  IndependentRoots roots{2.0 * (c - 2.0) * e + 1.0, 2.0 * (e - c) * e + 1.0,
                         kNaN, kNaN, kNaN, kNaN};
  if (!(e > 0.0)) return roots;
  const double e2 = e * e;
  if (roots.disc_l >= 0.0) {
    const double s = std::sqrt(roots.disc_l);
    roots.xi_l_minus = ((c - 2.0) * e + 1.0 - s) / e2;
    roots.xi_l_plus = ((c - 2.0) * e + 1.0 + s) / e2;
  }
  if (roots.disc_r >= 0.0) {
    const double s = std::sqrt(roots.disc_r);
    roots.xi_r_minus = (c * e - 1.0 - s) / e2;
    roots.xi_r_plus = (c * e - 1.0 + s) / e2;
  }
  return roots;
}

EquilibriumReport equilibria_bundle_indep(double c, double e) {
  require_nonnegative(c, e, "equilibria_bundle_indep");
  EquilibriumReport report;
  if (e == 0.0) {
    const double level = 1.0 - independent_sum_cdf(c);
    const char* tag = level == 0.0 ? "0" : (level == 1.0 ? "1" : "const");
    report.equilibria.push_back({level, Stability::kStable, tag});
    report.lseq = level;
    return report;
  }
  const BundleThresholds t = bundle_thresholds(c, e);
  auto& eqs = report.equilibria;
  if (c >= 2.0) eqs.push_back({0.0, Stability::kStable, "0"});
  if (c <= e) eqs.push_back({1.0, Stability::kStable, "1"});

  const IndependentRoots roots = independent_roots(c, e);
  auto consider = [&](double xi, double lo, double hi, Stability s, const char* tag) {
    if (std::isnan(xi)) return;
    if (xi > std::max(lo, 0.0) && xi <= std::min(hi, 1.0)) eqs.push_back({xi, s, tag});
  };
  if (roots.disc_l > 0.0) {
    consider(roots.xi_l_minus, t.l, t.m, Stability::kStable, "xi_l-");
    consider(roots.xi_l_plus, t.l, t.m, Stability::kUnstable, "xi_l+");
  } else if (roots.disc_l == 0.0) {
    consider(roots.xi_l_minus, t.l, t.m, Stability::kUnstable, "xi_l-");
  }
  if (roots.disc_r > 0.0) {
    consider(roots.xi_r_minus, t.m, t.r, Stability::kUnstable, "xi_r-");
    consider(roots.xi_r_plus, t.m, t.r, Stability::kStable, "xi_r+");
  } else if (roots.disc_r == 0.0) {
    consider(roots.xi_r_plus, t.m, t.r, Stability::kUnstable, "xi_r+");
  }

  std::sort(eqs.begin(), eqs.end(),
            [](const Equilibrium& a, const Equilibrium& b) { return a.x_star < b.x_star; });
  // Collapse coincident points, e.g. xi_{r,+} = 1 when c = e.
  std::vector<Equilibrium> unique;
  for (const Equilibrium& eq : eqs) {
    if (!unique.empty() && std::abs(unique.back().x_star - eq.x_star) <= 1e-12) {
      if (eq.stability == Stability::kStable) unique.back().stability = Stability::kStable;
      continue;
    }
    unique.push_back(eq);
  }
  eqs = std::move(unique);
  // Dynamics from 0 stop at the first fixed point, so the lowest member is
  // the selected equilibrium (a tangential double root counts, per the
  // lower-equilibrium tie rule).
  if (eqs.empty()) {
    report.lseq = lowest_stable(bundle_continuous_curve(c, e, CopulaParams{})).value;
  } else {
    report.lseq = eqs.front().x_star;
  }
  return report;
}

double lseq_bundle_indep(double c, double e) { return equilibria_bundle_indep(c, e).lseq; }

double lseq_separate_discrete(double c, double e) {
  require_nonnegative(c, e, "lseq_separate_discrete");
  if (tie_ge(c, 1.0)) return 0.0;
  if (tie_le(e, 2.0 * c)) return 0.5;
  return 1.0;
}

double lseq_bundle_discrete(double c, double e, double rho) {
  require_nonnegative(c, e, "lseq_bundle_discrete");
  if (!(rho >= -1.0 && rho <= 1.0)) {
    throw std::invalid_argument("lseq_bundle_discrete: rho must lie in [-1, 1]");
  }
  if (tie_ge(c, 2.0)) return 0.0;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 4(c-1)/(1+rho); at rho = -1 the sign of c - 1 decides, c = 1 counting
  // as the lower side.
  const double low_cap =
      rho > -1.0 ? 4.0 * (c - 1.0) / (1.0 + rho) : (tie_ge(c, 1.0) ? kInf : -kInf);
  const double high_cap = 4.0 * c / (3.0 - rho);
  if (tie_le(e, low_cap)) return (1.0 + rho) / 4.0;
  if (tie_le(e, high_cap)) return (3.0 - rho) / 4.0;
  return 1.0;
}

}  // namespace bundling
