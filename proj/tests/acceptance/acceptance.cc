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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "bundling/adoption_curve.hpp"
#include "bundling/affinity_continuous.hpp"
#include "bundling/comparison.hpp"
#include "bundling/equilibrium.hpp"
#include "bundling/feasibility.hpp"
#include "bundling/region.hpp"
#include "bundling/seeding.hpp"
#include "bundling/simulation.hpp"
#include "bundling_cli/commands.hpp"
#include "bundling_cli/config.hpp"

#ifndef BUNDLING_CONFIG_DIR
#error "BUNDLING_CONFIG_DIR must point at the shipped example configs"
#endif

namespace {

using namespace bundling;
using Q = boost::rational<long long>;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("FAILED " + what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double to_double(const Q& q) {
  return static_cast<double>(q.numerator()) / static_cast<double>(q.denominator());
}

// ---------------------------------------------------------------------------
// Criteria 1 and 2: discrete rho sweeps against exact rational oracles.

enum class Level { kZero, kLow, kHigh, kOne };  // 0, (1+rho)/4, (3-rho)/4, 1

const char* level_name(Level l) {
  switch (l) {
    case Level::kZero:
      return "0";
    case Level::kLow:
      return "(1+rho)/4";
    case Level::kHigh:
      return "(3-rho)/4";
    case Level::kOne:
      return "1";
  }
  return "?";
}

// h(x) = sum over the four cells of P(u1, u2) * 1{u1 + u2 + e x - c > 0},
// iterated from x = 0 in exact arithmetic.
Q brute_force_lseq(Q c, Q e, Q rho) {
  const Q same = (Q(1) + rho) / 4;  // P(0,0) = P(1,1)
  const Q diff = (Q(1) - rho) / 4;  // P(0,1) = P(1,0)
  auto h = [&](Q x) {
    Q out = 0;
    for (int u1 = 0; u1 <= 1; ++u1) {
      for (int u2 = 0; u2 <= 1; ++u2) {
        if (Q(u1 + u2) + e * x - c > Q(0)) out += u1 == u2 ? same : diff;
      }
    }
    return out;
  };
  Q x = 0;
  for (int k = 0; k < 16; ++k) {
    const Q next = h(x);
    if (next == x) return x;
    x = next;
  }
  return x;
}

Q level_q(Level l, Q rho) {
  switch (l) {
    case Level::kZero:
      return 0;
    case Level::kLow:
      return (Q(1) + rho) / 4;
    case Level::kHigh:
      return (Q(3) - rho) / 4;
    case Level::kOne:
      return 1;
  }
  throw std::logic_error("level_q");
}

double level_value(Level l, double rho) {
  switch (l) {
    case Level::kZero:
      return 0.0;
    case Level::kLow:
      return (1.0 + rho) / 4.0;
    case Level::kHigh:
      return (3.0 - rho) / 4.0;
    case Level::kOne:
      return 1.0;
  }
  return -1.0;
}

struct DiscreteFamilyCase {
  const char* name;
  Q c1, e1, c2, e2;
  // Hand-derived piecewise lseq in rho from the condition algebra.
  std::function<Level(Q)> hand;
};

cli::RunConfig discrete_sweep_config(const DiscreteFamilyCase& fc) {
  cli::RunConfig cfg;
  cfg.scenario = Scenario{{to_double(fc.c1), to_double(fc.e1)},
                          {to_double(fc.c2), to_double(fc.e2)},
                          AffinityModel::kDiscrete,
                          0.0};
  cfg.sweep = cli::SweepSpec{cli::SweepVar::kRho, -1.0, 1.0, 201};
  return cfg;
}

void check_discrete_family(const DiscreteFamilyCase& fc, Outcome& out, double& worst_seconds) {
  const cli::RunConfig cfg = discrete_sweep_config(fc);
  const auto start = Clock::now();
  const std::vector<cli::SweepRow> rows = cli::sweep_rows(cfg, cfg.sweep);
  worst_seconds = std::max(worst_seconds, seconds_since(start));

  out.check(rows.size() == 201, std::string(fc.name) + ": expected 201 rows");
  const Q c = fc.c1 + fc.c2;
  const Q e = fc.e1 + fc.e2;
  int mismatches = 0;
  std::vector<std::pair<Q, std::string>> jumps;
  Level previous = fc.hand(Q(-1));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Q rho(static_cast<long long>(k) - 100, 100);
    const Q brute = brute_force_lseq(c, e, rho);
    const Level hand = fc.hand(rho);
    const double emitted = rows[k].outcome.xb;
    const bool ok = rows[k].error.empty() && brute == level_q(hand, rho) &&
                    emitted == level_value(hand, rows[k].value) &&
                    std::abs(rows[k].value - to_double(rho)) < 1e-15;
    if (!ok) {
      ++mismatches;
      if (mismatches <= 3) {
        out.note(std::string(fc.name) + " mismatch at rho=" + fmt("%.2f", to_double(rho)) +
                 ": brute " + fmt("%.17g", to_double(brute)) + ", hand " + level_name(hand) +
                 ", emitted " + fmt("%.17g", emitted));
      }
    }
    if (k > 0 && hand != previous) {
      jumps.emplace_back(rho, std::string(level_name(previous)) + "->" + level_name(hand));
    }
    previous = hand;
  }
  out.check(mismatches == 0, std::string(fc.name) + ": " + std::to_string(mismatches) +
                                 " grid points disagree with the exact oracles");
  std::ostringstream desc;
  desc << fc.name << " jumps:";
  if (jumps.empty()) desc << " none";
  for (const auto& [rho, what] : jumps) desc << ' ' << what << "@" << fmt("%.2f", to_double(rho));
  out.note(desc.str());
}

Outcome criterion_1() {
  Outcome out;
  const Q c1(4, 3), c2(1, 3), e2(1, 3);
  const std::vector<DiscreteFamilyCase> cases = {
      {"e1=1", c1, Q(1), c2, e2, [](Q) { return Level::kLow; }},
      {"e1=5/3", c1, Q(5, 3), c2, e2,
       [](Q rho) { return rho <= Q(1, 3) ? Level::kLow : Level::kHigh; }},
      {"e1=7/3", c1, Q(7, 3), c2, e2,
       [](Q rho) {
         if (rho <= Q(0)) return Level::kLow;
         return rho < Q(1, 2) ? Level::kOne : Level::kHigh;
       }},
      {"e1=3", c1, Q(3), c2, e2,
       [](Q rho) {
         if (rho <= Q(-1, 5)) return Level::kLow;
         return rho < Q(1) ? Level::kOne : Level::kHigh;
       }},
  };
  double worst = 0.0;
  for (const DiscreteFamilyCase& fc : cases) check_discrete_family(fc, out, worst);

  // The headline jump: lseq leaves the low level for 1 right after rho = -0.2.
  const Q c = c1 + c2;
  const Q e = Q(3) + e2;
  out.check(brute_force_lseq(c, e, Q(-1, 5)) == Q(1, 5) &&
                brute_force_lseq(c, e, Q(-19, 100)) == Q(1),
            "e1=3 jump is not at rho = -0.2");
  out.check(worst < 1.0, "sweep slower than 1 s");
  out.note("slowest 201-point sweep " + fmt("%.4f", worst) + " s");
  return out;
}

Outcome criterion_2() {
  Outcome out;
  const DiscreteFamilyCase fc{"e1=3/2", Q(3, 4), Q(3, 2), Q(1, 2), Q(3, 4), [](Q rho) {
                                if (rho <= Q(-5, 9)) return Level::kLow;
                                return rho < Q(7, 9) ? Level::kOne : Level::kHigh;
                              }};
  double seconds = 0.0;
  check_discrete_family(fc, out, seconds);
  // Boundary points off the grid, exactly.
  const Q c = fc.c1 + fc.c2;
  const Q e = fc.e1 + fc.e2;
  out.check(brute_force_lseq(c, e, Q(-5, 9)) == Q(1, 9), "rho = -5/9 is not on the low level");
  out.check(brute_force_lseq(c, e, Q(7, 9)) == Q(5, 9), "rho = 7/9 is not on the high level");
  const double at_half = compare(Scenario{{0.75, 1.5}, {0.5, 0.75}, AffinityModel::kDiscrete, 0.5}).xb;
  const double at_one = compare(Scenario{{0.75, 1.5}, {0.5, 0.75}, AffinityModel::kDiscrete, 1.0}).xb;
  out.check(at_one < at_half, "adoption does not drop as rho approaches 1");
  out.note("xb(0.5)=" + fmt("%g", at_half) + " xb(1)=" + fmt("%g", at_one));
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 3: copula sum distribution.

double independent_sum_cdf(double u) {
  return u <= 1.0 ? 0.5 * u * u : 1.0 - 0.5 * (2.0 - u) * (2.0 - u);
}

Outcome criterion_3() {
  Outcome out;
  const auto start = Clock::now();
  for (double rho : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
    const double f1 = sum_cdf_quadrature(1.0, CopulaParams{rho, {}});
    out.check(std::abs(f1 - 0.5) <= 1e-6, "F_U(1) at rho=" + fmt("%g", rho) + " is " +
                                              fmt("%.10f", f1));
  }

  double worst_indep = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double u = (k + 0.5) / 50.0;
    worst_indep = std::max(worst_indep, std::abs(sum_cdf_quadrature(u, CopulaParams{0.0, {}}) -
                                                 independent_sum_cdf(u)));
  }
  out.check(worst_indep <= 1e-6, "rho=0 quadrature vs closed form " + fmt("%.3g", worst_indep));
  out.note("rho=0 max |diff| over 100 points " + fmt("%.3g", worst_indep));

  // rho -> +1: U tends to 2 U1, F(u) = u / 2, continuous everywhere.
  double worst_pos = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double u = (k + 0.5) / 50.0;
    worst_pos = std::max(worst_pos,
                         std::abs(sum_cdf_quadrature(u, CopulaParams{0.999, {}}) - u / 2.0));
  }
  out.check(worst_pos <= 5e-3, "rho=0.999 vs u/2: " + fmt("%.3g", worst_pos));
  out.note("rho=0.999 max |F - u/2| " + fmt("%.3g", worst_pos));

  // rho -> -1: U tends to the constant 1 and F to the step 1{u >= 1}.
  // Convergence holds at continuity points only (F(1) = 1/2 for every rho),
  // so points within sqrt(1 - rho^2) of the jump are reported, not judged.
  const double rho_neg = -0.999;
  const double band = std::sqrt(1.0 - rho_neg * rho_neg);
  double worst_away = 0.0;
  double worst_all = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double u = (k + 0.5) / 50.0;
    const double diff =
        std::abs(sum_cdf_quadrature(u, CopulaParams{rho_neg, {}}) - (u >= 1.0 ? 1.0 : 0.0));
    worst_all = std::max(worst_all, diff);
    if (std::abs(u - 1.0) > band) worst_away = std::max(worst_away, diff);
  }
  out.check(worst_away <= 5e-3,
            "rho=-0.999 vs step away from u=1: " + fmt("%.3g", worst_away));
  out.note("rho=-0.999 max |F - step| for |u-1| > " + fmt("%.4f", band) + ": " +
           fmt("%.3g", worst_away) + " (all points incl. jump: " + fmt("%.3g", worst_all) + ")");

  const double secs = seconds_since(start);
  out.check(secs < 30.0, "runtime " + fmt("%.1f", secs) + " s");
  out.note("runtime " + fmt("%.2f", secs) + " s");
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 4: realized correlation map.

Outcome criterion_4() {
  Outcome out;
  auto deviation = [](double rho) { return rho - realized_corr(rho); };
  double best_rho = 0.0;
  double best = -1.0;
  for (int k = 0; k <= 10000; ++k) {
    const double rho = k / 10000.0;
    if (deviation(rho) > best) {
      best = deviation(rho);
      best_rho = rho;
    }
  }
  // Golden-section refinement around the grid maximum.
  double a = std::max(0.0, best_rho - 1e-4);
  double b = std::min(1.0, best_rho + 1e-4);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 100; ++it) {
    const double x1 = b - g * (b - a);
    const double x2 = a + g * (b - a);
    if (deviation(x1) < deviation(x2)) a = x1; else b = x2;
  }
  const double rho_star = 0.5 * (a + b);
  const double dev = deviation(rho_star);
  const double dev_neg = realized_corr(-rho_star) - (-rho_star);
  out.check(std::abs(dev - 0.01808) <= 1e-4, "max deviation " + fmt("%.6f", dev));
  out.check(std::abs(rho_star - 0.5937) <= 1e-3, "argmax " + fmt("%.6f", rho_star));
  out.check(std::abs(dev_neg - 0.01808) <= 1e-4, "deviation at -rho* " + fmt("%.6f", dev_neg));
  out.note("max |rho_U - rho| = " + fmt("%.6f", dev) + " at rho = +-" + fmt("%.6f", rho_star));

  for (double rho : {-0.8, 0.0, 0.8}) {
    const Population pop = make_population(AffinityModel::kContinuous, rho, 1'000'000,
                                           mix_seed(2024, {static_cast<std::uint64_t>(
                                                              std::lround(10 * rho + 10))}));
    const double r = empirical_corr(pop).value_or(std::nan(""));
    const double target = realized_corr(rho);
    out.check(std::abs(r - target) <= 0.005, "empirical corr at rho=" + fmt("%g", rho));
    out.note("rho=" + fmt("%g", rho) + ": empirical " + fmt("%.5f", r) + " vs rho_U " +
             fmt("%.5f", target));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 5: closed forms vs best-response iteration.

AdoptionCurve curve_for(RegionModel m, double c, double e, double rho) {
  switch (m) {
    case RegionModel::kSeparateContinuous:
      return separate_continuous_curve(c, e);
    case RegionModel::kSeparateDiscrete:
      return separate_discrete_curve(c, e);
    case RegionModel::kBundlePositive:
      return bundle_continuous_curve(c, e, CopulaParams{1.0, {}});
    case RegionModel::kBundleNegative:
      return bundle_continuous_curve(c, e, CopulaParams{-1.0, {}});
    case RegionModel::kBundleIndependent:
      return bundle_continuous_curve(c, e, CopulaParams{0.0, {}});
    case RegionModel::kBundleDiscrete:
      return bundle_discrete_curve(c, e, rho);
  }
  throw std::logic_error("curve_for");
}

bool is_discrete(RegionModel m) {
  return m == RegionModel::kSeparateDiscrete || m == RegionModel::kBundleDiscrete;
}

const std::vector<RegionModel> kAllModels = {
    RegionModel::kSeparateContinuous, RegionModel::kSeparateDiscrete,
    RegionModel::kBundlePositive,     RegionModel::kBundleNegative,
    RegionModel::kBundleIndependent,  RegionModel::kBundleDiscrete};

Outcome criterion_5() {
  Outcome out;
  for (RegionModel m : kAllModels) {
    std::mt19937_64 rng(mix_seed(5, {static_cast<std::uint64_t>(m)}));
    std::uniform_real_distribution<double> param(0.0, 3.0);
    std::uniform_real_distribution<double> rho_dist(-1.0, 1.0);
    int accepted = 0;
    int bad = 0;
    double worst = 0.0;
    while (accepted < 1000) {
      const double c = param(rng);
      const double e = param(rng);
      const double rho = m == RegionModel::kBundleDiscrete ? rho_dist(rng) : 0.0;
      if (!class_stable_within(c, e, m, rho, 0.05)) continue;
      ++accepted;
      const double closed = closed_form_lseq(c, e, m, rho);
      const double iterated = lowest_stable(curve_for(m, c, e, rho)).value;
      const double diff = std::abs(closed - iterated);
      worst = std::max(worst, diff);
      if (is_discrete(m) ? closed != iterated : diff > 1e-6) ++bad;
    }
    out.check(bad == 0, std::string(to_string(m)) + ": " + std::to_string(bad) + " disagreements");
    out.note(std::string(to_string(m)) + " max |closed - iterated| " + fmt("%.2g", worst));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 6: independent bundle roots.

Outcome criterion_6() {
  Outcome out;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> param(0.0, 3.0);
  int draws = 0;
  int bad = 0;
  int roots_checked = 0;
  double worst = 0.0;
  while (draws < 1000) {
    const double c = param(rng);
    const double e = param(rng);
    if (!(e > 0.0)) continue;
    const IndependentRoots roots = independent_roots(c, e);
    if (roots.disc_l < 0.0 && roots.disc_r < 0.0) continue;
    ++draws;
    const BundleThresholds t = bundle_thresholds(c, e);
    // Closed-form interior equilibria: roots inside their membership windows.
    std::vector<double> expected;
    auto take = [&](double xi, double lo, double hi) {
      if (std::isnan(xi)) return;
      if (xi > 0.0 && xi < 1.0 && xi >= lo && xi <= hi) expected.push_back(xi);
    };
    take(roots.xi_l_minus, t.l, t.m);
    take(roots.xi_l_plus, t.l, t.m);
    take(roots.xi_r_minus, t.m, t.r);
    take(roots.xi_r_plus, t.m, t.r);
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                   expected.end());

    std::vector<double> found;
    const EquilibriumReport report =
        find_equilibria(bundle_continuous_curve(c, e, CopulaParams{0.0, {}}));
    for (const Equilibrium& eq : report.equilibria) {
      if (eq.x_star > 1e-9 && eq.x_star < 1.0 - 1e-9) found.push_back(eq.x_star);
    }
    bool ok = expected.size() == found.size();
    for (std::size_t i = 0; ok && i < expected.size(); ++i) {
      const double diff = std::abs(expected[i] - found[i]);
      worst = std::max(worst, diff);
      ok = diff <= 1e-6;
    }
    // Every numerically found point sits inside the window of its family.
    for (double x : found) {
      const bool in_left = x >= t.l - 1e-9 && x <= t.m + 1e-9;
      const bool in_right = x >= t.m - 1e-9 && x <= t.r + 1e-9;
      ok = ok && (in_left || in_right);
    }
    roots_checked += static_cast<int>(expected.size());
    if (!ok) {
      ++bad;
      if (bad <= 3) {
        out.note("mismatch at c=" + fmt("%.6f", c) + " e=" + fmt("%.6f", e) + ": " +
                 std::to_string(expected.size()) + " closed-form vs " +
                 std::to_string(found.size()) + " numerical");
      }
    }
  }
  out.check(bad == 0, std::to_string(bad) + " of 1000 draws disagree");
  out.note(std::to_string(roots_checked) + " interior roots matched, max |diff| " +
           fmt("%.2g", worst));
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 7: outcome tables.

Outcome criterion_7() {
  Outcome out;
  const auto pos = sample_outcomes(AffinityModel::kContinuous, 1.0, 10'000, 7);
  const long ll = pos.count({Delta::kLose, Delta::kLose}) ? pos.at({Delta::kLose, Delta::kLose}) : 0;
  out.check(ll == 0, "rho=+1 produced " + std::to_string(ll) + " LL outcomes");
  const auto neg = sample_outcomes(AffinityModel::kContinuous, -1.0, 10'000, 7);
  long split = 0;
  for (const auto& [key, n] : neg) {
    if ((key.first == Delta::kWin && key.second == Delta::kLose) ||
        (key.first == Delta::kLose && key.second == Delta::kWin)) {
      split += n;
    }
  }
  out.check(split == 0, "rho=-1 produced " + std::to_string(split) + " WL/LW outcomes");
  out.note("rho=+1: 0 LL of 10000; rho=-1: 0 WL/LW of 10000" +
           std::string(ll == 0 && split == 0 ? "" : " (violated)"));

  const std::vector<std::optional<double>> rhos = {std::nullopt, -0.6, -0.2, 0.0, 0.4, 0.8};
  int annotated = 0;
  for (const std::optional<double>& rho : rhos) {
    const FeasibilityTable table = feasibility_table(TableModel::kDiscrete, rho, 10'000, 7);
    const std::string tag = rho ? "rho=" + fmt("%g", *rho) : std::string("rho sampled");
    for (const FeasibilityCell& cell : table.cells) {
      if (!cell.printed_annotation) continue;
      ++annotated;
      const Verdict want = *cell.printed_annotation ? Verdict::kConfirmedTrue : Verdict::kConfirmedFalse;
      out.check(cell.verdict == want, tag + " " + cell.row + "/" + cell.column + " verdict " +
                                          std::string(to_string(cell.verdict)));
    }
    out.check(table.discrepancy_count() == 0,
              tag + ": " + std::to_string(table.discrepancy_count()) + " discrepancies");
  }
  out.note(std::to_string(annotated) + " annotated discrete cells confirmed across " +
           std::to_string(rhos.size()) + " rho settings");

  for (TableModel m : {TableModel::kPositive, TableModel::kNegative}) {
    const FeasibilityTable table = feasibility_table(m, std::nullopt, 10'000, 7);
    out.check(table.discrepancy_count() == 0,
              std::string(to_string(m)) + ": " + std::to_string(table.discrepancy_count()) +
                  " discrepancies");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 8: agent-based simulation vs analytic lseq.

struct McCase {
  Scenario sc;
  SimMode mode;
};

// Draws a scenario whose lseq class is stable within 0.05 of the (c, e)
// point the model actually sees.
McCase draw_mc_case(RegionModel m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> half(0.0, 1.5);
  std::uniform_real_distribution<double> full(0.0, 3.0);
  std::uniform_real_distribution<double> rho_dist(-1.0, 1.0);
  for (;;) {
    McCase mc;
    switch (m) {
      case RegionModel::kSeparateContinuous:
      case RegionModel::kSeparateDiscrete:
        mc.sc.s1 = {full(rng), full(rng)};
        mc.sc.s2 = {full(rng), full(rng)};
        mc.mode = SimMode::kSeparate1;
        break;
      default:
        mc.sc.s1 = {half(rng), half(rng)};
        mc.sc.s2 = {half(rng), half(rng)};
        mc.mode = SimMode::kBundle;
        break;
    }
    mc.sc.model = is_discrete(m) ? AffinityModel::kDiscrete : AffinityModel::kContinuous;
    switch (m) {
      case RegionModel::kBundlePositive:
        mc.sc.rho = 1.0;
        break;
      case RegionModel::kBundleNegative:
        mc.sc.rho = -1.0;
        break;
      case RegionModel::kBundleDiscrete:
        mc.sc.rho = rho_dist(rng);
        break;
      default:
        mc.sc.rho = 0.0;
        break;
    }
    const bool separate = mc.mode == SimMode::kSeparate1;
    const double c = separate ? mc.sc.s1.c : mc.sc.bundle_c();
    const double e = separate ? mc.sc.s1.e : mc.sc.bundle_e();
    if (class_stable_within(c, e, m, mc.sc.rho, 0.05)) return mc;
  }
}

std::string trajectory_bytes(const Trajectory& t) {
  std::ostringstream s;
  write_trajectory_csv(s, t);
  return s.str();
}

Outcome criterion_8() {
  Outcome out;
  const auto start = Clock::now();
  constexpr long kN = 100'000;
  constexpr std::uint64_t kSeed = 8;
  int bad = 0;
  int nonconverged = 0;
  int reruns_differ = 0;
  double worst = 0.0;
  for (RegionModel m : kAllModels) {
    std::mt19937_64 rng(mix_seed(kSeed, {static_cast<std::uint64_t>(m)}));
    double worst_model = 0.0;
    for (int k = 0; k < 20; ++k) {
      const McCase mc = draw_mc_case(m, rng);
      const Trajectory t = simulate_adoption(mc.sc, mc.mode, kN, kSeed);
      const double err = std::abs(t.final - analytic_lseq(mc.sc, mc.mode));
      worst_model = std::max(worst_model, err);
      if (!t.converged) ++nonconverged;
      if (err > 0.0175) {
        ++bad;
        if (bad <= 3) {
          out.note(std::string(to_string(m)) + " miss: c1=" + fmt("%.4f", mc.sc.s1.c) +
                   " e1=" + fmt("%.4f", mc.sc.s1.e) + " c2=" + fmt("%.4f", mc.sc.s2.c) +
                   " e2=" + fmt("%.4f", mc.sc.s2.e) + " rho=" + fmt("%.4f", mc.sc.rho) +
                   " err=" + fmt("%.4f", err));
        }
      }
      if (trajectory_bytes(t) != trajectory_bytes(simulate_adoption(mc.sc, mc.mode, kN, kSeed))) {
        ++reruns_differ;
      }
    }
    worst = std::max(worst, worst_model);
    out.note(std::string(to_string(m)) + " max |final - lseq| " + fmt("%.4f", worst_model));
  }
  out.check(bad == 0, std::to_string(bad) + " of 120 runs outside 0.0175");
  out.check(nonconverged == 0, std::to_string(nonconverged) + " runs hit max_rounds");
  out.check(reruns_differ == 0, std::to_string(reruns_differ) + " reruns not byte-identical");
  const double secs = seconds_since(start);
  out.check(secs < 60.0, "runtime " + fmt("%.1f", secs) + " s");
  out.note("runtime " + fmt("%.2f", secs) + " s (including reruns)");
  return out;
}

// ---------------------------------------------------------------------------
// Criterion 9: continuous rho sweep with a heterogeneous pair.

Outcome criterion_9() {
  Outcome out;
  const auto start = Clock::now();
  const std::string path = std::string(BUNDLING_CONFIG_DIR) + "/bundling-cont-like.json";
  const cli::RunConfig cfg = cli::load_config(path);
  const std::vector<cli::SweepRow> rows = cli::sweep_rows(cfg, cfg.sweep);
  int errors = 0;
  std::vector<std::size_t> jumps;
  int drops_before = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (!rows[k].error.empty()) ++errors;
    if (k == 0) continue;
    const double step = rows[k].outcome.xb - rows[k - 1].outcome.xb;
    if (step >= 0.4) jumps.push_back(k);
  }
  out.check(errors == 0, std::to_string(errors) + " rows failed to solve");
  out.check(jumps.size() == 1, std::to_string(jumps.size()) + " upward jumps >= 0.4");
  if (jumps.size() == 1) {
    const std::size_t j = jumps[0];
    const double rho_star = 0.5 * (rows[j - 1].value + rows[j].value);
    out.check(rows[j].value > -1.0 && rows[j - 1].value < 0.5,
              "jump at rho " + fmt("%.3f", rho_star) + " outside (-1, 0.5)");
    for (std::size_t k = 1; k < j; ++k) {
      if (rows[k].outcome.xb < rows[k - 1].outcome.xb - 1e-9) ++drops_before;
    }
    out.check(drops_before == 0, "lseq decreases before the jump");
    out.note("jump " + fmt("%.4f", rows[j - 1].outcome.xb) + " -> " +
             fmt("%.4f", rows[j].outcome.xb) + " between rho " + fmt("%.2f", rows[j - 1].value) +
             " and " + fmt("%.2f", rows[j].value));
  }
  out.note("config " + path + ", " + std::to_string(rows.size()) + " grid points, " +
           fmt("%.1f", seconds_since(start)) + " s");
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"discrete rho-sweep, upper family", criterion_1},
      {"discrete rho-sweep, lower family", criterion_2},
      {"copula sum distribution", criterion_3},
      {"realized correlation map", criterion_4},
      {"closed-form vs iteration lseq", criterion_5},
      {"independent-bundle roots", criterion_6},
      {"outcome tables", criterion_7},
      {"Monte-Carlo agreement", criterion_8},
      {"continuous rho-sweep jump", criterion_9},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    const auto start = Clock::now();
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out.pass = false;
      out.notes.push_back(std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %zu: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, seconds_since(start));
    for (const std::string& n : out.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
