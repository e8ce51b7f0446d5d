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

#include "bundling/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "bundling/seeding.hpp"

namespace bundling {

namespace {

constexpr int kVars = 5;  // c1, e1, c2, e2, slack t
constexpr double kBox = 1e3;
constexpr double kFeasTol = 1e-9;
constexpr long kMaxRejections = 1'000'000;

using Vec4 = std::array<double, 4>;
constexpr Vec4 kC = {1, 0, 1, 0};
constexpr Vec4 kE = {0, 1, 0, 1};

Vec4 combo(double x, const Vec4& u, double y, const Vec4& v) {
  Vec4 out{};
  for (int i = 0; i < 4; ++i) out[i] = x * u[i] + y * v[i];
  return out;
}

Vec4 unit(int i) {
  Vec4 out{};
  out[i] = 1.0;
  return out;
}

LinearConstraint lt(const Vec4& a, double b) { return {a, b, true}; }
LinearConstraint gt(const Vec4& a, double b) { return {combo(-1.0, a, 0.0, a), -b, true}; }

// g . v <= h over the 5 LP variables.
struct Halfspace {
  std::array<double, kVars> g{};
  double h = 0.0;
};

bool solve5(std::array<std::array<double, kVars + 1>, kVars> m, std::array<double, kVars>& x) {
  for (int col = 0; col < kVars; ++col) {
    int pivot = col;
    for (int r = col + 1; r < kVars; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) < 1e-12) return false;
    std::swap(m[pivot], m[col]);
    for (int r = 0; r < kVars; ++r) {
      if (r == col) continue;
      const double f = m[r][col] / m[col][col];
      for (int k = col; k <= kVars; ++k) m[r][k] -= f * m[col][k];
    }
  }
  for (int i = 0; i < kVars; ++i) x[i] = m[i][kVars] / m[i][i];
  return true;
}

// --- table layout --------------------------------------------------------

// Per-service equilibrium classes, in the printed row order.
constexpr std::array<std::array<int, 2>, 9> kRowLevels = {{
    {0, 0}, {0, 1}, {0, 2}, {1, 0}, {2, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2},
}};

struct PrintedEntry {
  const char* outcomes;
  int annotation;  // 1 True, 0 False, -1 none
};

constexpr std::array<std::array<PrintedEntry, 3>, 9> kPositiveTable = {{
    {{{"SS", 1}, {"WW", 0}, {"WW", 0}}},
    {{{"SL", -1}, {"WL or WW", -1}, {"WW", -1}}},
    {{{"SL", -1}, {"WL", -1}, {"WS", -1}}},
    {{{"LS", -1}, {"LW or WW", -1}, {"WW", -1}}},
    {{{"LS", -1}, {"LW", -1}, {"SW", -1}}},
    {{{"LL", 0}, {"WL or LW", -1}, {"WW", 0}}},
    {{{"LL", 0}, {"WL", -1}, {"WS", -1}}},
    {{{"LL", 0}, {"LW", -1}, {"SW", -1}}},
    {{{"LL", 0}, {"LL", 0}, {"SS", 1}}},
}};

constexpr std::array<std::array<PrintedEntry, 2>, 9> kNegativeTable = {{
    {{{"SS", 1}, {"WW", 0}}},
    {{{"SL", 1}, {"WW", 0}}},
    {{{"SL", 1}, {"WS", 0}}},
    {{{"LS", 1}, {"WW", 0}}},
    {{{"LS", 1}, {"SW", 0}}},
    {{{"LL", -1}, {"WW", -1}}},
    {{{"LL", -1}, {"WS", -1}}},
    {{{"LL", -1}, {"SW", -1}}},
    {{{"LL", -1}, {"SS", -1}}},
}};

constexpr std::array<std::array<PrintedEntry, 4>, 9> kDiscreteTable = {{
    {{{"SS", 1}, {"WW", 0}, {"WW", 0}, {"WW", 0}}},
    {{{"SL", -1}, {"WL", -1}, {"WW", -1}, {"WW", -1}}},
    {{{"SL", -1}, {"WL", -1}, {"WL", -1}, {"WS", -1}}},
    {{{"LS", -1}, {"LW", -1}, {"WW", -1}, {"WW", -1}}},
    {{{"LS", -1}, {"LW", -1}, {"LW", -1}, {"SW", -1}}},
    {{{"LL", 0}, {"LL", -1}, {"WW", -1}, {"WW", -1}}},
    {{{"LL", 0}, {"LL", -1}, {"WL", -1}, {"WS", -1}}},
    {{{"LL", 0}, {"LL", -1}, {"LW", -1}, {"SW", -1}}},
    {{{"LL", 0}, {"LL", -1}, {"LL", -1}, {"SS", -1}}},
}};

const char* level_name(TableModel model, int level) {
  static constexpr std::array<const char*, 3> kCont = {"0", "int", "1"};
  static constexpr std::array<const char*, 3> kDisc = {"0", "1/2", "1"};
  return model == TableModel::kDiscrete ? kDisc[level] : kCont[level];
}

std::vector<std::string> column_names(TableModel model) {
  switch (model) {
    case TableModel::kPositive:
      return {"0", "mid", "1"};
    case TableModel::kNegative:
      return {"0", "1"};
    case TableModel::kDiscrete:
      return {"0", "(1+rho)/4", "(3-rho)/4", "1"};
  }
  return {};
}

PrintedEntry printed_entry(TableModel model, int row, int col) {
  switch (model) {
    case TableModel::kPositive:
      return kPositiveTable[row][col];
    case TableModel::kNegative:
      return kNegativeTable[row][col];
    case TableModel::kDiscrete:
      return kDiscreteTable[row][col];
  }
  return {"", -1};
}

// Conditions on one service (index 0 or 1) for separate-offering class
// `level`. The printed "c_i < e_i and 1" is read per service.
std::vector<LinearConstraint> service_conditions(TableModel model, int service, int level) {
  const Vec4 c = unit(2 * service);
  const Vec4 e = unit(2 * service + 1);
  if (level == 0) return {gt(c, 1.0)};
  if (model == TableModel::kDiscrete) {
    // 1/2: e_i < 2 c_i;  1: e_i > 2 c_i
    if (level == 1) return {lt(c, 1.0), lt(combo(1.0, e, -2.0, c), 0.0)};
    return {lt(c, 1.0), gt(combo(1.0, e, -2.0, c), 0.0)};
  }
  if (level == 1) return {lt(c, 1.0), lt(combo(1.0, e, -1.0, c), 0.0)};
  return {lt(c, 1.0), lt(combo(1.0, c, -1.0, e), 0.0)};
}

std::vector<LinearConstraint> row_conditions(TableModel model, int row) {
  std::vector<LinearConstraint> out = service_conditions(model, 0, kRowLevels[row][0]);
  const auto second = service_conditions(model, 1, kRowLevels[row][1]);
  out.insert(out.end(), second.begin(), second.end());
  return out;
}

struct ColumnCondition {
  LinearConstraint constraint;
  bool rho_dependent = false;
};

std::vector<ColumnCondition> column_conditions(TableModel model, int col, double rho) {
  switch (model) {
    case TableModel::kPositive:
      if (col == 0) return {{gt(kC, 2.0)}};
      if (col == 1) return {{lt(combo(1.0, kE, -1.0, kC), 0.0)}, {lt(kC, 2.0)}};
      return {{lt(combo(1.0, kC, -1.0, kE), 0.0)}, {lt(kC, 2.0)}};
    case TableModel::kNegative:
      return {{col == 0 ? gt(kC, 1.0) : lt(kC, 1.0)}};
    case TableModel::kDiscrete: {
      if (col == 0) return {{gt(kC, 2.0)}};
      // (1+rho) e vs 4(c - 1) and (3-rho) e vs 4c
      const Vec4 low = combo(1.0 + rho, kE, -4.0, kC);
      const Vec4 high = combo(3.0 - rho, kE, -4.0, kC);
      if (col == 1) return {{lt(kC, 2.0)}, {lt(low, -4.0), true}};
      if (col == 2) return {{lt(kC, 2.0)}, {gt(low, -4.0), true}, {lt(high, 0.0), true}};
      return {{lt(kC, 2.0)}, {gt(low, -4.0), true}, {gt(high, 0.0), true}};
    }
  }
  return {};
}

// Bundled lseq implied by a column, used to cross-check compare().
double column_level(TableModel model, int col, const Scenario& sc) {
  switch (model) {
    case TableModel::kPositive:
      if (col == 1) return (2.0 - sc.bundle_c()) / (2.0 - sc.bundle_e());
      return col == 0 ? 0.0 : 1.0;
    case TableModel::kNegative:
      return col == 0 ? 0.0 : 1.0;
    case TableModel::kDiscrete: {
      const std::array<double, 4> levels = {0.0, (1.0 + sc.rho) / 4.0, (3.0 - sc.rho) / 4.0,
                                            1.0};
      return levels[col];
    }
  }
  return 0.0;
}

bool row_level_matches(TableModel model, int level, double x, const ServiceParams& s) {
  if (level == 0) return x == 0.0;
  if (model == TableModel::kDiscrete) return x == (level == 1 ? 0.5 : 1.0);
  if (level == 2) return x == 1.0;
  return std::abs(x - (1.0 - s.c) / (1.0 - s.e)) <= 1e-12;
}

Proof prove(const std::vector<LinearConstraint>& row,
            const std::vector<ColumnCondition>& column, bool rho_free_only) {
  std::vector<LinearConstraint> joint = row;
  bool dropped = false;
  for (const ColumnCondition& cc : column) {
    if (rho_free_only && cc.rho_dependent) {
      dropped = true;
      continue;
    }
    joint.push_back(cc.constraint);
  }
  if (!strictly_feasible(joint)) return Proof::kInfeasible;
  if (dropped) return Proof::kRelaxed;
  for (const ColumnCondition& cc : column) {
    std::vector<LinearConstraint> counter = row;
    counter.push_back(cc.constraint.negated());
    if (strictly_feasible(counter)) return Proof::kFeasible;
  }
  return Proof::kImplied;
}

std::string delta_pair(const OutcomeTriple& t) {
  return {to_char(t.delta1), to_char(t.delta2)};
}

bool printed_allows(std::string_view printed, const std::string& observed) {
  std::size_t pos = 0;
  while (pos < printed.size()) {
    std::size_t end = printed.find(" or ", pos);
    if (end == std::string_view::npos) end = printed.size();
    if (printed.substr(pos, end - pos) == observed) return true;
    pos = end == printed.size() ? end : end + 4;
  }
  return false;
}

template <typename Rng>
ServiceParams draw_service(const std::vector<LinearConstraint>& conditions, int service,
                           Rng& rng) {
  std::uniform_real_distribution<double> param(0.0, 3.0);
  for (long attempt = 0; attempt < kMaxRejections; ++attempt) {
    Scenario probe;
    ServiceParams& s = service == 0 ? probe.s1 : probe.s2;
    s.c = param(rng);
    s.e = param(rng);
    if (std::all_of(conditions.begin(), conditions.end(),
                    [&](const LinearConstraint& lc) { return lc.holds(probe); })) {
      return s;
    }
  }
  throw std::runtime_error("feasibility_table: rejection sampling exhausted");
}

}  // namespace

bool LinearConstraint::holds(const Scenario& sc) const {
  const double v = a[0] * sc.s1.c + a[1] * sc.s1.e + a[2] * sc.s2.c + a[3] * sc.s2.e;
  return strict ? v < b : v <= b;
}

LinearConstraint LinearConstraint::negated() const {
  return {combo(-1.0, a, 0.0, a), -b, !strict};
}

std::optional<double> max_strict_slack(const std::vector<LinearConstraint>& constraints) {
  std::vector<Halfspace> hs;
  for (const LinearConstraint& lc : constraints) {
    Halfspace h;
    for (int i = 0; i < 4; ++i) h.g[i] = lc.a[i];
    h.g[4] = lc.strict ? 1.0 : 0.0;
    h.h = lc.b;
    hs.push_back(h);
  }
  for (int i = 0; i < kVars; ++i) {
    Halfspace lower;
    lower.g[i] = -1.0;
    hs.push_back(lower);
    Halfspace upper;
    upper.g[i] = 1.0;
    upper.h = i == 4 ? 1.0 : kBox;
    hs.push_back(upper);
  }

  const int m = static_cast<int>(hs.size());
  std::optional<double> best;
  std::array<int, kVars> idx{};
  // Every 5-subset of tight constraints defines a candidate vertex.
  for (int i = 0; i < kVars; ++i) idx[i] = i;
  while (true) {
    std::array<std::array<double, kVars + 1>, kVars> sys{};
    for (int r = 0; r < kVars; ++r) {
      for (int k = 0; k < kVars; ++k) sys[r][k] = hs[idx[r]].g[k];
      sys[r][kVars] = hs[idx[r]].h;
    }
    std::array<double, kVars> x{};
    if (solve5(sys, x)) {
      const bool ok = std::all_of(hs.begin(), hs.end(), [&](const Halfspace& h) {
        double v = 0.0;
        for (int k = 0; k < kVars; ++k) v += h.g[k] * x[k];
        return v <= h.h + kFeasTol * std::max(1.0, std::abs(h.h));
      });
      if (ok && (!best || x[4] > *best)) best = x[4];
    }
    int pos = kVars - 1;
    while (pos >= 0 && idx[pos] == m - kVars + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int k = pos + 1; k < kVars; ++k) idx[k] = idx[k - 1] + 1;
  }
  return best;
}

bool strictly_feasible(const std::vector<LinearConstraint>& constraints) {
  const std::optional<double> t = max_strict_slack(constraints);
  return t && *t > kFeasTol;
}

std::string_view to_string(TableModel model) {
  switch (model) {
    case TableModel::kPositive:
      return "pos_corr";
    case TableModel::kNegative:
      return "neg_corr";
    case TableModel::kDiscrete:
      return "discrete";
  }
  return "unknown";
}

std::optional<TableModel> parse_table_model(std::string_view name) {
  if (name == "pos_corr") return TableModel::kPositive;
  if (name == "neg_corr") return TableModel::kNegative;
  if (name == "discrete") return TableModel::kDiscrete;
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kConfirmedTrue:
      return "CONFIRMED-TRUE";
    case Verdict::kConfirmedFalse:
      return "CONFIRMED-FALSE";
    case Verdict::kWitnessed:
      return "WITNESSED";
    case Verdict::kNotFound:
      return "NOT-FOUND";
  }
  return "unknown";
}

std::string_view to_string(Proof p) {
  switch (p) {
    case Proof::kImplied:
      return "implied";
    case Proof::kInfeasible:
      return "infeasible";
    case Proof::kFeasible:
      return "feasible";
    case Proof::kRelaxed:
      return "feasible-rho-free";
  }
  return "unknown";
}

long FeasibilityTable::discrepancy_count() const {
  return std::count_if(cells.begin(), cells.end(),
                       [](const FeasibilityCell& c) { return c.discrepancy; });
}

const FeasibilityCell* FeasibilityTable::find(std::string_view row,
                                              std::string_view column) const {
  for (const FeasibilityCell& cell : cells) {
    if (cell.row == row && cell.column == column) return &cell;
  }
  return nullptr;
}

FeasibilityTable feasibility_table(TableModel model, std::optional<double> rho,
                                   long samples_per_row, std::uint64_t seed) {
  if (samples_per_row < 1) {
    throw std::invalid_argument("feasibility_table: samples_per_row must be >= 1");
  }
  if (rho && !(*rho >= -1.0 && *rho <= 1.0)) {
    throw std::invalid_argument("feasibility_table: rho must lie in [-1, 1]");
  }
  if (model != TableModel::kDiscrete) rho = model == TableModel::kPositive ? 1.0 : -1.0;
  const bool sampled_rho = !rho.has_value();

  FeasibilityTable table;
  table.model = model;
  table.rho = model == TableModel::kDiscrete ? rho : std::nullopt;
  table.samples_per_row = samples_per_row;
  table.seed = seed;

  const std::vector<std::string> columns = column_names(model);
  const int ncols = static_cast<int>(columns.size());
  const AffinityModel affinity =
      model == TableModel::kDiscrete ? AffinityModel::kDiscrete : AffinityModel::kContinuous;

  for (int row = 0; row < 9; ++row) {
    const std::vector<LinearConstraint> row_cond = row_conditions(model, row);
    std::vector<FeasibilityCell> cells(ncols);
    for (int col = 0; col < ncols; ++col) {
      FeasibilityCell& cell = cells[col];
      cell.row = std::string("(") + level_name(model, kRowLevels[row][0]) + "," +
                 level_name(model, kRowLevels[row][1]) + ")";
      cell.column = columns[col];
      const PrintedEntry entry = printed_entry(model, row, col);
      cell.printed_outcomes = entry.outcomes;
      if (entry.annotation >= 0) cell.printed_annotation = entry.annotation == 1;
      cell.proof = prove(row_cond, column_conditions(model, col, rho.value_or(0.0)),
                         sampled_rho);
    }

    const auto s1_cond = service_conditions(model, 0, kRowLevels[row][0]);
    const auto s2_cond = service_conditions(model, 1, kRowLevels[row][1]);
    std::mt19937_64 rng(mix_seed(seed, {static_cast<std::uint64_t>(model),
                                        static_cast<std::uint64_t>(row)}));
    std::uniform_real_distribution<double> rho_dist(-1.0, 1.0);
    for (long k = 0; k < samples_per_row; ++k) {
      Scenario sc;
      sc.model = affinity;
      sc.s1 = draw_service(s1_cond, 0, rng);
      sc.s2 = draw_service(s2_cond, 1, rng);
      sc.rho = sampled_rho ? rho_dist(rng) : *rho;
      int hit = -1;
      for (int col = 0; col < ncols && hit < 0; ++col) {
        const auto cond = column_conditions(model, col, sc.rho);
        if (std::all_of(cond.begin(), cond.end(),
                        [&](const ColumnCondition& cc) { return cc.constraint.holds(sc); })) {
          hit = col;
        }
      }
      if (hit < 0) continue;  // on a column boundary
      FeasibilityCell& cell = cells[hit];
      const OutcomeTriple t = compare(sc);
      const std::string observed = delta_pair(t);
      ++cell.hits;
      cell.observed.insert(observed);
      if (!cell.witness) cell.witness = sc;
      const bool consistent = row_level_matches(model, kRowLevels[row][0], t.x1, sc.s1) &&
                              row_level_matches(model, kRowLevels[row][1], t.x2, sc.s2) &&
                              std::abs(t.xb - column_level(model, hit, sc)) <= 1e-12;
      if (!consistent && !cell.discrepancy) {
        cell.discrepancy = true;
        std::ostringstream note;
        note << "equilibria disagree with the cell conditions at sample " << k;
        cell.note = note.str();
      }
      if (!printed_allows(cell.printed_outcomes, observed) && !cell.discrepancy) {
        cell.discrepancy = true;
        cell.note = "observed " + observed + " not among printed outcomes";
      }
    }

    for (FeasibilityCell& cell : cells) {
      cell.verdict = cell.hits > 0 ? Verdict::kWitnessed : Verdict::kNotFound;
      if (cell.printed_annotation == true) {
        if (cell.proof == Proof::kImplied) {
          cell.verdict = Verdict::kConfirmedTrue;
        } else if (!cell.discrepancy) {
          cell.discrepancy = true;
          cell.note = "printed True but the implication does not follow";
        }
      } else if (cell.printed_annotation == false) {
        if (cell.hits == 0) {
          cell.verdict = Verdict::kConfirmedFalse;
        } else if (!cell.discrepancy) {
          cell.discrepancy = true;
          cell.note = "printed False but a witness was sampled";
        }
      }
      table.cells.push_back(std::move(cell));
    }
  }
  return table;
}

}  // namespace bundling
