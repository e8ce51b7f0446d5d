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

#include "bundling_cli/commands.hpp"

#include <cmath>

#include "bundling/format.hpp"

namespace bundling::cli {

namespace {

using nlohmann::json;
using bundling::format_number;

std::string delta_string(Delta d) { return std::string(1, to_char(d)); }

void write_echo(std::ostream& out, std::string_view command, const RunConfig& cfg,
                const Overrides& ov) {
  out << "# command: " << command << '\n';
  out << "# config: " << cfg.raw.dump() << '\n';
  json over = json::object();
  if (ov.seed) over["seed"] = *ov.seed;
  if (ov.steps) over["steps"] = *ov.steps;
  if (!over.empty()) out << "# overrides: " << over.dump() << '\n';
}

json echo_json(std::string_view command, const RunConfig& cfg, const Overrides& ov) {
  json j = {{"command", command}, {"config", cfg.raw}};
  if (ov.seed) j["overrides"]["seed"] = *ov.seed;
  if (ov.steps) j["overrides"]["steps"] = *ov.steps;
  return j;
}

void require_scenario(const RunConfig& cfg) {
  if (!cfg.raw.contains("services")) throw ConfigError("services: required by this command");
}

json equilibria_json(const EquilibriumReport& report) {
  json list = json::array();
  for (const Equilibrium& eq : report.equilibria) {
    json item = {{"x", eq.x_star}, {"stability", to_string(eq.stability)}};
    if (!eq.tag.empty()) item["tag"] = eq.tag;
    list.push_back(item);
  }
  return list;
}

EquilibriumReport bundle_equilibria(const RunConfig& cfg) {
  const Scenario& sc = cfg.scenario;
  if (sc.model == AffinityModel::kContinuous && sc.rho == 0.0) {
    return equilibria_bundle_indep(sc.bundle_c(), sc.bundle_e());
  }
  return find_equilibria(bundle_curve(sc, cfg.quad), cfg.solver.tol);
}

}  // namespace

Scenario apply_sweep(const Scenario& base, SweepVar var, double value) {
  Scenario sc = base;
  switch (var) {
    case SweepVar::kRho:
      sc.rho = value;
      break;
    case SweepVar::kC1:
      sc.s1.c = value;
      break;
    case SweepVar::kE1:
      sc.s1.e = value;
      break;
    case SweepVar::kC2:
      sc.s2.c = value;
      break;
    case SweepVar::kE2:
      sc.s2.e = value;
      break;
  }
  return sc;
}

std::vector<SweepRow> sweep_rows(const RunConfig& cfg, const SweepSpec& spec) {
  if (spec.steps < 2) throw ConfigError("sweep.steps: must be >= 2");
  if (!(spec.from <= spec.to)) throw ConfigError("sweep: from must be <= to");
  if (spec.var == SweepVar::kRho && (spec.from < -1.0 || spec.to > 1.0)) {
    throw ConfigError("sweep: rho range must lie within [-1, 1]");
  }
  if (spec.var != SweepVar::kRho && spec.from < 0.0) {
    throw ConfigError("sweep: costs and externalities must be >= 0");
  }
  CompareOptions options;
  options.solver = cfg.solver;
  options.quad = cfg.quad;
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(spec.steps));
  for (long k = 0; k < spec.steps; ++k) {
    SweepRow row;
    row.value = spec.value(k);
    try {
      row.outcome = compare(apply_sweep(cfg.scenario, spec.var, row.value), options);
    } catch (const ToleranceError& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RegionRow> region_rows(const RegionMapSpec& spec) {
  if (spec.resolution < 2) throw ConfigError("region.resolution: must be >= 2");
  std::vector<RegionRow> rows;
  const long n = spec.resolution;
  auto grid = [n](const std::pair<double, double>& range, long k) {
    if (k == n - 1) return range.second;
    return range.first +
           static_cast<double>(k) * (range.second - range.first) / static_cast<double>(n - 1);
  };
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < n; ++j) {
      RegionRow row;
      row.c = grid(spec.c_range, i);
      row.e = grid(spec.e_range, j);
      try {
        const RegionClass cls = region_class(row.c, row.e, spec.model, spec.rho);
        row.label = cls.label;
        row.lseq = cls.lseq;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

int cmd_analyze(const RunConfig& cfg, const Overrides& ov, std::ostream& out) {
  require_scenario(cfg);
  const Scenario& sc = cfg.scenario;
  CompareOptions options;
  options.solver = cfg.solver;
  options.quad = cfg.quad;
  const OutcomeTriple t = compare(sc, options);
  const EquilibriumReport eq_bundle = bundle_equilibria(cfg);
  const bool externality_free = sc.s1.e == 0.0 && sc.s2.e == 0.0;

  if (ov.format.value_or(Format::kJson) == Format::kCsv) {
    write_echo(out, "analyze", cfg, ov);
    out << "x1,x2,xb,delta1,delta2,externality_free\n";
    out << format_number(t.x1) << ',' << format_number(t.x2) << ',' << format_number(t.xb) << ','
        << to_char(t.delta1) << ',' << to_char(t.delta2) << ','
        << (externality_free ? "true" : "false") << '\n';
    return kExitOk;
  }
  json j = echo_json("analyze", cfg, ov);
  j["model"] = to_string(sc.model);
  j["rho"] = sc.rho;
  j["bundle"] = {{"c", sc.bundle_c()}, {"e", sc.bundle_e()}};
  j["x1"] = t.x1;
  j["x2"] = t.x2;
  j["xb"] = t.xb;
  j["delta1"] = delta_string(t.delta1);
  j["delta2"] = delta_string(t.delta2);
  // With no externality every curve is flat, so each outcome is the share
  // of users whose affinity exceeds the cost.
  j["externality_free"] = externality_free;
  j["equilibria"] = {
      {"separate_1", equilibria_json(find_equilibria(separate_curve(sc.s1, sc.model)))},
      {"separate_2", equilibria_json(find_equilibria(separate_curve(sc.s2, sc.model)))},
      {"bundle", equilibria_json(eq_bundle)},
  };
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, const Overrides& ov, std::ostream& out) {
  require_scenario(cfg);
  SweepSpec spec = cfg.sweep;
  if (ov.steps) spec.steps = *ov.steps;
  const std::vector<SweepRow> rows = sweep_rows(cfg, spec);
  bool failed = false;
  const std::string var(to_string(spec.var));

  if (ov.format.value_or(Format::kCsv) == Format::kJson) {
    json j = echo_json("sweep", cfg, ov);
    j["rows"] = json::array();
    for (const SweepRow& r : rows) {
      json item = {{var, r.value}};
      if (r.error.empty()) {
        item.update({{"x1", r.outcome.x1}, {"x2", r.outcome.x2}, {"xb", r.outcome.xb},
                     {"delta1", delta_string(r.outcome.delta1)},
                     {"delta2", delta_string(r.outcome.delta2)}});
      } else {
        item["error"] = r.error;
        failed = true;
      }
      j["rows"].push_back(item);
    }
    out << j.dump(2) << '\n';
    return failed ? kExitTolerance : kExitOk;
  }

  write_echo(out, "sweep", cfg, ov);
  out << var << ",x1,x2,xb,delta1,delta2,status\n";
  for (const SweepRow& r : rows) {
    out << format_number(r.value) << ',';
    if (r.error.empty()) {
      out << format_number(r.outcome.x1) << ',' << format_number(r.outcome.x2) << ','
          << format_number(r.outcome.xb) << ',' << to_char(r.outcome.delta1) << ','
          << to_char(r.outcome.delta2) << ",ok\n";
    } else {
      failed = true;
      out << ",,,,,\"error: " << r.error << "\"\n";
    }
  }
  return failed ? kExitTolerance : kExitOk;
}

int cmd_region_map(const RunConfig& cfg, const Overrides& ov, std::ostream& out) {
  RegionMapSpec spec = cfg.region;
  if (ov.steps) spec.resolution = *ov.steps;
  const std::vector<RegionRow> rows = region_rows(spec);
  bool failed = false;
  if (ov.format.value_or(Format::kCsv) == Format::kJson) {
    json j = echo_json("region-map", cfg, ov);
    j["rows"] = json::array();
    for (const RegionRow& r : rows) {
      json item = {{"c", r.c}, {"e", r.e}};
      if (r.error.empty()) {
        item.update({{"lseq_class", r.label}, {"lseq_value", r.lseq}});
      } else {
        item["error"] = r.error;
        failed = true;
      }
      j["rows"].push_back(item);
    }
    out << j.dump(2) << '\n';
    return failed ? kExitTolerance : kExitOk;
  }
  write_echo(out, "region-map", cfg, ov);
  out << "c,e,lseq_class,lseq_value\n";
  for (const RegionRow& r : rows) {
    out << format_number(r.c) << ',' << format_number(r.e) << ',';
    if (r.error.empty()) {
      out << r.label << ',' << format_number(r.lseq) << '\n';
    } else {
      failed = true;
      out << "error," << '\n';
    }
  }
  return failed ? kExitTolerance : kExitOk;
}

int cmd_montecarlo(const RunConfig& cfg, const Overrides& ov, std::ostream& out) {
  require_scenario(cfg);
  MonteCarloSpec spec = cfg.montecarlo;
  if (ov.seed) spec.seed = *ov.seed;
  const Trajectory traj =
      simulate_adoption(cfg.scenario, spec.mode, spec.n, spec.seed, spec.max_rounds);
  const double analytic = analytic_lseq(cfg.scenario, spec.mode);
  json summary = {{"mode", to_string(spec.mode)},
                  {"n", spec.n},
                  {"seed", spec.seed},
                  {"final", traj.final},
                  {"analytic_lseq", analytic},
                  {"abs_error", std::abs(traj.final - analytic)},
                  {"converged", traj.converged},
                  {"rounds", traj.rounds()}};

  if (ov.format.value_or(Format::kCsv) == Format::kJson) {
    json j = echo_json("montecarlo", cfg, ov);
    j["summary"] = summary;
    j["trajectory"] = traj.levels;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  write_echo(out, "montecarlo", cfg, ov);
  out << "# summary: " << summary.dump() << '\n';
  write_trajectory_csv(out, traj);
  return kExitOk;
}

int cmd_table(const RunConfig& cfg, const Overrides& ov, std::ostream& out) {
  TableSpec spec = cfg.table;
  if (ov.seed) spec.seed = *ov.seed;
  if (ov.steps) spec.samples = *ov.steps;
  const FeasibilityTable table = feasibility_table(spec.model, spec.rho, spec.samples, spec.seed);
  const int code = table.discrepancy_count() > 0 ? kExitDiscrepancy : kExitOk;

  auto annotation = [](const FeasibilityCell& c) -> std::string {
    if (!c.printed_annotation) return "";
    return *c.printed_annotation ? "True" : "False";
  };
  auto observed = [](const FeasibilityCell& c) {
    std::string s;
    for (const std::string& o : c.observed) s += (s.empty() ? "" : " ") + o;
    return s;
  };

  if (ov.format.value_or(Format::kCsv) == Format::kJson) {
    json j = echo_json("table", cfg, ov);
    j["model"] = to_string(table.model);
    j["discrepancies"] = table.discrepancy_count();
    j["cells"] = json::array();
    for (const FeasibilityCell& c : table.cells) {
      json item = {{"row", c.row},
                   {"column", c.column},
                   {"printed_outcomes", c.printed_outcomes},
                   {"printed_annotation", annotation(c)},
                   {"verdict", to_string(c.verdict)},
                   {"proof", to_string(c.proof)},
                   {"hits", c.hits},
                   {"observed", observed(c)},
                   {"discrepancy", c.discrepancy},
                   {"note", c.note}};
      if (c.witness) {
        item["witness"] = {{"c1", c.witness->s1.c}, {"e1", c.witness->s1.e},
                           {"c2", c.witness->s2.c}, {"e2", c.witness->s2.e},
                           {"rho", c.witness->rho}};
      }
      j["cells"].push_back(item);
    }
    out << j.dump(2) << '\n';
    return code;
  }

  write_echo(out, "table", cfg, ov);
  out << "row,column,printed_outcomes,printed_annotation,verdict,proof,hits,observed,"
         "witness_c1,witness_e1,witness_c2,witness_e2,witness_rho,discrepancy,note\n";
  for (const FeasibilityCell& c : table.cells) {
    out << '"' << c.row << "\"," << c.column << ',' << c.printed_outcomes << ',' << annotation(c)
        << ',' << to_string(c.verdict) << ',' << to_string(c.proof) << ',' << c.hits << ','
        << observed(c) << ',';
    if (c.witness) {
      out << format_number(c.witness->s1.c) << ',' << format_number(c.witness->s1.e) << ','
          << format_number(c.witness->s2.c) << ',' << format_number(c.witness->s2.e) << ','
          << format_number(c.witness->rho) << ',';
    } else {
      out << ",,,,,";
    }
    out << (c.discrepancy ? "true" : "false") << ",\"" << c.note << "\"\n";
  }
  return code;
}

}  // namespace bundling::cli
