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

#include "bundling_cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

namespace bundling::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kTopLevelKeys = {"name",  "description", "model",      "services",
                                             "rho",   "solver",      "quad",       "sweep",
                                             "region", "montecarlo", "table"};

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

long parse_integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return j.get<long>();
}

std::uint64_t parse_seed(const json& j, const std::string& where) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long>() < 0)) {
    throw ConfigError(where + ": expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

std::string parse_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where + ": expected a string");
  return j.get<std::string>();
}

double parse_rho(const json& j, const std::string& where) {
  const double rho = parse_real(j, where);
  if (!(rho >= -1.0 && rho <= 1.0)) throw ConfigError(where + ": must lie in [-1, 1]");
  return rho;
}

std::pair<double, double> parse_range(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(where + ": expected [lo, hi]");
  const double lo = parse_real(j[0], where);
  const double hi = parse_real(j[1], where);
  if (!(lo < hi)) throw ConfigError(where + ": range must have positive length");
  if (lo < 0.0) throw ConfigError(where + ": costs and externalities must be >= 0");
  return {lo, hi};
}

std::optional<SweepVar> parse_sweep_var(std::string_view name) {
  if (name == "rho") return SweepVar::kRho;
  if (name == "c1") return SweepVar::kC1;
  if (name == "e1") return SweepVar::kE1;
  if (name == "c2") return SweepVar::kC2;
  if (name == "e2") return SweepVar::kE2;
  return std::nullopt;
}

}  // namespace

double SweepSpec::value(long k) const {
  if (k == steps - 1) return to;
  return from + static_cast<double>(k) * (to - from) / static_cast<double>(steps - 1);
}

std::string_view to_string(SweepVar var) {
  switch (var) {
    case SweepVar::kRho:
      return "rho";
    case SweepVar::kC1:
      return "c1";
    case SweepVar::kE1:
      return "e1";
    case SweepVar::kC2:
      return "c2";
    case SweepVar::kE2:
      return "e2";
  }
  return "unknown";
}

double parse_real(const json& value, const std::string& where) {
  double out = 0.0;
  if (value.is_number()) {
    out = value.get<double>();
  } else if (value.is_string()) {
    const std::string s = value.get<std::string>();
    const auto slash = s.find('/');
    auto parse = [&](std::string_view part) {
      double v = 0.0;
      const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
      if (res.ec != std::errc() || res.ptr != part.data() + part.size()) {
        throw ConfigError(where + ": cannot parse '" + s + "'");
      }
      return v;
    };
    if (slash == std::string::npos) {
      out = parse(s);
    } else {
      const double den = parse(std::string_view(s).substr(slash + 1));
      if (den == 0.0) throw ConfigError(where + ": zero denominator in '" + s + "'");
      out = parse(std::string_view(s).substr(0, slash)) / den;
    }
  } else {
    throw ConfigError(where + ": expected a number or a \"p/q\" string");
  }
  if (!std::isfinite(out)) throw ConfigError(where + ": must be finite");
  return out;
}

RunConfig parse_config(const json& doc) {
  require_object(doc, "config");
  for (const auto& [key, _] : doc.items()) {
    if (!kTopLevelKeys.count(key)) throw ConfigError("config: unknown key '" + key + "'");
  }
  RunConfig cfg;
  cfg.raw = doc;

  if (doc.contains("model")) {
    const auto model = parse_affinity_model(parse_string(doc["model"], "model"));
    if (!model) throw ConfigError("model: expected \"continuous\" or \"discrete\"");
    cfg.scenario.model = *model;
  }
  if (doc.contains("services")) {
    const json& services = doc["services"];
    if (!services.is_array() || services.size() != 2) {
      throw ConfigError("services: expected an array of two {c, e} objects");
    }
    for (int i = 0; i < 2; ++i) {
      const std::string where = "services[" + std::to_string(i) + "]";
      require_object(services[i], where);
      if (!services[i].contains("c") || !services[i].contains("e")) {
        throw ConfigError(where + ": needs both c and e");
      }
      ServiceParams& s = i == 0 ? cfg.scenario.s1 : cfg.scenario.s2;
      s.c = parse_real(services[i]["c"], where + ".c");
      s.e = parse_real(services[i]["e"], where + ".e");
      if (s.c < 0.0 || s.e < 0.0) throw ConfigError(where + ": c and e must be >= 0");
    }
  }
  if (doc.contains("rho")) cfg.scenario.rho = parse_rho(doc["rho"], "rho");

  if (doc.contains("solver")) {
    const json& s = doc["solver"];
    require_object(s, "solver");
    if (s.contains("tol")) cfg.solver.tol = parse_real(s["tol"], "solver.tol");
    if (s.contains("max_iter")) cfg.solver.max_iter = parse_integer(s["max_iter"], "solver.max_iter");
    if (!(cfg.solver.tol > 0.0)) throw ConfigError("solver.tol: must be > 0");
    if (cfg.solver.max_iter < 1) throw ConfigError("solver.max_iter: must be >= 1");
  }
  if (doc.contains("quad")) {
    const json& q = doc["quad"];
    require_object(q, "quad");
    if (q.contains("abs_tol")) cfg.quad.abs_tol = parse_real(q["abs_tol"], "quad.abs_tol");
    if (q.contains("max_subdivisions")) {
      cfg.quad.max_subdivisions =
          static_cast<int>(parse_integer(q["max_subdivisions"], "quad.max_subdivisions"));
    }
    try {
      cfg.quad.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("quad: ") + e.what());
    }
  }

  if (doc.contains("sweep")) {
    const json& s = doc["sweep"];
    require_object(s, "sweep");
    if (s.contains("var")) {
      const auto var = parse_sweep_var(parse_string(s["var"], "sweep.var"));
      if (!var) throw ConfigError("sweep.var: expected one of rho, c1, e1, c2, e2");
      cfg.sweep.var = *var;
    }
    if (s.contains("from")) cfg.sweep.from = parse_real(s["from"], "sweep.from");
    if (s.contains("to")) cfg.sweep.to = parse_real(s["to"], "sweep.to");
    if (s.contains("steps")) cfg.sweep.steps = parse_integer(s["steps"], "sweep.steps");
  }
  if (doc.contains("region")) {
    const json& r = doc["region"];
    require_object(r, "region");
    if (r.contains("model")) {
      const auto model = parse_region_model(parse_string(r["model"], "region.model"));
      if (!model) {
        throw ConfigError(
            "region.model: expected sep_cont, sep_disc, bun_pos, bun_neg, bun_ind or bun_disc");
      }
      cfg.region.model = *model;
    }
    if (r.contains("rho")) cfg.region.rho = parse_rho(r["rho"], "region.rho");
    if (r.contains("c_range")) cfg.region.c_range = parse_range(r["c_range"], "region.c_range");
    if (r.contains("e_range")) cfg.region.e_range = parse_range(r["e_range"], "region.e_range");
    if (r.contains("resolution")) {
      cfg.region.resolution = parse_integer(r["resolution"], "region.resolution");
    }
    if (cfg.region.resolution < 2) throw ConfigError("region.resolution: must be >= 2");
  }
  if (doc.contains("montecarlo")) {
    const json& m = doc["montecarlo"];
    require_object(m, "montecarlo");
    if (m.contains("n")) cfg.montecarlo.n = parse_integer(m["n"], "montecarlo.n");
    if (m.contains("seed")) cfg.montecarlo.seed = parse_seed(m["seed"], "montecarlo.seed");
    if (m.contains("mode")) {
      const auto mode = parse_sim_mode(parse_string(m["mode"], "montecarlo.mode"));
      if (!mode) throw ConfigError("montecarlo.mode: expected separate_1, separate_2 or bundle");
      cfg.montecarlo.mode = *mode;
    }
    if (m.contains("max_rounds")) {
      cfg.montecarlo.max_rounds = parse_integer(m["max_rounds"], "montecarlo.max_rounds");
    }
    if (cfg.montecarlo.n < 1) throw ConfigError("montecarlo.n: must be >= 1");
    if (cfg.montecarlo.max_rounds < 1) throw ConfigError("montecarlo.max_rounds: must be >= 1");
  }
  if (doc.contains("table")) {
    const json& t = doc["table"];
    require_object(t, "table");
    if (t.contains("model")) {
      const auto model = parse_table_model(parse_string(t["model"], "table.model"));
      if (!model) throw ConfigError("table.model: expected pos_corr, neg_corr or discrete");
      cfg.table.model = *model;
    }
    if (t.contains("rho") && !t["rho"].is_null()) cfg.table.rho = parse_rho(t["rho"], "table.rho");
    if (t.contains("samples")) cfg.table.samples = parse_integer(t["samples"], "table.samples");
    if (t.contains("seed")) cfg.table.seed = parse_seed(t["seed"], "table.seed");
    if (cfg.table.samples < 1) throw ConfigError("table.samples: must be >= 1");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return parse_config(doc);
}

}  // namespace bundling::cli
