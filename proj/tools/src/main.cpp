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

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "bundling_cli/commands.hpp"

namespace {

using bundling::cli::Format;
using bundling::cli::Overrides;
using bundling::cli::RunConfig;

using Command = std::function<int(const RunConfig&, const Overrides&, std::ostream&)>;

struct CommonFlags {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  long steps = 0;
  std::string format;
};

void add_common(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("--config", flags.config, "JSON config file")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", flags.out, "output file (default: stdout)");
  sub->add_option("--seed", flags.seed, "override the config seed");
  sub->add_option("--steps", flags.steps, "override grid steps / resolution / samples")
      ->check(CLI::PositiveNumber);
  sub->add_option("--format", flags.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

int run(const Command& command, CLI::App* sub, const CommonFlags& flags) {
  Overrides ov;
  if (sub->count("--seed") > 0) ov.seed = flags.seed;
  if (sub->count("--steps") > 0) ov.steps = flags.steps;
  if (!flags.format.empty()) ov.format = flags.format == "json" ? Format::kJson : Format::kCsv;
  try {
    const RunConfig cfg = bundling::cli::load_config(flags.config);
    if (flags.out.empty()) return command(cfg, ov, std::cout);
    std::ofstream file(flags.out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write '" << flags.out << "'\n";
      return bundling::cli::kExitConfig;
    }
    return command(cfg, ov, file);
  } catch (const bundling::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return bundling::cli::kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return bundling::cli::kExitConfig;
  } catch (const bundling::ToleranceError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return bundling::cli::kExitTolerance;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adoption equilibria of bundled services with network externalities"};
  app.require_subcommand(1);

  const std::map<std::string, std::pair<std::string, Command>> commands = {
      {"analyze", {"separate vs. bundled equilibria of one scenario", bundling::cli::cmd_analyze}},
      {"sweep", {"scenario outcomes along a parameter grid", bundling::cli::cmd_sweep}},
      {"region-map", {"lseq class over a (c, e) grid", bundling::cli::cmd_region_map}},
      {"montecarlo", {"agent-based simulation of the adoption dynamics",
                      bundling::cli::cmd_montecarlo}},
      {"table", {"rebuild and check an outcome feasibility table", bundling::cli::cmd_table}},
  };
  std::map<std::string, CommonFlags> flags;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, entry] : commands) {
    subs[name] = app.add_subcommand(name, entry.first);
    add_common(subs[name], flags[name]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : bundling::cli::kExitConfig;
  }
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) return run(commands.at(name).second, sub, flags[name]);
  }
  return bundling::cli::kExitConfig;
}
