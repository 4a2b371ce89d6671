// Copyright 2026 The collide1d Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// collide1d run <config-file | preset:NAME> [--jobs K] [--strict] [--out DIR]
// collide1d presets list | presets show NAME
// collide1d check [--only ID...]
//
// Exit codes: 0 success, 1 usage or configuration error, 2 validity or
// capacity guard failure, 3 failed check threshold.

#include "collide1d/acceptance.hpp"
#include "collide1d/config.hpp"
#include "collide1d/scenario.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitGuard = 2;
constexpr int kExitCheck = 3;

std::string read_source(const std::string& source) {
  constexpr std::string_view prefix = "preset:";
  if (source.rfind(prefix, 0) == 0) {
    const auto name = source.substr(prefix.size());
    const auto* p = collide1d::find_preset(name);
    if (!p) throw std::invalid_argument("unknown preset `" + name + "`");
    return p->text;
  }
  std::ifstream f(source, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot read config file `" + source + "`");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

int run_command(const std::string& source, std::size_t jobs, bool strict, std::string out_dir) {
  using namespace collide1d;
  ScenarioConfig config;
  try {
    config = parse_config(read_source(source));
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  if (out_dir.empty()) {
    const char* env = std::getenv("COLLIDE1D_OUT");
    out_dir = env && *env ? env : ".";
  }
  try {
    const ScenarioResult result = run_scenario(config, RunOptions{jobs, strict});
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    const auto files = write_outputs(result, out_dir);
    std::cout << "wrote " << files.csv.string() << " (" << result.table.rows.size() << " rows)\n";
    std::cout << "wrote " << files.manifest.string() << "\n";
    for (const auto& [k, v] : result.metrics) std::cout << k << " = " << v << "\n";
    for (const auto& c : result.checks) {
      std::cout << "check " << c.name << ": " << (c.passed ? "PASS" : "FAIL") << " (value "
                << format_double(c.value) << ", threshold " << format_double(c.threshold) << "; "
                << c.detail << ")\n";
    }
    return result.checks_passed() ? 0 : kExitCheck;
  } catch (const ValidityError& e) {
    std::cerr << "error: validity guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const CapacityError& e) {
    std::cerr << "error: capacity guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"collision-model simulator for a qubit coupled to a waveguide"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a scenario from a config file or preset:NAME");
  std::string source, out_dir;
  std::size_t jobs = 1;
  bool strict = false;
  run->add_option("config", source, "config file path or preset:NAME")->required();
  run->add_option("--jobs,-j", jobs, "worker threads for multi-run scenarios")
      ->check(CLI::PositiveNumber);
  run->add_flag("--strict", strict, "turn validity warnings into errors");
  run->add_option("--out,-o", out_dir, "output directory (default: $COLLIDE1D_OUT or .)");

  auto* pre = app.add_subcommand("presets", "list or show the shipped presets");
  pre->require_subcommand(1);
  auto* list = pre->add_subcommand("list", "list preset names");
  auto* show = pre->add_subcommand("show", "print a preset's config text");
  std::string preset_name;
  show->add_option("name", preset_name)->required();

  auto* check = app.add_subcommand("check", "run the acceptance suite");
  std::vector<int> only;
  check->add_option("--only", only, "criterion ids to run")->delimiter(',')->check(CLI::Range(1, 99));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*run) return run_command(source, jobs, strict, out_dir);
  if (*list) {
    for (const auto& p : collide1d::presets()) std::cout << p.name << "\t" << p.description << "\n";
    return 0;
  }
  if (*show) {
    const auto* p = collide1d::find_preset(preset_name);
    if (!p) {
      std::cerr << "error: unknown preset `" << preset_name << "`\n";
      return kExitConfig;
    }
    std::cout << p->text;
    return 0;
  }
  if (*check) {
    for (int id : only) {
      if (id > collide1d::acceptance_count()) {
        std::cerr << "error: no criterion " << id << "\n";
        return kExitConfig;
      }
    }
    bool ok = true;
    for (int id = 1; id <= collide1d::acceptance_count(); ++id) {
      if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
      const auto r = collide1d::run_criterion(id);
      std::cout << collide1d::summary_line(r) << std::endl;
      ok = ok && r.passed;
    }
    return ok ? 0 : kExitCheck;
  }
  return kExitConfig;
}
