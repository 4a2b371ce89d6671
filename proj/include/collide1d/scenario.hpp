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

// Scenario execution and the CSV + manifest writers behind `collide1d run`.

#pragma once

#include "collide1d/config.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace collide1d {

struct ResultRow {
  double t = 0.0;
  double p_e = 0.0;
  Complex coherence{};
  std::optional<double> entropy_bits;
  double norm = 1.0;
  std::optional<double> photon_flux;
  std::optional<double> io_residual;
};

inline constexpr const char* kCsvHeader =
    "t,p_e,re_coh,im_coh,entropy_bits,norm,photon_flux,io_residual";

struct ResultTable {
  std::vector<ResultRow> rows;

  /// Header plus one line per row; 17 significant digits, empty fields for
  /// absent values.
  std::string to_csv() const;
};

struct CheckOutcome {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string detail;
};

struct ScenarioResult {
  ScenarioConfig config;
  ResultTable table;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, std::string>> metrics;
  std::vector<CheckOutcome> checks;

  /// max over rows of |1 - norm|.
  double norm_deficit() const;
  bool checks_passed() const;
};

struct RunOptions {
  std::size_t jobs = 1;  // worker threads for multi-run scenarios
  bool strict = false;   // forces GuardPolicy::strict regardless of config
};

/// Throws ValidityError / CapacityError on guard failures and
/// std::invalid_argument on inputs the solvers reject.
ScenarioResult run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// Flat `key = value` sidecar: config echo, version, norm deficit, metrics,
/// checks and warnings. Contains no timestamps.
std::string manifest_text(const ScenarioResult& result);

struct WrittenFiles {
  std::filesystem::path csv;
  std::filesystem::path manifest;
};
/// Writes the CSV (config.output or the default name, relative to out_dir)
/// and `<csv>.manifest` next to it.
WrittenFiles write_outputs(const ScenarioResult& result, const std::filesystem::path& out_dir);

struct Preset {
  std::string name;
  std::string description;
  std::string text;  // config file contents
};
const std::vector<Preset>& presets();
const Preset* find_preset(std::string_view name);

const char* version_string() noexcept;

}  // namespace collide1d
