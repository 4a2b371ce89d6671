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

// Flat `key = value` scenario configuration. Lines starting with '#' and
// text after an unquoted '#' are comments.

#pragma once

#include "collide1d/core.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace collide1d {

enum class Scenario { spont, coherent, single_photon, oracle_compare, io_check, convergence };
enum class Solver { dense, sectors, recursion, analytic };
enum class WavepacketKind { exponential, gaussian };

const char* to_string(Scenario s) noexcept;
const char* to_string(Solver s) noexcept;
const char* to_string(WavepacketKind k) noexcept;

struct WavepacketSpec {
  WavepacketKind kind = WavepacketKind::exponential;
  double decay = 1.0;  // exponential rate
  double sigma = 1.0;  // gaussian intensity width
  double t0 = 5.0;     // gaussian peak
  std::optional<double> omega;  // carrier; defaults to omega_q
};

struct ScenarioConfig {
  Scenario scenario = Scenario::spont;
  Solver solver = Solver::analytic;
  SimulationParams params;
  std::size_t m_max = 2;
  QubitLabel qubit = QubitLabel::e;
  std::optional<WavepacketSpec> wavepacket;
  std::string output;  // CSV path; empty means <scenario>-<solver>.csv
  std::size_t stride = 1;
  std::size_t refinements = 3;
  bool strict = false;

  std::string default_output() const;
};

struct ConfigIssue {
  std::size_t line = 0;  // 0 when not tied to a line
  std::string key;
  std::string message;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// Scenario/solver pairs that run_scenario accepts.
bool solver_supported(Scenario scenario, Solver solver);

/// Parses and validates; throws ConfigError listing every problem found.
ScenarioConfig parse_config(std::string_view text);

/// Canonical text form; parse_config(to_text(c)) reproduces c.
std::string to_text(const ScenarioConfig& config);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);
/// 17 significant digits.
std::string format_fixed17(double value);

}  // namespace collide1d
