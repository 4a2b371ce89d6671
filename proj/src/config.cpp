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

#include "collide1d/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cmath>
#include <map>
#include <sstream>

namespace collide1d {

const char* to_string(Scenario s) noexcept {
  switch (s) {
    case Scenario::spont: return "spont";
    case Scenario::coherent: return "coherent";
    case Scenario::single_photon: return "single-photon";
    case Scenario::oracle_compare: return "oracle-compare";
    case Scenario::io_check: return "io-check";
    case Scenario::convergence: return "convergence";
  }
  return "?";
}

const char* to_string(Solver s) noexcept {
  switch (s) {
    case Solver::dense: return "dense";
    case Solver::sectors: return "sectors";
    case Solver::recursion: return "recursion";
    case Solver::analytic: return "analytic";
  }
  return "?";
}

const char* to_string(WavepacketKind k) noexcept {
  return k == WavepacketKind::exponential ? "exponential" : "gaussian";
}

std::string ScenarioConfig::default_output() const {
  return std::string(to_string(scenario)) + "-" + to_string(solver) + ".csv";
}

namespace {

std::string describe(const std::vector<ConfigIssue>& issues) {
  std::ostringstream os;
  os << "invalid configuration (" << issues.size() << " issue" << (issues.size() == 1 ? "" : "s")
     << ")";
  for (const auto& i : issues) {
    os << "\n  ";
    if (i.line > 0) os << "line " << i.line << ": ";
    if (!i.key.empty()) os << i.key << ": ";
    os << i.message;
  }
  return os.str();
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class E>
std::optional<E> lookup(std::string_view v, std::initializer_list<std::pair<const char*, E>> table) {
  for (const auto& [name, value] : table) {
    if (v == name) return value;
  }
  return std::nullopt;
}

std::optional<double> parse_double(std::string_view v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) return std::nullopt;
  return out;
}

std::optional<std::size_t> parse_count(std::string_view v) {
  std::size_t out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return out;
}

std::optional<bool> parse_bool(std::string_view v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  return std::nullopt;
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::runtime_error(describe(issues)), issues_(std::move(issues)) {}

bool solver_supported(Scenario scenario, Solver solver) {
  switch (scenario) {
    case Scenario::spont: return true;
    case Scenario::coherent: return solver != Solver::recursion;
    case Scenario::single_photon: return solver != Solver::sectors;
    case Scenario::oracle_compare:
    case Scenario::io_check: return solver == Solver::dense;
    case Scenario::convergence: return solver != Solver::analytic;
  }
  return false;
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig c;
  std::vector<ConfigIssue> issues;
  std::map<std::string, std::size_t> seen;
  WavepacketSpec wp;
  bool any_wavepacket = false;
  std::map<std::string, std::size_t> wp_keys;

  auto issue = [&](std::size_t line, std::string key, std::string msg) {
    issues.push_back({line, std::move(key), std::move(msg)});
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      issue(line_no, "", "expected `key = value`");
      continue;
    }
    const std::string key(trim(line.substr(0, eq)));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) {
      issue(line_no, "", "missing key");
      continue;
    }
    if (auto [it, fresh] = seen.emplace(key, line_no); !fresh) {
      issue(line_no, key, "duplicate key (first set on line " + std::to_string(it->second) + ")");
      continue;
    }
    if (value.empty()) {
      issue(line_no, key, "missing value");
      continue;
    }

    auto number = [&](auto assign) {
      if (auto v = parse_double(value)) {
        assign(*v);
      } else {
        issue(line_no, key, "expected a number, got `" + std::string(value) + "`");
      }
    };
    auto count = [&](auto assign) {
      if (auto v = parse_count(value)) {
        assign(*v);
      } else {
        issue(line_no, key, "expected a non-negative integer, got `" + std::string(value) + "`");
      }
    };

    if (key == "scenario") {
      auto s = lookup<Scenario>(value, {{"spont", Scenario::spont},
                                        {"coherent", Scenario::coherent},
                                        {"single-photon", Scenario::single_photon},
                                        {"oracle-compare", Scenario::oracle_compare},
                                        {"io-check", Scenario::io_check},
                                        {"convergence", Scenario::convergence}});
      if (s) c.scenario = *s; else issue(line_no, key, "unknown scenario `" + std::string(value) + "`");
    } else if (key == "solver") {
      auto s = lookup<Solver>(value, {{"dense", Solver::dense},
                                      {"sectors", Solver::sectors},
                                      {"recursion", Solver::recursion},
                                      {"analytic", Solver::analytic}});
      if (s) c.solver = *s; else issue(line_no, key, "unknown solver `" + std::string(value) + "`");
    } else if (key == "gamma") {
      number([&](double v) {
        if (v > 0.0) c.params.gamma = v; else issue(line_no, key, "must be > 0");
      });
    } else if (key == "omega_q") {
      number([&](double v) {
        if (v >= 0.0) c.params.omega_q = v; else issue(line_no, key, "must be >= 0");
      });
    } else if (key == "delta") {
      number([&](double v) { c.params.delta = v; });
    } else if (key == "omega_rabi") {
      number([&](double v) {
        if (v >= 0.0) c.params.omega_rabi = v; else issue(line_no, key, "must be >= 0");
      });
    } else if (key == "dt") {
      number([&](double v) {
        if (v > 0.0) c.params.dt = v; else issue(line_no, key, "must be > 0");
      });
    } else if (key == "n_steps") {
      count([&](std::size_t v) {
        if (v >= 1) c.params.n_steps = v; else issue(line_no, key, "must be >= 1");
      });
    } else if (key == "fock_dim") {
      count([&](std::size_t v) {
        if (v >= 2 && v <= 16) c.params.fock_dim = static_cast<int>(v);
        else issue(line_no, key, "must be in [2, 16]");
      });
    } else if (key == "m_max") {
      count([&](std::size_t v) { c.m_max = v; });
    } else if (key == "qubit") {
      auto q = lookup<QubitLabel>(value, {{"g", QubitLabel::g}, {"e", QubitLabel::e}});
      if (q) c.qubit = *q; else issue(line_no, key, "expected `g` or `e`");
    } else if (key == "wavepacket") {
      auto k = lookup<WavepacketKind>(value, {{"exponential", WavepacketKind::exponential},
                                              {"gaussian", WavepacketKind::gaussian}});
      if (k) wp.kind = *k; else issue(line_no, key, "expected `exponential` or `gaussian`");
      any_wavepacket = true;
    } else if (key == "wavepacket_gamma") {
      wp_keys[key] = line_no;
      number([&](double v) {
        if (v > 0.0) wp.decay = v; else issue(line_no, key, "must be > 0");
      });
    } else if (key == "wavepacket_sigma") {
      wp_keys[key] = line_no;
      number([&](double v) {
        if (v > 0.0) wp.sigma = v; else issue(line_no, key, "must be > 0");
      });
    } else if (key == "wavepacket_t0") {
      wp_keys[key] = line_no;
      number([&](double v) { wp.t0 = v; });
    } else if (key == "wavepacket_omega") {
      wp_keys[key] = line_no;
      number([&](double v) { wp.omega = v; });
    } else if (key == "output") {
      c.output = std::string(value);
    } else if (key == "stride") {
      count([&](std::size_t v) {
        if (v >= 1) c.stride = v; else issue(line_no, key, "must be >= 1");
      });
    } else if (key == "refinements") {
      count([&](std::size_t v) {
        if (v >= 2 && v <= 8) c.refinements = v; else issue(line_no, key, "must be in [2, 8]");
      });
    } else if (key == "strict") {
      if (auto b = parse_bool(value)) c.strict = *b; else issue(line_no, key, "expected true/false");
    } else {
      issue(line_no, key, "unknown key");
    }
  }

  auto line_of = [&](const char* key) -> std::size_t {
    auto it = seen.find(key);
    return it == seen.end() ? 0 : it->second;
  };

  if (!solver_supported(c.scenario, c.solver)) {
    issue(line_of("solver"), "solver",
          std::string("solver `") + to_string(c.solver) + "` is not available for scenario `" +
              to_string(c.scenario) + "`");
  }
  if (any_wavepacket) {
    c.wavepacket = wp;
  } else {
    for (const auto& [k, l] : wp_keys) issue(l, k, "set without `wavepacket`");
  }
  if (c.scenario == Scenario::single_photon) {
    if (!c.wavepacket) issue(0, "wavepacket", "required for scenario `single-photon`");
    if (seen.count("qubit") && c.qubit != QubitLabel::g) {
      issue(line_of("qubit"), "qubit", "scenario `single-photon` starts from `g`");
    }
    c.qubit = QubitLabel::g;
  } else if (c.wavepacket) {
    issue(line_of("wavepacket"), "wavepacket",
          std::string("not used by scenario `") + to_string(c.scenario) + "`");
  }
  if (c.scenario == Scenario::spont) {
    if (seen.count("qubit") && c.qubit != QubitLabel::e) {
      issue(line_of("qubit"), "qubit", "scenario `spont` starts from `e`");
    }
    if (c.params.omega_rabi != 0.0) {
      issue(line_of("omega_rabi"), "omega_rabi", "scenario `spont` has no drive; must be 0");
    }
    c.qubit = QubitLabel::e;
  }
  if (c.scenario == Scenario::convergence && c.solver == Solver::recursion &&
      (c.params.omega_rabi != 0.0 || c.qubit != QubitLabel::e)) {
    issue(line_of("solver"), "solver",
          "`recursion` convergence runs need the undriven decay (qubit = e, omega_rabi = 0)");
  }
  if (c.solver == Solver::analytic && c.scenario == Scenario::coherent && c.m_max > 3) {
    issue(line_of("m_max"), "m_max", "analytic assembly supports m_max <= 3");
  }
  if (c.scenario == Scenario::convergence && c.params.n_steps % (std::size_t{1} << (c.refinements - 1)) != 0) {
    issue(line_of("n_steps"), "n_steps",
          "must be divisible by 2^(refinements - 1) for convergence runs");
  }
  if (c.scenario == Scenario::oracle_compare && c.params.n_steps % 4 != 0) {
    issue(line_of("n_steps"), "n_steps", "must be divisible by 4 for oracle-compare");
  }

  if (!issues.empty()) {
    std::stable_sort(issues.begin(), issues.end(), [](const ConfigIssue& a, const ConfigIssue& b) {
      const auto la = a.line == 0 ? SIZE_MAX : a.line;
      const auto lb = b.line == 0 ? SIZE_MAX : b.line;
      return la < lb;
    });
    throw ConfigError(std::move(issues));
  }
  return c;
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_fixed17(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string to_text(const ScenarioConfig& c) {
  std::ostringstream os;
  os << "scenario = " << to_string(c.scenario) << "\n"
     << "solver = " << to_string(c.solver) << "\n"
     << "gamma = " << format_double(c.params.gamma) << "\n"
     << "omega_q = " << format_double(c.params.omega_q) << "\n"
     << "delta = " << format_double(c.params.delta) << "\n"
     << "omega_rabi = " << format_double(c.params.omega_rabi) << "\n"
     << "dt = " << format_double(c.params.dt) << "\n"
     << "n_steps = " << c.params.n_steps << "\n"
     << "fock_dim = " << c.params.fock_dim << "\n"
     << "m_max = " << c.m_max << "\n"
     << "qubit = " << (c.qubit == QubitLabel::g ? "g" : "e") << "\n";
  if (c.wavepacket) {
    const auto& w = *c.wavepacket;
    os << "wavepacket = " << to_string(w.kind) << "\n";
    if (w.kind == WavepacketKind::exponential) {
      os << "wavepacket_gamma = " << format_double(w.decay) << "\n";
    } else {
      os << "wavepacket_sigma = " << format_double(w.sigma) << "\n"
         << "wavepacket_t0 = " << format_double(w.t0) << "\n";
    }
    if (w.omega) os << "wavepacket_omega = " << format_double(*w.omega) << "\n";
  }
  if (!c.output.empty()) os << "output = " << c.output << "\n";
  os << "stride = " << c.stride << "\n";
  if (c.scenario == Scenario::convergence) os << "refinements = " << c.refinements << "\n";
  os << "strict = " << (c.strict ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace collide1d
