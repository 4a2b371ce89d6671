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

#include "collide1d/scenario.hpp"

#include "collide1d/analytic.hpp"
#include "collide1d/collision.hpp"
#include "collide1d/obe.hpp"
#include "collide1d/observables.hpp"
#include "collide1d/sectors.hpp"
#include "collide1d/single_excitation.hpp"
#include "collide1d/tuples.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace collide1d {

const char* version_string() noexcept { return "1.0.0"; }

std::string ResultTable::to_csv() const {
  std::string out = kCsvHeader;
  out += '\n';
  auto field = [&](const std::optional<double>& v) {
    out += ',';
    if (v) out += format_fixed17(*v);
  };
  for (const auto& r : rows) {
    out += format_fixed17(r.t);
    field(r.p_e);
    field(r.coherence.real());
    field(r.coherence.imag());
    field(r.entropy_bits);
    field(r.norm);
    field(r.photon_flux);
    field(r.io_residual);
    out += '\n';
  }
  return out;
}

double ScenarioResult::norm_deficit() const {
  double worst = 0.0;
  for (const auto& r : table.rows) worst = std::max(worst, std::abs(1.0 - r.norm));
  return worst;
}

bool ScenarioResult::checks_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.passed; });
}

namespace {

ResultRow make_row(double t, const QubitDensityMatrix& rho, std::optional<double> flux = {},
                   std::optional<double> io = {}) {
  ResultRow r;
  r.t = t;
  r.p_e = rho.p_e();
  r.coherence = rho.coherence();
  r.norm = rho.trace();
  if (entropy_defined(rho)) r.entropy_bits = entanglement_entropy(rho);
  r.photon_flux = flux;
  r.io_residual = io;
  return r;
}

std::optional<double> nan_to_empty(double v) {
  if (std::isnan(v)) return std::nullopt;
  return v;
}

bool on_stride(std::size_t n, const ScenarioConfig& c) {
  return n % c.stride == 0 || n == c.params.n_steps;
}

GuardPolicy policy_of(const ScenarioConfig& c, const RunOptions& o) {
  return (c.strict || o.strict) ? GuardPolicy::strict : GuardPolicy::warn;
}

QubitState initial_qubit(const ScenarioConfig& c) { return basis_state(c.qubit); }

Frame dense_frame(const ScenarioConfig& c) {
  return c.scenario == Scenario::spont || c.scenario == Scenario::single_photon
             ? Frame::lab
             : Frame::displaced;
}

Wavepacket build_wavepacket(const ScenarioConfig& c) {
  const auto& w = *c.wavepacket;
  const double omega = w.omega.value_or(c.params.omega_q);
  const TimeGrid grid = c.params.grid();
  return w.kind == WavepacketKind::exponential
             ? make_exponential_wavepacket(w.decay, omega, grid)
             : make_gaussian_wavepacket(w.sigma, w.t0, omega, grid);
}

// Dense run with rows built on the fly. The input-output residual of step n
// needs <a_{n-1}> and <sigma_minus> from the state before collision n-1, so
// those two numbers are carried between observer calls.
struct DenseRows {
  ResultTable table;
  std::vector<std::string> warnings;
  double max_io = 0.0;
  DenseJointState final_state{1, 2};
};

DenseRows dense_rows(const ScenarioConfig& c, DenseJointState initial, Frame frame,
                     GuardPolicy policy) {
  const SimulationParams& p = c.params;
  const double w = frame == Frame::lab ? p.omega_q : p.omega_p();
  const double root_dt = std::sqrt(p.dt);
  DenseRows out;
  Complex a_in{}, sigma{};
  auto observer = [&](std::size_t n, const DenseJointState& s) {
    std::optional<double> flux, io;
    if (n > 0) {
      flux = mode_occupation(s, n - 1) / p.dt;
      const Complex a_out = mode_amplitude(s, n - 1) / root_dt;
      const double r = std::abs(a_out - a_in + std::sqrt(p.gamma) * sigma);
      out.max_io = std::max(out.max_io, r);
      io = r;
    }
    if (n < p.n_steps) {
      a_in = mode_amplitude(s, n) / root_dt;
      sigma = sigma_minus_expectation(s) * std::polar(1.0, -w * p.dt * static_cast<double>(n));
    }
    if (on_stride(n, c)) out.table.rows.push_back(make_row(p.grid().time(n), reduced_qubit(s), flux, io));
  };
  auto traj = run_dense(p, std::move(initial), frame, {p.n_steps}, policy, observer);
  out.warnings = traj.warnings;
  out.final_state = std::move(traj.states.back());
  return out;
}

ResultTable reduced_rows(const ScenarioConfig& c, const SectorReducedTrajectory& t) {
  ResultTable table;
  for (std::size_t n = 0; n <= c.params.n_steps; ++n) {
    if (!on_stride(n, c)) continue;
    table.rows.push_back(make_row(t.grid.time(n), reduced_qubit(t.qubit[n]), nan_to_empty(t.flux[n])));
  }
  return table;
}

ResultTable single_photon_rows(const Trajectory<SinglePhotonState>& t) {
  ResultTable table;
  for (const auto& s : t.states) {
    std::optional<double> flux;
    if (s.step > 0) flux = std::norm(s.photon[s.step - 1]) / s.grid.dt();
    table.rows.push_back(make_row(s.grid.time(s.step), reduced_qubit(s), flux));
  }
  return table;
}

std::vector<std::size_t> row_steps(const ScenarioConfig& c) {
  return snapshot_steps(c.params.n_steps, c.stride);
}

void append_metric(ScenarioResult& r, const std::string& key, double v) {
  r.metrics.emplace_back(key, format_fixed17(v));
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Results are stored
// by index by the caller, so the merge order does not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (std::size_t j = 0; j < jobs; ++j) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

void run_spont_or_coherent(const ScenarioConfig& c, GuardPolicy policy, ScenarioResult& out) {
  const SimulationParams& p = c.params;
  switch (c.solver) {
    case Solver::dense: {
      auto d = dense_rows(c, DenseJointState::product(initial_qubit(c), p.n_steps, p.fock_dim),
                          dense_frame(c), policy);
      out.table = std::move(d.table);
      out.warnings = std::move(d.warnings);
      append_metric(out, "max_io_residual", d.max_io);
      break;
    }
    case Solver::sectors: {
      auto t = run_sector_reduced(p, c.m_max, initial_qubit(c), policy);
      out.warnings = t.warnings;
      out.table = reduced_rows(c, t);
      break;
    }
    case Solver::recursion: {
      auto run = run_single_excitation(p, excited_vacuum(p.grid(), p.n_steps), row_steps(c), policy);
      out.warnings = run.trajectory.warnings;
      out.table = single_photon_rows(run.trajectory);
      break;
    }
    case Solver::analytic: {
      out.warnings = validity_warnings(p, Frame::displaced);
      if (c.scenario == Scenario::spont) {
        const TimeGrid grid = p.grid();
        for (auto n : row_steps(c)) {
          const auto s = spontaneous_emission_state(grid.time(n), p);
          std::optional<double> flux;
          if (n > 0) flux = std::norm(s.photon[n - 1]) / p.dt;
          out.table.rows.push_back(make_row(grid.time(n), reduced_qubit(s), flux));
        }
      } else {
        out.table = reduced_rows(c, coherent_reduced(p, c.m_max, initial_qubit(c)));
      }
      break;
    }
  }
}

void run_single_photon(const ScenarioConfig& c, GuardPolicy policy, ScenarioResult& out) {
  const SimulationParams& p = c.params;
  const Wavepacket wp = build_wavepacket(c);
  append_metric(out, "wavepacket_applied_scale", wp.applied_scale());
  switch (c.solver) {
    case Solver::recursion: {
      auto run = run_single_excitation(p, wp, row_steps(c), policy);
      out.warnings = run.trajectory.warnings;
      out.table = single_photon_rows(run.trajectory);
      break;
    }
    case Solver::analytic: {
      out.warnings = validity_warnings(p, Frame::lab);
      Trajectory<SinglePhotonState> t;
      for (auto n : row_steps(c)) t.states.push_back(single_photon_state(wp, p.grid().time(n), p));
      out.table = single_photon_rows(t);
      break;
    }
    case Solver::dense: {
      auto d = dense_rows(c, DenseJointState::single_photon(wp, p.fock_dim), Frame::lab, policy);
      out.table = std::move(d.table);
      out.warnings = std::move(d.warnings);
      break;
    }
    case Solver::sectors:
      throw std::invalid_argument("single-photon scenario has no sector solver");
  }
}

// Dense displaced runs at (4 dt, N/4), (2 dt, N/2), (dt, N) against the
// analytic coefficients at the common final time. The error is the largest
// difference of amplitude densities (amplitude / dt^{m/2}) over all tuples
// with at most min(m_max, 3) photons.
void run_oracle_compare(const ScenarioConfig& c, const RunOptions& o, ScenarioResult& out) {
  const GuardPolicy policy = policy_of(c, o);
  const std::size_t m_cmp = std::min<std::size_t>(c.m_max, 3);
  std::vector<double> dts(3), errors(3);
  std::vector<DenseRows> runs(3);
  parallel_for(3, o.jobs, [&](std::size_t i) {
    const std::size_t factor = std::size_t{4} >> i;  // 4, 2, 1
    ScenarioConfig ci = c;
    ci.params.dt = c.params.dt * static_cast<double>(factor);
    ci.params.n_steps = c.params.n_steps / factor;
    ci.stride = std::max<std::size_t>(1, c.stride / factor);
    const SimulationParams& p = ci.params;
    runs[i] = dense_rows(ci, DenseJointState::product(initial_qubit(c), p.n_steps, p.fock_dim),
                         Frame::displaced, policy);
    const CoherentCoefficients coeffs(p, initial_qubit(c));
    const DenseJointState& s = runs[i].final_state;
    double err = 0.0;
    std::vector<int> occ(p.n_steps);
    for (std::size_t m = 0; m <= std::min(m_cmp, p.n_steps); ++m) {
      const double scale = std::pow(p.dt, -0.5 * static_cast<double>(m));
      tuples::for_each(m, p.n_steps, [&](std::span<const std::size_t> t, std::size_t) {
        std::fill(occ.begin(), occ.end(), 0);
        for (auto n : t) occ[n] = 1;
        const QubitState a = coeffs.amplitude(p.n_steps, t);
        const QubitState d(s.at(QubitLabel::g, occ), s.at(QubitLabel::e, occ));
        err = std::max(err, (a - d).cwiseAbs().maxCoeff() * scale);
      });
    }
    dts[i] = p.dt;
    errors[i] = err;
  });
  for (std::size_t i = 0; i < 3; ++i) {
    append_metric(out, "dt." + std::to_string(i), dts[i]);
    append_metric(out, "max_amplitude_error." + std::to_string(i), errors[i]);
  }
  for (auto& r : runs) out.warnings.insert(out.warnings.end(), r.warnings.begin(), r.warnings.end());
  out.table = std::move(runs[2].table);
  const auto fit = fit_power_law(dts, errors);
  append_metric(out, "fit_exponent", fit.exponent);
  append_metric(out, "fit_prefactor", fit.prefactor);
  out.checks.push_back({"first_order_exponent", fit.exponent, 0.8,
                        fit.exponent >= 0.8, "fitted exponent must be >= 0.8"});
}

void run_io_check(const ScenarioConfig& c, const RunOptions& o, ScenarioResult& out) {
  const SimulationParams& p = c.params;
  auto d = dense_rows(c, DenseJointState::product(initial_qubit(c), p.n_steps, p.fock_dim),
                      Frame::displaced, policy_of(c, o));
  out.table = std::move(d.table);
  out.warnings = std::move(d.warnings);
  append_metric(out, "max_io_residual", d.max_io);
  out.checks.push_back({"io_residual_max", d.max_io, 5.0 * p.dt, d.max_io <= 5.0 * p.dt,
                        "max residual must be <= 5 dt"});
}

// P_e(T) at dt * 2^k for k = 0..refinements-1, against exp(-gamma T) for the
// undriven decay and the Bloch equations otherwise.
void run_convergence(const ScenarioConfig& c, const RunOptions& o, ScenarioResult& out) {
  const GuardPolicy policy = policy_of(c, o);
  const std::size_t k_max = c.refinements;
  const double t_final = c.params.grid().duration();
  const bool decay_only = c.params.omega_rabi == 0.0 && c.qubit == QubitLabel::e;
  double reference = 0.0;
  if (decay_only) {
    reference = std::exp(-c.params.gamma * t_final);
  } else {
    reference = obe_integrate(c.params, t_final, initial_qubit(c)).p_e(c.params.n_steps);
  }
  std::vector<double> dts(k_max), errors(k_max);
  std::vector<ScenarioResult> parts(k_max);
  parallel_for(k_max, o.jobs, [&](std::size_t k) {
    ScenarioConfig ck = c;
    const std::size_t factor = std::size_t{1} << k;
    ck.params.dt = c.params.dt * static_cast<double>(factor);
    ck.params.n_steps = c.params.n_steps / factor;
    ck.stride = std::max<std::size_t>(1, c.stride / factor);
    ck.scenario = decay_only ? Scenario::spont : Scenario::coherent;
    run_spont_or_coherent(ck, policy, parts[k]);
    dts[k] = ck.params.dt;
    errors[k] = std::abs(parts[k].table.rows.back().p_e - reference);
  });
  append_metric(out, "reference_p_e", reference);
  for (std::size_t k = 0; k < k_max; ++k) {
    append_metric(out, "dt." + std::to_string(k), dts[k]);
    append_metric(out, "p_e_error." + std::to_string(k), errors[k]);
    out.warnings.insert(out.warnings.end(), parts[k].warnings.begin(), parts[k].warnings.end());
  }
  out.table = std::move(parts[0].table);
  // The effective map reproduces exp(-gamma t) exactly; a power law fitted
  // to rounding noise says nothing, so report exact agreement instead.
  const double worst = *std::max_element(errors.begin(), errors.end());
  if (worst <= 1e-12) {
    out.checks.push_back({"exact_agreement", worst, 1e-12, true,
                          "errors at rounding level on every grid"});
    return;
  }
  const auto fit = fit_power_law(dts, errors);
  append_metric(out, "fit_exponent", fit.exponent);
  append_metric(out, "fit_prefactor", fit.prefactor);
  out.checks.push_back({"first_order_exponent", fit.exponent, 0.15,
                        std::abs(fit.exponent - 1.0) <= 0.15, "|exponent - 1| must be <= 0.15"});
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  if (!solver_supported(config.scenario, config.solver)) {
    throw std::invalid_argument(std::string("solver `") + to_string(config.solver) +
                                "` is not available for scenario `" + to_string(config.scenario) +
                                "`");
  }
  ScenarioResult out;
  out.config = config;
  const GuardPolicy policy = policy_of(config, options);
  check_validity(config.params, dense_frame(config), policy);
  switch (config.scenario) {
    case Scenario::spont:
    case Scenario::coherent: run_spont_or_coherent(config, policy, out); break;
    case Scenario::single_photon: run_single_photon(config, policy, out); break;
    case Scenario::oracle_compare: run_oracle_compare(config, options, out); break;
    case Scenario::io_check: run_io_check(config, options, out); break;
    case Scenario::convergence: run_convergence(config, options, out); break;
  }
  return out;
}

std::string manifest_text(const ScenarioResult& r) {
  std::ostringstream os;
  os << "# collide1d run manifest\n";
  os << "version = " << version_string() << "\n";
  std::istringstream cfg(to_text(r.config));
  for (std::string line; std::getline(cfg, line);) os << "config." << line << "\n";
  os << "rows = " << r.table.rows.size() << "\n";
  os << "norm_deficit = " << format_fixed17(r.norm_deficit()) << "\n";
  for (const auto& [k, v] : r.metrics) os << "metric." << k << " = " << v << "\n";
  for (const auto& c : r.checks) {
    os << "check." << c.name << ".value = " << format_fixed17(c.value) << "\n";
    os << "check." << c.name << ".threshold = " << format_fixed17(c.threshold) << "\n";
    os << "check." << c.name << ".passed = " << (c.passed ? "true" : "false") << "\n";
  }
  for (std::size_t i = 0; i < r.warnings.size(); ++i) {
    os << "warning." << i << " = " << r.warnings[i] << "\n";
  }
  os << "status = " << (r.checks_passed() ? "ok" : "check-failed") << "\n";
  return os.str();
}

WrittenFiles write_outputs(const ScenarioResult& r, const std::filesystem::path& out_dir) {
  const std::string name = r.config.output.empty() ? r.config.default_output() : r.config.output;
  std::filesystem::path csv = std::filesystem::path(name);
  if (csv.is_relative()) csv = out_dir / csv;
  if (csv.has_parent_path()) std::filesystem::create_directories(csv.parent_path());
  WrittenFiles files{csv, csv};
  files.manifest += ".manifest";
  auto write = [](const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open `" + path.string() + "` for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing `" + path.string() + "`");
  };
  write(files.csv, r.table.to_csv());
  write(files.manifest, manifest_text(r));
  return files;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> list = {
      {"spont", "spontaneous emission from e, closed-form solution",
       "scenario = spont\nsolver = analytic\ngamma = 1\ndt = 1e-3\nn_steps = 5000\n"
       "qubit = e\nstride = 10\noutput = spont.csv\n"},
      {"rabi-strong", "resonant drive at Omega = 20 gamma, sector propagator up to two photons",
       "scenario = coherent\nsolver = sectors\ngamma = 1\ndelta = 0\nomega_rabi = 20\n"
       "dt = 1e-4\nn_steps = 10000\nm_max = 2\nqubit = g\nstride = 10\noutput = rabi-strong.csv\n"},
      {"single-photon-exp", "resonant exponential photon with Gamma = gamma, effective-map recursion",
       "scenario = single-photon\nsolver = recursion\ngamma = 1\ndt = 1e-3\nn_steps = 16000\n"
       "wavepacket = exponential\nwavepacket_gamma = 1\nstride = 10\n"
       "output = single-photon-exp.csv\n"},
      {"single-photon-gauss", "Gaussian photon (sigma = 1, t0 = 5), continuum solution",
       "scenario = single-photon\nsolver = analytic\ngamma = 1\ndt = 1e-3\nn_steps = 12000\n"
       "wavepacket = gaussian\nwavepacket_sigma = 1\nwavepacket_t0 = 5\nstride = 20\n"
       "output = single-photon-gauss.csv\n"},
  };
  return list;
}

const Preset* find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace collide1d
