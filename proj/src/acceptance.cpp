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

#include "collide1d/acceptance.hpp"

#include "collide1d/analytic.hpp"
#include "collide1d/collision.hpp"
#include "collide1d/config.hpp"
#include "collide1d/obe.hpp"
#include "collide1d/observables.hpp"
#include "collide1d/scenario.hpp"
#include "collide1d/sectors.hpp"
#include "collide1d/single_excitation.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>

namespace collide1d {

namespace {

// Collects measured-vs-threshold lines and the overall verdict.
class Ledger {
 public:
  explicit Ledger(CriterionResult& r) : r_(r) {}

  void at_most(const std::string& what, double value, double limit) {
    record(what, value, "<=", limit, value <= limit);
  }
  void at_least(const std::string& what, double value, double limit) {
    record(what, value, ">=", limit, value >= limit);
  }
  void within(const std::string& what, double value, double target, double tol) {
    std::ostringstream os;
    os << what << " = " << value << " (target " << target << " +/- " << tol << ")";
    push(os.str(), std::abs(value - target) <= tol);
  }
  void require(const std::string& what, bool ok) { push(what + (ok ? " ok" : " violated"), ok); }
  bool ok() const { return ok_; }

 private:
  void record(const std::string& what, double value, const char* op, double limit, bool ok) {
    std::ostringstream os;
    os << what << " = " << value << " " << op << " " << limit;
    push(os.str(), ok);
  }
  void push(std::string line, bool ok) {
    if (!ok) line = "FAILED " + line;
    r_.details.push_back(std::move(line));
    ok_ = ok_ && ok;
  }

  CriterionResult& r_;
  bool ok_ = true;
};

SimulationParams base_params(double dt, std::size_t n_steps) {
  SimulationParams p;
  p.gamma = 1.0;
  p.dt = dt;
  p.n_steps = n_steps;
  return p;
}

// P_e and norm after every collision of a dense run.
struct DenseSeries {
  std::vector<double> p_e;
  double max_norm_drift = 0.0;
};

DenseSeries dense_series(const SimulationParams& p, DenseJointState initial, Frame frame) {
  DenseSeries s;
  run_dense(p, std::move(initial), frame, {}, GuardPolicy::warn,
            [&](std::size_t, const DenseJointState& st) {
              s.p_e.push_back(reduced_qubit(st).p_e());
              s.max_norm_drift = std::max(s.max_norm_drift, std::abs(st.norm() - 1.0));
            });
  return s;
}

Trajectory<DenseJointState> dense_all_steps(const SimulationParams& p, DenseJointState initial,
                                            Frame frame) {
  return run_dense(p, std::move(initial), frame, snapshot_steps(p.n_steps), GuardPolicy::warn);
}

void spontaneous_emission(Ledger& L) {
  {
    const SimulationParams p = base_params(1e-3, 3000);
    double worst = 0.0;
    for (std::size_t n = 0; n <= p.n_steps; n += 10) {
      const double t = p.grid().time(n);
      worst = std::max(worst, std::abs(reduced_qubit(spontaneous_emission_state(t, p)).p_e() -
                                       std::exp(-t)));
    }
    L.at_most("analytic max |P_e - exp(-gamma t)|", worst, 1e-12);
  }
  // Dense oracle at N = 10. The error at a fixed time is first order in dt;
  // t = 0.04 and 0.08 lie on all three grids.
  const double dts[] = {0.04, 0.02, 0.01};
  std::vector<double> fixed_errors, steps;
  double finest_max = 0.0;
  for (double dt : dts) {
    SimulationParams p = base_params(dt, 10);
    p.omega_q = 3.0;
    const auto s = dense_series(p, DenseJointState::product(basis_state(QubitLabel::e), 10, 2),
                                Frame::lab);
    double fixed = 0.0, all = 0.0;
    for (std::size_t n = 0; n < s.p_e.size(); ++n) {
      const double t = p.grid().time(n);
      const double err = std::abs(s.p_e[n] - std::exp(-p.gamma * t));
      all = std::max(all, err);
      const double u = t / 0.04;
      if (n > 0 && std::abs(u - std::round(u)) < 1e-9 && std::round(u) <= 2.0) {
        fixed = std::max(fixed, err);
      }
    }
    fixed_errors.push_back(fixed);
    steps.push_back(p.gamma * dt);
    finest_max = all;
  }
  const auto fit = fit_power_law(steps, fixed_errors);
  L.within("dense error exponent at t in {0.04, 0.08}", fit.exponent, 1.0, 0.15);
  L.at_most("dense max |P_e error| at gamma dt = 0.01", finest_max, 0.02);
}

void norm_ledger(Ledger& L) {
  for (double dt : {1e-2, 1e-3}) {
    const SimulationParams p = base_params(dt, static_cast<std::size_t>(std::llround(5.0 / dt)));
    double worst = 0.0;
    for (std::size_t n = 0; n <= p.n_steps; n += p.n_steps / 50) {
      worst = std::max(worst, std::abs(spontaneous_emission_state(p.grid().time(n), p).norm_squared() - 1.0));
    }
    L.at_most("discrete analytic norm deviation at gamma dt = " + format_double(dt), worst, dt);
  }
  double closed = 0.0;
  for (double gamma : {0.5, 1.0, 3.0}) {
    for (int i = 0; i <= 1000; ++i) {
      closed = std::max(closed, std::abs(spontaneous_emission_norm(0.02 * i, gamma) - 1.0));
    }
  }
  L.at_most("closed-form norm deviation", closed, 0.0);

  double drift = 0.0;
  {
    SimulationParams p = base_params(0.01, 10);
    drift = std::max(drift, dense_series(p, DenseJointState::product(basis_state(QubitLabel::e), 10, 2),
                                         Frame::lab).max_norm_drift);
  }
  {
    SimulationParams p = base_params(0.01, 8);
    p.omega_rabi = 2.0;
    p.delta = 0.5;
    p.omega_q = 4.0;
    drift = std::max(drift, dense_series(p, DenseJointState::product(basis_state(QubitLabel::g), 8, 3),
                                         Frame::displaced).max_norm_drift);
  }
  {
    SimulationParams p = base_params(0.05, 12);
    p.omega_q = 1.0;
    const auto wp = make_gaussian_wavepacket(0.05, 0.3, 1.0, p.grid());
    drift = std::max(drift, dense_series(p, DenseJointState::single_photon(wp, 2), Frame::lab).max_norm_drift);
  }
  {
    SimulationParams p = base_params(0.02, 10);
    p.omega_rabi = 3.0;
    const QubitState plus = QubitState(1.0, Complex(0.0, 1.0)) / std::sqrt(2.0);
    drift = std::max(drift, dense_series(p, DenseJointState::product(plus, 10, 2), Frame::displaced)
                                .max_norm_drift);
  }
  L.at_most("dense oracle max norm drift", drift, 1e-10);
}

void coherent_three_way(Ledger& L) {
  SimulationParams p = base_params(1e-4, 10000);
  p.omega_rabi = 20.0;
  p.omega_q = 50.0;
  const QubitState g = basis_state(QubitLabel::g);
  const auto sectors = run_sector_reduced(p, 2, g);
  const auto analytic = coherent_reduced(p, 2, g);
  const auto obe = obe_integrate(p, 1.0, g);
  double s_a = 0.0, s_o = 0.0, a_o = 0.0;
  for (std::size_t n = 0; n <= p.n_steps; ++n) {
    const double ps = sectors.qubit[n](1, 1).real();
    const double pa = analytic.qubit[n](1, 1).real();
    const double po = obe.p_e(n);
    s_a = std::max(s_a, std::abs(ps - pa));
    s_o = std::max(s_o, std::abs(ps - po));
    a_o = std::max(a_o, std::abs(pa - po));
  }
  L.at_most("max |P_e sectors - analytic|, t <= 1", s_a, 1e-2);
  L.at_most("max |P_e sectors - OBE|, t <= 1", s_o, 1e-2);
  L.at_most("max |P_e analytic - OBE|, t <= 1", a_o, 1e-2);

  // Amplitudes at t = 0.5; compared as densities, amplitude / dt^{m/2}.
  SimulationParams half = p;
  half.n_steps = 5000;
  const auto propagated = run_displaced_sectors(half, 2, g, {half.n_steps});
  const auto assembled = assemble_coherent(half, 0.5, 2, g);
  const SectorState& a = propagated.back();
  const SectorState& b = assembled.coefficients;
  const char* names[] = {"vacuum", "1-photon", "2-photon"};
  for (std::size_t m = 0; m <= 2; ++m) {
    double worst = 0.0;
    const double scale = std::pow(half.dt, -0.5 * static_cast<double>(m));
    bool same_shape = a.sectors[m].size() == b.sectors[m].size();
    for (std::size_t r = 0; same_shape && r < a.sectors[m].size(); ++r) {
      worst = std::max(worst, (a.sectors[m][r] - b.sectors[m][r]).cwiseAbs().maxCoeff() * scale);
    }
    L.require(std::string(names[m]) + " tensor shapes match", same_shape);
    L.at_most(std::string("max ") + names[m] + " amplitude density difference at t = 0.5", worst, 2e-3);
  }
}

void strong_drive(Ledger& L) {
  SimulationParams p = base_params(1e-4, 8000);
  p.omega_rabi = 40.0;
  const auto full = coherent_reduced(p, 1, basis_state(QubitLabel::g));
  const std::size_t stride = 8;
  std::vector<double> strong_pe, full_pe;
  double pop = 0.0;
  for (std::size_t n = 0; n <= p.n_steps; n += stride) {
    const auto s = strong_drive_state(p.grid().time(n), p);
    const auto rho = reduced_qubit(s.coefficients);
    strong_pe.push_back(rho.p_e());
    pop = std::max(pop, std::abs(rho.p_e() - full.qubit[n](1, 1).real()));
    pop = std::max(pop, std::abs(rho.rho(0, 0).real() - full.qubit[n](0, 0).real()));
  }
  for (std::size_t n = 0; n <= p.n_steps; ++n) full_pe.push_back(full.qubit[n](1, 1).real());
  L.at_most("max population difference vs assembly (m <= 1), t <= 0.8", pop, 5e-2);
  const double w_strong = oscillation_frequency(strong_pe, p.dt * stride);
  const double w_full = oscillation_frequency(full_pe, p.dt);
  L.at_most("|w / Omega - 1| from strong-drive P_e", std::abs(w_strong / p.omega_rabi - 1.0), 1e-2);
  L.at_most("|w / Omega - 1| from assembled P_e", std::abs(w_full / p.omega_rabi - 1.0), 1e-2);
}

void single_photon_exponential(Ledger& L) {
  SimulationParams p = base_params(1e-3, 16000);
  p.omega_q = 2.0;
  const auto wp = make_exponential_wavepacket(1.0, p.omega_q, p.grid());
  const std::vector<std::size_t> probes = {500, 2000, 5000, 16000};
  const auto run = run_single_excitation(p, wp, probes);
  const auto filtered = xi_tilde(wp, p);
  const double target = 4.0 * std::exp(-2.0);

  auto peak = [&](auto&& pe_at, std::size_t count) {
    std::size_t best = 0;
    for (std::size_t n = 1; n < count; ++n) {
      if (pe_at(n) > pe_at(best)) best = n;
    }
    return best;
  };
  const std::size_t nr = peak([&](std::size_t n) { return std::norm(run.excited[n]); }, run.excited.size());
  const std::size_t nc = peak([&](std::size_t n) { return p.gamma * std::norm(filtered[n]); }, filtered.size());
  L.within("recursion max P_e", std::norm(run.excited[nr]), target, 2e-3);
  L.within("recursion argmax t", p.grid().time(nr), 2.0, 2.0 * p.dt);
  L.within("continuum max P_e", p.gamma * std::norm(filtered[nc]), target, 2e-3);
  L.within("continuum argmax t", p.grid().time(nc), 2.0, 2.0 * p.dt);

  double fid = 1.0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const auto cont = single_photon_state(wp, p.grid().time(probes[i]), p);
    fid = std::min(fid, state_fidelity(run.trajectory.states[i], cont));
  }
  L.at_least("min fidelity recursion vs continuum at t in {0.5, 2, 5, 16}", fid, 1.0 - 1e-3);
}

void input_output(Ledger& L) {
  double exact = 0.0;
  for (QubitLabel q : {QubitLabel::g, QubitLabel::e}) {
    SimulationParams p = base_params(0.01, 8);
    p.omega_q = 5.0;
    const auto t = dense_all_steps(p, DenseJointState::product(basis_state(q), 8, 2), Frame::lab);
    for (double r : io_residual(t, p, Frame::lab)) exact = std::max(exact, r);
  }
  L.at_most("max residual, vacuum and spontaneous emission", exact, 1e-12);

  std::vector<double> dts = {1e-2, 5e-3, 2.5e-3}, worst;
  for (double dt : dts) {
    SimulationParams p = base_params(dt, 8);
    p.omega_rabi = 2.0;
    p.omega_q = 5.0;
    const auto t = dense_all_steps(p, DenseJointState::product(basis_state(QubitLabel::g), 8, 3),
                                   Frame::displaced);
    double w = 0.0;
    for (double r : io_residual(t, p, Frame::displaced)) w = std::max(w, r);
    worst.push_back(w);
    L.at_most("coherent max residual / dt at dt = " + format_double(dt), w / dt, 5.0);
  }
  L.within("coherent residual exponent", fit_power_law(dts, worst).exponent, 1.0, 0.2);
}

void representation_equivalence(Ledger& L) {
  double worst_amp = 0.0, worst_rho = 0.0;
  const QubitState starts[] = {basis_state(QubitLabel::g), basis_state(QubitLabel::e),
                               QubitState(1.0, Complex(0.0, 1.0)) / std::sqrt(2.0)};
  for (std::size_t n_modes : {1u, 4u, 8u}) {
    for (const auto& phi : starts) {
      SimulationParams p = base_params(0.05, n_modes);
      p.omega_rabi = 1.5;
      p.delta = 0.5;
      p.omega_q = 2.0;
      const auto steps = snapshot_steps(n_modes);
      const auto sec = run_displaced_sectors(p, n_modes, phi, steps);
      const auto den = run_dense(p, DenseJointState::product(phi, n_modes, 2, Frame::displaced),
                                 Frame::displaced, steps);
      for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto embedded = to_dense(sec.states[i], 2);
        const auto x = embedded.amplitudes();
        const auto y = den.states[i].amplitudes();
        for (std::size_t k = 0; k < x.size(); ++k) worst_amp = std::max(worst_amp, std::abs(x[k] - y[k]));
        const QubitMatrix d = reduced_qubit(sec.states[i]).rho - reduced_qubit(den.states[i]).rho;
        worst_rho = std::max(worst_rho, d.cwiseAbs().maxCoeff());
      }
    }
  }
  L.at_most("max |amplitude sectors - dense|, N <= 8", worst_amp, 1e-10);
  L.at_most("max |reduced qubit sectors - dense|", worst_rho, 1e-10);
}

void entanglement(Ledger& L) {
  double initial = 0.0;
  const QubitState starts[] = {basis_state(QubitLabel::g), basis_state(QubitLabel::e),
                               QubitState(1.0, 1.0) / std::sqrt(2.0)};
  SimulationParams p = base_params(1e-3, 100);
  p.omega_rabi = 2.0;
  for (const auto& phi : starts) {
    initial = std::max(initial, entanglement_entropy(DenseJointState::product(phi, 4, 2)));
    initial = std::max(initial, entanglement_entropy(reduced_qubit(coherent_reduced(p, 2, phi).qubit[0])));
    initial = std::max(initial, entanglement_entropy(reduced_qubit(run_sector_reduced(p, 2, phi).qubit[0])));
  }
  const auto wp = make_gaussian_wavepacket(0.01, 0.05, 0.0, p.grid());
  initial = std::max(initial, entanglement_entropy(single_photon_input(wp)));
  initial = std::max(initial, entanglement_entropy(spontaneous_emission_state(0.0, p)));
  initial = std::max(initial, entanglement_entropy(single_photon_state(wp, 0.0, p)));
  L.at_most("max entropy at t = 0 (bits)", initial, 1e-12);

  // Grid with t_N = ln 2 / gamma exactly.
  const SimulationParams q = base_params(std::numbers::ln2 / 1000.0, 1000);
  const double t = q.grid().duration();
  L.within("analytic entropy at t = ln2 / gamma (bits)",
           entanglement_entropy(spontaneous_emission_state(t, q)), 1.0, 5e-3);
  const auto run = run_single_excitation(q, excited_vacuum(q.grid(), q.n_steps), {q.n_steps});
  L.within("recursion entropy at t = ln2 / gamma (bits)", entanglement_entropy(run.trajectory.back()),
           1.0, 5e-3);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

void determinism(Ledger& L) {
  const auto root = std::filesystem::temp_directory_path() /
                    ("collide1d-determinism-" + std::to_string(std::random_device{}()));
  for (const auto& preset : presets()) {
    const ScenarioConfig config = parse_config(preset.text);
    std::string csv[2];
    for (int i = 0; i < 2; ++i) {
      const auto files = write_outputs(run_scenario(config), root / std::to_string(i));
      csv[i] = slurp(files.csv);
    }
    L.require("preset " + preset.name + " CSV byte-identical (" + std::to_string(csv[0].size()) +
                  " bytes)",
              !csv[0].empty() && csv[0] == csv[1]);
  }
  std::error_code ec;
  std::filesystem::remove_all(root, ec);
}

struct CriterionDef {
  const char* name;
  double budget;
  void (*body)(Ledger&);
};

const CriterionDef kCriteria[] = {
    {"spontaneous-emission", 1.0, spontaneous_emission},
    {"norm-ledger", 1.0, norm_ledger},
    {"coherent-three-way", 30.0, coherent_three_way},
    {"strong-drive-limit", 10.0, strong_drive},
    {"single-photon-exponential", 5.0, single_photon_exponential},
    {"input-output", 5.0, input_output},
    {"representation-equivalence", 10.0, representation_equivalence},
    {"entanglement-entropy", 1.0, entanglement},
    {"determinism", 0.0, determinism},
};

}  // namespace

int acceptance_count() noexcept { return static_cast<int>(std::size(kCriteria)); }

CriterionResult run_criterion(int id) {
  if (id < 1 || id > acceptance_count()) throw std::out_of_range("no acceptance criterion " + std::to_string(id));
  const CriterionDef& def = kCriteria[id - 1];
  CriterionResult r;
  r.id = id;
  r.name = def.name;
  r.budget_seconds = def.budget;
  Ledger ledger(r);
  const auto start = std::chrono::steady_clock::now();
  bool threw = false;
  try {
    def.body(ledger);
  } catch (const std::exception& e) {
    r.details.push_back(std::string("FAILED exception: ") + e.what());
    threw = true;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_budget = def.budget <= 0.0 || r.seconds < def.budget;
  if (!in_budget) r.details.push_back("FAILED runtime over budget");
  r.passed = ledger.ok() && !threw && in_budget;
  return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids) {
  std::vector<CriterionResult> out;
  if (ids.empty()) {
    for (int i = 1; i <= acceptance_count(); ++i) out.push_back(run_criterion(i));
  } else {
    for (int i : ids) out.push_back(run_criterion(i));
  }
  return out;
}

std::string summary_line(const CriterionResult& r) {
  std::ostringstream os;
  os.precision(3);
  os << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << " (" << std::fixed
     << r.seconds << " s";
  if (r.budget_seconds > 0.0) os << " / " << r.budget_seconds << " s";
  os << ")";
  os.unsetf(std::ios::fixed);
  os.precision(6);
  for (std::size_t i = 0; i < r.details.size(); ++i) os << (i == 0 ? ": " : "; ") << r.details[i];
  return os.str();
}

}  // namespace collide1d
