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

#include "collide1d/analytic.hpp"
#include "collide1d/collision.hpp"
#include "collide1d/observables.hpp"
#include "collide1d/sectors.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace collide1d;

namespace {

Trajectory<DenseJointState> dense_every_step(const SimulationParams& p, QubitLabel q, int d,
                                             Frame frame) {
  std::vector<std::size_t> steps(p.n_steps + 1);
  for (std::size_t n = 0; n <= p.n_steps; ++n) steps[n] = n;
  return run_dense(p, DenseJointState::product(basis_state(q), p.n_steps, d, frame), frame, steps);
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace

TEST_CASE("reduced qubit state") {
  const auto s = DenseJointState::product(basis_state(QubitLabel::e), 5, 2);
  const auto rho = reduced_qubit(s);
  CHECK((rho.rho - QubitMatrix(sigma_plus() * sigma_minus())).cwiseAbs().maxCoeff() == 0.0);
  CHECK(entanglement_entropy(s) == 0.0);

  SimulationParams p;
  p.dt = 1e-3;
  p.n_steps = 1000;
  CHECK(reduced_qubit(spontaneous_emission_state(1.0, p)).p_e() ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

  SUBCASE("dense and sector representations agree") {
    SimulationParams q;
    q.dt = 3e-2;
    q.n_steps = 8;
    q.omega_rabi = 4.0;
    q.delta = 1.0;
    const auto dense = dense_every_step(q, QubitLabel::g, 2, Frame::displaced);
    const auto sec = run_displaced_sectors(q, 8, basis_state(QubitLabel::g), dense.steps);
    for (std::size_t i = 0; i < dense.size(); ++i) {
      const auto a = reduced_qubit(dense.states[i]);
      const auto b = reduced_qubit(sec.states[i]);
      CHECK((a.rho - b.rho).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(std::abs(a.trace() - 1.0) < 1e-10);
      CHECK((a.rho - a.rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
      const auto ev = a.eigenvalues();
      CHECK(ev.minCoeff() >= -1e-10);
      CHECK(ev.maxCoeff() <= 1.0 + 1e-10);
      const double s_bits = entanglement_entropy(a);
      CHECK(s_bits >= 0.0);
      CHECK(s_bits <= 1.0);
    }
    CHECK(entanglement_entropy(dense.states[0]) == 0.0);
  }
}

TEST_CASE("entanglement entropy") {
  SimulationParams p;
  p.dt = std::log(2.0) / 1000.0;
  p.n_steps = 1000;
  const auto s = spontaneous_emission_state(p.grid().duration(), p);
  const auto rho = reduced_qubit(s);
  CHECK(std::abs(rho.coherence()) == 0.0);
  CHECK(std::abs(entanglement_entropy(rho) - 1.0) < 5e-3);

  QubitDensityMatrix mixed{QubitMatrix::Identity() / 2.0};
  CHECK(entanglement_entropy(mixed) == doctest::Approx(1.0));

  QubitDensityMatrix leaky{QubitMatrix::Identity() * 0.4};
  CHECK_FALSE(entropy_defined(leaky));
  CHECK_THROWS_AS(entanglement_entropy(leaky), std::domain_error);
}

TEST_CASE("photon density") {
  const auto vac = DenseJointState::product(basis_state(QubitLabel::g), 6, 2);
  for (double v : photon_density(vac, 0.1)) CHECK(v == 0.0);

  SimulationParams p;
  p.dt = 1e-3;
  p.n_steps = 10000;
  const auto s = spontaneous_emission_state(10.0, p);
  const auto dens = photon_density(s);
  double integral = 0.0;
  for (double v : dens) integral += v * p.dt;
  CHECK(std::abs(integral - 1.0) < 1e-3);
  CHECK(dens[2000] == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));

  SUBCASE("sector bookkeeping reproduces the norm") {
    SimulationParams q;
    q.dt = 1e-2;
    q.n_steps = 60;
    q.omega_rabi = 5.0;
    const auto st = run_displaced_sectors(q, 3, basis_state(QubitLabel::g), {60}).back();
    double photons = 0.0;
    for (double v : photon_density(st)) photons += v * q.dt;
    double weighted = 0.0;
    for (std::size_t m = 0; m <= st.max_photons(); ++m) weighted += m * st.sector_weight(m);
    CHECK(std::abs(photons - weighted) < 1e-9);
  }
  SUBCASE("dense density matches per-mode occupation") {
    SimulationParams q;
    q.dt = 5e-2;
    q.n_steps = 6;
    const auto st = dense_every_step(q, QubitLabel::e, 2, Frame::lab).back();
    const auto d = photon_density(st, q.dt);
    for (std::size_t n = 0; n < 6; ++n) CHECK(d[n] * q.dt == doctest::Approx(mode_occupation(st, n)));
  }
}

TEST_CASE("input-output residual") {
  SUBCASE("vacuum input") {
    SimulationParams p;
    p.dt = 1e-2;
    p.n_steps = 8;
    const auto traj = dense_every_step(p, QubitLabel::g, 2, Frame::lab);
    CHECK(max_of(io_residual(traj, p, Frame::lab)) <= 1e-12);
  }
  SUBCASE("spontaneous emission") {
    SimulationParams p;
    p.dt = 1e-2;
    p.n_steps = 8;
    p.omega_q = 3.0;
    const auto traj = dense_every_step(p, QubitLabel::e, 2, Frame::lab);
    CHECK(max_of(io_residual(traj, p, Frame::lab)) <= 1e-12);
  }
  SUBCASE("coherent drive scales linearly") {
    std::vector<double> dts, res;
    for (double dt : {4e-2, 2e-2, 1e-2}) {
      SimulationParams p;
      p.dt = dt;
      p.n_steps = 8;
      p.omega_rabi = 2.0;
      p.fock_dim = 3;
      const auto traj = dense_every_step(p, QubitLabel::g, 3, Frame::displaced);
      const double r = max_of(io_residual(traj, p, Frame::displaced));
      CHECK(r <= 5.0 * dt);
      dts.push_back(dt);
      res.push_back(r);
    }
    CHECK(std::abs(fit_power_law(dts, res).exponent - 1.0) <= 0.2);
  }
  SUBCASE("gaps in the snapshots are refused") {
    SimulationParams p;
    p.dt = 1e-2;
    p.n_steps = 4;
    const auto traj = run_dense(p, DenseJointState::product(basis_state(QubitLabel::e), 4, 2),
                                Frame::lab, {0, 2, 4});
    CHECK_THROWS_AS(io_residual(traj, p, Frame::lab), std::invalid_argument);
  }
}

TEST_CASE("state fidelity") {
  SimulationParams p;
  p.dt = 5e-2;
  p.n_steps = 6;
  p.omega_rabi = 3.0;
  const auto a = dense_every_step(p, QubitLabel::g, 2, Frame::displaced).back();
  CHECK(state_fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-14));
  DenseJointState b = a;
  for (auto& v : b.amplitudes()) v *= std::polar(1.0, 0.9);
  CHECK(state_fidelity(a, b) == doctest::Approx(1.0).epsilon(1e-14));

  const auto lab = DenseJointState::product(basis_state(QubitLabel::g), 6, 2, Frame::lab);
  CHECK_THROWS_AS(state_fidelity(a, lab), std::invalid_argument);

  const auto sec = run_displaced_sectors(p, 6, basis_state(QubitLabel::g), {6}).back();
  CHECK(state_fidelity(sec, a) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(state_fidelity(sec, sec) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("fitting helpers") {
  std::vector<double> y(4000);
  const double dt = 1e-3;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::sin(7.0 * dt * static_cast<double>(i));
  CHECK(oscillation_frequency(y, dt) == doctest::Approx(7.0).epsilon(1e-4));
  std::vector<double> flat(10, 1.0);
  CHECK_THROWS_AS(oscillation_frequency(flat, dt), std::domain_error);

  const std::vector<double> x{1.0, 2.0, 4.0};
  const std::vector<double> z{3.0, 12.0, 48.0};
  const auto f = fit_power_law(x, z);
  CHECK(f.exponent == doctest::Approx(2.0));
  CHECK(f.prefactor == doctest::Approx(3.0));
  const std::vector<double> bad{1.0, -1.0, 2.0};
  CHECK_THROWS_AS(fit_power_law(x, bad), std::domain_error);
}
