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

#include "collide1d/obe.hpp"
#include "collide1d/observables.hpp"

#include "doctest.h"

#include <cmath>

using namespace collide1d;

namespace {

SimulationParams make(double omega, double delta, double dt, std::size_t n) {
  SimulationParams p;
  p.omega_rabi = omega;
  p.delta = delta;
  p.dt = dt;
  p.n_steps = n;
  return p;
}

}  // namespace

TEST_CASE("pure decay") {
  const auto p = make(0.0, 0.0, 1e-2, 300);
  const auto traj = obe_integrate(p, 3.0, basis_state(QubitLabel::e));
  CHECK(traj.s.size() == 301);
  for (std::size_t n = 0; n < traj.s.size(); n += 25) {
    const double t = p.grid().time(n);
    CHECK(std::abs(traj.s[n](2) - (2.0 * std::exp(-t) - 1.0)) < 1e-10);
  }
}

TEST_CASE("steady state population") {
  for (auto [om, de] : {std::pair{1.0, 0.0}, std::pair{2.0, 1.5}, std::pair{0.5, -0.7}}) {
    const auto p = make(om, de, 5e-2, 600);
    const auto traj = obe_integrate(p, 30.0, basis_state(QubitLabel::g));
    const double want = (om * om / 4.0) / (de * de + 0.25 + om * om / 2.0);
    CHECK(std::abs(traj.p_e(600) - want) < 1e-7);
  }
  const auto p = make(1.0, 0.0, 5e-2, 600);
  CHECK(obe_integrate(p, 30.0, basis_state(QubitLabel::g)).p_e(600) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("strong drive oscillates at the rabi frequency") {
  const auto p = make(20.0, 0.0, 1e-3, 3000);
  const auto traj = obe_integrate(p, 3.0, basis_state(QubitLabel::g));
  std::vector<double> pe;
  for (std::size_t n = 0; n < traj.s.size(); ++n) pe.push_back(traj.p_e(n));
  // Damped rabi frequency sqrt(Omega^2 - gamma^2 / 16) is within 1e-3 of Omega here.
  CHECK(std::abs(oscillation_frequency(pe, p.dt) / 20.0 - 1.0) < 1e-2);
}

TEST_CASE("bloch vectors stay in the ball and trajectories contract") {
  const auto p = make(3.0, 1.0, 1e-2, 500);
  QubitState phi;
  phi << std::sqrt(0.3), std::sqrt(0.7) * std::polar(1.0, 0.4);
  const auto a = obe_integrate(p, 5.0, phi);
  const auto b = obe_integrate(p, 5.0, basis_state(QubitLabel::e));
  CHECK(std::abs(a.s[0].norm() - 1.0) < 1e-12);
  for (std::size_t n = 1; n < a.s.size(); ++n) {
    CHECK(a.s[n].squaredNorm() <= 1.0 + 1e-9);
    // The flow is non-unital, so |s| itself may grow; distances may not.
    CHECK((a.s[n] - b.s[n]).norm() <= (a.s[n - 1] - b.s[n - 1]).norm() + 1e-9);
  }
}

TEST_CASE("rk4 self-convergence is fourth order") {
  const auto p = make(4.0, 1.0, 1e-2, 100);
  const auto g = bloch_generator(p);
  const BlochVector s0 = bloch_vector(basis_state(QubitLabel::g));
  const double T = 1.0;
  auto run = [&](double h) {
    return rk4_integrate(g, s0, h, static_cast<std::size_t>(std::llround(T / h))).back();
  };
  const BlochVector ref = run(1e-4);
  const double e1 = (run(0.1) - ref).norm();
  const double e2 = (run(0.05) - ref).norm();
  CHECK(std::log2(e1 / e2) == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("step-size guard") {
  const auto p = make(20.0, 0.0, 1e-3, 100);
  CHECK(max_rk_step(p) == doctest::Approx(5e-5));
  CHECK_THROWS_AS(obe_integrate(p, 0.1, basis_state(QubitLabel::g), 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(obe_integrate(p, 0.1, basis_state(QubitLabel::g), 3e-5), std::invalid_argument);
  CHECK(obe_integrate(p, 0.1, basis_state(QubitLabel::g), 2.5e-5).substeps == 40);
  CHECK(obe_integrate(p, 0.1, basis_state(QubitLabel::g)).substeps == 20);
}

TEST_CASE("collision model against the master equation") {
  SUBCASE("pure decay") {
    const auto p = make(0.0, 0.0, 1e-3, 2000);
    const auto c = compare_with_cm(p, 2.0, 1, basis_state(QubitLabel::e));
    CHECK(c.max_pe_error <= 2.0 * p.gamma * p.dt);
  }
  SUBCASE("resonant strong drive") {
    const auto p = make(20.0, 0.0, 1e-4, 10000);
    const auto c = compare_with_cm(p, 1.0, 2, basis_state(QubitLabel::g));
    CHECK(c.max_pe_error <= 1e-2);
  }
  SUBCASE("off resonance") {
    const auto p = make(2.0, 4.0, 1e-3, 1000);
    const auto c = compare_with_cm(p, 1.0, 2, basis_state(QubitLabel::g));
    CHECK(c.max_pe_error <= 1e-2);
  }
  SUBCASE("error falls with the photon cap and the step") {
    const auto p = make(6.0, 0.0, 2e-3, 500);
    const auto m1 = compare_with_cm(p, 1.0, 1, basis_state(QubitLabel::g));
    const auto m2 = compare_with_cm(p, 1.0, 2, basis_state(QubitLabel::g));
    CHECK(m2.max_pe_error < m1.max_pe_error);
    CHECK(m2.truncation_deficit < m1.truncation_deficit);
    const auto fine = compare_with_cm(make(6.0, 0.0, 5e-4, 2000), 1.0, 3,
                                      basis_state(QubitLabel::g));
    const auto coarse = compare_with_cm(make(6.0, 0.0, 2e-3, 500), 1.0, 3,
                                        basis_state(QubitLabel::g));
    CHECK(fine.max_pe_error < coarse.max_pe_error);
  }
}
