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
#include "collide1d/observables.hpp"
#include "collide1d/tuples.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

using namespace collide1d;

namespace {

constexpr QubitLabel G = QubitLabel::g;
constexpr QubitLabel E = QubitLabel::e;

SimulationParams make(double omega, double delta, double gamma = 1.0) {
  SimulationParams p;
  p.gamma = gamma;
  p.omega_rabi = omega;
  p.delta = delta;
  p.omega_q = 2.0;
  return p;
}

}  // namespace

TEST_CASE("no-emission coefficients") {
  SUBCASE("identity at t = 0") {
    for (double om : {0.0, 1.0, 20.0}) {
      const auto m = f0_matrix(0.0, make(om, 0.3));
      CHECK((m - QubitMatrix::Identity()).cwiseAbs().maxCoeff() < 1e-15);
    }
  }
  SUBCASE("undriven limits") {
    const auto p = make(0.0, 0.0, 1.7);
    for (double t : {0.1, 1.0, 6.0}) {
      CHECK(std::abs(f0(E, E, t, p) - std::exp(-p.gamma * t / 2)) < 1e-14);
      CHECK(std::abs(f0(G, G, t, p) - 1.0) < 1e-14);
      CHECK(std::abs(f0(E, G, t, p)) == 0.0);
    }
  }
  SUBCASE("branch choice does not matter") {
    // Direct evaluation of the closed forms with either square root.
    auto closed = [](double t, const SimulationParams& p, Complex root) {
      const Complex pre = std::exp(Complex(-p.gamma * t / 4, -p.delta * t / 2));
      const Complex c = std::cos(root * t / 2.0);
      const Complex s = std::sin(root * t / 2.0) / root;
      const Complex shift = Complex(p.gamma, 2.0 * p.delta) / 2.0;
      QubitMatrix m;
      m << pre * (c + shift * s), pre * p.omega_rabi * s, -pre * p.omega_rabi * s,
          pre * (c - shift * s);
      return m;
    };
    for (const auto& p : {make(0.2, 0.0), make(3.0, -1.0), make(20.0, 0.5)}) {
      const Complex w = complex_rabi(p);
      for (double t : {0.3, 2.0, 9.0}) {
        const QubitMatrix lib = f0_matrix(t, p);
        CHECK((lib - closed(t, p, w)).cwiseAbs().maxCoeff() < 1e-14);
        CHECK((lib - closed(t, p, -w)).cwiseAbs().maxCoeff() < 1e-14);
      }
    }
  }
  SUBCASE("semigroup") {
    for (const auto& p : {make(20.0, 0.0), make(2.0, 4.0), make(0.3, -0.2)}) {
      for (auto [t1, t2] : {std::pair{0.1, 0.35}, std::pair{0.7, 1.9}}) {
        const QubitMatrix lhs = f0_matrix(t1 + t2, p);
        const QubitMatrix rhs = f0_matrix(t2, p) * f0_matrix(t1, p);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
      }
    }
  }
  SUBCASE("removable singularity at a vanishing complex rabi frequency") {
    const auto p = make(0.5, 0.0);  // Omega^2 = gamma^2 / 4
    CHECK(std::abs(complex_rabi(p)) < 1e-15);
    const auto q = make(0.5 + 1e-7, 0.0);
    for (double t : {0.5, 3.0}) {
      const auto a = f0_matrix(t, p);
      CHECK(a.allFinite());
      CHECK((a - f0_matrix(t, q)).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
  SUBCASE("large times stay finite") {
    CHECK(f0_matrix(800.0, make(20.0, 3.0)).allFinite());
  }
  CHECK_THROWS_AS(f0(G, G, -1.0, make(1.0, 0.0)), std::domain_error);
}

TEST_CASE("emission coefficients") {
  const auto p = make(20.0, 0.0);
  SUBCASE("undriven one-photon density") {
    const auto q = make(0.0, 0.0, 1.3);
    for (double t1 : {0.0, 0.4, 0.9}) {
      const Complex want = -std::sqrt(q.gamma) * std::exp(-q.gamma * t1 / 2) *
                           std::polar(1.0, -q.omega_p() * t1);
      CHECK(std::abs(f1(G, E, 1.0, t1, q) - want) < 1e-14);
    }
  }
  SUBCASE("vanishing at coincident or initial times") {
    CHECK(f1(G, G, 1.0, 0.0, p) == Complex(0.0));
    CHECK(std::abs(f2(E, G, 1.0, 0.4, 0.4, p)) == 0.0);
    const double repeated[] = {0.1, 0.5, 0.5};
    CHECK(std::abs(fm(G, G, 1.0, repeated, p)) == 0.0);
    const auto q = make(0.0, 0.5);
    CHECK(f2(G, E, 1.0, 0.2, 0.6, q) == Complex(0.0));
  }
  SUBCASE("general form reproduces the one- and two-photon cases") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 25; ++i) {
      const auto q = make(10.0 * u(rng), 4.0 * u(rng) - 2.0);
      const double t = 2.0 * u(rng);
      double a = t * u(rng), b = t * u(rng);
      if (a > b) std::swap(a, b);
      for (QubitLabel eps : {G, E}) {
        for (QubitLabel phi : {G, E}) {
          const double one[] = {a};
          const double two[] = {a, b};
          CHECK(std::abs(fm(eps, phi, t, one, q) - f1(eps, phi, t, a, q)) < 1e-15);
          CHECK(std::abs(fm(eps, phi, t, two, q) - f2(eps, phi, t, a, b, q)) < 1e-15);
        }
      }
    }
  }
  SUBCASE("ordering is enforced") {
    CHECK_THROWS_AS(f1(G, G, 0.5, 0.6, p), std::domain_error);
    CHECK_THROWS_AS(f2(G, G, 1.0, 0.6, 0.5, p), std::domain_error);
    CHECK_THROWS_AS(f2(G, G, 0.5, 0.1, 0.6, p), std::domain_error);
    const double unsorted[] = {0.3, 0.1, 0.5};
    CHECK_THROWS_AS(fm(G, G, 1.0, unsorted, p), std::domain_error);
  }
}

TEST_CASE("coherent assembly") {
  SUBCASE("undriven ground state is complete in the vacuum") {
    SimulationParams p = make(0.0, 0.0);
    p.dt = 1e-2;
    p.n_steps = 100;
    const auto a = assemble_coherent(p, 1.0, 0, basis_state(G));
    CHECK(a.norm == 1.0);
    CHECK(a.norm_deficit == 0.0);
    CHECK(a.coefficients.origin == Origin::analytic);
  }
  SUBCASE("strong drive keeps most weight in two photons") {
    SimulationParams p = make(20.0, 0.0);
    p.dt = 1e-3;
    p.n_steps = 1000;
    const auto a = assemble_coherent(p, 1.0, 2, basis_state(G));
    CHECK(a.norm >= 0.95);
    CHECK(a.norm <= 1.0 + 1e-9);
  }
  SUBCASE("norm grows with the photon cap") {
    SimulationParams p = make(12.0, 1.0);
    p.dt = 5e-3;
    p.n_steps = 200;
    double previous = 0.0;
    for (std::size_t m = 0; m <= 3; ++m) {
      const auto a = assemble_coherent(p, 1.0, m, basis_state(G));
      CHECK(a.norm >= previous);
      CHECK(std::abs(a.norm + a.norm_deficit - 1.0) < 1e-12);
      previous = a.norm;
    }
  }
  SUBCASE("closed-form reduced dynamics matches the assembled state") {
    SimulationParams p = make(7.0, 0.5);
    p.dt = 5e-3;
    p.n_steps = 200;
    const auto red = coherent_reduced(p, 2, basis_state(G));
    for (double t : {0.25, 1.0}) {
      const auto a = assemble_coherent(p, t, 2, basis_state(G));
      const auto rho = reduced_qubit(a.coefficients).rho;
      CHECK((rho - red.qubit[p.grid().index(t)]).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("refusals") {
    SimulationParams p = make(1.0, 0.0);
    p.n_steps = 100;
    p.dt = 1e-2;
    CHECK_THROWS_AS(assemble_coherent(p, 1.0, 4, basis_state(G)), std::invalid_argument);
    CHECK_THROWS_AS(assemble_coherent(p, 0.505, 1, basis_state(G)), std::out_of_range);
    p.n_steps = 100000;
    p.dt = 1e-5;
    CHECK_THROWS_AS(assemble_coherent(p, 1.0, 3, basis_state(G)), CapacityError);
  }
}

TEST_CASE("strong-drive closed form") {
  SimulationParams p = make(40.0, 0.0);
  p.dt = 1e-3;
  p.n_steps = 800;
  SUBCASE("starts in the ground state") {
    const auto r = strong_drive_state(0.0, p);
    std::vector<std::size_t> none;
    CHECK(std::abs(r.coefficients.amplitude(none)(0) - 1.0) < 1e-15);
    CHECK(r.coefficients.sector_weight(1) == 0.0);
    CHECK(r.warnings.empty());
  }
  SUBCASE("half rabi cycle puts the vacuum sector on e") {
    SimulationParams q = p;
    q.dt = std::numbers::pi / 40.0 / 100.0;
    q.n_steps = 100;
    const double t = q.grid().time(100);
    const auto r = strong_drive_state(t, q);
    std::vector<std::size_t> none;
    const QubitState v = r.coefficients.amplitude(none);
    CHECK(std::abs(v(0)) < 1e-12);
    CHECK(std::abs(v(1)) == doctest::Approx(std::exp(-t / 4)).epsilon(1e-12));
  }
  SUBCASE("populations agree with the one-photon assembly") {
    const auto red = coherent_reduced(p, 1, basis_state(G));
    const auto r = strong_drive_state(0.8, p);
    const auto rho = reduced_qubit(r.coefficients).rho;
    CHECK(std::abs(rho(1, 1) - red.qubit[800](1, 1)) < 5e-2);
    CHECK(std::abs(rho(0, 0) - red.qubit[800](0, 0)) < 5e-2);
  }
  SUBCASE("one-photon weight completes the vacuum norm") {
    // Holds up to the two-photon weight the limit drops and the Omega' ~ Omega error.
    const auto exact = coherent_reduced(p, 2, basis_state(G));
    for (double t : {0.1, 0.4, 0.8}) {
      const auto r = strong_drive_state(t, p);
      const double total = r.coefficients.sector_weight(0) + r.coefficients.sector_weight(1);
      CHECK(std::abs(total - 1.0) <= exact.sector_weight(p.grid().index(t), 2) + 2e-2);
    }
  }
  SUBCASE("regime guard warns") {
    SimulationParams q = p;
    q.omega_rabi = 5.0;
    CHECK_FALSE(strong_drive_state(0.5, q).warnings.empty());
    q.omega_rabi = 40.0;
    q.delta = 1.0;
    CHECK_FALSE(strong_drive_state(0.5, q).warnings.empty());
  }
}

TEST_CASE("spontaneous emission closed form") {
  SimulationParams p = make(0.0, 0.0);
  p.dt = 1e-3;
  p.n_steps = 8000;
  const auto s = spontaneous_emission_state(1.0, p);
  CHECK(std::norm(s.excited) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(std::abs(s.norm_squared() - 1.0) <= p.gamma * p.dt);
  for (std::size_t n : {0u, 400u, 999u}) {
    const double t = p.grid().time(n);
    CHECK(std::norm(s.photon[n]) / p.dt == doctest::Approx(std::exp(-t)).epsilon(1e-12));
  }
  CHECK(s.photon[1000] == Complex(0.0));
  for (double t : {0.0, 0.5, 3.0, 40.0}) CHECK(spontaneous_emission_norm(t, 2.0) == 1.0);

  const auto late = spontaneous_emission_state(8.0, p);
  double integral = 0.0;
  for (double v : photon_density(late)) integral += v * p.dt;
  CHECK(std::abs(integral - 1.0) < 1e-3);
}

TEST_CASE("single-photon closed form") {
  SimulationParams p = make(0.0, 0.0);
  p.dt = 1e-3;
  p.n_steps = 16000;
  const auto xi = make_exponential_wavepacket(p.gamma, p.omega_q, p.grid());
  SUBCASE("filtered envelope of the resonant packet") {
    const auto f = xi_tilde(xi, p);
    CHECK(f[0] == Complex(0.0));
    for (std::size_t n : {1000u, 2000u, 5000u}) {
      const double t = p.grid().time(n);
      CHECK(std::abs(f[n] - t * std::exp(-t / 2)) < 5.0 * p.dt);
      CHECK(f[n] == xi_tilde(xi, t, p));
    }
    CHECK_THROWS_AS(xi_tilde(xi, 17.0, p), std::out_of_range);
  }
  SUBCASE("excitation peak") {
    const auto at = single_photon_state(xi, 2.0, p);
    CHECK(std::norm(at.excited) == doctest::Approx(4.0 * std::exp(-2.0)).epsilon(2e-3));
    const auto start = single_photon_state(xi, 0.0, p);
    CHECK(start.excited == Complex(0.0));
    for (std::size_t n = 0; n < xi.size(); n += 1009) {
      CHECK(std::abs(start.photon[n] - std::sqrt(p.dt) * xi[n]) < 1e-15);
    }
  }
  SUBCASE("gaussian packet conserves norm to first order") {
    // Left-Riemann sums leave a deficit proportional to dt, not a fixed floor.
    auto worst = [](double dt) {
      SimulationParams q;
      q.dt = dt;
      q.n_steps = static_cast<std::size_t>(std::llround(12.0 / dt));
      const auto g = make_gaussian_wavepacket(1.0, 5.0, q.omega_q, q.grid());
      double w = 0.0;
      for (double t : {3.0, 5.0, 9.0}) {
        w = std::max(w, std::abs(single_photon_state(g, t, q).norm_squared() - 1.0));
      }
      return w;
    };
    const double coarse = worst(1e-3);
    const double fine = worst(5e-4);
    CHECK(coarse <= 1e-3);
    CHECK(coarse / fine == doctest::Approx(2.0).epsilon(0.05));
  }
  SUBCASE("agrees with the discrete recursion") {
    const auto run = run_single_excitation(p, xi, {p.n_steps});
    const auto f = xi_tilde(xi, p);
    double worst = 0.0;
    for (std::size_t n = 0; n < f.size(); n += 7) {
      worst = std::max(worst, std::abs(run.excited[n] - std::sqrt(p.gamma) * f[n]));
    }
    CHECK(worst <= 5.0 * p.gamma * p.dt);
    const auto cont = single_photon_state(xi, 4.0, p);
    SinglePhotonState disc = run_single_excitation(p, xi, {4000}).trajectory.back();
    CHECK(state_fidelity(cont, disc) >= 1.0 - 1e-3);
  }
}
