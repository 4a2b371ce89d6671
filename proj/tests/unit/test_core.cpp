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

#include "collide1d/core.hpp"
#include "collide1d/tuples.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace collide1d;

TEST_CASE("rabi frequency from drive amplitude") {
  CHECK(rabi_from_amplitude(0.0, 1.0) == 0.0);
  CHECK(rabi_from_amplitude(1.0, 1.0) == doctest::Approx(2.0));
  CHECK(rabi_from_amplitude(3.0, 4.0) == doctest::Approx(12.0));
  CHECK_THROWS_AS(rabi_from_amplitude(1.0, -1.0), std::domain_error);
}

TEST_CASE("complex rabi frequency") {
  SimulationParams p;
  SUBCASE("real limit") {
    p.omega_rabi = 1.0;
    p.gamma = 0.0;
    const Complex w = complex_rabi(p);
    CHECK(w.real() == doctest::Approx(1.0));
    CHECK(std::abs(w.imag()) < 1e-15);
  }
  SUBCASE("pure imaginary root takes the upper half plane") {
    p.gamma = 2.0;
    const Complex w = complex_rabi(p);
    CHECK(std::abs(w - kI) < 1e-15);
  }
  SUBCASE("omega squared minus gamma squared over four") {
    p.omega_rabi = 2.0;
    p.gamma = 2.0;
    CHECK(std::abs(complex_rabi(p) - std::sqrt(3.0)) < 1e-15);
  }
  SUBCASE("square reproduces the argument") {
    for (double om : {0.0, 0.7, 20.0}) {
      for (double de : {-3.0, 0.0, 0.4}) {
        p.omega_rabi = om;
        p.delta = de;
        p.gamma = 1.3;
        const Complex arg = om * om + std::pow(Complex(de, -p.gamma / 2), 2);
        const Complex w = complex_rabi(p);
        CHECK(std::abs(w * w - arg) <= 1e-12 * std::max(1.0, std::abs(arg)));
      }
    }
  }
}

TEST_CASE("params validation") {
  SimulationParams p;
  CHECK_NOTHROW(p.validate());
  p.gamma = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.fock_dim = 1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.n_steps = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("validity guards warn or throw") {
  SimulationParams p;
  p.dt = 0.2;
  p.n_steps = 4;
  CHECK(validity_warnings(p, Frame::lab).size() == 1);
  CHECK(check_validity(p, Frame::lab, GuardPolicy::warn).size() == 1);
  CHECK_THROWS_AS(check_validity(p, Frame::lab, GuardPolicy::strict), ValidityError);

  p.dt = 1e-3;
  p.omega_rabi = 200.0;
  CHECK(validity_warnings(p, Frame::lab).empty());
  CHECK(validity_warnings(p, Frame::displaced).size() == 1);
}

TEST_CASE("time grid") {
  const TimeGrid g(0.25, 8);
  CHECK(g.size() == 9);
  CHECK(g.duration() == doctest::Approx(2.0));
  for (std::size_t n = 0; n < g.size(); ++n) CHECK(g.index(g.time(n)) == n);
  CHECK_THROWS_AS(g.index(0.3), std::out_of_range);
  CHECK_THROWS_AS(g.index(2.25), std::out_of_range);
  CHECK_THROWS_AS(g.index(-0.25), std::out_of_range);
  CHECK_THROWS_AS(TimeGrid(0.0, 3), std::invalid_argument);

  const TimeGrid fine(1e-3, 20000);
  for (std::size_t n : {0u, 1u, 7u, 1234u, 19999u, 20000u}) CHECK(fine.index(fine.time(n)) == n);
}

TEST_CASE("exponential wavepacket") {
  const TimeGrid g(1e-3, 20000);
  const auto xi = make_exponential_wavepacket(1.0, 0.0, g);
  CHECK(std::abs(xi.norm() - 1.0) < 1e-9);
  // Before renormalization |xi(0)|^2 = decay; the applied factor is within rounding of 1.
  CHECK(std::norm(xi[0] / xi.applied_scale()) == doctest::Approx(1.0).epsilon(1e-12));

  const auto a = make_exponential_wavepacket(2.0, 0.0, g);
  const auto b = make_exponential_wavepacket(2.0, 5.0, g);
  for (std::size_t n = 0; n < a.size(); n += 997) {
    CHECK(std::norm(a[n]) == doctest::Approx(std::norm(b[n])).epsilon(1e-12));
  }

  CHECK_THROWS_AS(make_exponential_wavepacket(1.0, 0.0, TimeGrid(1e-3, 1000)),
                  std::invalid_argument);
  const auto cut = make_exponential_wavepacket(1.0, 0.0, TimeGrid(1e-3, 1000), true);
  CHECK(std::abs(cut.norm() - 1.0) < 1e-9);
  CHECK(cut.applied_scale() > 1.0);
  CHECK_THROWS_AS(make_exponential_wavepacket(0.0, 0.0, g), std::invalid_argument);
}

TEST_CASE("gaussian wavepacket") {
  const TimeGrid g(1e-3, 12000);
  const auto a = make_gaussian_wavepacket(1.0, 5.0, 0.0, g);
  CHECK(std::abs(a.norm() - 1.0) < 1e-9);

  std::size_t peak = 0;
  for (std::size_t n = 1; n < a.size(); ++n) {
    if (std::abs(a[n]) > std::abs(a[peak])) peak = n;
  }
  CHECK(g.time(peak) == doctest::Approx(5.0));

  // Translation: shifting t0 by k steps shifts the envelope by k samples.
  const auto b = make_gaussian_wavepacket(1.0, 6.0, 0.0, g);
  for (std::size_t n = 1000; n < 11000; n += 250) {
    const double raw_b = std::abs(b[n]) / b.applied_scale();
    const double raw_a = std::abs(a[n - 1000]) / a.applied_scale();
    CHECK(std::abs(raw_b - raw_a) < 1e-12);
  }

  CHECK_THROWS_AS(make_gaussian_wavepacket(1.0, 4.0, 0.0, g), std::invalid_argument);
  CHECK_THROWS_AS(make_gaussian_wavepacket(1.0, 8.0, 0.0, g), std::invalid_argument);
}

TEST_CASE("snapshot steps") {
  CHECK(snapshot_steps(10, 4) == std::vector<std::size_t>{0, 4, 8, 10});
  CHECK(snapshot_steps(8, 4) == std::vector<std::size_t>{0, 4, 8});
  CHECK(snapshot_steps(3).size() == 4);
}

TEST_CASE("pauli conventions") {
  CHECK((sigma_minus() * basis_state(QubitLabel::e) - basis_state(QubitLabel::g)).norm() == 0.0);
  CHECK((sigma_z() * basis_state(QubitLabel::e) - basis_state(QubitLabel::e)).norm() == 0.0);
  CHECK((sigma_plus() * sigma_minus() - (sigma_z() + QubitMatrix::Identity()) / 2.0).norm() < 1e-15);
  CHECK((sigma_x() - sigma_plus() - sigma_minus()).norm() == 0.0);
  // sigma_z is diag(-1, 1) in the (g, e) order, hence the minus sign.
  CHECK((sigma_x() * sigma_y() + kI * sigma_z()).norm() < 1e-15);
}

TEST_CASE("colex tuple ranking") {
  using namespace tuples;
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 5) == 0);
  for (std::size_t m = 0; m <= 3; ++m) {
    std::size_t count = 0;
    std::vector<std::size_t> back(m);
    for_each(m, 7, [&](std::span<const std::size_t> t, std::size_t r) {
      CHECK(rank(t) == r);
      unrank(r, back);
      CHECK(std::equal(back.begin(), back.end(), t.begin()));
      for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] > t[i - 1]);
      ++count;
    });
    CHECK(count == binomial(7, m));
  }
  const std::vector<std::size_t> bad{2, 2};
  CHECK_THROWS_AS(rank(bad), std::invalid_argument);
}
