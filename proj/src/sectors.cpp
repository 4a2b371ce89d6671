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

#include "collide1d/sectors.hpp"

#include "collide1d/tuples.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace collide1d {

namespace {

constexpr std::size_t kSectorCapacity = std::size_t{1} << 25;

// Rebase once the accumulated propagator has condition number above this.
constexpr double kRebaseCondition = 1e3;

QubitMatrix no_emission_first_order(const SimulationParams& p) {
  // exp{-(gamma dt/4 + i delta dt/2)} exp{-(i dt/2)[(delta - i gamma/2) s_z - Omega s_y]}
  const Complex shifted{p.delta, -0.5 * p.gamma};
  const QubitMatrix a = shifted * sigma_z() - p.omega_rabi * sigma_y();
  const Complex root = complex_rabi(p);
  const double dt = p.dt;
  const Complex half = 0.5 * root * dt;
  const Complex cos_term = std::cos(half);
  const Complex sinc_term = std::abs(root * dt) < 1e-6 ? Complex(0.5 * dt) : std::sin(half) / root;
  const Complex pre = std::exp(Complex(-0.25 * p.gamma * dt, -0.5 * p.delta * dt));
  return pre * (cos_term * QubitMatrix::Identity() - kI * sinc_term * a);
}

double condition(const QubitMatrix& q, const QubitMatrix& q_inv) {
  return q.operatorNorm() * q_inv.operatorNorm();
}

}  // namespace

CollisionBlocks displaced_blocks(const SimulationParams& params, SectorBlocks kind) {
  if (kind == SectorBlocks::first_order) {
    return {no_emission_first_order(params),
            -std::sqrt(params.gamma * params.dt) * sigma_minus()};
  }
  // <k_0|U_0|0_0> restricted to the qubit; index q * 2 + k at d = 2.
  const CollisionUnitary u = displaced_collision_unitary(0, params, 2);
  CollisionBlocks b;
  for (int q = 0; q < 2; ++q) {
    for (int p = 0; p < 2; ++p) {
      b.no_emission(q, p) = u.matrix(q * 2 + 0, p * 2 + 0);
      b.emission(q, p) = u.matrix(q * 2 + 1, p * 2 + 0);
    }
  }
  return b;
}

double SectorState::sector_weight(std::size_t m) const {
  double acc = 0.0;
  for (const auto& v : sectors.at(m)) acc += v.squaredNorm();
  return acc;
}

double SectorState::weight() const {
  double acc = 0.0;
  for (std::size_t m = 0; m < sectors.size(); ++m) acc += sector_weight(m);
  return acc;
}

QubitState SectorState::amplitude(std::span<const std::size_t> modes) const {
  if (modes.size() >= sectors.size()) return QubitState::Zero();
  if (!modes.empty() && modes.back() >= step) return QubitState::Zero();
  const std::size_t r = tuples::rank(modes);
  const auto& sector = sectors[modes.size()];
  return r < sector.size() ? sector[r] : QubitState::Zero();
}

void check_sector_capacity(std::size_t modes, std::size_t m_max) {
  std::size_t total = 0;
  for (std::size_t m = 0; m <= m_max && m <= modes; ++m) {
    const std::size_t c = tuples::binomial(modes, m);
    total = (c > kSectorCapacity || total > kSectorCapacity) ? kSectorCapacity + 1 : total + c;
  }
  if (total > kSectorCapacity) {
    double required = 0.0;
    for (std::size_t m = 0; m <= m_max && m <= modes; ++m) {
      required += static_cast<double>(tuples::binomial(modes, m));
    }
    const double bytes = required * sizeof(QubitState);
    std::ostringstream os;
    os << "sector tensors refused: " << modes << " modes with up to " << m_max
       << " photons need " << required << " tuples (" << bytes / (1 << 20)
       << " MiB); limit is " << kSectorCapacity << " tuples";
    throw CapacityError(os.str(), bytes, static_cast<double>(kSectorCapacity) * sizeof(QubitState));
  }
}

Trajectory<SectorState> run_displaced_sectors(const SimulationParams& params, std::size_t m_max,
                                              const QubitState& initial,
                                              const std::vector<std::size_t>& steps,
                                              GuardPolicy policy, SectorBlocks kind) {
  Trajectory<SectorState> out;
  out.warnings = check_validity(params, Frame::displaced, policy);
  const std::size_t n_steps = params.n_steps;
  check_sector_capacity(n_steps, m_max);
  if (!std::is_sorted(steps.begin(), steps.end()) ||
      (!steps.empty() && steps.back() > n_steps)) {
    throw std::invalid_argument(
        "run_displaced_sectors: snapshot steps must be ascending and <= n_steps");
  }

  const CollisionBlocks blocks = displaced_blocks(params, kind);
  const QubitMatrix k = blocks.no_emission;
  const QubitMatrix k_inv = k.inverse();

  // Amplitudes are kept pulled back by the accumulated no-emission propagator
  // q: the physical amplitude is q * pulled[m][r]. A step then only appends
  // the newly emitted tuples instead of touching every stored one.
  std::vector<std::vector<QubitState>> pulled(m_max + 1);
  for (std::size_t m = 0; m <= m_max; ++m) pulled[m].reserve(tuples::binomial(n_steps, m));
  pulled[0].push_back(initial);
  QubitMatrix q = QubitMatrix::Identity();
  QubitMatrix q_inv = QubitMatrix::Identity();

  auto rebase = [&]() {
    for (auto& sector : pulled) {
      for (auto& v : sector) v = q * v;
    }
    q.setIdentity();
    q_inv.setIdentity();
  };

  auto next = steps.begin();
  auto record = [&](std::size_t step) {
    while (next != steps.end() && *next == step) {
      SectorState s;
      s.grid = params.grid();
      s.step = step;
      ++next;
      if (step == n_steps && next == steps.end()) {
        rebase();
        s.sectors = std::move(pulled);
      } else {
        s.sectors.resize(m_max + 1);
        for (std::size_t m = 0; m <= m_max; ++m) {
          s.sectors[m].reserve(pulled[m].size());
          for (const auto& v : pulled[m]) s.sectors[m].push_back(q * v);
        }
      }
      out.steps.push_back(step);
      out.states.push_back(std::move(s));
    }
  };

  record(0);
  for (std::size_t n = 0; n < n_steps; ++n) {
    const Complex phase = std::polar(1.0, -params.omega_p() * params.dt * static_cast<double>(n));
    const QubitMatrix q_next = k * q;
    const QubitMatrix q_next_inv = q_inv * k_inv;
    const QubitMatrix transfer = q_next_inv * (phase * blocks.emission) * q;
    // Highest sector first so that tuples appended at this step are not re-emitted from.
    for (std::size_t m = m_max; m-- > 0;) {
      const std::size_t count = pulled[m].size();
      auto& dst = pulled[m + 1];
      for (std::size_t i = 0; i < count; ++i) dst.push_back(transfer * pulled[m][i]);
    }
    q = q_next;
    q_inv = q_next_inv;
    if (condition(q, q_inv) > kRebaseCondition) rebase();
    record(n + 1);
  }
  return out;
}

double SectorReducedTrajectory::total_weight(std::size_t step) const {
  double acc = 0.0;
  for (std::size_t m = 0; m <= max_photons; ++m) acc += sector_weight(step, m);
  return acc;
}

SectorReducedTrajectory run_sector_reduced(const SimulationParams& params, std::size_t m_max,
                                           const QubitState& initial, GuardPolicy policy,
                                           SectorBlocks kind) {
  SectorReducedTrajectory out;
  out.warnings = check_validity(params, Frame::displaced, policy);
  out.grid = params.grid();
  out.max_photons = m_max;
  const std::size_t n_steps = params.n_steps;
  out.qubit.reserve(n_steps + 1);
  out.weights.reserve((n_steps + 1) * (m_max + 1));
  out.flux.reserve(n_steps + 1);

  const CollisionBlocks blocks = displaced_blocks(params, kind);
  const QubitMatrix& k = blocks.no_emission;
  std::vector<QubitMatrix> rho(m_max + 1, QubitMatrix::Zero());
  rho[0] = initial * initial.adjoint();

  auto record = [&](double flux) {
    QubitMatrix total = QubitMatrix::Zero();
    for (const auto& r : rho) {
      total += r;
      out.weights.push_back(r.trace().real());
    }
    out.qubit.push_back(total);
    out.flux.push_back(flux);
  };

  record(std::numeric_limits<double>::quiet_NaN());
  std::vector<QubitMatrix> next(m_max + 1);
  for (std::size_t n = 0; n < n_steps; ++n) {
    // The global emission phase cancels in E rho E^dagger.
    const QubitMatrix& e = blocks.emission;
    double emitted = 0.0;
    for (std::size_t m = 0; m <= m_max; ++m) {
      next[m] = k * rho[m] * k.adjoint();
      if (m > 0) {
        const QubitMatrix created = e * rho[m - 1] * e.adjoint();
        next[m] += created;
        emitted += created.trace().real();
      }
    }
    std::swap(rho, next);
    record(emitted / params.dt);
  }
  return out;
}

DenseJointState to_dense(const SectorState& state, int d) {
  const std::size_t modes = state.grid.n_steps();
  DenseJointState dense(modes, d, state.frame);
  auto amps = dense.amplitudes();
  const std::size_t sq = dense.qubit_stride();
  for (std::size_t m = 0; m < state.sectors.size(); ++m) {
    tuples::for_each(m, state.step, [&](std::span<const std::size_t> t, std::size_t r) {
      if (r >= state.sectors[m].size()) return;
      std::size_t flat = 0;
      for (auto mode : t) flat += dense.mode_stride(mode);
      amps[flat] = state.sectors[m][r](0);
      amps[flat + sq] = state.sectors[m][r](1);
    });
  }
  return dense;
}

SectorState to_sectors(const DenseJointState& state, std::size_t step, std::size_t m_max,
                       const TimeGrid& grid) {
  SectorState s;
  s.grid = grid;
  s.step = step;
  s.frame = state.frame();
  s.sectors.resize(m_max + 1);
  for (std::size_t m = 0; m <= m_max; ++m) {
    s.sectors[m].assign(tuples::binomial(step, m), QubitState::Zero());
  }
  const auto amps = state.amplitudes();
  const std::size_t sq = state.qubit_stride();
  std::vector<std::size_t> modes;
  for (std::size_t flat = 0; flat < sq; ++flat) {
    modes.clear();
    bool representable = true;
    for (std::size_t n = 0; n < state.modes() && representable; ++n) {
      const int occ = state.occupation(flat, n);
      if (occ > 1 || (occ == 1 && n >= step)) representable = false;
      if (occ == 1) modes.push_back(n);
    }
    if (!representable || modes.size() > m_max) continue;
    const std::size_t r = tuples::rank(modes);
    s.sectors[modes.size()][r] = QubitState(amps[flat], amps[flat + sq]);
  }
  return s;
}

}  // namespace collide1d
