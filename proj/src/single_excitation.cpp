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

#include "collide1d/single_excitation.hpp"

#include <algorithm>
#include <cmath>

namespace collide1d {

double SinglePhotonState::norm_squared() const {
  double acc = std::norm(excited);
  for (const auto& a : photon) acc += std::norm(a);
  return acc;
}

SinglePhotonState single_photon_input(const Wavepacket& wavepacket) {
  SinglePhotonState s;
  s.grid = wavepacket.grid();
  s.photon.resize(wavepacket.size());
  const double root_dt = std::sqrt(wavepacket.grid().dt());
  for (std::size_t n = 0; n < wavepacket.size(); ++n) s.photon[n] = root_dt * wavepacket[n];
  return s;
}

SinglePhotonState excited_vacuum(const TimeGrid& grid, std::size_t modes) {
  SinglePhotonState s;
  s.grid = grid;
  s.excited = 1.0;
  s.photon.assign(modes, Complex{});
  return s;
}

SingleExcitationRun run_single_excitation(const SimulationParams& params,
                                          SinglePhotonState initial,
                                          const std::vector<std::size_t>& steps,
                                          GuardPolicy policy) {
  SingleExcitationRun out;
  out.trajectory.warnings = check_validity(params, Frame::lab, policy);
  if (initial.photon.size() < params.n_steps) {
    throw std::invalid_argument("run_single_excitation: field has fewer modes than collisions");
  }
  if (std::abs(initial.grid.dt() - params.dt) > 1e-12 * params.dt) {
    throw std::invalid_argument("run_single_excitation: field grid spacing differs from dt");
  }
  if (!std::is_sorted(steps.begin(), steps.end()) ||
      (!steps.empty() && steps.back() > params.n_steps)) {
    throw std::invalid_argument(
        "run_single_excitation: snapshot steps must be ascending and <= n_steps");
  }

  initial.grid = params.grid();
  initial.step = 0;
  const double r = std::exp(-0.5 * params.gamma * params.dt);
  const double s = std::sqrt(-std::expm1(-params.gamma * params.dt));

  out.excited.reserve(params.n_steps + 1);
  out.norm.reserve(params.n_steps + 1);
  double norm = initial.norm_squared();
  auto next = steps.begin();
  auto record = [&](std::size_t step) {
    out.excited.push_back(initial.excited);
    out.norm.push_back(norm);
    while (next != steps.end() && *next == step) {
      initial.step = step;
      out.trajectory.steps.push_back(step);
      out.trajectory.states.push_back(initial);
      ++next;
    }
  };

  record(0);
  for (std::size_t n = 0; n < params.n_steps; ++n) {
    const Complex up = std::polar(1.0, params.omega_q * params.dt * static_cast<double>(n));
    const Complex ce = initial.excited;
    const Complex gn = initial.photon[n];
    const Complex ce_next = r * ce + s * up * gn;
    const Complex gn_next = r * gn - s * std::conj(up) * ce;
    norm += std::norm(ce_next) + std::norm(gn_next) - std::norm(ce) - std::norm(gn);
    initial.excited = ce_next;
    initial.photon[n] = gn_next;
    record(n + 1);
  }
  return out;
}

SingleExcitationRun run_single_excitation(const SimulationParams& params,
                                          const Wavepacket& wavepacket,
                                          const std::vector<std::size_t>& steps,
                                          GuardPolicy policy) {
  if (wavepacket.size() < params.n_steps) {
    throw std::invalid_argument("run_single_excitation: wavepacket grid shorter than n_steps");
  }
  return run_single_excitation(params, single_photon_input(wavepacket), steps, policy);
}

}  // namespace collide1d
