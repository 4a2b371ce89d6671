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

#pragma once

#include "collide1d/core.hpp"

namespace collide1d {

/// One-excitation joint state: excited * |e, vac> + sum_n photon[n] |g, 1_n>.
/// photon[n] is the discrete amplitude (sqrt(dt) times the density).
struct SinglePhotonState {
  TimeGrid grid{1.0, 1};
  std::size_t step = 0;
  Complex excited{};
  std::vector<Complex> photon;

  double norm_squared() const;
};

/// |g> with the wavepacket in the field.
SinglePhotonState single_photon_input(const Wavepacket& wavepacket);
/// |e> with the field in vacuum over the given number of modes.
SinglePhotonState excited_vacuum(const TimeGrid& grid, std::size_t modes);

struct SingleExcitationRun {
  Trajectory<SinglePhotonState> trajectory;
  std::vector<Complex> excited;  // qubit amplitude at every step 0..n_steps
  std::vector<double> norm;      // |excited|^2 + sum |photon|^2 at every step
};

/// Effective-map recursion. Collision n mixes only |e, vac> and |g, 1_n>:
///   excited' = r excited + s e^{+i w_q t_n} photon[n]
///   photon[n]' = r photon[n] - s e^{-i w_q t_n} excited
/// with r = exp(-gamma dt / 2), s = sqrt(1 - exp(-gamma dt)). Each step touches
/// one mode, so a run costs O(n_steps) beyond the initial copy.
SingleExcitationRun run_single_excitation(const SimulationParams& params,
                                          SinglePhotonState initial,
                                          const std::vector<std::size_t>& steps,
                                          GuardPolicy policy = GuardPolicy::warn);

SingleExcitationRun run_single_excitation(const SimulationParams& params,
                                          const Wavepacket& wavepacket,
                                          const std::vector<std::size_t>& steps,
                                          GuardPolicy policy = GuardPolicy::warn);

}  // namespace collide1d
