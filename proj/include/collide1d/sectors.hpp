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

// Displaced-frame propagation restricted to low photon-number sectors.
//
// Every temporal mode enters its collision in vacuum, so collision n only
// needs two qubit operators: the no-emission block <0_n|U_n|0_n> and the
// emission block <1_n|U_n|0_n>. A sector-m amplitude is indexed by the
// strictly increasing tuple of modes holding the m photons (see tuples.hpp).

#pragma once

#include "collide1d/collision.hpp"
#include "collide1d/core.hpp"

namespace collide1d {

enum class SectorBlocks {
  exact,        // blocks of exp(-i dt H_n) at Fock dimension 2
  first_order,  // factorized no-emission exponential and -sqrt(gamma dt) s- emission
};

struct CollisionBlocks {
  QubitMatrix no_emission;
  QubitMatrix emission;  // at t = 0; collision n carries exp(-i w_p t_n)
};

CollisionBlocks displaced_blocks(const SimulationParams& params, SectorBlocks kind);

enum class Origin { propagated, analytic };

/// Sector-resolved joint state. sectors[m][rank] holds the (g, e) amplitudes
/// of the m-photon tuple with the given colex rank; only modes < step carry
/// photons, so sectors[m].size() == C(step, m).
struct SectorState {
  TimeGrid grid{1.0, 1};
  std::size_t step = 0;
  Frame frame = Frame::displaced;
  Origin origin = Origin::propagated;
  std::vector<std::vector<QubitState>> sectors;

  std::size_t max_photons() const noexcept { return sectors.empty() ? 0 : sectors.size() - 1; }
  double sector_weight(std::size_t m) const;
  double weight() const;
  /// Amplitude of a strictly increasing mode tuple; zero outside the stored range.
  QubitState amplitude(std::span<const std::size_t> modes) const;
};

/// Analytic coefficients share the sector layout.
using CoefficientSet = SectorState;

/// Refuses (CapacityError) when sum_{m <= m_max} C(modes, m) exceeds 2^25 tuples.
void check_sector_capacity(std::size_t modes, std::size_t m_max);

Trajectory<SectorState> run_displaced_sectors(const SimulationParams& params, std::size_t m_max,
                                              const QubitState& initial,
                                              const std::vector<std::size_t>& steps,
                                              GuardPolicy policy = GuardPolicy::warn,
                                              SectorBlocks blocks = SectorBlocks::exact);

/// Reduced qubit matrices of each sector, sum over tuples of A A^dagger,
/// at every step. Costs O(n_steps * m_max) and no tensor storage.
struct SectorReducedTrajectory {
  TimeGrid grid{1.0, 1};
  std::size_t max_photons = 0;
  std::vector<QubitMatrix> qubit;  // [step], summed over sectors
  std::vector<double> weights;     // [step * (max_photons + 1) + m]
  std::vector<double> flux;        // [step], photon density of mode step-1; NaN at step 0
  std::vector<std::string> warnings;

  double sector_weight(std::size_t step, std::size_t m) const {
    return weights[step * (max_photons + 1) + m];
  }
  double total_weight(std::size_t step) const;
};

/// Same propagator as run_displaced_sectors, tracked as
/// rho_m' = K rho_m K^dagger + E rho_{m-1} E^dagger.
SectorReducedTrajectory run_sector_reduced(const SimulationParams& params, std::size_t m_max,
                                           const QubitState& initial,
                                           GuardPolicy policy = GuardPolicy::warn,
                                           SectorBlocks blocks = SectorBlocks::exact);

/// Embeds a sector state into the dense layout over grid.n_steps() modes.
DenseJointState to_dense(const SectorState& state, int d = 2);

/// Projects a dense state onto at most one photon per mode and m_max photons.
SectorState to_sectors(const DenseJointState& state, std::size_t step, std::size_t m_max,
                       const TimeGrid& grid);

}  // namespace collide1d
