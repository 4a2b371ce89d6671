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

// Closed-form wavefunction coefficients.
//
// f0(eps, phi0, t) is the no-emission amplitude <eps|M(t)|phi0> with
// M(t) = exp(-i t H_eff), H_eff = (delta - i gamma/2) s+s- - (Omega/2) s_y.
// The m-photon densities chain f0 blocks between emission times. Discrete
// grid amplitudes carry an extra (sqrt dt)^m.

#pragma once

#include "collide1d/core.hpp"
#include "collide1d/sectors.hpp"
#include "collide1d/single_excitation.hpp"

namespace collide1d {

Complex f0(QubitLabel eps, QubitLabel phi0, double t, const SimulationParams& params);

/// M(t) with M(eps, phi0) = f0(eps, phi0, t).
QubitMatrix f0_matrix(double t, const SimulationParams& params);

/// One-photon density, 0 <= t1 <= t.
Complex f1(QubitLabel eps, QubitLabel phi0, double t, double t1, const SimulationParams& params);

/// Two-photon density, 0 <= t1 <= t2 <= t.
Complex f2(QubitLabel eps, QubitLabel phi0, double t, double t1, double t2,
           const SimulationParams& params);

/// m-photon density for ascending emission times in [0, t]; an empty list gives f0.
Complex fm(QubitLabel eps, QubitLabel phi0, double t, std::span<const double> times,
           const SimulationParams& params);

/// Grid-sampled coefficients for one (params, initial qubit state). Holds
/// M(k dt) for k = 0..n_steps so single tuples are cheap to evaluate.
class CoherentCoefficients {
 public:
  CoherentCoefficients(const SimulationParams& params, const QubitState& initial);

  const SimulationParams& params() const noexcept { return params_; }
  const QubitMatrix& no_emission(std::size_t k) const { return table_.at(k); }

  /// Discrete (g, e) amplitude at t_step for photons in the given modes
  /// (strictly increasing). Zero when a mode is >= step.
  QubitState amplitude(std::size_t step, std::span<const std::size_t> modes) const;

  /// -sqrt(gamma dt) exp(-i w_p t_n).
  Complex emission_factor(std::size_t mode) const;

 private:
  SimulationParams params_;
  QubitState initial_;
  std::vector<QubitMatrix> table_;
};

struct CoherentAssembly {
  CoefficientSet coefficients;
  double norm = 0.0;
  /// 1 - norm, the weight of the sectors above m_max.
  double norm_deficit = 0.0;
};

/// Every sector amplitude up to m_max (<= 3) at time t of params.grid().
/// Refuses (CapacityError) past the sector tuple guard.
CoherentAssembly assemble_coherent(const SimulationParams& params, double t, std::size_t m_max,
                                   const QubitState& initial);

/// Reduced qubit matrices of the analytic sectors at every grid point,
/// O(n_steps * m_max). Uses the semigroup M(t + dt) = M(dt) M(t).
SectorReducedTrajectory coherent_reduced(const SimulationParams& params, std::size_t m_max,
                                         const QubitState& initial);

/// Resonant strong-drive approximation (Omega' -> Omega, gamma / Omega -> 0)
/// with at most one photon, qubit starting in g. Warns when Omega < 20 gamma
/// or delta != 0.
struct StrongDriveResult {
  CoefficientSet coefficients;
  std::vector<std::string> warnings;
};
StrongDriveResult strong_drive_state(double t, const SimulationParams& params);

/// Wigner-Weisskopf state at time t (qubit starting in e, field in vacuum).
SinglePhotonState spontaneous_emission_state(double t, const SimulationParams& params);

/// Closed-form norm exp(-gamma t) + gamma * int_0^t exp(-gamma t') dt'.
double spontaneous_emission_norm(double t, double gamma);

/// Filtered envelope at every grid point 0..wavepacket.size() (left Riemann sum).
std::vector<Complex> xi_tilde(const Wavepacket& wavepacket, const SimulationParams& params);
Complex xi_tilde(const Wavepacket& wavepacket, double t, const SimulationParams& params);

/// Continuum single-photon solution sampled on the wavepacket grid at time t.
SinglePhotonState single_photon_state(const Wavepacket& wavepacket, double t,
                                      const SimulationParams& params);

}  // namespace collide1d
