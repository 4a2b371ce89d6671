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

#include "collide1d/collision.hpp"
#include "collide1d/core.hpp"
#include "collide1d/sectors.hpp"
#include "collide1d/single_excitation.hpp"

namespace collide1d {

/// Partial trace over the field. rho is not renormalized: its trace is the
/// norm of the state it came from.
struct QubitDensityMatrix {
  QubitMatrix rho = QubitMatrix::Zero();

  double trace() const { return rho.trace().real(); }
  double norm_deficit() const { return 1.0 - trace(); }
  double p_e() const { return rho(1, 1).real(); }
  /// <sigma_minus> = rho_eg.
  Complex coherence() const { return rho(1, 0); }
  /// Eigenvalues of rho / trace, ascending.
  Eigen::Vector2d eigenvalues() const;
};

QubitDensityMatrix reduced_qubit(const DenseJointState& state);
QubitDensityMatrix reduced_qubit(const SectorState& state);
QubitDensityMatrix reduced_qubit(const SinglePhotonState& state);
QubitDensityMatrix reduced_qubit(const QubitMatrix& rho);

/// Entropy is reported only when |norm deficit| < 1e-3.
inline constexpr double kEntropyNormTolerance = 1e-3;
bool entropy_defined(const QubitDensityMatrix& rho);

/// von Neumann entropy in bits of the trace-normalized reduced state.
/// Eigenvalues down to -1e-10 are clamped to zero. Throws std::domain_error
/// when the norm deficit is 1e-3 or more.
double entanglement_entropy(const QubitDensityMatrix& rho);
template <class State>
double entanglement_entropy(const State& state) {
  return entanglement_entropy(reduced_qubit(state));
}

/// <a_n^dagger a_n> / dt for every mode.
std::vector<double> photon_density(const DenseJointState& state, double dt);
std::vector<double> photon_density(const SectorState& state);
std::vector<double> photon_density(const SinglePhotonState& state);

/// <a_n^dagger a_n> in a dense state.
double mode_occupation(const DenseJointState& state, std::size_t n);
/// <a_n> in a dense state.
Complex mode_amplitude(const DenseJointState& state, std::size_t n);
/// <sigma_minus> in a dense state.
Complex sigma_minus_expectation(const DenseJointState& state);

/// Input-output bookkeeping for step n >= 1.
struct IoRecord {
  std::size_t step = 0;
  Complex a_in;         // <a_{n-1}> / sqrt(dt) before collision n-1
  Complex a_out;        // <a_{n-1}> / sqrt(dt) after collision n-1
  Complex sigma_minus;  // <sigma_minus> before collision n-1, interaction picture
  double residual = 0.0;
};

/// residual = |a_out - a_in + sqrt(gamma) sigma_minus|. The trajectory must
/// hold consecutive snapshots 0, 1, ..., K; the interaction-picture phase is
/// exp(-i w t) with w = omega_q (lab) or omega_p (displaced).
std::vector<IoRecord> io_records(const Trajectory<DenseJointState>& trajectory,
                                 const SimulationParams& params, Frame frame);
std::vector<double> io_residual(const Trajectory<DenseJointState>& trajectory,
                                const SimulationParams& params, Frame frame);

/// |<a|b>|^2 / (<a|a><b|b>). Frame or layout mismatch throws.
double state_fidelity(const DenseJointState& a, const DenseJointState& b);
double state_fidelity(const SectorState& a, const SectorState& b);
double state_fidelity(const SectorState& a, const DenseJointState& b);
double state_fidelity(const SinglePhotonState& a, const SinglePhotonState& b);

/// Angular frequency from the mean spacing of local maxima (parabolic
/// refinement). Needs at least two maxima.
double oscillation_frequency(std::span<const double> samples, double dt);

struct PowerLawFit {
  double exponent = 0.0;
  double prefactor = 0.0;
};
/// Least-squares fit of log y = log c + p log x.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y);

}  // namespace collide1d
