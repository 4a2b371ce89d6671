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

// Optical Bloch equations for the driven, damped qubit:
//   drho/dt = -i[H, rho] + gamma (s- rho s+ - {s+ s-, rho} / 2),
//   H = delta s+s- - (Omega / 2) s_y,
// integrated on the Bloch vector (<s_x>, <s_y>, <s_z>) with classic RK4.

#pragma once

#include "collide1d/core.hpp"

#include <optional>

namespace collide1d {

using BlochVector = Eigen::Vector3d;

/// ds/dt = a s + b, built from the Lindbladian: a_ij = Tr(s_i L(s_j)) / 2,
/// b_i = Tr(s_i L(I)) / 2.
struct BlochGenerator {
  Eigen::Matrix3d a;
  BlochVector b;
};
BlochGenerator bloch_generator(const SimulationParams& params);

BlochVector bloch_vector(const QubitState& state);
inline double excited_population(const BlochVector& s) { return 0.5 * (1.0 + s(2)); }

/// n_steps classic RK4 steps of size h; returns n_steps + 1 states.
std::vector<BlochVector> rk4_integrate(const BlochGenerator& generator, const BlochVector& s0,
                                       double h, std::size_t n_steps);

struct BlochTrajectory {
  TimeGrid grid{1.0, 1};
  std::vector<BlochVector> s;  // at every grid point
  std::size_t substeps = 1;    // RK4 steps per grid interval

  double p_e(std::size_t n) const { return excited_population(s.at(n)); }
};

/// Largest admissible RK4 step, 1e-3 min(1/gamma, 1/Omega, 1/max(|delta|, gamma)).
double max_rk_step(const SimulationParams& params);

/// Samples at t_n = n dt for t_n <= t_final. The RK4 step defaults to the
/// largest divisor of dt within max_rk_step; an explicit step above the bound
/// throws std::invalid_argument, as does one that does not divide dt.
BlochTrajectory obe_integrate(const SimulationParams& params, double t_final,
                              const QubitState& phi0, std::optional<double> rk_step = {});

struct CmComparison {
  double max_pe_error = 0.0;        // max over the grid of |P_e(CM) - P_e(OBE)|
  double truncation_deficit = 0.0;  // max over the grid of 1 - retained sector weight
  std::size_t argmax_step = 0;
};

/// Sector-restricted collision model (exact blocks) against the Bloch equations.
CmComparison compare_with_cm(const SimulationParams& params, double t_final, std::size_t m_max,
                             const QubitState& phi0);

}  // namespace collide1d
