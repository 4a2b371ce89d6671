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

#include "collide1d/sectors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace collide1d {

namespace {

QubitMatrix lindbladian(const SimulationParams& p, const QubitMatrix& rho) {
  const QubitMatrix sm = sigma_minus();
  const QubitMatrix sp = sigma_plus();
  const QubitMatrix h = p.delta * (sp * sm) - 0.5 * p.omega_rabi * sigma_y();
  const QubitMatrix n = sp * sm;
  return -kI * (h * rho - rho * h) + p.gamma * (sm * rho * sp - 0.5 * (n * rho + rho * n));
}

}  // namespace

BlochGenerator bloch_generator(const SimulationParams& params) {
  const std::array<QubitMatrix, 3> pauli = {sigma_x(), sigma_y(), sigma_z()};
  BlochGenerator g;
  const QubitMatrix drift = lindbladian(params, QubitMatrix::Identity());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      g.a(i, j) = 0.5 * (pauli[i] * lindbladian(params, pauli[j])).trace().real();
    }
    g.b(i) = 0.5 * (pauli[i] * drift).trace().real();
  }
  return g;
}

BlochVector bloch_vector(const QubitState& state) {
  const QubitMatrix rho = state * state.adjoint();
  return {(sigma_x() * rho).trace().real(), (sigma_y() * rho).trace().real(),
          (sigma_z() * rho).trace().real()};
}

std::vector<BlochVector> rk4_integrate(const BlochGenerator& g, const BlochVector& s0, double h,
                                       std::size_t n_steps) {
  std::vector<BlochVector> out;
  out.reserve(n_steps + 1);
  out.push_back(s0);
  BlochVector s = s0;
  auto f = [&](const BlochVector& x) -> BlochVector { return g.a * x + g.b; };
  for (std::size_t k = 0; k < n_steps; ++k) {
    const BlochVector k1 = f(s);
    const BlochVector k2 = f(s + 0.5 * h * k1);
    const BlochVector k3 = f(s + 0.5 * h * k2);
    const BlochVector k4 = f(s + h * k3);
    s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    out.push_back(s);
  }
  return out;
}

double max_rk_step(const SimulationParams& p) {
  double bound = 1.0 / p.gamma;
  if (p.omega_rabi > 0.0) bound = std::min(bound, 1.0 / p.omega_rabi);
  bound = std::min(bound, 1.0 / std::max(std::abs(p.delta), p.gamma));
  return 1e-3 * bound;
}

BlochTrajectory obe_integrate(const SimulationParams& params, double t_final,
                              const QubitState& phi0, std::optional<double> rk_step) {
  params.validate();
  if (!(t_final >= 0.0)) throw std::invalid_argument("obe_integrate: t_final must be >= 0");
  const double bound = max_rk_step(params);
  std::size_t substeps = 0;
  if (rk_step) {
    if (!(*rk_step > 0.0) || *rk_step > bound * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "obe_integrate: RK4 step " << *rk_step << " exceeds the bound " << bound;
      throw std::invalid_argument(os.str());
    }
    const double ratio = params.dt / *rk_step;
    substeps = static_cast<std::size_t>(std::llround(ratio));
    if (substeps == 0 || std::abs(ratio - static_cast<double>(substeps)) > 1e-9 * ratio) {
      throw std::invalid_argument("obe_integrate: RK4 step must divide dt");
    }
  } else {
    substeps = static_cast<std::size_t>(std::ceil(params.dt / bound * (1.0 - 1e-12)));
    substeps = std::max<std::size_t>(substeps, 1);
  }
  const std::size_t n = static_cast<std::size_t>(std::floor(t_final / params.dt + 1e-9));
  const double h = params.dt / static_cast<double>(substeps);
  const BlochGenerator g = bloch_generator(params);
  const QubitState phi = phi0 / phi0.norm();

  BlochTrajectory out;
  out.grid = TimeGrid(params.dt, std::max<std::size_t>(n, 1));
  out.substeps = substeps;
  out.s.reserve(n + 1);
  BlochVector s = bloch_vector(phi);
  out.s.push_back(s);
  for (std::size_t k = 0; k < n; ++k) {
    s = rk4_integrate(g, s, h, substeps).back();
    out.s.push_back(s);
  }
  return out;
}

CmComparison compare_with_cm(const SimulationParams& params, double t_final, std::size_t m_max,
                             const QubitState& phi0) {
  SimulationParams p = params;
  p.n_steps = static_cast<std::size_t>(std::llround(t_final / params.dt));
  if (p.n_steps == 0) throw std::invalid_argument("compare_with_cm: t_final shorter than dt");
  const QubitState phi = phi0 / phi0.norm();
  const auto cm = run_sector_reduced(p, m_max, phi);
  const auto obe = obe_integrate(p, p.grid().duration(), phi);
  CmComparison out;
  for (std::size_t n = 0; n <= p.n_steps; ++n) {
    const double err = std::abs(cm.qubit[n](1, 1).real() - obe.p_e(n));
    if (err > out.max_pe_error) {
      out.max_pe_error = err;
      out.argmax_step = n;
    }
    out.truncation_deficit = std::max(out.truncation_deficit, 1.0 - cm.total_weight(n));
  }
  return out;
}

}  // namespace collide1d
