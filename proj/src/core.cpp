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

#include <algorithm>
#include <cmath>
#include <sstream>

namespace collide1d {

QubitState basis_state(QubitLabel label) {
  QubitState s = QubitState::Zero();
  s(index_of(label)) = 1.0;
  return s;
}

QubitMatrix sigma_minus() {
  QubitMatrix m = QubitMatrix::Zero();
  m(0, 1) = 1.0;
  return m;
}

QubitMatrix sigma_plus() { return sigma_minus().adjoint(); }

QubitMatrix sigma_x() { return sigma_minus() + sigma_plus(); }

QubitMatrix sigma_y() {
  QubitMatrix m = QubitMatrix::Zero();
  m(0, 1) = -kI;
  m(1, 0) = kI;
  return m;
}

QubitMatrix sigma_z() {
  QubitMatrix m = QubitMatrix::Zero();
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  return m;
}

const char* to_string(Frame frame) noexcept {
  return frame == Frame::lab ? "lab" : "displaced";
}

TimeGrid::TimeGrid(double dt, std::size_t n_steps) : dt_(dt), n_steps_(n_steps) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("TimeGrid: dt must be positive and finite");
  }
}

std::size_t TimeGrid::index(double t) const {
  if (!(t >= 0.0)) throw std::out_of_range("TimeGrid: negative time");
  const double x = t / dt_;
  const double n = std::round(x);
  if (std::abs(x - n) > 1e-9 * std::max(1.0, n)) {
    throw std::out_of_range("TimeGrid: time is not on the grid");
  }
  if (n > static_cast<double>(n_steps_)) throw std::out_of_range("TimeGrid: time beyond grid");
  return static_cast<std::size_t>(n);
}

void SimulationParams::validate() const {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  if (n_steps < 1) throw std::invalid_argument("n_steps must be >= 1");
  if (fock_dim < 2) throw std::invalid_argument("fock_dim must be >= 2");
  if (!(omega_rabi >= 0.0)) throw std::invalid_argument("omega_rabi must be >= 0");
  if (!(omega_q >= 0.0)) throw std::invalid_argument("omega_q must be >= 0");
  if (!std::isfinite(delta)) throw std::invalid_argument("delta must be finite");
}

std::vector<std::string> validity_warnings(const SimulationParams& params, Frame frame) {
  std::vector<std::string> out;
  auto check = [&](const char* name, double product) {
    if (product >= 0.1) {
      std::ostringstream os;
      os << name << "*dt = " << product << " is not < 0.1; first-order collision results degrade";
      out.push_back(os.str());
    }
  };
  check("gamma", params.gamma * params.dt);
  if (frame == Frame::displaced) {
    check("omega_rabi", params.omega_rabi * params.dt);
    check("|delta|", std::abs(params.delta) * params.dt);
  }
  return out;
}

std::vector<std::string> check_validity(const SimulationParams& params, Frame frame,
                                        GuardPolicy policy) {
  params.validate();
  auto warnings = validity_warnings(params, frame);
  if (policy == GuardPolicy::strict && !warnings.empty()) throw ValidityError(warnings.front());
  return warnings;
}

double rabi_from_amplitude(double beta_p, double gamma) {
  if (gamma < 0.0) throw std::domain_error("rabi_from_amplitude: gamma must be non-negative");
  return 2.0 * std::sqrt(gamma) * beta_p;
}

Complex complex_rabi(const SimulationParams& params) {
  const double re = params.omega_rabi * params.omega_rabi + params.delta * params.delta -
                    0.25 * params.gamma * params.gamma;
  double im = -params.delta * params.gamma;
  // Normalize -0.0 so that the negative real axis maps to +i|.|, not -i|.|.
  if (im == 0.0) im = 0.0;
  return std::sqrt(Complex(re, im));
}

Wavepacket::Wavepacket(TimeGrid grid, std::vector<Complex> samples)
    : grid_(grid), samples_(std::move(samples)) {
  if (samples_.empty()) throw std::invalid_argument("Wavepacket: no samples");
  const double n = norm();
  if (!(n > 0.0)) throw std::invalid_argument("Wavepacket: envelope has zero norm");
  scale_ = 1.0 / std::sqrt(n);
  for (auto& s : samples_) s *= scale_;
}

double Wavepacket::norm() const {
  double acc = 0.0;
  for (const auto& s : samples_) acc += std::norm(s);
  return acc * grid_.dt();
}

Wavepacket make_exponential_wavepacket(double decay, double omega, const TimeGrid& grid,
                                       bool allow_truncation) {
  if (!(decay > 0.0)) throw std::invalid_argument("exponential wavepacket: decay must be > 0");
  if (grid.n_steps() == 0) throw std::invalid_argument("exponential wavepacket: empty grid");
  if (std::exp(-decay * grid.duration()) >= 1e-6 && !allow_truncation) {
    throw std::invalid_argument(
        "exponential wavepacket: grid too short (exp(-decay*T) >= 1e-6); "
        "extend the grid or allow truncation");
  }
  std::vector<Complex> xi(grid.n_steps());
  const double amp = std::sqrt(decay);
  for (std::size_t n = 0; n < xi.size(); ++n) {
    const double t = grid.time(n);
    xi[n] = amp * std::exp(-0.5 * decay * t) * std::polar(1.0, -omega * t);
  }
  return Wavepacket(grid, std::move(xi));
}

Wavepacket make_gaussian_wavepacket(double sigma, double t0, double omega, const TimeGrid& grid) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian wavepacket: sigma must be > 0");
  if (t0 - 5.0 * sigma < 0.0 || t0 + 5.0 * sigma > grid.duration()) {
    throw std::invalid_argument("gaussian wavepacket: t0 +/- 5 sigma must lie inside the grid");
  }
  std::vector<Complex> xi(grid.n_steps());
  for (std::size_t n = 0; n < xi.size(); ++n) {
    const double t = grid.time(n);
    const double u = (t - t0) / sigma;
    xi[n] = std::exp(-0.25 * u * u) * std::polar(1.0, -omega * t);
  }
  return Wavepacket(grid, std::move(xi));
}

std::vector<std::size_t> snapshot_steps(std::size_t n_steps, std::size_t stride) {
  if (stride == 0) throw std::invalid_argument("snapshot_steps: stride must be >= 1");
  std::vector<std::size_t> steps;
  for (std::size_t n = 0; n <= n_steps; n += stride) steps.push_back(n);
  if (steps.back() != n_steps) steps.push_back(n_steps);
  return steps;
}

}  // namespace collide1d
