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

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace collide1d {

using Complex = std::complex<double>;
inline constexpr Complex kI{0.0, 1.0};

/// Qubit basis label. The numeric value is the vector index (g -> 0, e -> 1).
enum class QubitLabel : int { g = 0, e = 1 };

/// Qubit amplitudes ordered (g, e).
using QubitState = Eigen::Vector2cd;
using QubitMatrix = Eigen::Matrix2cd;

QubitState basis_state(QubitLabel label);
constexpr int index_of(QubitLabel label) noexcept { return static_cast<int>(label); }

/// Pauli-type operators in the (g, e) basis. sigma_minus = |g><e|,
/// sigma_z = |e><e| - |g><g|, sigma_y = [[0, -i], [i, 0]].
QubitMatrix sigma_minus();
QubitMatrix sigma_plus();
QubitMatrix sigma_x();
QubitMatrix sigma_y();
QubitMatrix sigma_z();

enum class Frame { lab, displaced };
const char* to_string(Frame frame) noexcept;

enum class GuardPolicy { warn, strict };

/// Thrown when a first-order validity guard fails under GuardPolicy::strict.
class ValidityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a requested representation would exceed its memory guard.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, double required_bytes, double limit_bytes)
      : std::runtime_error(what), required_bytes_(required_bytes), limit_bytes_(limit_bytes) {}
  double required_bytes() const noexcept { return required_bytes_; }
  double limit_bytes() const noexcept { return limit_bytes_; }

 private:
  double required_bytes_;
  double limit_bytes_;
};

/// Uniform collision grid t_n = n * dt for n = 0..n_steps.
class TimeGrid {
 public:
  TimeGrid(double dt, std::size_t n_steps);

  double dt() const noexcept { return dt_; }
  std::size_t n_steps() const noexcept { return n_steps_; }
  /// Number of grid points, n_steps + 1.
  std::size_t size() const noexcept { return n_steps_ + 1; }
  double duration() const noexcept { return time(n_steps_); }
  double time(std::size_t n) const noexcept { return static_cast<double>(n) * dt_; }

  /// Grid index of t. Throws std::out_of_range when t is off the grid
  /// (relative mismatch above 1e-9 of a step) or beyond the last point.
  std::size_t index(double t) const;

  bool operator==(const TimeGrid& other) const noexcept {
    return dt_ == other.dt_ && n_steps_ == other.n_steps_;
  }

 private:
  double dt_;
  std::size_t n_steps_;
};

/// Physical and numerical knobs. omega_p is derived, never stored.
struct SimulationParams {
  double gamma = 1.0;       // decay rate
  double omega_q = 0.0;     // qubit angular frequency
  double delta = 0.0;       // detuning omega_q - omega_p
  double omega_rabi = 0.0;  // drive Rabi frequency
  double dt = 1e-3;         // collision duration
  std::size_t n_steps = 1000;
  int fock_dim = 2;

  double omega_p() const noexcept { return omega_q - delta; }
  TimeGrid grid() const { return TimeGrid(dt, n_steps); }

  /// Hard domain checks (gamma > 0, dt > 0, n_steps >= 1, fock_dim >= 2,
  /// omega_rabi >= 0, omega_q >= 0). Throws std::invalid_argument.
  void validate() const;
};

/// First-order validity guards: gamma*dt < 0.1 always; omega_rabi*dt and
/// |delta|*dt < 0.1 in the displaced frame. Returns one message per violation.
std::vector<std::string> validity_warnings(const SimulationParams& params, Frame frame);

/// validate() plus validity_warnings(); under GuardPolicy::strict any warning
/// becomes a ValidityError.
std::vector<std::string> check_validity(const SimulationParams& params, Frame frame,
                                        GuardPolicy policy);

double rabi_from_amplitude(double beta_p, double gamma);

/// Principal square root of omega_rabi^2 + (delta - i gamma / 2)^2.
Complex complex_rabi(const SimulationParams& params);

/// Sampled single-photon envelope xi(t_n) on modes n = 0..grid.n_steps()-1,
/// normalized so that sum_n dt |xi(t_n)|^2 = 1.
class Wavepacket {
 public:
  /// Normalizes the samples; applied_scale() reports the factor used.
  Wavepacket(TimeGrid grid, std::vector<Complex> samples);

  const TimeGrid& grid() const noexcept { return grid_; }
  std::span<const Complex> samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  Complex operator[](std::size_t n) const { return samples_[n]; }
  double applied_scale() const noexcept { return scale_; }
  /// Left-Riemann norm sum_n dt |xi_n|^2.
  double norm() const;

 private:
  TimeGrid grid_;
  std::vector<Complex> samples_;
  double scale_ = 1.0;
};

/// xi(t) = sqrt(decay) exp(-decay t / 2) exp(-i omega t). Requires
/// exp(-decay T) < 1e-6 unless allow_truncation is set.
Wavepacket make_exponential_wavepacket(double decay, double omega, const TimeGrid& grid,
                                       bool allow_truncation = false);

/// Gaussian envelope whose intensity |xi|^2 has standard deviation sigma and
/// peaks at t0. Requires t0 - 5 sigma >= 0 and t0 + 5 sigma <= T.
Wavepacket make_gaussian_wavepacket(double sigma, double t0, double omega, const TimeGrid& grid);

/// Ascending snapshot steps 0, stride, 2 stride, ... with n_steps always included.
std::vector<std::size_t> snapshot_steps(std::size_t n_steps, std::size_t stride = 1);

/// Common result container for the propagators.
template <class State>
struct Trajectory {
  std::vector<std::size_t> steps;
  std::vector<State> states;
  std::vector<std::string> warnings;

  std::size_t size() const noexcept { return states.size(); }
  const State& back() const { return states.back(); }
};

}  // namespace collide1d
