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

// Collision unitaries and the dense joint-state oracle.
//
// The factor a collision acts on is (qubit) x (mode n), indexed q * d + k with
// q in {g = 0, e = 1} and k the Fock occupation of mode n.

#pragma once

#include "collide1d/core.hpp"

#include <Eigen/Dense>

#include <functional>

namespace collide1d {

struct CollisionUnitary {
  Eigen::MatrixXcd matrix;  // 2d x 2d
  Frame frame = Frame::lab;
  std::size_t step = 0;
  int fock_dim = 2;
};

/// exp(-i dt V(t_n)) built from its exact block structure: |g,0> is invariant,
/// each pair {|e,k>, |g,k+1>} rotates by sqrt((k+1) gamma dt) with phase
/// exp(-+i omega_q t_n), and the truncation level |e,d-1> is left untouched.
CollisionUnitary lab_collision_unitary(std::size_t n, const SimulationParams& params, int d);

/// Hermitian generator H_n of the displaced-frame collision,
/// delta s+s- - (Omega/2) s_y + i sqrt(gamma/dt) (s+ e^{i w_p t_n} a - s- e^{-i w_p t_n} a+).
Eigen::MatrixXcd displaced_generator(std::size_t n, const SimulationParams& params, int d);

/// exp(-i dt H_n), by Hermitian eigendecomposition.
CollisionUnitary displaced_collision_unitary(std::size_t n, const SimulationParams& params, int d);

/// max |U^dagger U - I| over entries.
double unitarity_defect(const Eigen::MatrixXcd& u);

/// Largest mode count accepted by the dense oracle: modes * log2(d) + 1 <= 24.
void check_dense_capacity(std::size_t modes, int d);

/// Full qubit x (d-level)^modes pure state. Qubit is the slowest index, then
/// mode 0, ..., mode modes-1 (fastest).
class DenseJointState {
 public:
  DenseJointState(std::size_t modes, int d, Frame frame = Frame::lab);

  /// Qubit state times field vacuum.
  static DenseJointState product(const QubitState& qubit, std::size_t modes, int d,
                                 Frame frame = Frame::lab);
  /// |g> times sum_n sqrt(dt) xi_n |1_n>, one mode per wavepacket sample.
  static DenseJointState single_photon(const Wavepacket& wavepacket, int d);

  std::size_t modes() const noexcept { return modes_; }
  int fock_dim() const noexcept { return d_; }
  Frame frame() const noexcept { return frame_; }
  void set_frame(Frame f) noexcept { frame_ = f; }

  std::size_t size() const noexcept { return amps_.size(); }
  std::size_t qubit_stride() const noexcept { return amps_.size() / 2; }
  std::size_t mode_stride(std::size_t n) const { return strides_.at(n); }

  std::span<const Complex> amplitudes() const noexcept { return amps_; }
  std::span<Complex> amplitudes() noexcept { return amps_; }

  /// Flat index of (qubit, n_0, ..., n_{modes-1}).
  std::size_t index(QubitLabel qubit, std::span<const int> occupations) const;
  Complex& at(QubitLabel qubit, std::span<const int> occupations) {
    return amps_[index(qubit, occupations)];
  }
  Complex at(QubitLabel qubit, std::span<const int> occupations) const {
    return amps_[index(qubit, occupations)];
  }
  /// Occupation of mode n encoded in a flat index.
  int occupation(std::size_t flat, std::size_t n) const {
    return static_cast<int>((flat / strides_[n]) % static_cast<std::size_t>(d_));
  }

  double norm() const;

 private:
  std::size_t modes_;
  int d_;
  Frame frame_;
  std::vector<std::size_t> strides_;
  std::vector<Complex> amps_;
};

/// Contracts U over the (qubit, mode n) axes in place.
void apply_collision_inplace(DenseJointState& state, std::size_t n, const CollisionUnitary& u);
DenseJointState apply_collision(DenseJointState state, std::size_t n, const CollisionUnitary& u);

/// Called with the initial state (step 0) and after every collision.
using DenseObserver = std::function<void(std::size_t step, const DenseJointState& state)>;

/// Applies collisions 0..n_steps-1 in order; snapshots at the requested steps
/// (ascending, each <= n_steps). The frame selects lab_collision_unitary or
/// displaced_collision_unitary with the state's own Fock dimension.
Trajectory<DenseJointState> run_dense(const SimulationParams& params, DenseJointState initial,
                                      Frame frame, const std::vector<std::size_t>& steps,
                                      GuardPolicy policy = GuardPolicy::warn,
                                      const DenseObserver& observer = {});

}  // namespace collide1d
