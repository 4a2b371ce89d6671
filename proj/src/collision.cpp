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

#include "collide1d/collision.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace collide1d {

namespace {

constexpr double kDenseMaxLog2 = 24.0;

void require_fock(int d) {
  if (d < 2) throw std::invalid_argument("collision unitary: Fock dimension must be >= 2");
}

Eigen::MatrixXcd ladder_annihilation(int d) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
  for (int k = 1; k < d; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

CollisionUnitary lab_collision_unitary(std::size_t n, const SimulationParams& params, int d) {
  require_fock(d);
  const double t = params.dt * static_cast<double>(n);
  const Complex down = std::polar(1.0, -params.omega_q * t);  // attached to s- a+
  const Complex up = std::conj(down);                         // attached to s+ a
  const double root = std::sqrt(params.gamma * params.dt);

  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * d, 2 * d);
  auto g = [](int k) { return k; };
  auto e = [d](int k) { return d + k; };
  u(g(0), g(0)) = 1.0;
  for (int k = 0; k + 1 < d; ++k) {
    const double theta = std::sqrt(static_cast<double>(k + 1)) * root;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    u(e(k), e(k)) = c;
    u(g(k + 1), g(k + 1)) = c;
    u(g(k + 1), e(k)) = -s * down;
    u(e(k), g(k + 1)) = s * up;
  }
  u(e(d - 1), e(d - 1)) = 1.0;  // truncation level: the generator vanishes here
  return {std::move(u), Frame::lab, n, d};
}

Eigen::MatrixXcd displaced_generator(std::size_t n, const SimulationParams& params, int d) {
  require_fock(d);
  const double t = params.dt * static_cast<double>(n);
  const Complex phase = std::polar(1.0, params.omega_p() * t);
  const Eigen::MatrixXcd a = ladder_annihilation(d);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  const QubitMatrix sp = sigma_plus();
  const QubitMatrix sm = sigma_minus();
  const QubitMatrix qubit = params.delta * (sp * sm) - 0.5 * params.omega_rabi * sigma_y();

  const double coupling = std::sqrt(params.gamma / params.dt);
  Eigen::MatrixXcd h = kron(qubit, id);
  h += kI * coupling * (phase * kron(sp, a) - std::conj(phase) * kron(sm, a.adjoint()));
  return h;
}

CollisionUnitary displaced_collision_unitary(std::size_t n, const SimulationParams& params,
                                             int d) {
  const Eigen::MatrixXcd h = displaced_generator(n, params, d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("displaced_collision_unitary: eigendecomposition failed");
  }
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    phases(i) = std::polar(1.0, -params.dt * lambda(i));
  }
  const Eigen::MatrixXcd& w = solver.eigenvectors();
  Eigen::MatrixXcd u = w * phases.asDiagonal() * w.adjoint();
  return {std::move(u), Frame::displaced, n, d};
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
  const Eigen::MatrixXcd r = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  return r.cwiseAbs().maxCoeff();
}

void check_dense_capacity(std::size_t modes, int d) {
  require_fock(d);
  const double log2_size = static_cast<double>(modes) * std::log2(static_cast<double>(d)) + 1.0;
  if (log2_size > kDenseMaxLog2 + 1e-12) {
    std::ostringstream os;
    const double bytes = std::exp2(log2_size) * sizeof(Complex);
    os << "dense oracle refused: " << modes << " modes at Fock dimension " << d << " need 2^"
       << log2_size << " amplitudes (" << bytes / (1 << 20) << " MiB); limit is 2^"
       << kDenseMaxLog2;
    throw CapacityError(os.str(), bytes, std::exp2(kDenseMaxLog2) * sizeof(Complex));
  }
}

DenseJointState::DenseJointState(std::size_t modes, int d, Frame frame)
    : modes_(modes), d_(d), frame_(frame), strides_(modes) {
  check_dense_capacity(modes, d);
  std::size_t stride = 1;
  for (std::size_t n = modes; n-- > 0;) {
    strides_[n] = stride;
    stride *= static_cast<std::size_t>(d);
  }
  amps_.assign(2 * stride, Complex{});
}

DenseJointState DenseJointState::product(const QubitState& qubit, std::size_t modes, int d,
                                         Frame frame) {
  DenseJointState s(modes, d, frame);
  s.amps_[0] = qubit(0);
  s.amps_[s.qubit_stride()] = qubit(1);
  return s;
}

DenseJointState DenseJointState::single_photon(const Wavepacket& wavepacket, int d) {
  DenseJointState s(wavepacket.size(), d, Frame::lab);
  const double root_dt = std::sqrt(wavepacket.grid().dt());
  for (std::size_t n = 0; n < wavepacket.size(); ++n) {
    s.amps_[s.strides_[n]] = root_dt * wavepacket[n];
  }
  return s;
}

std::size_t DenseJointState::index(QubitLabel qubit, std::span<const int> occupations) const {
  if (occupations.size() != modes_) {
    throw std::invalid_argument("DenseJointState::index: wrong number of occupations");
  }
  std::size_t flat = index_of(qubit) == 0 ? 0 : qubit_stride();
  for (std::size_t n = 0; n < modes_; ++n) {
    if (occupations[n] < 0 || occupations[n] >= d_) {
      throw std::out_of_range("DenseJointState::index: occupation outside the truncation");
    }
    flat += static_cast<std::size_t>(occupations[n]) * strides_[n];
  }
  return flat;
}

double DenseJointState::norm() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

void apply_collision_inplace(DenseJointState& state, std::size_t n, const CollisionUnitary& u) {
  const auto d = static_cast<std::size_t>(state.fock_dim());
  if (n >= state.modes()) throw std::invalid_argument("apply_collision: mode index out of range");
  if (u.step != n) throw std::invalid_argument("apply_collision: unitary built for another step");
  if (u.fock_dim != state.fock_dim() || static_cast<std::size_t>(u.matrix.rows()) != 2 * d ||
      u.matrix.rows() != u.matrix.cols()) {
    throw std::invalid_argument("apply_collision: dimension mismatch");
  }

  struct Entry {
    std::size_t row, col;
    Complex value;
  };
  std::vector<Entry> entries;
  for (std::size_t r = 0; r < 2 * d; ++r) {
    for (std::size_t c = 0; c < 2 * d; ++c) {
      const Complex v = u.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      if (v != Complex{}) entries.push_back({r, c, v});
    }
  }

  auto amps = state.amplitudes();
  const std::size_t sq = state.qubit_stride();
  const std::size_t sn = state.mode_stride(n);
  const std::size_t block = d * sn;
  const std::size_t highs = sq / block;
  std::vector<std::size_t> offset(2 * d);
  for (std::size_t q = 0; q < 2; ++q) {
    for (std::size_t k = 0; k < d; ++k) offset[q * d + k] = q * sq + k * sn;
  }
  std::vector<Complex> in(2 * d), out(2 * d);

  for (std::size_t h = 0; h < highs; ++h) {
    for (std::size_t low = 0; low < sn; ++low) {
      const std::size_t base = h * block + low;
      for (std::size_t i = 0; i < 2 * d; ++i) {
        in[i] = amps[base + offset[i]];
        out[i] = Complex{};
      }
      for (const auto& e : entries) out[e.row] += e.value * in[e.col];
      for (std::size_t i = 0; i < 2 * d; ++i) amps[base + offset[i]] = out[i];
    }
  }
}

DenseJointState apply_collision(DenseJointState state, std::size_t n, const CollisionUnitary& u) {
  apply_collision_inplace(state, n, u);
  return state;
}

Trajectory<DenseJointState> run_dense(const SimulationParams& params, DenseJointState initial,
                                      Frame frame, const std::vector<std::size_t>& steps,
                                      GuardPolicy policy, const DenseObserver& observer) {
  Trajectory<DenseJointState> out;
  out.warnings = check_validity(params, frame, policy);
  check_dense_capacity(initial.modes(), initial.fock_dim());
  if (initial.modes() < params.n_steps) {
    throw std::invalid_argument("run_dense: state has fewer modes than collisions");
  }
  if (std::abs(initial.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("run_dense: initial state is not normalized");
  }
  if (!std::is_sorted(steps.begin(), steps.end()) ||
      (!steps.empty() && steps.back() > params.n_steps)) {
    throw std::invalid_argument("run_dense: snapshot steps must be ascending and <= n_steps");
  }

  initial.set_frame(frame);
  const int d = initial.fock_dim();
  auto next = steps.begin();
  auto record = [&](std::size_t step, const DenseJointState& s) {
    while (next != steps.end() && *next == step) {
      out.steps.push_back(step);
      out.states.push_back(s);
      ++next;
    }
    if (observer) observer(step, s);
  };

  record(0, initial);
  for (std::size_t n = 0; n < params.n_steps; ++n) {
    const CollisionUnitary u = frame == Frame::lab ? lab_collision_unitary(n, params, d)
                                                   : displaced_collision_unitary(n, params, d);
    apply_collision_inplace(initial, n, u);
    record(n + 1, initial);
  }
  return out;
}

}  // namespace collide1d
