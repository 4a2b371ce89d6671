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

#include "collide1d/observables.hpp"

#include "collide1d/tuples.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace collide1d {

Eigen::Vector2d QubitDensityMatrix::eigenvalues() const {
  const double tr = trace();
  const QubitMatrix normalized = tr > 0.0 ? QubitMatrix(rho / tr) : rho;
  // Hermitian part only; the anti-Hermitian residue is rounding noise.
  const QubitMatrix h = 0.5 * (normalized + normalized.adjoint());
  Eigen::SelfAdjointEigenSolver<QubitMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

QubitDensityMatrix reduced_qubit(const QubitMatrix& rho) { return {rho}; }

QubitDensityMatrix reduced_qubit(const DenseJointState& state) {
  const auto amps = state.amplitudes();
  const std::size_t half = state.qubit_stride();
  Complex gg{}, ee{}, eg{};
  for (std::size_t f = 0; f < half; ++f) {
    const Complex g = amps[f];
    const Complex e = amps[f + half];
    gg += std::norm(g);
    ee += std::norm(e);
    eg += e * std::conj(g);
  }
  QubitDensityMatrix out;
  out.rho << gg, std::conj(eg), eg, ee;
  return out;
}

QubitDensityMatrix reduced_qubit(const SectorState& state) {
  QubitDensityMatrix out;
  for (const auto& sector : state.sectors) {
    for (const auto& v : sector) out.rho += v * v.adjoint();
  }
  return out;
}

QubitDensityMatrix reduced_qubit(const SinglePhotonState& state) {
  double field = 0.0;
  for (const auto& a : state.photon) field += std::norm(a);
  QubitDensityMatrix out;
  out.rho(0, 0) = field;
  out.rho(1, 1) = std::norm(state.excited);
  return out;
}

bool entropy_defined(const QubitDensityMatrix& rho) {
  return std::abs(rho.norm_deficit()) < kEntropyNormTolerance;
}

double entanglement_entropy(const QubitDensityMatrix& rho) {
  if (!entropy_defined(rho)) {
    std::ostringstream os;
    os << "entanglement_entropy: norm deficit " << rho.norm_deficit() << " exceeds "
       << kEntropyNormTolerance;
    throw std::domain_error(os.str());
  }
  double s = 0.0;
  for (double lambda : rho.eigenvalues()) {
    if (lambda < -1e-10) throw std::domain_error("entanglement_entropy: negative eigenvalue");
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return std::max(0.0, s);
}

std::vector<double> photon_density(const DenseJointState& state, double dt) {
  std::vector<double> out(state.modes(), 0.0);
  const auto amps = state.amplitudes();
  const std::size_t half = state.qubit_stride();
  for (std::size_t f = 0; f < half; ++f) {
    const double w = std::norm(amps[f]) + std::norm(amps[f + half]);
    if (w == 0.0) continue;
    for (std::size_t n = 0; n < state.modes(); ++n) out[n] += state.occupation(f, n) * w;
  }
  for (auto& v : out) v /= dt;
  return out;
}

std::vector<double> photon_density(const SectorState& state) {
  std::vector<double> out(state.grid.n_steps(), 0.0);
  for (std::size_t m = 1; m < state.sectors.size(); ++m) {
    const auto& sector = state.sectors[m];
    tuples::for_each(m, state.step, [&](std::span<const std::size_t> t, std::size_t r) {
      if (r >= sector.size()) return;
      const double w = sector[r].squaredNorm();
      for (auto n : t) out[n] += w;
    });
  }
  for (auto& v : out) v /= state.grid.dt();
  return out;
}

std::vector<double> photon_density(const SinglePhotonState& state) {
  std::vector<double> out(state.photon.size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = std::norm(state.photon[n]) / state.grid.dt();
  return out;
}

double mode_occupation(const DenseJointState& state, std::size_t n) {
  const auto amps = state.amplitudes();
  double acc = 0.0;
  for (std::size_t f = 0; f < amps.size(); ++f) acc += state.occupation(f, n) * std::norm(amps[f]);
  return acc;
}

Complex mode_amplitude(const DenseJointState& state, std::size_t n) {
  const auto amps = state.amplitudes();
  const std::size_t stride = state.mode_stride(n);
  Complex acc{};
  for (std::size_t f = 0; f < amps.size(); ++f) {
    const int k = state.occupation(f, n);
    if (k == 0) continue;
    acc += std::conj(amps[f - stride]) * amps[f] * std::sqrt(static_cast<double>(k));
  }
  return acc;
}

Complex sigma_minus_expectation(const DenseJointState& state) {
  return reduced_qubit(state).coherence();
}

std::vector<IoRecord> io_records(const Trajectory<DenseJointState>& trajectory,
                                 const SimulationParams& params, Frame frame) {
  const auto& steps = trajectory.steps;
  if (steps.size() < 2) throw std::invalid_argument("io_residual: needs at least two snapshots");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (steps[i] != i) {
      throw std::invalid_argument("io_residual: snapshots must be consecutive steps from 0");
    }
  }
  const double w = frame == Frame::lab ? params.omega_q : params.omega_p();
  const double root_dt = std::sqrt(params.dt);
  const double root_gamma = std::sqrt(params.gamma);
  std::vector<IoRecord> out;
  out.reserve(steps.size() - 1);
  for (std::size_t n = 1; n < steps.size(); ++n) {
    const auto& before = trajectory.states[n - 1];
    const auto& after = trajectory.states[n];
    IoRecord r;
    r.step = n;
    r.a_in = mode_amplitude(before, n - 1) / root_dt;
    r.a_out = mode_amplitude(after, n - 1) / root_dt;
    r.sigma_minus =
        sigma_minus_expectation(before) * std::polar(1.0, -w * params.dt * static_cast<double>(n - 1));
    r.residual = std::abs(r.a_out - r.a_in + root_gamma * r.sigma_minus);
    out.push_back(r);
  }
  return out;
}

std::vector<double> io_residual(const Trajectory<DenseJointState>& trajectory,
                                const SimulationParams& params, Frame frame) {
  std::vector<double> out;
  for (const auto& r : io_records(trajectory, params, frame)) out.push_back(r.residual);
  return out;
}

namespace {

double normalized_overlap(Complex inner, double na, double nb) {
  if (!(na > 0.0) || !(nb > 0.0)) throw std::domain_error("state_fidelity: zero-norm state");
  return std::min(1.0, std::norm(inner) / (na * nb));
}

}  // namespace

double state_fidelity(const DenseJointState& a, const DenseJointState& b) {
  if (a.frame() != b.frame()) throw std::invalid_argument("state_fidelity: frame mismatch");
  if (a.size() != b.size() || a.modes() != b.modes()) {
    throw std::invalid_argument("state_fidelity: layout mismatch");
  }
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  Complex inner{};
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    inner += std::conj(x[i]) * y[i];
    na += std::norm(x[i]);
    nb += std::norm(y[i]);
  }
  return normalized_overlap(inner, na, nb);
}

double state_fidelity(const SectorState& a, const SectorState& b) {
  if (a.frame != b.frame) throw std::invalid_argument("state_fidelity: frame mismatch");
  if (!(a.grid == b.grid) || a.step != b.step) {
    throw std::invalid_argument("state_fidelity: grid or step mismatch");
  }
  Complex inner{};
  const std::size_t common = std::min(a.sectors.size(), b.sectors.size());
  for (std::size_t m = 0; m < common; ++m) {
    const std::size_t n = std::min(a.sectors[m].size(), b.sectors[m].size());
    for (std::size_t r = 0; r < n; ++r) inner += a.sectors[m][r].dot(b.sectors[m][r]);
  }
  return normalized_overlap(inner, a.weight(), b.weight());
}

double state_fidelity(const SectorState& a, const DenseJointState& b) {
  if (a.frame != b.frame()) throw std::invalid_argument("state_fidelity: frame mismatch");
  if (a.grid.n_steps() != b.modes()) throw std::invalid_argument("state_fidelity: mode mismatch");
  return state_fidelity(to_dense(a, b.fock_dim()), b);
}

double state_fidelity(const SinglePhotonState& a, const SinglePhotonState& b) {
  if (!(a.grid == b.grid) || a.photon.size() != b.photon.size()) {
    throw std::invalid_argument("state_fidelity: grid mismatch");
  }
  Complex inner = std::conj(a.excited) * b.excited;
  for (std::size_t n = 0; n < a.photon.size(); ++n) inner += std::conj(a.photon[n]) * b.photon[n];
  return normalized_overlap(inner, a.norm_squared(), b.norm_squared());
}

double oscillation_frequency(std::span<const double> y, double dt) {
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (y[i] > y[i - 1] && y[i] >= y[i + 1]) {
      const double denom = y[i - 1] - 2.0 * y[i] + y[i + 1];
      const double shift = denom != 0.0 ? 0.5 * (y[i - 1] - y[i + 1]) / denom : 0.0;
      peaks.push_back((static_cast<double>(i) + shift) * dt);
    }
  }
  if (peaks.size() < 2) throw std::domain_error("oscillation_frequency: fewer than two maxima");
  const double period = (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
  return 2.0 * std::numbers::pi / period;
}

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_power_law: need two or more matching points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::domain_error("fit_power_law: values must be > 0");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  PowerLawFit fit;
  fit.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.prefactor = std::exp((sy - fit.exponent * sx) / n);
  return fit;
}

}  // namespace collide1d
