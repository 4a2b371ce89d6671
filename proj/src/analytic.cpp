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

#include "collide1d/analytic.hpp"

#include "collide1d/tuples.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace collide1d {

namespace {

// pre = exp(-gamma t / 4 - i delta t / 2); returns pre * cos(W t / 2) and
// pre * sin(W t / 2) / W. Written with exp(log(pre) +- i W t / 2) so large
// imaginary parts of W t do not overflow the intermediate cosh/sinh.
struct F0Parts {
  Complex cos_part;
  Complex sinc_part;
};

F0Parts f0_parts(double t, const SimulationParams& p) {
  const Complex root = complex_rabi(p);
  const Complex log_pre{-0.25 * p.gamma * t, -0.5 * p.delta * t};
  const Complex z = 0.5 * root * t;
  if (std::abs(root * t) < 1e-6) {
    const Complex pre = std::exp(log_pre);
    return {pre * std::cos(z), pre * (0.5 * t - root * root * t * t * t / 48.0)};
  }
  const Complex up = std::exp(log_pre + kI * z);
  const Complex down = std::exp(log_pre - kI * z);
  return {0.5 * (up + down), (up - down) / (2.0 * kI * root)};
}

void require_ordered(double lo, double hi, const char* what) {
  if (!(lo <= hi)) throw std::domain_error(what);
}

}  // namespace

QubitMatrix f0_matrix(double t, const SimulationParams& p) {
  if (!(t >= 0.0)) throw std::domain_error("f0: t must be >= 0");
  const F0Parts f = f0_parts(t, p);
  const Complex shift = 0.5 * Complex(p.gamma, 2.0 * p.delta);
  QubitMatrix m;
  m(0, 0) = f.cos_part + shift * f.sinc_part;
  m(0, 1) = p.omega_rabi * f.sinc_part;
  m(1, 0) = -p.omega_rabi * f.sinc_part;
  m(1, 1) = f.cos_part - shift * f.sinc_part;
  return m;
}

Complex f0(QubitLabel eps, QubitLabel phi0, double t, const SimulationParams& p) {
  return f0_matrix(t, p)(index_of(eps), index_of(phi0));
}

Complex fm(QubitLabel eps, QubitLabel phi0, double t, std::span<const double> times,
           const SimulationParams& p) {
  if (times.empty()) return f0(eps, phi0, t, p);
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0)) throw std::domain_error("fm: emission times must be >= 0");
    if (i > 0) require_ordered(times[i - 1], times[i], "fm: emission times must be ascending");
  }
  require_ordered(times.back(), t, "fm: emission times must not exceed t");
  const double wp = p.omega_p();
  const double root_gamma = std::sqrt(p.gamma);
  Complex acc = f0(QubitLabel::e, phi0, times.front(), p);
  for (std::size_t i = 1; i < times.size(); ++i) {
    acc *= -root_gamma * f0(QubitLabel::e, QubitLabel::g, times[i] - times[i - 1], p) *
           std::polar(1.0, -wp * times[i - 1]);
  }
  acc *= -root_gamma * f0(eps, QubitLabel::g, t - times.back(), p) *
         std::polar(1.0, -wp * times.back());
  return acc;
}

Complex f1(QubitLabel eps, QubitLabel phi0, double t, double t1, const SimulationParams& p) {
  require_ordered(t1, t, "f1: requires t1 <= t");
  const double times[] = {t1};
  return fm(eps, phi0, t, times, p);
}

Complex f2(QubitLabel eps, QubitLabel phi0, double t, double t1, double t2,
           const SimulationParams& p) {
  require_ordered(t1, t2, "f2: requires t1 <= t2");
  require_ordered(t2, t, "f2: requires t2 <= t");
  const double times[] = {t1, t2};
  return fm(eps, phi0, t, times, p);
}

CoherentCoefficients::CoherentCoefficients(const SimulationParams& params,
                                           const QubitState& initial)
    : params_(params), initial_(initial) {
  params_.validate();
  table_.reserve(params_.n_steps + 1);
  for (std::size_t k = 0; k <= params_.n_steps; ++k) {
    table_.push_back(f0_matrix(static_cast<double>(k) * params_.dt, params_));
  }
}

Complex CoherentCoefficients::emission_factor(std::size_t mode) const {
  return -std::sqrt(params_.gamma * params_.dt) *
         std::polar(1.0, -params_.omega_p() * params_.dt * static_cast<double>(mode));
}

QubitState CoherentCoefficients::amplitude(std::size_t step,
                                           std::span<const std::size_t> modes) const {
  if (step > params_.n_steps) throw std::out_of_range("CoherentCoefficients: step beyond grid");
  if (modes.empty()) return table_[step] * initial_;
  for (std::size_t i = 1; i < modes.size(); ++i) {
    if (modes[i] <= modes[i - 1]) {
      throw std::domain_error("CoherentCoefficients: modes must be strictly increasing");
    }
  }
  if (modes.back() >= step) return QubitState::Zero();
  Complex h = (table_[modes.front()] * initial_)(1) * emission_factor(modes.front());
  for (std::size_t i = 1; i < modes.size(); ++i) {
    h *= table_[modes[i] - modes[i - 1]](1, 0) * emission_factor(modes[i]);
  }
  return table_[step - modes.back()].col(0) * h;
}

CoherentAssembly assemble_coherent(const SimulationParams& params, double t, std::size_t m_max,
                                   const QubitState& initial) {
  if (m_max > 3) throw std::invalid_argument("assemble_coherent: m_max must be <= 3");
  const std::size_t step = params.grid().index(t);
  check_sector_capacity(step, m_max);
  const CoherentCoefficients c(params, initial);

  CoherentAssembly out;
  SectorState& s = out.coefficients;
  s.grid = params.grid();
  s.step = step;
  s.frame = Frame::displaced;
  s.origin = Origin::analytic;
  s.sectors.resize(m_max + 1);
  s.sectors[0].push_back(c.no_emission(step) * initial);

  // prefix[r] is the scalar chain h of the (m-1)-tuple with colex rank r;
  // a tuple ending in mode j has h = factor(j) * M_eg(t_j - t_last) * h_prefix
  // and amplitude M(t - t_j) |g> h.
  std::vector<Complex> prefix;
  std::vector<Complex> current;
  for (std::size_t m = 1; m <= m_max; ++m) {
    auto& sector = s.sectors[m];
    sector.reserve(tuples::binomial(step, m));
    current.clear();
    const bool keep = m < m_max;
    if (keep) current.reserve(tuples::binomial(step, m));
    for (std::size_t j = m - 1; j < step; ++j) {
      const Complex factor = c.emission_factor(j);
      const auto out_col = c.no_emission(step - j).col(0);
      auto emit = [&](Complex h) {
        sector.push_back(out_col * h);
        if (keep) current.push_back(h);
      };
      if (m == 1) {
        emit(factor * (c.no_emission(j) * initial)(1));
        continue;
      }
      // prefixes ending in mode l occupy ranks [C(l, m-1), C(l+1, m-1))
      for (std::size_t l = m - 2; l < j; ++l) {
        const Complex link = factor * c.no_emission(j - l)(1, 0);
        const std::size_t lo = tuples::binomial(l, m - 1);
        const std::size_t hi = tuples::binomial(l + 1, m - 1);
        for (std::size_t r = lo; r < hi; ++r) emit(link * prefix[r]);
      }
    }
    std::swap(prefix, current);
  }
  out.norm = s.weight();
  out.norm_deficit = 1.0 - out.norm;
  return out;
}

SectorReducedTrajectory coherent_reduced(const SimulationParams& params, std::size_t m_max,
                                         const QubitState& initial) {
  params.validate();
  SectorReducedTrajectory out;
  out.grid = params.grid();
  out.max_photons = m_max;
  const std::size_t n_steps = params.n_steps;
  out.qubit.reserve(n_steps + 1);
  out.weights.reserve((n_steps + 1) * (m_max + 1));
  out.flux.reserve(n_steps + 1);

  const double gdt = params.gamma * params.dt;
  const QubitMatrix step = f0_matrix(params.dt, params);
  const QubitState step_g = step.col(0);
  const QubitMatrix fresh = step_g * step_g.adjoint();  // M(dt)|g><g|M(dt)^dagger

  // s[m] = sum over m-photon chains of M(t - t_last)|g><g|M^dagger times the
  // chain weight; the chain weight of a new emission at t_n is gamma dt times
  // the excited population of the sector below at t_n.
  std::vector<QubitMatrix> s(m_max + 1, QubitMatrix::Zero());
  std::vector<QubitMatrix> next(m_max + 1);
  out.flux.push_back(std::numeric_limits<double>::quiet_NaN());
  for (std::size_t n = 0; n <= n_steps; ++n) {
    const QubitState v = f0_matrix(params.dt * static_cast<double>(n), params) * initial;
    s[0] = v * v.adjoint();

    QubitMatrix total = QubitMatrix::Zero();
    for (const auto& r : s) {
      total += r;
      out.weights.push_back(r.trace().real());
    }
    out.qubit.push_back(total);
    if (n == n_steps) break;

    double emitted = 0.0;
    for (std::size_t m = 1; m <= m_max; ++m) {
      const double weight = gdt * s[m - 1](1, 1).real();
      next[m] = step * s[m] * step.adjoint() + fresh * weight;
      emitted += fresh.trace().real() * weight;
    }
    for (std::size_t m = 1; m <= m_max; ++m) std::swap(s[m], next[m]);
    out.flux.push_back(emitted / params.dt);
  }
  return out;
}

StrongDriveResult strong_drive_state(double t, const SimulationParams& params) {
  params.validate();
  StrongDriveResult out;
  if (params.omega_rabi < 20.0 * params.gamma) {
    std::ostringstream os;
    os << "strong-drive approximation used with omega_rabi = " << params.omega_rabi
       << " < 20 gamma";
    out.warnings.push_back(os.str());
  }
  if (params.delta != 0.0) out.warnings.push_back("strong-drive approximation used with delta != 0");

  const std::size_t step = params.grid().index(t);
  const double g = params.gamma;
  const double w = params.omega_rabi;
  // Limiting no-emission block: M_gg -> e^{-g t/4} cos(w t/2),
  // M_eg -> -e^{-g t/4} sin(w t/2).
  auto cos_block = [&](double u) { return std::exp(-0.25 * g * u) * std::cos(0.5 * w * u); };
  auto sin_block = [&](double u) { return -std::exp(-0.25 * g * u) * std::sin(0.5 * w * u); };

  SectorState& s = out.coefficients;
  s.grid = params.grid();
  s.step = step;
  s.frame = Frame::displaced;
  s.origin = Origin::analytic;
  s.sectors.resize(2);
  s.sectors[0].push_back(QubitState(cos_block(t), sin_block(t)));
  s.sectors[1].reserve(step);
  const double amp = -std::sqrt(g * params.dt);
  for (std::size_t j = 0; j < step; ++j) {
    const double tj = params.dt * static_cast<double>(j);
    const Complex h = amp * std::polar(1.0, -params.omega_p() * tj) * sin_block(tj);
    s.sectors[1].push_back(QubitState(cos_block(t - tj) * h, sin_block(t - tj) * h));
  }
  return out;
}

SinglePhotonState spontaneous_emission_state(double t, const SimulationParams& params) {
  params.validate();
  const TimeGrid grid = params.grid();
  SinglePhotonState s;
  s.grid = grid;
  s.step = grid.index(t);
  s.excited = std::exp(-0.5 * params.gamma * t);
  s.photon.assign(grid.n_steps(), Complex{});
  const double amp = -std::sqrt(params.gamma * params.dt);
  for (std::size_t n = 0; n < s.step; ++n) {
    const double tn = grid.time(n);
    s.photon[n] = amp * std::exp(-0.5 * params.gamma * tn) * std::polar(1.0, -params.omega_q * tn);
  }
  return s;
}

double spontaneous_emission_norm(double t, double gamma) {
  const double survived = std::exp(-gamma * t);
  // gamma * int_0^t exp(-gamma t') dt' = 1 - exp(-gamma t)
  const double emitted = 1.0 - survived;
  return survived + emitted;
}

std::vector<Complex> xi_tilde(const Wavepacket& wavepacket, const SimulationParams& params) {
  const double dt = wavepacket.grid().dt();
  const double decay = std::exp(-0.5 * params.gamma * dt);
  std::vector<Complex> out(wavepacket.size() + 1);
  out[0] = 0.0;
  for (std::size_t n = 0; n < wavepacket.size(); ++n) {
    const double tn = wavepacket.grid().time(n);
    out[n + 1] = decay * (out[n] + dt * std::polar(1.0, params.omega_q * tn) * wavepacket[n]);
  }
  return out;
}

Complex xi_tilde(const Wavepacket& wavepacket, double t, const SimulationParams& params) {
  const std::size_t n = wavepacket.grid().index(t);
  if (n > wavepacket.size()) throw std::out_of_range("xi_tilde: t beyond the wavepacket grid");
  return xi_tilde(wavepacket, params)[n];
}

SinglePhotonState single_photon_state(const Wavepacket& wavepacket, double t,
                                      const SimulationParams& params) {
  const TimeGrid& grid = wavepacket.grid();
  const std::size_t step = grid.index(t);
  if (step > wavepacket.size()) throw std::out_of_range("single_photon_state: t beyond the grid");
  const auto filtered = xi_tilde(wavepacket, params);
  SinglePhotonState s;
  s.grid = grid;
  s.step = step;
  s.excited = std::sqrt(params.gamma) * filtered[step];
  s.photon.resize(wavepacket.size());
  const double root_dt = std::sqrt(grid.dt());
  for (std::size_t n = 0; n < wavepacket.size(); ++n) {
    Complex density = wavepacket[n];
    if (n < step) {
      density -= params.gamma * filtered[n] * std::polar(1.0, -params.omega_q * grid.time(n));
    }
    s.photon[n] = root_dt * density;
  }
  return s;
}

}  // namespace collide1d
