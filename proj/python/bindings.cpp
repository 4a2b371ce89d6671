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

#include "collide1d/acceptance.hpp"
#include "collide1d/analytic.hpp"
#include "collide1d/collision.hpp"
#include "collide1d/config.hpp"
#include "collide1d/core.hpp"
#include "collide1d/obe.hpp"
#include "collide1d/observables.hpp"
#include "collide1d/scenario.hpp"
#include "collide1d/sectors.hpp"
#include "collide1d/single_excitation.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace collide1d;

namespace {

template <class T>
py::array_t<T> to_array(const std::vector<T>& v) {
  py::array_t<T> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

TimeGrid grid_of(const SimulationParams& p) { return p.grid(); }

// Wavepacket construction shared by the single-photon entry points.
Wavepacket make_packet(const std::string& kind, const SimulationParams& p, double decay,
                       double sigma, double t0, std::optional<double> omega, bool truncate) {
  const double w = omega.value_or(p.omega_q);
  if (kind == "exponential") return make_exponential_wavepacket(decay, w, grid_of(p), truncate);
  if (kind == "gaussian") return make_gaussian_wavepacket(sigma, t0, w, grid_of(p));
  throw std::invalid_argument("wavepacket kind must be 'exponential' or 'gaussian'");
}

py::dict reduced_to_dict(const SectorReducedTrajectory& r) {
  const std::size_t n = r.qubit.size();
  py::array_t<double> t(n), pe(n), weight(n);
  py::array_t<Complex> coh(n);
  for (std::size_t k = 0; k < n; ++k) {
    t.mutable_at(k) = r.grid.time(k);
    pe.mutable_at(k) = r.qubit[k](1, 1).real();
    coh.mutable_at(k) = r.qubit[k](1, 0);
    weight.mutable_at(k) = r.total_weight(k);
  }
  py::dict d;
  d["t"] = t;
  d["p_e"] = pe;
  d["coherence"] = coh;
  d["weight"] = weight;
  d["flux"] = to_array(r.flux);
  d["warnings"] = r.warnings;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Collision-model simulation of a driven qubit in a 1D waveguide";
  m.attr("__version__") = version_string();

  py::register_exception<ValidityError>(m, "ValidityError", PyExc_RuntimeError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_MemoryError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::enum_<QubitLabel>(m, "QubitLabel").value("g", QubitLabel::g).value("e", QubitLabel::e);
  py::enum_<Frame>(m, "Frame").value("lab", Frame::lab).value("displaced", Frame::displaced);
  py::enum_<SectorBlocks>(m, "SectorBlocks")
      .value("exact", SectorBlocks::exact)
      .value("first_order", SectorBlocks::first_order);

  py::class_<SimulationParams>(m, "SimulationParams")
      .def(py::init([](double gamma, double omega_q, double delta, double omega_rabi, double dt,
                       std::size_t n_steps, int fock_dim) {
             SimulationParams p{gamma, omega_q, delta, omega_rabi, dt, n_steps, fock_dim};
             p.validate();
             return p;
           }),
           py::arg("gamma") = 1.0, py::arg("omega_q") = 0.0, py::arg("delta") = 0.0,
           py::arg("omega_rabi") = 0.0, py::arg("dt") = 1e-3, py::arg("n_steps") = 1000,
           py::arg("fock_dim") = 2)
      .def_readwrite("gamma", &SimulationParams::gamma)
      .def_readwrite("omega_q", &SimulationParams::omega_q)
      .def_readwrite("delta", &SimulationParams::delta)
      .def_readwrite("omega_rabi", &SimulationParams::omega_rabi)
      .def_readwrite("dt", &SimulationParams::dt)
      .def_readwrite("n_steps", &SimulationParams::n_steps)
      .def_readwrite("fock_dim", &SimulationParams::fock_dim)
      .def_property_readonly("omega_p", &SimulationParams::omega_p)
      .def("validate", &SimulationParams::validate)
      .def("__repr__", [](const SimulationParams& p) {
        return "SimulationParams(gamma=" + format_double(p.gamma) +
               ", omega_rabi=" + format_double(p.omega_rabi) + ", delta=" + format_double(p.delta) +
               ", dt=" + format_double(p.dt) + ", n_steps=" + std::to_string(p.n_steps) + ")";
      });

  m.def("basis_state", &basis_state);
  m.def("sigma_minus", &sigma_minus);
  m.def("sigma_z", &sigma_z);
  m.def("complex_rabi", &complex_rabi);
  m.def("rabi_from_amplitude", &rabi_from_amplitude, py::arg("beta_p"), py::arg("gamma"));
  m.def("validity_warnings", &validity_warnings, py::arg("params"),
        py::arg("frame") = Frame::displaced);

  // Collision unitaries as dense 2d x 2d matrices.
  m.def(
      "lab_collision_unitary",
      [](std::size_t n, const SimulationParams& p, int d) {
        return lab_collision_unitary(n, p, d).matrix;
      },
      py::arg("n"), py::arg("params"), py::arg("d") = 2);
  m.def(
      "displaced_collision_unitary",
      [](std::size_t n, const SimulationParams& p, int d) {
        return displaced_collision_unitary(n, p, d).matrix;
      },
      py::arg("n"), py::arg("params"), py::arg("d") = 2);
  m.def("unitarity_defect", &unitarity_defect);

  m.def(
      "run_dense_reduced",
      [](const SimulationParams& p, QubitLabel qubit, Frame frame, bool strict) {
        std::vector<QubitMatrix> rho;
        rho.reserve(p.n_steps + 1);
        auto observer = [&](std::size_t, const DenseJointState& s) {
          rho.push_back(reduced_qubit(s).rho);
        };
        auto initial = DenseJointState::product(basis_state(qubit), p.n_steps, p.fock_dim, frame);
        run_dense(p, std::move(initial), frame, {},
                  strict ? GuardPolicy::strict : GuardPolicy::warn, observer);
        return rho;
      },
      py::arg("params"), py::arg("qubit") = QubitLabel::e, py::arg("frame") = Frame::displaced,
      py::arg("strict") = false,
      "Reduced qubit density matrix at every step from the dense propagator.");

  m.def(
      "run_sector_reduced",
      [](const SimulationParams& p, std::size_t m_max, QubitLabel qubit, bool strict,
         SectorBlocks blocks) {
        return reduced_to_dict(run_sector_reduced(p, m_max, basis_state(qubit),
                                                  strict ? GuardPolicy::strict : GuardPolicy::warn,
                                                  blocks));
      },
      py::arg("params"), py::arg("m_max") = 2, py::arg("qubit") = QubitLabel::g,
      py::arg("strict") = false, py::arg("blocks") = SectorBlocks::exact);

  m.def(
      "coherent_reduced",
      [](const SimulationParams& p, std::size_t m_max, QubitLabel qubit) {
        return reduced_to_dict(coherent_reduced(p, m_max, basis_state(qubit)));
      },
      py::arg("params"), py::arg("m_max") = 2, py::arg("qubit") = QubitLabel::g);

  m.def(
      "run_single_excitation",
      [](const SimulationParams& p, const std::string& kind, double decay, double sigma,
         double t0, std::optional<double> omega, bool truncate) {
        const Wavepacket packet = make_packet(kind, p, decay, sigma, t0, omega, truncate);
        auto run = run_single_excitation(p, packet, {p.n_steps});
        py::dict d;
        d["excited"] = to_array(run.excited);
        d["norm"] = to_array(run.norm);
        d["warnings"] = run.trajectory.warnings;
        return d;
      },
      py::arg("params"), py::arg("kind") = "exponential", py::arg("decay") = 1.0,
      py::arg("sigma") = 1.0, py::arg("t0") = 5.0, py::arg("omega") = std::nullopt,
      py::arg("allow_truncation") = false);

  m.def(
      "single_photon_excited",
      [](const SimulationParams& p, double t, const std::string& kind, double decay, double sigma,
         double t0, std::optional<double> omega, bool truncate) {
        const Wavepacket packet = make_packet(kind, p, decay, sigma, t0, omega, truncate);
        return single_photon_state(packet, t, p).excited;
      },
      py::arg("params"), py::arg("t"), py::arg("kind") = "exponential", py::arg("decay") = 1.0,
      py::arg("sigma") = 1.0, py::arg("t0") = 5.0, py::arg("omega") = std::nullopt,
      py::arg("allow_truncation") = false,
      "Continuum excited amplitude of the single-photon solution at grid time t.");

  m.def(
      "spontaneous_emission",
      [](double t, const SimulationParams& p) {
        const auto s = spontaneous_emission_state(t, p);
        return py::make_tuple(s.excited, to_array(s.photon));
      },
      py::arg("t"), py::arg("params"));

  m.def("f0", &f0, py::arg("eps"), py::arg("phi0"), py::arg("t"), py::arg("params"));
  m.def("f0_matrix", &f0_matrix, py::arg("t"), py::arg("params"));
  m.def("f1", &f1, py::arg("eps"), py::arg("phi0"), py::arg("t"), py::arg("t1"),
        py::arg("params"));
  m.def("f2", &f2, py::arg("eps"), py::arg("phi0"), py::arg("t"), py::arg("t1"), py::arg("t2"),
        py::arg("params"));
  m.def(
      "fm",
      [](QubitLabel eps, QubitLabel phi0, double t, const std::vector<double>& times,
         const SimulationParams& p) { return fm(eps, phi0, t, times, p); },
      py::arg("eps"), py::arg("phi0"), py::arg("t"), py::arg("times"), py::arg("params"));

  m.def(
      "strong_drive_populations",
      [](double t, const SimulationParams& p) {
        const auto r = strong_drive_state(t, p);
        const auto rho = reduced_qubit(r.coefficients);
        return py::make_tuple(rho.rho(0, 0).real(), rho.rho(1, 1).real(), r.warnings);
      },
      py::arg("t"), py::arg("params"));

  m.def(
      "entanglement_entropy",
      [](const QubitMatrix& rho) { return entanglement_entropy(reduced_qubit(rho)); },
      py::arg("rho"), "Von Neumann entropy in bits of a qubit density matrix.");

  m.def(
      "obe_integrate",
      [](const SimulationParams& p, double t_final, QubitLabel qubit,
         std::optional<double> rk_step) {
        const auto traj = obe_integrate(p, t_final, basis_state(qubit), rk_step);
        Eigen::MatrixXd s(traj.s.size(), 3);
        for (std::size_t k = 0; k < traj.s.size(); ++k) s.row(k) = traj.s[k].transpose();
        return s;
      },
      py::arg("params"), py::arg("t_final"), py::arg("qubit") = QubitLabel::g,
      py::arg("rk_step") = std::nullopt, "Bloch vector (sx, sy, sz) on the collision grid.");
  m.def("max_rk_step", &max_rk_step);
  m.def(
      "compare_with_cm",
      [](const SimulationParams& p, double t_final, std::size_t m_max, QubitLabel qubit) {
        const auto c = compare_with_cm(p, t_final, m_max, basis_state(qubit));
        py::dict d;
        d["max_pe_error"] = c.max_pe_error;
        d["truncation_deficit"] = c.truncation_deficit;
        d["argmax_step"] = c.argmax_step;
        return d;
      },
      py::arg("params"), py::arg("t_final"), py::arg("m_max") = 2,
      py::arg("qubit") = QubitLabel::g);

  m.def(
      "fit_power_law",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        const auto f = fit_power_law(x, y);
        return py::make_tuple(f.exponent, f.prefactor);
      },
      py::arg("x"), py::arg("y"));

  // Scenario runner: returns the CSV text, metrics and checks.
  m.def(
      "run_config",
      [](const std::string& text, std::size_t jobs) {
        ScenarioResult r;
        {
          py::gil_scoped_release release;
          r = run_scenario(parse_config(text), RunOptions{jobs, false});
        }
        py::list checks;
        for (const auto& c : r.checks) {
          py::dict d;
          d["name"] = c.name;
          d["value"] = c.value;
          d["threshold"] = c.threshold;
          d["passed"] = c.passed;
          checks.append(d);
        }
        py::dict d;
        d["csv"] = r.table.to_csv();
        d["manifest"] = manifest_text(r);
        d["warnings"] = r.warnings;
        d["metrics"] = r.metrics;
        d["checks"] = checks;
        return d;
      },
      py::arg("text"), py::arg("jobs") = 1);
  m.def("presets", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& p : presets()) out.emplace_back(p.name, p.text);
    return out;
  });

  m.def(
      "run_criterion",
      [](int id) {
        CriterionResult r;
        {
          py::gil_scoped_release release;
          r = run_criterion(id);
        }
        py::dict d;
        d["id"] = r.id;
        d["name"] = r.name;
        d["passed"] = r.passed;
        d["seconds"] = r.seconds;
        d["details"] = r.details;
        d["summary"] = summary_line(r);
        return d;
      },
      py::arg("id"));
  m.def("acceptance_count", &acceptance_count);
}
