# Copyright 2026 The collide1d Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import collide1d as c1


def test_version():
    assert c1.__version__ == "1.0.0"


def test_params_validate():
    with pytest.raises(ValueError):
        c1.SimulationParams(gamma=-1.0)
    p = c1.SimulationParams(omega_q=3.0, delta=0.5)
    assert p.omega_p == pytest.approx(2.5)


def test_collision_unitary_is_unitary():
    p = c1.SimulationParams(omega_rabi=2.0, delta=0.3, dt=1e-2, n_steps=10)
    for d in (2, 3):
        u = c1.displaced_collision_unitary(4, p, d)
        assert u.shape == (2 * d, 2 * d)
        assert c1.unitarity_defect(u) < 1e-12


def test_spontaneous_decay_matches_exponential():
    p = c1.SimulationParams(gamma=1.0, dt=1e-3, n_steps=1000)
    excited, photon = c1.spontaneous_emission(1.0, p)
    assert abs(excited) ** 2 == pytest.approx(math.exp(-1.0), abs=1e-12)
    assert photon.shape == (1000,)

    # The dense oracle stores 2^(N+1) amplitudes, so keep N small.
    rho = c1.run_dense_reduced(c1.SimulationParams(dt=1e-2, n_steps=12), c1.QubitLabel.e)
    assert len(rho) == 13
    assert rho[-1][1, 1].real == pytest.approx(math.exp(-0.12), abs=2e-3)

    with pytest.raises(c1.CapacityError):
        c1.run_dense_reduced(c1.SimulationParams(dt=1e-2, n_steps=50), c1.QubitLabel.e)


def test_sector_route_agrees_with_analytic():
    p = c1.SimulationParams(omega_rabi=2.0, dt=1e-3, n_steps=500)
    sectors = c1.run_sector_reduced(p, m_max=2)
    closed = c1.coherent_reduced(p, m_max=2)
    assert np.max(np.abs(sectors["p_e"] - closed["p_e"])) < 1e-3
    assert math.isnan(sectors["flux"][0])
    assert np.all(sectors["weight"] <= 1.0 + 1e-12)


def test_single_photon_peak():
    p = c1.SimulationParams(omega_q=1.0, dt=1e-3, n_steps=16000)
    run = c1.run_single_excitation(p, "exponential", decay=1.0)
    pe = np.abs(run["excited"]) ** 2
    assert pe.max() == pytest.approx(4 * math.exp(-2), abs=2e-3)
    assert abs(c1.single_photon_excited(p, 2.0)) ** 2 == pytest.approx(4 * math.exp(-2), abs=2e-3)
    with pytest.raises(ValueError):
        c1.run_single_excitation(c1.SimulationParams(dt=1e-3, n_steps=100))


def test_obe_shape_and_initial_state():
    p = c1.SimulationParams(omega_rabi=1.0, dt=1e-2, n_steps=100)
    s = c1.obe_integrate(p, 1.0)
    assert s.shape == (101, 3)
    assert s[0, 2] == pytest.approx(-1.0)


def test_entropy_of_mixed_state():
    assert c1.entanglement_entropy(np.eye(2) / 2) == pytest.approx(1.0)
    assert c1.entanglement_entropy(np.diag([1.0, 0.0]).astype(complex)) == pytest.approx(0.0)


def test_config_errors_and_preset_run():
    with pytest.raises(ValueError):
        c1.run_config("scenario = nope\n")
    out = c1.run_preset("spont")
    lines = out["csv"].splitlines()
    assert lines[0] == "t,p_e,re_coh,im_coh,entropy_bits,norm,photon_flux,io_residual"
    assert len(lines) > 2
    assert c1.run_preset("spont")["csv"] == out["csv"]


def test_acceptance_criterion_from_python():
    assert c1.acceptance_count() == 9
    r = c1.run_criterion(7)
    assert r["passed"], r["details"]
