from __future__ import annotations

import math
import warnings

import numpy as np
import pytest

from dimerresponse.physics.comparators import (
    polarizability,
    rate_equation_integrate,
    semiclassical_sigma_sc,
    tensor_coupling,
)
from dimerresponse.physics.dipole_field import complex_coupling, coupling
from dimerresponse.physics.params import SystemParams, populations_at
from dimerresponse.physics.response import sigma_ext, sigma_sc
from dimerresponse.utils.errors import ParameterError, StepSizeError, ValidityWarning


def test_polarizability_pole_in_lower_half_plane():
    alpha = polarizability(SystemParams())
    assert alpha.value == pytest.approx(-2j)
    assert polarizability(SystemParams(detuning=1.0)).value.imag < 0


def test_semiclassical_matches_quantum_without_pump_or_losses():
    p = SystemParams(detuning=0.4, k0R=2.0)
    c = coupling(p)
    assert semiclassical_sigma_sc(p, c) == pytest.approx(sum(sigma_sc(p, c)), rel=1e-10)


def test_semiclassical_tracks_extinction_with_losses():
    p = SystemParams(gamma_nr=0.2, k0R=2.0)
    c = coupling(p)
    b = sigma_ext(p, c)
    semi = semiclassical_sigma_sc(p, c)
    assert b.sigma_ext_total == pytest.approx(semi, rel=1e-12)
    assert abs(b.sigma_sc_total - semi) > 1e-6


@pytest.mark.parametrize("delta", [-2.0, 0.0, 0.7])
def test_semiclassical_cannot_separate_scattering_from_absorption(delta):
    p = SystemParams(gamma_nr=1.0, detuning=delta, k0R=3.0)
    c = coupling(p)
    b = sigma_ext(p, c)
    assert b.sigma_ext_total == pytest.approx(semiclassical_sigma_sc(p, c), rel=1e-10)
    assert b.sigma_abs_total != pytest.approx(0.0, abs=1e-6)


def test_semiclassical_warns_when_pumped():
    p = SystemParams(pump_P=1.2)
    with pytest.warns(ValidityWarning):
        semiclassical_sigma_sc(p, coupling(p))


def test_semiclassical_warning_can_be_silenced():
    p = SystemParams(pump_P=1.2)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        semiclassical_sigma_sc(p, coupling(p), warn=False)


def test_tensor_coupling_matches_closed_form():
    for x, theta in [(0.7, 0.0), (2.0, 0.3), (9.5, 1.2), (40.0, math.pi / 2)]:
        assert tensor_coupling(x, theta) == pytest.approx(complex(complex_coupling(x, theta)))


@pytest.mark.parametrize(
    "fields",
    [
        {"Ne0": 1.0},
        {"gamma_nr": 0.2, "pump_P": 1.2, "Ne0": 0.0},
        {"gamma_nr": 0.2, "pump_P": 7.5, "Ne0": 0.3},
        {"pump_P": 20.0},
    ],
)
def test_integrator_matches_closed_form(fields):
    p = SystemParams(**fields)
    traj = rate_equation_integrate(p, 100.0 / p.Gamma, 0.01 / p.Gamma)
    for i in range(0, len(traj), 250):
        expected = populations_at(p, float(traj.times[i]))
        assert traj.rho_ee[i] == pytest.approx(expected.rho_ee, abs=1e-9)
    assert traj.at(-1).rho_ee == pytest.approx(p.pump_P / p.Gamma, abs=1e-9)
    assert np.allclose(traj.rho_ee + traj.rho_gg, 1.0, atol=1e-10)


def test_integrator_ends_exactly_at_t_end():
    traj = rate_equation_integrate(SystemParams(Ne0=1.0), 1.0, 0.003)
    assert traj.times[0] == 0.0
    assert traj.times[-1] == pytest.approx(1.0, abs=1e-12)
    assert len(traj) == 335


def test_integrator_is_fourth_order():
    p = SystemParams(Ne0=1.0)
    errors = []
    for dt in (0.01, 0.005):
        traj = rate_equation_integrate(p, 5.0, dt)
        errors.append(np.max(np.abs(traj.rho_ee - np.exp(-traj.times))))
    assert errors[0] / errors[1] >= 8.0


def test_integrator_rejects_large_steps():
    with pytest.raises(StepSizeError):
        rate_equation_integrate(SystemParams(pump_P=9.0), 1.0, 0.01)


def test_integrator_rejects_non_positive_span():
    with pytest.raises(ParameterError):
        rate_equation_integrate(SystemParams(), 0.0, 0.001)
    with pytest.raises(ParameterError):
        rate_equation_integrate(SystemParams(), 1.0, -0.001)
