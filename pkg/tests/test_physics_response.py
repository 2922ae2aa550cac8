from __future__ import annotations

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dimerresponse.physics.comparators import semiclassical_sigma_sc
from dimerresponse.physics.dipole_field import complex_coupling, coupling
from dimerresponse.physics.params import SystemParams
from dimerresponse.physics.response import (
    cross_section_arrays,
    gamma0_split,
    gamma0_total,
    ret_rate,
    sigma_abs,
    sigma_ext,
    sigma_sc,
    stimulated_emission_terms,
    strong_pump_asymptote,
)

FAR = 1e6


def _at(**fields):
    p = SystemParams(**fields)
    return p, coupling(p)


def test_isolated_atoms_scatter_two_sigma0_on_resonance():
    single, coll = sigma_sc(*_at(k0R=FAR))
    assert single == pytest.approx(2.0)
    assert abs(coll) < 1e-10


def test_no_absorption_without_pump_or_losses():
    assert sigma_abs(*_at(k0R=2.0)) == (0.0, 0.0)


def test_lossy_isolated_atoms_absorb():
    single, coll = sigma_abs(*_at(gamma_nr=0.2, k0R=FAR))
    assert single == pytest.approx(2 * 0.2 / 1.2**2)
    assert abs(coll) < 1e-10


def test_unpumped_breakdown_at_figure_distance():
    b = sigma_ext(*_at(gamma_nr=0.2, k0R=2.0))
    assert b.sigma_sc_single == pytest.approx(1.3889, abs=1e-4)
    assert b.sigma_sc_coll == pytest.approx(-0.6047, abs=1e-3)
    assert b.sigma_abs_single == pytest.approx(0.2778, abs=1e-4)
    assert b.sigma_abs_coll == pytest.approx(-0.3024, abs=1e-3)
    assert b.sigma_ext_total == pytest.approx(0.7595, abs=1e-3)


def test_breakdown_sums_exactly():
    b = sigma_ext(*_at(gamma_nr=0.2, pump_P=1.2, detuning=0.7, rabi0=0.05, k0R=3.1))
    assert b.sigma_sc_total == b.sigma_sc_single + b.sigma_sc_coll
    assert b.sigma_abs_total == b.sigma_abs_single + b.sigma_abs_coll
    assert b.sigma_ext_single == b.sigma_sc_single + b.sigma_abs_single
    assert b.sigma_ext_coll == b.sigma_sc_coll + b.sigma_abs_coll
    assert b.sigma_ext_total == pytest.approx(b.sigma_sc_total + b.sigma_abs_total, abs=1e-15)
    assert b.gamma0_rate == b.gamma0_single + b.gamma0_coll


def test_breakdown_carries_validity_flags():
    b = sigma_ext(*_at(k0R=1.0))
    assert "cutoff" in b.validity_flags


def test_strong_pump_limits():
    p, c = _at(gamma_nr=0.2, pump_P=1e4, k0R=2.0)
    sc_single, sc_coll = sigma_sc(p, c)
    abs_single, abs_coll = sigma_abs(p, c)
    assert sc_single + sc_coll == pytest.approx(1 / 1.2**2, rel=1e-2)
    assert abs_single + abs_coll == pytest.approx(0.2 / 1.2**2, rel=1e-2)


def test_strong_pump_asymptote_against_quoted_value():
    a = strong_pump_asymptote(SystemParams(gamma_nr=0.2))
    assert a.formula == pytest.approx(1 / 1.2)
    assert a.quoted == 0.75
    assert a.mismatch


def test_collective_extinction_is_suppressed_by_pumping():
    unpumped = sigma_ext(*_at(gamma_nr=0.2, k0R=2.0)).sigma_ext_coll
    pumped = sigma_ext(*_at(gamma_nr=0.2, pump_P=100.0, k0R=2.0)).sigma_ext_coll
    assert abs(pumped) < 0.05 * abs(unpumped)


def test_collective_scattering_is_asymmetric_in_detuning():
    plus = sigma_sc(*_at(gamma_nr=0.2, pump_P=1.2, detuning=1.0, k0R=2.0))[1]
    minus = sigma_sc(*_at(gamma_nr=0.2, pump_P=1.2, detuning=-1.0, k0R=2.0))[1]
    assert abs(plus - minus) > 1e-6


@pytest.mark.parametrize("pump", [1.2, 7.5])
def test_stimulated_emission_terms_reduce_absorption_on_resonance(pump):
    p, c = _at(gamma_nr=0.2, pump_P=pump, k0R=2.0)
    assert c.gamma_coll > 0
    value = stimulated_emission_terms(
        0.0, p.gamma, p.Gamma, p.pump_P, p.gamma0, c.omega_shift, c.gamma_coll
    )
    assert value < 0


def test_stimulated_emission_terms_broadcast_over_detuning():
    p, c = _at(gamma_nr=0.2, pump_P=1.2, k0R=2.0)
    deltas = np.linspace(-3.0, 3.0, 7)
    values = stimulated_emission_terms(
        deltas, p.gamma, p.Gamma, p.pump_P, p.gamma0, c.omega_shift, c.gamma_coll
    )
    assert isinstance(values, np.ndarray)
    assert values.shape == deltas.shape
    assert values[3] < 0


def test_spontaneous_emission_without_pump_is_zero():
    assert gamma0_total(*_at(rabi0=0.05, k0R=2.0)) == 0.0


def test_spontaneous_emission_of_isolated_pumped_atom():
    p, c = _at(gamma_nr=0.2, pump_P=1.2, k0R=FAR)
    single, coll = gamma0_split(p, c)
    assert single == pytest.approx(0.5)
    assert abs(coll) < 1e-9


def test_spontaneous_emission_free_terms_against_transcription():
    p, c = _at(gamma_nr=0.2, pump_P=1.2, k0R=2.0)
    gamma, big, s = p.gamma, p.Gamma, p.gamma + p.Gamma
    om, gm = c.omega_shift, c.gamma_coll
    expected = (p.pump_P / big) * (
        1.0 - 4 * gm**2 / big + 8 * gamma * (om**2 + gm**2) / (big * s**2)
    )
    assert gamma0_total(p, c) == pytest.approx(expected, abs=1e-12)


def test_transfer_rate_limits():
    assert ret_rate(*_at(gamma_nr=0.2, k0R=2.0)) == 0.0
    p, c = _at(gamma_nr=0.2, pump_P=1.2, k0R=2.0)
    expected = 0.5 * 4 * (c.omega_shift**2 + c.gamma_coll**2) / 3.6
    assert ret_rate(p, c) == pytest.approx(expected)
    assert ret_rate(*_at(gamma_nr=0.2, pump_P=1.2, k0R=FAR)) < 1e-12


def test_arrays_match_scalar_operations():
    deltas = np.linspace(-3.0, 3.0, 7)
    omega = complex(complex_coupling(2.5))
    arrays = cross_section_arrays(deltas, 1.2, omega.real, -omega.imag, gamma_nr=0.2)
    for i, delta in enumerate(deltas):
        b = sigma_ext(*_at(gamma_nr=0.2, pump_P=1.2, detuning=float(delta), k0R=2.5))
        assert arrays["sigma_sc_coll"][i] == pytest.approx(b.sigma_sc_coll, rel=1e-12)
        assert arrays["sigma_abs_total"][i] == pytest.approx(b.sigma_abs_total, rel=1e-12)
        assert arrays["sigma_ext_single"][i] == pytest.approx(b.sigma_ext_single, rel=1e-12)


@settings(max_examples=200)
@given(
    delta=st.floats(-5.0, 5.0),
    pump=st.floats(0.0, 20.0),
    gamma_nr=st.floats(0.0, 1.0),
)
def test_distant_atoms_have_no_collective_response(delta, pump, gamma_nr):
    b = sigma_ext(*_at(gamma_nr=gamma_nr, pump_P=pump, detuning=delta, k0R=FAR))
    for value in (b.sigma_sc_coll, b.sigma_abs_coll, b.sigma_ext_coll, b.ret_rate):
        assert abs(value) < 1e-9


@given(delta=st.floats(-10.0, 10.0), x=st.floats(2.0, 20.0))
def test_unpumped_scattering_equals_semiclassical(delta, x):
    p, c = _at(detuning=delta, k0R=x)
    quantum = sum(sigma_sc(p, c))
    assert quantum == pytest.approx(semiclassical_sigma_sc(p, c), rel=1e-10, abs=1e-14)


@given(
    delta=st.floats(-10.0, 10.0),
    x=st.floats(2.0, 20.0),
    gamma_nr=st.floats(0.0, 2.0),
)
def test_unpumped_absorption_is_positive_inside_window(delta, x, gamma_nr):
    p, c = _at(gamma_nr=gamma_nr, detuning=delta, k0R=x)
    assume(c.gamma_coll + abs(c.complex) <= p.gamma / 2)
    assert sum(sigma_abs(p, c)) >= -1e-12


def test_unpumped_absorption_turns_negative_outside_window():
    p, c = _at(gamma_nr=0.2, k0R=2.0)
    assert c.gamma_coll + abs(c.complex) > p.gamma / 2
    assert sum(sigma_abs(p, c)) < 0
