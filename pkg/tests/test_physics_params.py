from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dimerresponse.physics.params import (
    FLAG_CUTOFF,
    FLAG_QUASI_RESONANCE,
    FLAG_WEAK_PROBE,
    SystemParams,
    check_validity,
    derived_rates,
    populations_at,
    sigma0_area,
    steady_weights,
)
from dimerresponse.utils.errors import ParameterError, ValidityWarning


def test_defaults_are_a_valid_unpumped_pair():
    p = SystemParams()
    assert p.gamma0 == 1.0
    assert p.k0R == 2.0
    assert p.validity_flags == frozenset()
    assert derived_rates(p) == (1.0, 1.0)


def test_derived_rates():
    p = SystemParams(gamma_nr=0.2, pump_P=1.2)
    assert p.gamma == pytest.approx(1.2)
    assert p.Gamma == pytest.approx(2.4)


@pytest.mark.parametrize(
    "fields",
    [
        {"pump_P": -1.0},
        {"gamma_nr": -0.1},
        {"rabi0": -0.5},
        {"k0R": 0.0},
        {"k0R": -2.0},
        {"pol_overlap": 1.5},
        {"Ne0": 2.0},
        {"detuning": math.nan},
        {"pump_P": math.inf},
        {"pump_P": True},
        {"gamma0": 0.0},
        {"detuning": "1.0"},
    ],
)
def test_invalid_parameters_raise(fields):
    with pytest.raises(ParameterError):
        SystemParams(**fields)


def test_parameter_error_is_a_value_error():
    with pytest.raises(ValueError):
        SystemParams(pump_P=-1.0)


def test_from_pump_drive_sets_pump_rate():
    p = SystemParams.from_pump_drive(2.0, 4.0, gamma_nr=0.2)
    assert p.pump_P == pytest.approx(1.0)
    assert p.gamma_nr == 0.2


def test_from_pump_drive_rejects_bad_input():
    with pytest.raises(ParameterError):
        SystemParams.from_pump_drive(1.0, 0.0)
    with pytest.raises(ParameterError):
        SystemParams.from_pump_drive(1.0, 1.0, pump_P=2.0)


def test_validity_flags():
    assert FLAG_WEAK_PROBE in SystemParams(rabi0=0.5).validity_flags
    assert FLAG_WEAK_PROBE not in SystemParams(rabi0=0.05).validity_flags
    assert FLAG_CUTOFF in SystemParams(k0R=1.0).validity_flags
    assert FLAG_QUASI_RESONANCE in SystemParams(detuning=1e5).validity_flags


def test_check_validity_warns_per_flag():
    p = SystemParams(rabi0=0.5, k0R=1.0)
    with pytest.warns(ValidityWarning) as record:
        flags = check_validity(p)
    assert flags == {FLAG_WEAK_PROBE, FLAG_CUTOFF}
    assert len(record) == 2


def test_steady_weights():
    w = steady_weights(SystemParams(gamma_nr=0.2, pump_P=1.2))
    assert w.w_e == pytest.approx(0.5)
    assert w.w_g == pytest.approx(0.5)


def test_unpumped_atom_stays_in_ground_state():
    w = steady_weights(SystemParams())
    assert w.w_e == 0.0
    assert w.w_g == 1.0


def test_populations_start_at_initial_excitation():
    p = SystemParams(pump_P=1.2, Ne0=0.3)
    pop = populations_at(p, 0.0)
    assert pop.rho_ee == pytest.approx(0.3)
    assert pop.rho_gg == pytest.approx(0.7)


def test_populations_default_to_steady_state():
    p = SystemParams(gamma_nr=0.2, pump_P=1.2)
    pop = populations_at(p, 3.0)
    assert pop.rho_ee == pytest.approx(0.5)


def test_populations_relax_to_steady_state():
    p = SystemParams(gamma_nr=0.2, pump_P=7.5, Ne0=0.0)
    pop = populations_at(p, 100.0 / p.Gamma)
    assert pop.rho_ee == pytest.approx(7.5 / 8.7, abs=1e-12)


@given(
    pump=st.floats(0.0, 50.0),
    gamma_nr=st.floats(0.0, 2.0),
    n_e=st.floats(0.0, 1.0),
)
def test_excited_population_relaxes_monotonically(pump, gamma_nr, n_e):
    p = SystemParams(gamma_nr=gamma_nr, pump_P=pump, Ne0=n_e)
    steady = p.pump_P / p.Gamma
    times = [k * 0.25 / p.Gamma for k in range(41)]
    gaps = [abs(populations_at(p, t).rho_ee - steady) for t in times]
    assert gaps[0] == pytest.approx(abs(n_e - steady), abs=1e-12)
    for earlier, later in zip(gaps, gaps[1:], strict=False):
        assert later <= earlier + 1e-14


def test_decay_without_pump():
    p = SystemParams(Ne0=1.0)
    assert populations_at(p, 1.0).rho_ee == pytest.approx(math.exp(-1.0))


def test_negative_time_raises():
    with pytest.raises(ParameterError):
        populations_at(SystemParams(), -1.0)


@given(
    pump=st.floats(0.0, 50.0),
    gamma_nr=st.floats(0.0, 2.0),
    n_e=st.floats(0.0, 1.0),
    t=st.floats(0.0, 100.0),
)
def test_populations_are_normalized(pump, gamma_nr, n_e, t):
    pop = populations_at(SystemParams(gamma_nr=gamma_nr, pump_P=pump, Ne0=n_e), t)
    assert pop.rho_ee + pop.rho_gg == pytest.approx(1.0, abs=1e-12)
    assert -1e-12 <= pop.rho_ee <= 1.0 + 1e-12


def test_sigma0_area():
    assert sigma0_area(SystemParams()) == pytest.approx(6 * math.pi)
    assert sigma0_area(SystemParams(pol_overlap=0.5)) == pytest.approx(3 * math.pi)
