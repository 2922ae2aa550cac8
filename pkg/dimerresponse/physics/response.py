"""
Steady-state optical response of the pumped dimer.

Every closed form is split syntactically: a term is collective when it carries
the coupling (omega_shift or gamma_coll), single-atom otherwise. The array
kernels below broadcast over numpy inputs so sweeps and invariant grids can be
evaluated in one call; the public operations wrap them for a single point.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from dimerresponse.physics.dipole_field import DipoleCoupling
from dimerresponse.physics.params import SystemParams

QUOTED_EXTINCTION_ASYMPTOTE = 0.75


@dataclass(frozen=True)
class ResponseBreakdown:
    sigma_sc_single: float
    sigma_sc_coll: float
    sigma_sc_total: float
    sigma_abs_single: float
    sigma_abs_coll: float
    sigma_abs_total: float
    sigma_ext_single: float
    sigma_ext_coll: float
    sigma_ext_total: float
    gamma0_single: float
    gamma0_coll: float
    gamma0_rate: float
    ret_rate: float
    validity_flags: frozenset[str] = frozenset()


@dataclass(frozen=True)
class ExtinctionAsymptote:
    formula: float
    quoted: float

    @property
    def mismatch(self) -> bool:
        return not np.isclose(self.formula, self.quoted, rtol=1e-9, atol=0.0)


# Array kernels
def _scattering(
    delta: ArrayLike,
    gamma: ArrayLike,
    big_gamma: ArrayLike,
    pump: ArrayLike,
    gamma0: float,
    om: ArrayLike,
    gm: ArrayLike,
) -> tuple[np.ndarray, np.ndarray]:
    dg = delta**2 + gamma**2 / 4
    dG = delta**2 + big_gamma**2 / 4
    s = gamma + big_gamma
    w_e = pump / big_gamma
    w_g = gamma / big_gamma

    single = gamma0**2 / (4 * dG) + gamma0**2 / (4 * dg)

    excited = (
        ((delta**2 - gamma * big_gamma / 4) * gm - delta * s / 2 * om)
        * gamma0**2
        / (s * dG * dg)
        - gm * gamma0 * (delta**2 - gamma * big_gamma / 4 - gamma0 * big_gamma / 4)
        / (dG * dg)
        - gm * gamma0**2 / (s * dg)
    )
    ground = (
        (delta**2 + gamma * big_gamma / 4) * gm * gamma0
        + delta * om * gamma0**2
        - s / 4 * gm * gamma0**2
    ) / (dG * dg)
    return single, w_e * excited + w_g * ground


def _absorption(
    delta: ArrayLike,
    gamma: ArrayLike,
    big_gamma: ArrayLike,
    pump: ArrayLike,
    gamma0: float,
    om: ArrayLike,
    gm: ArrayLike,
) -> tuple[np.ndarray, np.ndarray]:
    gamma_nr = gamma - gamma0
    dg = delta**2 + gamma**2 / 4
    dG = delta**2 + big_gamma**2 / 4
    s = gamma + big_gamma
    w_e = pump / big_gamma
    w_g = gamma / big_gamma

    # active atom (absorption minus stimulated emission), then passive atom
    single = gamma0 * (w_g * gamma_nr - w_e * pump) / (4 * dG) + gamma0 * gamma_nr / (
        4 * dg
    )

    from_excited = gm * gamma0 * gamma_nr / (s * dg) + gm * gamma0 * big_gamma / (
        s * dG
    )
    from_ground = (delta * om - big_gamma / 2 * gm) * gamma0 * gamma_nr / (
        2 * dG * dg
    ) + stimulated_emission_terms(delta, gamma, big_gamma, pump, gamma0, om, gm)
    return single, -w_e * from_excited + w_g * from_ground


def stimulated_emission_terms(
    delta: ArrayLike,
    gamma: ArrayLike,
    big_gamma: ArrayLike,
    pump: ArrayLike,
    gamma0: float,
    om: ArrayLike,
    gm: ArrayLike,
) -> np.ndarray:
    """The (P + gamma_nr)-weighted collective term of sigma_abs, before the gamma/Gamma weight."""
    gamma_nr = gamma - gamma0
    dg = delta**2 + gamma**2 / 4
    dG = delta**2 + big_gamma**2 / 4
    return (delta * om - gamma / 2 * gm) * (pump + gamma_nr) * gamma0 / (2 * dG * dg)


def _spontaneous(
    delta: ArrayLike,
    gamma: ArrayLike,
    big_gamma: ArrayLike,
    pump: ArrayLike,
    gamma0: float,
    rabi0: float,
    om: ArrayLike,
    gm: ArrayLike,
) -> tuple[np.ndarray, np.ndarray]:
    dg = delta**2 + gamma**2 / 4
    dG = delta**2 + big_gamma**2 / 4
    s = gamma + big_gamma
    w_e = pump / big_gamma
    laser = rabi0**2 / 4

    single = gamma0 * (1 - rabi0**2 * big_gamma**2 / 16 / dG**2)

    coll_free = -s / 2 * 8 * gm**2 / (big_gamma * s) + gamma * 8 * (
        om**2 + gm**2
    ) * gamma0 / (big_gamma * s**2)
    shared = s / 2 * (
        (2 * delta * om + 4 * gm * (delta**2 / big_gamma + gamma / 4) - gamma * gm)
        / (dg * dG)
        + 8 * delta * om / (big_gamma * s * dG)
        - 8 * delta * om / (big_gamma * s * dg)
    )
    passive = gamma * gamma0 * (
        -8 * (delta * om - big_gamma / 2 * gm) / (big_gamma * s**2 * dG)
        + 8 * (delta * om + gamma / 2 * gm) / (big_gamma * s**2 * dg)
        - 2
        * (delta * om * (1 - gamma / big_gamma) + 2 * gm * (delta**2 / big_gamma + gamma / 4))
        / (s * dg * dG)
    )
    return w_e * single, w_e * (coll_free + laser * (shared + passive))


def _transfer(
    delta: ArrayLike,
    gamma: ArrayLike,
    big_gamma: ArrayLike,
    pump: ArrayLike,
    rabi0: float,
    om: ArrayLike,
    gm: ArrayLike,
) -> np.ndarray:
    dg = delta**2 + gamma**2 / 4
    dG = delta**2 + big_gamma**2 / 4
    s = gamma + big_gamma
    w_e = pump / big_gamma
    bracket = 8 * (om**2 + gm**2) / s**2 + 2 * rabi0**2 * (
        (delta * om + gamma / 2 * gm) / (s**2 * dg)
        - (delta * om - big_gamma / 2 * gm) / (s**2 * dG)
    )
    return s / 2 * w_e * bracket


def cross_section_arrays(
    detuning: ArrayLike,
    pump: ArrayLike,
    omega_shift: ArrayLike,
    gamma_coll: ArrayLike,
    gamma_nr: float = 0.0,
    gamma0: float = 1.0,
) -> dict[str, np.ndarray]:
    """Broadcast sigma_sc / sigma_abs / sigma_ext parts over arrays of inputs."""
    delta = np.asarray(detuning, dtype=float)
    pump = np.asarray(pump, dtype=float)
    om = np.asarray(omega_shift, dtype=float)
    gm = np.asarray(gamma_coll, dtype=float)
    gamma = gamma0 + gamma_nr
    big_gamma = gamma + pump

    sc_single, sc_coll = _scattering(delta, gamma, big_gamma, pump, gamma0, om, gm)
    abs_single, abs_coll = _absorption(delta, gamma, big_gamma, pump, gamma0, om, gm)
    sc_single = np.broadcast_to(sc_single, np.broadcast(sc_coll, abs_coll).shape)
    abs_single = np.broadcast_to(abs_single, sc_single.shape)
    return {
        "sigma_sc_single": sc_single,
        "sigma_sc_coll": sc_coll,
        "sigma_sc_total": sc_single + sc_coll,
        "sigma_abs_single": abs_single,
        "sigma_abs_coll": abs_coll,
        "sigma_abs_total": abs_single + abs_coll,
        "sigma_ext_single": sc_single + abs_single,
        "sigma_ext_coll": sc_coll + abs_coll,
        "sigma_ext_total": sc_single + sc_coll + abs_single + abs_coll,
    }


def _args(
    p: SystemParams, c: DipoleCoupling
) -> tuple[float, float, float, float, float, float, float]:
    return (
        p.detuning,
        p.gamma,
        p.Gamma,
        p.pump_P,
        p.gamma0,
        c.omega_shift,
        c.gamma_coll,
    )


# Public API
def sigma_sc(p: SystemParams, c: DipoleCoupling) -> tuple[float, float]:
    """Scattering cross-section (single, collective) in sigma0 units."""
    single, coll = _scattering(*_args(p, c))
    return float(single), float(coll)


def sigma_abs(p: SystemParams, c: DipoleCoupling) -> tuple[float, float]:
    """
    Absorption cross-section (single, collective) in sigma0 units.

    Stimulated emission enters with a negative sign: the -P/Gamma * P piece of
    the active-atom term and the (P + gamma_nr)-weighted collective term.
    """
    single, coll = _absorption(*_args(p, c))
    return float(single), float(coll)


def gamma0_split(p: SystemParams, c: DipoleCoupling) -> tuple[float, float]:
    """Total spontaneous emission rate (single, collective) in gamma0 units."""
    delta, gamma, big_gamma, pump, gamma0, om, gm = _args(p, c)
    single, coll = _spontaneous(delta, gamma, big_gamma, pump, gamma0, p.rabi0, om, gm)
    return float(single), float(coll)


def gamma0_total(p: SystemParams, c: DipoleCoupling) -> float:
    single, coll = gamma0_split(p, c)
    return single + coll


def ret_rate(p: SystemParams, c: DipoleCoupling) -> float:
    """Rate of resonant energy transfer from the active to the passive atom."""
    delta, gamma, big_gamma, pump, _, om, gm = _args(p, c)
    return float(_transfer(delta, gamma, big_gamma, pump, p.rabi0, om, gm))


def sigma_ext(p: SystemParams, c: DipoleCoupling) -> ResponseBreakdown:
    sc_single, sc_coll = sigma_sc(p, c)
    abs_single, abs_coll = sigma_abs(p, c)
    g_single, g_coll = gamma0_split(p, c)
    sc_total = sc_single + sc_coll
    abs_total = abs_single + abs_coll
    return ResponseBreakdown(
        sigma_sc_single=sc_single,
        sigma_sc_coll=sc_coll,
        sigma_sc_total=sc_total,
        sigma_abs_single=abs_single,
        sigma_abs_coll=abs_coll,
        sigma_abs_total=abs_total,
        sigma_ext_single=sc_single + abs_single,
        sigma_ext_coll=sc_coll + abs_coll,
        sigma_ext_total=sc_total + abs_total,
        gamma0_single=g_single,
        gamma0_coll=g_coll,
        gamma0_rate=g_single + g_coll,
        ret_rate=ret_rate(p, c),
        validity_flags=p.validity_flags,
    )


def strong_pump_asymptote(p: SystemParams) -> ExtinctionAsymptote:
    """
    Large-P limit of sigma_ext_total: only the passive-atom Lorentzians survive,
    giving gamma0/gamma at resonance, next to the quoted 3/4.
    """
    gamma = p.gamma
    dg = p.detuning**2 + gamma**2 / 4
    limit = p.gamma0**2 / (4 * dg) + p.gamma0 * p.gamma_nr / (4 * dg)
    return ExtinctionAsymptote(formula=limit, quoted=QUOTED_EXTINCTION_ASYMPTOTE)
