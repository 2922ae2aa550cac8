"""
Physical parameters of the pumped atomic dimer.

All rates and frequencies are in units of the natural linewidth gamma0 (fixed
to 1), distances are x = k0 R and cross-sections are in units of sigma0.
"""

from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from dimerresponse.utils.config import (
    CUTOFF_K0R,
    DEFAULT_OMEGA0,
    QUASI_RESONANCE_RATIO,
    WEAK_PROBE_RATIO,
)
from dimerresponse.utils.errors import ParameterError, ValidityWarning

logger = logging.getLogger(__name__)

FLAG_WEAK_PROBE = "weak_probe"
FLAG_CUTOFF = "cutoff"
FLAG_QUASI_RESONANCE = "quasi_resonance"

_FLAG_MESSAGES = {
    FLAG_WEAK_PROBE: "probe Rabi frequency is not small compared to Gamma",
    FLAG_CUTOFF: "k0R below the perturbative cutoff; collective terms may be inaccurate",
    FLAG_QUASI_RESONANCE: "detuning is not small compared to the transition frequency",
}


@dataclass(frozen=True)
class SystemParams:
    gamma_nr: float = 0.0
    pump_P: float = 0.0
    detuning: float = 0.0
    rabi0: float = 0.0
    k0R: float = 2.0
    theta: float = 0.0
    pol_overlap: float = 1.0
    Ne0: float | None = None
    omega0: float = DEFAULT_OMEGA0
    gamma0: float = field(default=1.0)

    def __post_init__(self) -> None:
        for name in ("gamma_nr", "pump_P", "detuning", "rabi0", "k0R", "theta",
                     "pol_overlap", "omega0", "gamma0"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int | float):
                raise ParameterError(f"{name} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise ParameterError(f"{name} must be finite, got {value!r}")

        if self.gamma0 <= 0:
            raise ParameterError(f"gamma0 must be > 0, got {self.gamma0}")
        if self.gamma_nr < 0:
            raise ParameterError(f"gamma_nr must be >= 0, got {self.gamma_nr}")
        if self.pump_P < 0:
            raise ParameterError(f"pump_P must be >= 0, got {self.pump_P}")
        if self.rabi0 < 0:
            raise ParameterError(f"rabi0 must be >= 0, got {self.rabi0}")
        if self.k0R <= 0:
            raise ParameterError(f"k0R must be > 0, got {self.k0R}")
        if self.omega0 <= 0:
            raise ParameterError(f"omega0 must be > 0, got {self.omega0}")
        if not 0.0 <= self.pol_overlap <= 1.0:
            raise ParameterError(f"pol_overlap must lie in [0, 1], got {self.pol_overlap}")
        if self.Ne0 is not None and not 0.0 <= self.Ne0 <= 1.0:
            raise ParameterError(f"Ne0 must lie in [0, 1], got {self.Ne0}")

    @classmethod
    def from_pump_drive(
        cls, pump_rabi: float, aux_decay: float, **fields: Any
    ) -> SystemParams:
        """Build from the auxiliary-level drive, with P = pump_rabi**2 / aux_decay."""
        if aux_decay <= 0:
            raise ParameterError(f"aux_decay must be > 0, got {aux_decay}")
        if "pump_P" in fields:
            raise ParameterError("pass either pump_P or (pump_rabi, aux_decay), not both")
        return cls(pump_P=pump_rabi**2 / aux_decay, **fields)

    @property
    def gamma(self) -> float:
        return self.gamma0 + self.gamma_nr

    @property
    def Gamma(self) -> float:
        return self.gamma + self.pump_P

    @property
    def initial_excited(self) -> float:
        """N_e, defaulting to the steady excited population P/Gamma."""
        return self.pump_P / self.Gamma if self.Ne0 is None else self.Ne0

    @property
    def validity_flags(self) -> frozenset[str]:
        flags = set()
        if self.rabi0 >= WEAK_PROBE_RATIO * self.Gamma:
            flags.add(FLAG_WEAK_PROBE)
        if self.k0R < CUTOFF_K0R:
            flags.add(FLAG_CUTOFF)
        if abs(self.detuning) > QUASI_RESONANCE_RATIO * self.omega0:
            flags.add(FLAG_QUASI_RESONANCE)
        return frozenset(flags)

    def as_dict(self) -> dict[str, Any]:
        return {
            "gamma0": self.gamma0,
            "gamma_nr": self.gamma_nr,
            "pump_P": self.pump_P,
            "omega0": self.omega0,
            "detuning": self.detuning,
            "rabi0": self.rabi0,
            "k0R": self.k0R,
            "theta": self.theta,
            "pol_overlap": self.pol_overlap,
            "Ne0": self.Ne0,
        }


@dataclass(frozen=True)
class Populations:
    rho_ee: float
    rho_gg: float


@dataclass(frozen=True)
class SteadyWeights:
    w_g: float
    w_e: float


def flag_message(flag: str) -> str:
    return _FLAG_MESSAGES.get(flag, flag)


def check_validity(p: SystemParams) -> frozenset[str]:
    """Warn about every validity flag raised by `p` and return the flags."""
    flags = p.validity_flags
    for flag in sorted(flags):
        warnings.warn(flag_message(flag), ValidityWarning, stacklevel=2)
    return flags


def derived_rates(p: SystemParams) -> tuple[float, float]:
    """Return (gamma, Gamma) = (gamma0 + gamma_nr, gamma + P)."""
    return p.gamma, p.Gamma


def steady_weights(p: SystemParams) -> SteadyWeights:
    w_e = p.pump_P / p.Gamma
    return SteadyWeights(w_g=1.0 - w_e, w_e=w_e)


def populations_at(p: SystemParams, t: float) -> Populations:
    """Populations of the active atom at time t relaxing towards the pumped steady state."""
    if t < 0:
        raise ParameterError(f"t must be >= 0, got {t}")
    decay = math.exp(-p.Gamma * t)
    n_e = p.initial_excited
    weights = steady_weights(p)
    rho_ee = weights.w_e * (1.0 - decay) + n_e * decay
    rho_gg = weights.w_g * (1.0 - decay) + (1.0 - n_e) * decay
    return Populations(rho_ee=rho_ee, rho_gg=rho_gg)


def sigma0_area(p: SystemParams) -> float:
    """sigma0 * k0**2 = 6 pi (mu.e)**2; the absolute scale behind every cross-section."""
    return 6.0 * np.pi * p.pol_overlap
