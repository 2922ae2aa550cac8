"""
Independent reference computations used to cross-check the closed forms:

- the semiclassical (linear-response) scattering cross-section of two
  ground-state atoms and the ground-state polarizability behind it,
- an explicit 3x3 projector contraction of the Green's tensor,
- a fixed-step RK4 integrator of the active atom's rate equations.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from dimerresponse.physics.dipole_field import DipoleCoupling, green_tensor
from dimerresponse.physics.params import Populations, SystemParams
from dimerresponse.utils.config import MAX_STEP_FRACTION
from dimerresponse.utils.errors import ParameterError, StepSizeError, ValidityWarning

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Polarizability:
    value: complex


@dataclass(frozen=True)
class PopulationTrajectory:
    times: NDArray[np.float64]
    rho_ee: NDArray[np.float64]
    rho_gg: NDArray[np.float64]

    def __len__(self) -> int:
        return len(self.times)

    def at(self, index: int) -> Populations:
        return Populations(rho_ee=float(self.rho_ee[index]), rho_gg=float(self.rho_gg[index]))


def polarizability(p: SystemParams) -> Polarizability:
    """Ground-state polarizability in units of mu^2 / (hbar gamma0); pole at omega0 - i gamma/2."""
    return Polarizability(value=p.gamma0 / (p.detuning + 0.5j * p.gamma))


def semiclassical_sigma_sc(p: SystemParams, c: DipoleCoupling, *, warn: bool = True) -> float:
    """Linear-response scattering cross-section of two ground-state atoms, in sigma0 units."""
    if warn and p.pump_P > 0:
        msg = "semiclassical cross-section ignores the pump rate"
        logger.warning("%s (P=%g)", msg, p.pump_P)
        warnings.warn(msg, ValidityWarning, stacklevel=2)

    gamma = p.gamma
    delta = p.detuning
    dg = delta**2 + gamma**2 / 4
    single = gamma * p.gamma0 / (2 * dg)
    coll = (
        (delta**2 - gamma**2 / 4) * c.gamma_coll * p.gamma0
        + delta * c.omega_shift * gamma * p.gamma0
    ) / dg**2
    return single + coll


def tensor_coupling(x: float, theta: float, gamma0: float = 1.0) -> complex:
    """Omega from an explicit mu.G.mu contraction with the dipole in the x-z plane."""
    r_hat = np.array([0.0, 0.0, 1.0])
    mu_hat = np.array([np.sin(theta), 0.0, np.cos(theta)])
    tensor = green_tensor(x, r_hat)
    return complex(0.75 * gamma0 * np.einsum("i,ij,j->", mu_hat, tensor, mu_hat))


def rate_equation_integrate(
    p: SystemParams, t_end: float, dt: float
) -> PopulationTrajectory:
    """
    Integrate d(rho_ee)/dt = P rho_gg - gamma rho_ee, d(rho_gg)/dt = -d(rho_ee)/dt
    with classical fourth-order Runge-Kutta from rho_ee(0) = N_e.

    The last step is shortened so the trajectory ends exactly at t_end.
    """
    if t_end <= 0:
        raise ParameterError(f"t_end must be > 0, got {t_end}")
    if dt <= 0:
        raise ParameterError(f"dt must be > 0, got {dt}")
    if dt > MAX_STEP_FRACTION / p.Gamma * (1 + 1e-12):
        raise StepSizeError(
            f"dt={dt} exceeds the stability bound {MAX_STEP_FRACTION}/Gamma = "
            f"{MAX_STEP_FRACTION / p.Gamma}"
        )

    pump = p.pump_P
    gamma = p.gamma
    # Generator of the linear system y' = A y with y = (rho_ee, rho_gg)
    a = np.array([[-gamma, pump], [gamma, -pump]])

    n_full = int(np.floor(t_end / dt + 1e-9))
    steps = [dt] * n_full
    remainder = t_end - n_full * dt
    if remainder > 1e-12 * dt:
        steps.append(remainder)

    times = np.empty(len(steps) + 1)
    states = np.empty((len(steps) + 1, 2))
    y = np.array([p.initial_excited, 1.0 - p.initial_excited])
    times[0] = 0.0
    states[0] = y

    t = 0.0
    for i, h in enumerate(steps, start=1):
        k1 = a @ y
        k2 = a @ (y + 0.5 * h * k1)
        k3 = a @ (y + 0.5 * h * k2)
        k4 = a @ (y + h * k3)
        y = y + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h
        times[i] = t
        states[i] = y

    logger.debug("integrated %d RK4 steps to t=%g", len(steps), t)
    return PopulationTrajectory(times=times, rho_ee=states[:, 0], rho_gg=states[:, 1])
