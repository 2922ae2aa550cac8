"""
Free-space dyadic Green's function and the complex excitation-transfer rate

    Omega(x, theta) = -(3 gamma0 / 4) e^{ix} [sin^2(theta)/x + (1 - 3cos^2(theta))(i/x^2 - 1/x^3)]
                    = omega_shift - i gamma_coll

evaluated at the transition frequency (k' = k0), x = k0 R.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from dimerresponse.physics.params import SystemParams
from dimerresponse.utils.errors import DomainError


@dataclass(frozen=True)
class GreenProjection:
    x: float
    theta: float
    g_re: float
    g_im: float

    @property
    def value(self) -> complex:
        return complex(self.g_re, self.g_im)


@dataclass(frozen=True)
class DipoleCoupling:
    omega_shift: float
    gamma_coll: float

    @property
    def complex(self) -> complex:
        return complex(self.omega_shift, -self.gamma_coll)


def _require_positive(x: ArrayLike) -> NDArray[np.float64]:
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"Green's function needs x > 0, got {x!r}")
    return arr


def _projected(x: NDArray[np.float64], theta: ArrayLike) -> NDArray[np.complex128]:
    cos2 = np.cos(theta) ** 2
    transverse = 1.0 - cos2  # mu.P.mu
    longitudinal = 1.0 - 3.0 * cos2  # mu.Q.mu
    bracket = transverse / x + longitudinal * (1j / x**2 - 1.0 / x**3)
    return -np.exp(1j * x) * bracket


def green_projected(x: float, theta: float = 0.0) -> GreenProjection:
    """mu.G.mu normalized by 4 pi / k'."""
    g = complex(_projected(_require_positive(x), theta))
    return GreenProjection(x=float(x), theta=float(theta), g_re=g.real, g_im=g.imag)


def green_tensor(x: float, r_hat: ArrayLike) -> NDArray[np.complex128]:
    """Full 3x3 tensor -e^{ix}[P/x + iQ/x^2 - Q/x^3] with P = I - RR, Q = I - 3RR."""
    x = float(_require_positive(x))
    r = np.asarray(r_hat, dtype=float)
    r = r / np.linalg.norm(r)
    rr = np.outer(r, r)
    eye = np.eye(3)
    proj_p = eye - rr
    proj_q = eye - 3.0 * rr
    return -np.exp(1j * x) * (proj_p / x + 1j * proj_q / x**2 - proj_q / x**3)


def complex_coupling(
    x: ArrayLike, theta: ArrayLike = 0.0, gamma0: float = 1.0
) -> NDArray[np.complex128]:
    """Vectorized Omega over arrays of x (and theta)."""
    return 0.75 * gamma0 * _projected(_require_positive(x), theta)


def coupling(p: SystemParams) -> DipoleCoupling:
    omega = complex(complex_coupling(p.k0R, p.theta, p.gamma0))
    return DipoleCoupling(omega_shift=omega.real, gamma_coll=-omega.imag)


def self_coupling(gamma0: float = 1.0) -> complex:
    """
    Regular r -> 0+ limit of the radiative (imaginary) part of the self field.

    The divergent real part is the Lamb shift already absorbed in omega0, which
    leaves -i gamma0 / 2.
    """
    return -0.5j * gamma0
