"""
Quadrature oracles for four emitted/absorbed powers of the pumped dimer.

Each power has a residue (closed-form) result and a frequency-integral
representation

    W = prefactor * Re[ multiplier * (1/pi) Int ds rho(s) K(s; t) ]

over the detuning s = w' - w of the intermediate photon. `rho` is the
spectral density Im Omega(w') of the coupling, `K` the time-dependent kernel
left after the d/dt has been applied analytically. Evaluating the integral
numerically tests the contour algebra behind the closed forms.

Spectral density: Omega(w') is continued as Omega * iL / (w' - w0 + iL), i.e.
analytic in the upper half plane with bandwidth L >> Gamma. Integrating its
imaginary part then reproduces the Re Omega (dispersive) contributions
through Kramers-Kronig, which a frequency-independent Im Omega would lose.
The w'^3 prefactors are set to their pole values and the w' range is
extended to the whole real line (quasi-resonance).

Quadrature:
    - core window |s| <= C: composite Gauss-Legendre on the full kernel,
      panels resolving both the oscillation period pi/t and the line width
    - tails |s| > C: the kernel is split into a smooth part (adaptive quad)
      and oscillating parts amp(s) e^{i tau s} (QUADPACK QAWF via
      weight='cos'/'sin')
    - the estimate is averaged over one probe period after t_obs, and the
      core panel count is doubled to gate convergence
"""

from __future__ import annotations

import logging
import math
import warnings
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any, Literal

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from dimerresponse.physics.dipole_field import DipoleCoupling, coupling, self_coupling
from dimerresponse.physics.params import SystemParams
from dimerresponse.utils.config import (
    FIGURE_GAMMA_NR,
    FIGURE_K0R,
    FIGURE_PUMPS,
    GAUSS_ORDER,
    NODE_DOUBLING_GATE,
    ORACLE_MIN_T_OBS,
    ORACLE_T_OBS,
    ORACLE_TOLERANCE,
    PERIOD_SAMPLES,
    SPECTRAL_BANDWIDTH,
)
from dimerresponse.utils.errors import ConfigError, ParameterError, QuadratureError

logger = logging.getLogger(__name__)

Case = Literal["W2", "W4", "W9", "W12"]
CASES: tuple[Case, ...] = ("W2", "W4", "W9", "W12")

Density = Callable[[np.ndarray], np.ndarray]
Amplitude = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class OracleReport:
    case_id: str
    params: SystemParams
    closed_form: float
    numeric: float
    rel_err: float
    passed: bool
    tolerance: float
    abs_error: float = 0.0

    def as_dict(self) -> dict[str, Any]:
        return {
            "check": f"oracle_{self.case_id}",
            "case_id": self.case_id,
            "params": self.params.as_dict(),
            "closed_form": self.closed_form,
            "numeric": self.numeric,
            "rel_err": self.rel_err,
            "abs_error": self.abs_error,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class PowerEstimate:
    value: float
    coarse: float
    abs_error: float
    nodes: int


@dataclass(frozen=True)
class _Kernel:
    full: Amplitude
    smooth: Amplitude | None = None
    waves: tuple[tuple[Amplitude, float], ...] = field(default_factory=tuple)


# Helpers
def _check_case(case: str) -> Case:
    if case not in CASES:
        raise ConfigError(f"unknown oracle case {case!r}; expected one of {CASES}")
    return case  # type: ignore[return-value]


def _spectral_density(omega: complex, detuning: float, bandwidth: float) -> Density:
    """Im of omega * iL / (s + detuning + iL), s measured from the probe frequency."""

    def rho(s: np.ndarray) -> np.ndarray:
        return np.imag(omega * 1j * bandwidth / (s + detuning + 1j * bandwidth))

    return rho


def _sinc_kernel(t: float, pole: complex | None) -> _Kernel:
    """-2 sin(st)/s, optionally divided by (s + pole)."""

    def tail_factor(s: np.ndarray) -> np.ndarray:
        return 1.0 / s if pole is None else 1.0 / (s * (s + pole))

    def full(s: np.ndarray) -> np.ndarray:
        base = -2.0 * t * np.sinc(s * t / np.pi)
        return base if pole is None else base / (s + pole)

    return _Kernel(
        full=full,
        waves=(
            (lambda s: 1j * tail_factor(s), t),
            (lambda s: -1j * tail_factor(s), -t),
        ),
    )


def _kernel_w9(t: float, q: complex) -> _Kernel:
    """[(s + q) - q e^{ist}] / (s (s + q)), regular at s = 0."""
    return _Kernel(
        full=lambda s: -np.expm1(1j * s * t) / s + np.exp(1j * s * t) / (s + q),
        smooth=lambda s: 1.0 / s,
        waves=((lambda s: 1.0 / (s + q) - 1.0 / s, t),),
    )


def _kernel_w12(t: float, detuning: float, rate: float) -> _Kernel:
    """Time-integrated transfer amplitude (1 - e^{-(iu + rate) t}) / (iu + rate), u = s + detuning."""

    def z(s: np.ndarray) -> np.ndarray:
        return 1j * (s + detuning) + rate

    phase = np.exp(-rate * t - 1j * detuning * t)
    return _Kernel(
        full=lambda s: -np.expm1(-z(s) * t) / z(s),
        smooth=lambda s: 1.0 / z(s),
        waves=((lambda s: -phase / z(s), -t),),
    )


def _core_nodes(half_width: float, panel: float) -> tuple[np.ndarray, np.ndarray]:
    n_panels = 2 * math.ceil(half_width / panel)
    edges = np.linspace(-half_width, half_width, n_panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    x, w = np.polynomial.legendre.leggauss(GAUSS_ORDER)
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _quad(fn: Callable[[float], float], start: float, scale: float, **kw: Any) -> tuple[float, float]:
    """Integral of a real function over [start, inf), split at a few times `scale`."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        if "weight" in kw:
            return quad(fn, start, np.inf, limit=200, **kw)
        split = max(start, 0.0) + 50.0 * scale
        v1, e1 = quad(fn, start, split, limit=400, epsabs=1e-14, epsrel=1e-11)
        v2, e2 = quad(fn, split, np.inf, limit=200, epsabs=1e-14, epsrel=1e-11)
    return v1 + v2, e1 + e2


def _tails(rho: Density, kernel: _Kernel, start: float, scale: float) -> tuple[complex, float]:
    """Int over |s| > start of rho * kernel, from the smooth/oscillating split."""
    total = 0j
    err = 0.0
    for side in (1.0, -1.0):
        if kernel.smooth is not None:
            smooth = kernel.smooth

            def h_smooth(u: float, side=side, smooth=smooth) -> complex:
                s = np.asarray(side * u)
                return complex(rho(s) * smooth(s))

            for part, unit in ((np.real, 1.0), (np.imag, 1j)):
                v, e = _quad(lambda u, part=part, h=h_smooth: float(part(h(u))), start, scale)
                total += unit * v
                err += e

        for amp, tau in kernel.waves:
            omega = tau * side
            sign = math.copysign(1.0, omega)

            def h_wave(u: float, side=side, amp=amp) -> complex:
                s = np.asarray(side * u)
                return complex(rho(s) * amp(s))

            cr, ecr = _quad(lambda u, h=h_wave: h(u).real, start, scale, weight="cos", wvar=abs(omega))
            ci, eci = _quad(lambda u, h=h_wave: h(u).imag, start, scale, weight="cos", wvar=abs(omega))
            sr, esr = _quad(lambda u, h=h_wave: h(u).real, start, scale, weight="sin", wvar=abs(omega))
            si, esi = _quad(lambda u, h=h_wave: h(u).imag, start, scale, weight="sin", wvar=abs(omega))
            total += complex(cr - sign * si, sign * sr + ci)
            err += ecr + eci + esr + esi
    return total, err


def _spectral_integral(
    rho: Density, kernel: _Kernel, p: SystemParams, t: float
) -> tuple[complex, complex, float, int]:
    """(1/pi) Int rho K ds at the reference and doubled core resolution."""
    half_width = 20.0 * (p.Gamma + p.gamma + abs(p.detuning))
    panel = min(np.pi / t, p.gamma / 4.0)

    values = []
    n_nodes = 0
    for refine in (1, 2):
        nodes, weights = _core_nodes(half_width, panel / refine)
        values.append(np.sum(weights * rho(nodes) * kernel.full(nodes)))
        n_nodes = nodes.size

    tail, tail_err = _tails(rho, kernel, half_width, SPECTRAL_BANDWIDTH)
    coarse = (values[0] + tail) / np.pi
    fine = (values[1] + tail) / np.pi
    return fine, coarse, tail_err / np.pi, n_nodes


# Public API
def closed_form_power(case: str, p: SystemParams, c: DipoleCoupling) -> float:
    """
    Residue result of each power, in units of hbar*omega*gamma0 with the
    probe Rabi frequency in gamma0 units.

    W2:  photons exchanged between the atoms, active atom excited
    W4:  photon created and annihilated at the passive atom
    W9:  transient excitation of the passive atom
    W12: collective stimulated emission
    """
    case = _check_case(case)
    delta = p.detuning
    gamma, big_gamma = p.gamma, p.Gamma
    dg = delta**2 + gamma**2 / 4
    dG = delta**2 + big_gamma**2 / 4
    w_e = p.pump_P / big_gamma
    w_g = gamma / big_gamma
    rabi2 = p.rabi0**2
    re_pair = c.omega_shift
    im_pair = -c.gamma_coll
    im_self = self_coupling(p.gamma0).imag

    if case == "W2":
        return w_e * rabi2 * (delta**2 - gamma * big_gamma / 4) * im_pair / (dG * dg)
    if case == "W4":
        return -w_e * rabi2 * im_self * im_pair / (dg * (big_gamma / 2 + gamma / 2))
    if case == "W9":
        return gamma * w_g * rabi2 / 4 * (2 * delta * re_pair + big_gamma * im_pair) / (dG * dg)
    return p.pump_P * rabi2 * im_pair / (dG * (big_gamma + gamma))


def numeric_power_estimate(
    case: str,
    p: SystemParams,
    t_obs: float,
    *,
    bandwidth: float = SPECTRAL_BANDWIDTH,
    period_samples: int = PERIOD_SAMPLES,
    gate: float = NODE_DOUBLING_GATE,
) -> PowerEstimate:
    case = _check_case(case)
    if t_obs * p.gamma < ORACLE_MIN_T_OBS:
        raise ParameterError(
            f"t_obs={t_obs} too short: need t_obs*gamma >= {ORACLE_MIN_T_OBS}"
        )

    if p.rabi0 == 0.0 or (case != "W9" and p.pump_P == 0.0):
        return PowerEstimate(value=0.0, coarse=0.0, abs_error=0.0, nodes=0)

    c = coupling(p)
    delta = p.detuning
    gamma, big_gamma = p.gamma, p.Gamma
    dg = delta**2 + gamma**2 / 4
    dG = delta**2 + big_gamma**2 / 4
    w_e = p.pump_P / big_gamma
    rabi2 = p.rabi0**2
    rate = (big_gamma + gamma) / 2
    pair = _spectral_density(c.complex, delta, bandwidth)
    own = _spectral_density(self_coupling(p.gamma0), delta, bandwidth)

    def sample(t: float) -> tuple[float, float, float, int]:
        if case == "W2":
            fine, coarse, err, n = _spectral_integral(pair, _sinc_kernel(t, delta + 0.5j * big_gamma), p, t)
            mult = w_e * (-rabi2 / 4) * 2 / (delta + 0.5j * gamma)
        elif case == "W4":
            passive, passive_c, err_a, _ = _spectral_integral(
                pair, _Kernel(full=lambda s: 1.0 / (s + delta + 0.5j * big_gamma),
                              smooth=lambda s: 1.0 / (s + delta + 0.5j * big_gamma)), p, t
            )
            own_fine, own_coarse, err_b, n = _spectral_integral(own, _sinc_kernel(t, None), p, t)
            fine, coarse = passive * own_fine, passive_c * own_coarse
            err = err_a * abs(own_fine) + err_b * abs(passive)
            mult = w_e * (-rabi2 / 4) * 2 / (1j * rate * dg)
        elif case == "W9":
            fine, coarse, err, n = _spectral_integral(pair, _kernel_w9(t, delta - 0.5j * gamma), p, t)
            mult = gamma * (gamma / big_gamma) * rabi2 / 4 * 2 / ((delta - 0.5j * big_gamma) * dg)
        else:
            fine, coarse, err, n = _spectral_integral(pair, _kernel_w12(t, delta, rate), p, t)
            mult = p.pump_P * rabi2 / (dG * (big_gamma + gamma))
        return (mult * fine).real, (mult * coarse).real, abs(mult) * err, n

    period = 2 * np.pi / (p.omega0 + delta)
    times = t_obs + period * np.arange(period_samples) / period_samples
    samples = [sample(float(t)) for t in times]
    value = float(np.mean([s[0] for s in samples]))
    coarse = float(np.mean([s[1] for s in samples]))
    abs_error = abs(value - coarse) + max(s[2] for s in samples)
    nodes = samples[0][3]

    logger.debug("%s numeric=%.6e coarse=%.6e nodes=%d", case, value, coarse, nodes)
    if abs(value - coarse) > gate * abs(value):
        raise QuadratureError(
            f"{case}: doubling the quadrature nodes changed the estimate by more "
            f"than {gate:.1%}",
            abs_error,
        )
    return PowerEstimate(value=value, coarse=coarse, abs_error=abs_error, nodes=nodes)


def numeric_power(case: str, p: SystemParams, t_obs: float) -> float:
    return numeric_power_estimate(case, p, t_obs).value


def run_oracle(
    case: str,
    p: SystemParams,
    tolerance: float = ORACLE_TOLERANCE,
    t_obs: float | None = None,
) -> OracleReport:
    """Compare numeric and closed-form power for one case at one parameter point."""
    t_obs = ORACLE_T_OBS / p.gamma if t_obs is None else t_obs
    closed = closed_form_power(case, p, coupling(p))
    estimate = numeric_power_estimate(case, p, t_obs)
    if closed != 0.0:
        rel_err = abs(estimate.value - closed) / abs(closed)
    else:
        rel_err = abs(estimate.value)
    return OracleReport(
        case_id=case,
        params=p,
        closed_form=closed,
        numeric=estimate.value,
        rel_err=rel_err,
        passed=rel_err <= tolerance,
        tolerance=tolerance,
        abs_error=estimate.abs_error,
    )


def oracle_grid(rabi0: float = 0.1) -> list[SystemParams]:
    """Delta in {0, +-1} x P in {0, 1.2, 7.5} at k0R = 2, gamma_nr = 0.2."""
    return [
        SystemParams(
            gamma_nr=FIGURE_GAMMA_NR,
            pump_P=pump,
            detuning=delta,
            rabi0=rabi0,
            k0R=FIGURE_K0R,
        )
        for pump in FIGURE_PUMPS
        for delta in (0.0, 1.0, -1.0)
    ]
