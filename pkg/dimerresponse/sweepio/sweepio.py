from __future__ import annotations

import csv
import dataclasses
import json
import logging
import math
import os
import warnings
from collections.abc import Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from dimerresponse import __version__
from dimerresponse.physics.comparators import semiclassical_sigma_sc
from dimerresponse.physics.dipole_field import coupling
from dimerresponse.physics.params import SystemParams, flag_message
from dimerresponse.physics.response import sigma_ext
from dimerresponse.utils.config import (
    DEFAULT_THREADS,
    FIGURE_GAMMA_NR,
    FIGURE_K0R,
    FIGURE_PUMPS,
    MAX_THREADS,
    THREADS_ENV,
)
from dimerresponse.utils.errors import ConfigError, NumericError, ParameterError, ValidityWarning
from dimerresponse.utils.normalize_lists import normalize_str_list
from dimerresponse.utils.normalize_value import (
    normalize_float,
    normalize_int,
    strip_wrapping_quotes,
)

logger = logging.getLogger(__name__)

AXES = {"detuning": "detuning", "pump": "pump_P", "distance": "k0R"}
AXIS_UNITS = {"detuning": "gamma0", "pump": "gamma0", "distance": "1/k0"}

PARAM_KEYS = ("gamma_nr", "pump_P", "detuning", "rabi0", "k0R", "theta", "pol_overlap", "Ne0")
CONFIG_KEYS = frozenset((*PARAM_KEYS, "sweep", "outputs"))
SWEEP_KEYS = frozenset(("axis", "start", "stop", "n"))

# output -> ({part: breakdown attribute}, unit)
OUTPUTS: dict[str, tuple[dict[str, str], str]] = {
    "sigma_sc": (
        {"single": "sigma_sc_single", "coll": "sigma_sc_coll", "total": "sigma_sc_total"},
        "sigma0",
    ),
    "sigma_abs": (
        {"single": "sigma_abs_single", "coll": "sigma_abs_coll", "total": "sigma_abs_total"},
        "sigma0",
    ),
    "sigma_ext": (
        {"single": "sigma_ext_single", "coll": "sigma_ext_coll", "total": "sigma_ext_total"},
        "sigma0",
    ),
    "gamma0_rate": (
        {"single": "gamma0_single", "coll": "gamma0_coll", "total": "gamma0_rate"},
        "gamma0",
    ),
    "ret_rate": ({"total": "ret_rate"}, "gamma0"),
    "semiclassical": ({"total": "semiclassical_sigma_sc"}, "sigma0"),
}
DEFAULT_OUTPUTS = ("sigma_sc", "sigma_abs", "sigma_ext")


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    start: float
    stop: float
    n: int
    base: SystemParams = field(default_factory=SystemParams)
    outputs: tuple[str, ...] = DEFAULT_OUTPUTS

    def __post_init__(self) -> None:
        if self.axis not in AXES:
            raise ConfigError(f"sweep axis must be one of {sorted(AXES)}, got {self.axis!r}")
        if self.n < 2:
            raise ConfigError(f"sweep needs n >= 2 points, got {self.n}")
        if not self.start < self.stop:
            raise ConfigError(f"sweep needs start < stop, got {self.start} >= {self.stop}")
        if self.axis == "distance" and self.start <= 0:
            raise ConfigError(f"distance sweep must start at k0R > 0, got {self.start}")
        if self.axis == "pump" and self.start < 0:
            raise ConfigError(f"pump sweep must start at P >= 0, got {self.start}")
        for sel in self.outputs:
            _parse_selector(sel)

    @property
    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.n)

    @property
    def columns(self) -> list[str]:
        cols = [self.axis]
        for sel in self.outputs:
            cols.extend(name for name, _ in _parse_selector(sel))
        return cols

    @property
    def units(self) -> list[str]:
        units = [AXIS_UNITS[self.axis]]
        for sel in self.outputs:
            unit = OUTPUTS[sel.partition(":")[0]][1]
            units.extend(unit for _ in _parse_selector(sel))
        return units

    def to_config(self) -> dict[str, Any]:
        base = self.base.as_dict()
        cfg: dict[str, Any] = {key: base[key] for key in PARAM_KEYS}
        cfg["sweep"] = {"axis": self.axis, "start": self.start, "stop": self.stop, "n": self.n}
        cfg["outputs"] = list(self.outputs)
        return cfg


@dataclass(frozen=True)
class SweepTable:
    columns: list[str]
    units: list[str]
    rows: list[list[float]]
    metadata: dict[str, Any]


# Helpers
def _parse_selector(selector: str) -> list[tuple[str, str]]:
    """'sigma_sc' -> all parts; 'sigma_sc:coll' -> one part. Returns (column, attribute)."""
    name, _, part = selector.partition(":")
    if name not in OUTPUTS:
        raise ConfigError(f"unknown output {name!r}; expected one of {sorted(OUTPUTS)}")
    parts, _ = OUTPUTS[name]
    if part and part not in parts:
        raise ConfigError(f"output {name!r} has no part {part!r}; expected one of {sorted(parts)}")
    chosen = [part] if part else list(parts)
    if name in ("ret_rate", "semiclassical"):
        return [(parts[p], parts[p]) for p in chosen]
    return [(f"{name}_{p}", parts[p]) for p in chosen]


def _require_float(cfg: Mapping[str, Any], key: str, default: float | None) -> float | None:
    if key not in cfg:
        return default
    raw = cfg[key]
    if raw is None and key == "Ne0":
        return None
    value = normalize_float(raw)
    if value is None:
        raise ConfigError(f"{key} must be a finite number, got {raw!r}")
    return value


def _evaluate_point(spec: SweepSpec, index: int, value: float) -> tuple[list[float], frozenset[str]]:
    params = dataclasses.replace(spec.base, **{AXES[spec.axis]: float(value)})
    c = coupling(params)
    breakdown = sigma_ext(params, c)
    row = [float(value)]
    for sel in spec.outputs:
        for column, attr in _parse_selector(sel):
            if attr == "semiclassical_sigma_sc":
                row.append(semiclassical_sigma_sc(params, c, warn=False))
            else:
                row.append(getattr(breakdown, attr))
            if not math.isfinite(row[-1]):
                raise NumericError(
                    f"non-finite {column}={row[-1]!r} at grid point {index} "
                    f"({spec.axis}={value!r}) with parameters {params.as_dict()}"
                )
    logger.debug("grid point %d (%s=%r) done", index, spec.axis, value)
    return row, breakdown.validity_flags


# Public API
def resolve_threads(value: Any = None) -> int:
    """--threads beats DIMER_THREADS beats the default; clamped to MAX_THREADS."""
    raw = value if value is not None else os.environ.get(THREADS_ENV)
    threads = normalize_int(raw, default=DEFAULT_THREADS)
    if threads is None:
        raise ConfigError(f"thread count must be a positive integer, got {raw!r}")
    return min(threads, MAX_THREADS)


def parse_config(cfg: Mapping[str, Any]) -> SweepSpec:
    """Build a SweepSpec from the JSON configuration document."""
    if not isinstance(cfg, Mapping):
        raise ConfigError("configuration must be a JSON object")
    unknown = set(cfg) - CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")

    defaults = SystemParams()
    fields = {key: _require_float(cfg, key, getattr(defaults, key)) for key in PARAM_KEYS}
    try:
        base = SystemParams(**fields)
    except ParameterError as exc:
        raise ConfigError(f"invalid parameters: {exc}") from exc

    sweep = cfg.get("sweep")
    if not isinstance(sweep, Mapping):
        raise ConfigError("configuration needs a 'sweep' object with axis, start, stop, n")
    missing = SWEEP_KEYS - set(sweep)
    extra = set(sweep) - SWEEP_KEYS
    if missing or extra:
        raise ConfigError(f"sweep keys must be exactly {sorted(SWEEP_KEYS)}")
    raw_n = sweep["n"]
    # JSON writers often emit counts as 5.0
    if isinstance(raw_n, float) and raw_n.is_integer():
        raw_n = int(raw_n)
    n = normalize_int(raw_n, default=0)
    if n is None:
        raise ConfigError(f"sweep.n must be a positive integer, got {sweep['n']!r}")

    outputs = outputs_from(cfg.get("outputs"))
    return SweepSpec(
        axis=strip_wrapping_quotes(str(sweep["axis"])).lower(),
        start=_require_float(sweep, "start", None),
        stop=_require_float(sweep, "stop", None),
        n=n,
        base=base,
        outputs=outputs,
    )


def load_config(path: str | Path) -> SweepSpec:
    path = Path(strip_wrapping_quotes(str(path)))
    try:
        cfg = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read configuration {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"configuration {path} is not valid JSON: {exc}") from exc
    return parse_config(cfg)


def run_sweep(spec: SweepSpec, threads: int | None = None) -> SweepTable:
    """
    Evaluate every requested output on the grid.

    Points run on a thread pool; rows are stored by grid index so the table
    does not depend on evaluation order.
    """
    workers = resolve_threads(threads)
    values = spec.values
    rows: list[list[float]] = [[] for _ in values]
    flags: set[str] = set()
    logger.info("sweep over %s: %d points on %d threads", spec.axis, spec.n, workers)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(_evaluate_point, spec, i, v) for i, v in enumerate(values)]
        for i, future in enumerate(futures):
            rows[i], point_flags = future.result()
            flags |= point_flags

    for flag in sorted(flags):
        logger.warning("sweep over %s: %s", spec.axis, flag_message(flag))
        warnings.warn(flag_message(flag), ValidityWarning, stacklevel=2)

    columns = spec.columns
    metadata = {
        "version": __version__,
        "params": spec.base.as_dict(),
        "sweep": {"axis": spec.axis, "start": spec.start, "stop": spec.stop, "n": spec.n},
        "outputs": list(spec.outputs),
        "validity": sorted(flags),
    }
    logger.info("sweep over %s finished", spec.axis)
    return SweepTable(
        columns=columns,
        units=spec.units,
        rows=rows,
        metadata=metadata,
    )


def write_csv(table: SweepTable, path: str | Path) -> Path:
    """Write `#` metadata lines, a header and rows with shortest round-trip floats."""
    for i, row in enumerate(table.rows):
        if len(row) != len(table.columns):
            raise NumericError(f"row {i} has {len(row)} values for {len(table.columns)} columns")
        bad = [col for col, v in zip(table.columns, row, strict=True) if not math.isfinite(v)]
        if bad:
            raise NumericError(f"row {i} has non-finite values in {bad}")

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        fh.write(f"# dimer-response {table.metadata.get('version', __version__)}\n")
        for key in ("params", "sweep", "outputs", "validity"):
            if key in table.metadata:
                fh.write(f"# {key}: {json.dumps(table.metadata[key], sort_keys=True)}\n")
        fh.write(f"# units: {json.dumps(dict(zip(table.columns, table.units, strict=True)))}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([repr(float(v)) for v in row])
    return path


def figure_specs(name: str) -> list[tuple[str, SweepSpec]]:
    """(file name, spec) pairs reproducing the detuning, pump and distance figures."""
    sigmas = ("sigma_sc", "sigma_abs", "sigma_ext")
    if name == "fig3":
        return [
            (
                f"fig3_P{pump:g}.csv",
                SweepSpec(
                    axis="detuning",
                    start=-5.0,
                    stop=5.0,
                    n=201,
                    base=SystemParams(gamma_nr=FIGURE_GAMMA_NR, pump_P=pump, k0R=FIGURE_K0R),
                    outputs=sigmas,
                ),
            )
            for pump in FIGURE_PUMPS
        ]
    if name == "fig4":
        return [
            (
                "fig4.csv",
                SweepSpec(
                    axis="pump",
                    start=0.0,
                    stop=20.0,
                    n=201,
                    base=SystemParams(gamma_nr=FIGURE_GAMMA_NR, k0R=FIGURE_K0R),
                    outputs=(*sigmas, "gamma0_rate", "ret_rate"),
                ),
            )
        ]
    if name == "fig5":
        return [
            (
                f"fig5_P{pump:g}.csv",
                SweepSpec(
                    axis="distance",
                    start=FIGURE_K0R,
                    stop=20.0,
                    n=181,
                    base=SystemParams(gamma_nr=FIGURE_GAMMA_NR, pump_P=pump),
                    outputs=(*sigmas, "ret_rate"),
                ),
            )
            for pump in FIGURE_PUMPS
        ]
    raise ConfigError(f"unknown figure preset {name!r}; expected fig3, fig4 or fig5")


def write_figure(name: str, out_dir: str | Path, threads: int | None = None) -> list[Path]:
    out = Path(strip_wrapping_quotes(str(out_dir)))
    return [write_csv(run_sweep(spec, threads), out / fname) for fname, spec in figure_specs(name)]


def outputs_from(values: Sequence[str] | str | None) -> tuple[str, ...]:
    """Normalize an output selector list, validating each selector."""
    outputs = tuple(normalize_str_list(values, lowercase=True)) or DEFAULT_OUTPUTS
    for sel in outputs:
        _parse_selector(sel)
    return outputs
