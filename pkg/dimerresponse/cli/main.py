"""
dimer-response: optical response of an incoherently pumped atomic dimer
=======================================================================

This module exposes FIVE subcommands:

1) sweep
   - Evaluate cross-sections and rates along one parameter axis.
   - Reads a JSON run configuration, writes a CSV table.

2) fig3 / fig4 / fig5
   - Preset sweeps over detuning, pump rate and interatomic distance at
     k0R = 2, gamma_nr = 0.2, P in {0, 1.2, 7.5}.
   - Writes one CSV per pump value (fig4 writes a single pump sweep).

3) validate
   - Run the acceptance suite (closed forms against the numerical oracles and
     the invariants). Prints one JSON record per check.

How to run (locally)
--------------------
    poetry run dimer-response validate
    poetry run dimer-response --threads 8 sweep --config run.json --out out.csv
    poetry run dimer-response sweep --config run.json --out out.csv --threads 8
    poetry run python -m dimerresponse.cli.main fig3 --out-dir figures/

Run configuration (example)
---------------------------
{
  "gamma_nr": 0.2,
  "pump_P": 1.2,
  "k0R": 2.0,
  "sweep": {"axis": "detuning", "start": -5, "stop": 5, "n": 201},
  "outputs": ["sigma_sc", "sigma_abs:coll", "ret_rate"]
}

Units: rates in gamma0, distances as k0R, cross-sections in sigma0.

Output selectors
----------------
- sigma_sc, sigma_abs, sigma_ext, gamma0_rate: all of single/coll/total
- <name>:single | <name>:coll | <name>:total: one part
- ret_rate, semiclassical: a single column

Parameters & normalization
--------------------------
The config layer is defensive. Numbers may be given as strings (even with
backticks/quotes), outputs as a JSON list or a comma-separated string.
Unknown keys are rejected.

Exit codes
----------
- 0: success
- 1: at least one validation check failed
- 2: invalid configuration or parameters
- 3: numerical failure (non-finite value, quadrature did not converge)
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from collections.abc import Sequence
from pathlib import Path

from dimerresponse import __version__
from dimerresponse.sweepio.sweepio import load_config as _load_config_impl
from dimerresponse.sweepio.sweepio import resolve_threads as _resolve_threads_impl
from dimerresponse.sweepio.sweepio import run_sweep as _run_sweep_impl
from dimerresponse.sweepio.sweepio import write_csv as _write_csv_impl
from dimerresponse.sweepio.sweepio import write_figure as _write_figure_impl
from dimerresponse.utils.config import ORACLE_TOLERANCE
from dimerresponse.utils.errors import (
    EXIT_OK,
    ConfigError,
    DimerResponseError,
    ValidityWarning,
)
from dimerresponse.utils.normalize_lists import normalize_str_list
from dimerresponse.utils.normalize_value import normalize_float
from dimerresponse.validation.suite import ValidationConfig
from dimerresponse.validation.suite import run_validation as _run_validation_impl

logger = logging.getLogger("dimerresponse")

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _sweep_cmd(args: argparse.Namespace) -> int:
    spec = _load_config_impl(args.config)
    table = _run_sweep_impl(spec, threads=args.threads)
    path = _write_csv_impl(table, args.out)
    logger.info("wrote %d rows to %s", len(table.rows), path)
    return EXIT_OK


def _figure_cmd(args: argparse.Namespace) -> int:
    for path in _write_figure_impl(args.command, args.out_dir, threads=args.threads):
        logger.info("wrote %s", path)
    return EXIT_OK


def _validate_cmd(args: argparse.Namespace) -> int:
    tolerance = normalize_float(args.tolerance)
    if tolerance is None or tolerance <= 0:
        raise ConfigError(f"--tolerance must be a positive number, got {args.tolerance!r}")
    cfg = ValidationConfig(
        tolerance=tolerance,
        filters=tuple(normalize_str_list(args.filter)),
        threads=_resolve_threads_impl(args.threads),
    )
    status, records = _run_validation_impl(cfg)

    lines = [json.dumps(record, sort_keys=True, default=str) for record in records]
    if args.json:
        path = Path(args.json)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("".join(f"{line}\n" for line in lines), encoding="utf-8")
    else:
        for line in lines:
            print(line)

    failed = sorted({r["check"] for r in records if not r["passed"]})
    if failed:
        print(f"failed checks: {', '.join(failed)}", file=sys.stderr)
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dimer-response",
        description="Steady-state optical response of a pumped atomic dimer.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--threads", default=None, help="worker threads (default: $DIMER_THREADS or 4)")
    parser.add_argument("--log-level", default="WARNING", choices=LOG_LEVELS, type=str.upper)

    # Repeated on every subcommand; SUPPRESS keeps a value given before the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", default=argparse.SUPPRESS, help="worker threads")
    common.add_argument(
        "--log-level", default=argparse.SUPPRESS, choices=LOG_LEVELS, type=str.upper
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", parents=[common], help="run a configured one-axis sweep")
    sweep.add_argument("--config", required=True, help="JSON run configuration")
    sweep.add_argument("--out", required=True, help="CSV output path")
    sweep.set_defaults(handler=_sweep_cmd)

    for name, axis in (("fig3", "detuning"), ("fig4", "pump rate"), ("fig5", "distance")):
        fig = sub.add_parser(name, parents=[common], help=f"preset {axis} sweep")
        fig.add_argument("--out-dir", default=".", help="directory for the CSV files")
        fig.set_defaults(handler=_figure_cmd)

    validate = sub.add_parser("validate", parents=[common], help="run the acceptance suite")
    validate.add_argument("--json", default=None, help="write JSON lines here instead of stdout")
    validate.add_argument(
        "--filter", action="append", default=None, help="only checks whose name contains this"
    )
    validate.add_argument("--tolerance", default=ORACLE_TOLERANCE, help="oracle relative tolerance")
    validate.set_defaults(handler=_validate_cmd)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        # Validity warnings are already logged once per sweep
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", category=ValidityWarning)
            return args.handler(args)
    except DimerResponseError as exc:
        print(f"dimer-response: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
