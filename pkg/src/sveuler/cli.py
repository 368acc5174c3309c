"""Command-line front end.

Subcommands: run, converge, spectrum, validate, diff.  Exit codes: 0 ok,
2 configuration error, 3 numerical blow-up, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .diagnostics import l2_error
from .errors import ConfigError, NonFinite, SnapshotError, VelocityBlowup
from .experiments import (
    convergence_study,
    load_config,
    run,
    spectrum_report,
    validate,
)
from .operators import biot_savart

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BLOWUP = 3
EXIT_IO = 4

# config keys exposed as command-line overrides
_OVERRIDE_KEYS = (
    "experiment",
    "n_modes",
    "epsilon",
    "k0_fraction",
    "cutoff_alpha",
    "rho",
    "d",
    "quadrature_m",
    "t_end",
    "cfl",
    "dt_max",
    "dt_min",
    "formulation",
    "velocity_ceiling",
    "snapshot_times",
    "output_dir",
    "diag_p",
    "neg_part_offset",
    "theta",
    "s",
    "p",
    "regime_b",
)


def _add_config_arguments(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("config", help="path to a key = value configuration file")
    for key in _OVERRIDE_KEYS:
        sub.add_argument(f"--{key.replace('_', '-')}", dest=key, default=None)


def _collect_overrides(args: argparse.Namespace) -> dict:
    return {k: getattr(args, k) for k in _OVERRIDE_KEYS if getattr(args, k, None) is not None}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sveuler",
        description="Spectral-viscosity solver for 2D incompressible Euler on the unit torus",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_run = subs.add_parser("run", help="integrate one configuration")
    _add_config_arguments(p_run)

    p_conv = subs.add_parser("converge", help="grid-refinement study")
    _add_config_arguments(p_conv)
    p_conv.add_argument(
        "--levels",
        required=True,
        help="comma-separated ascending N_G values; the last is the reference",
    )

    p_spec = subs.add_parser("spectrum", help="shell spectra of snapshot files")
    p_spec.add_argument("snapshots", nargs="+", help="snapshot files")
    p_spec.add_argument("--output", default=None, help="write CSV here instead of stdout")

    p_val = subs.add_parser("validate", help="spectral-decay regime report")
    _add_config_arguments(p_val)

    p_diff = subs.add_parser("diff", help="L2 velocity distance of two snapshots")
    p_diff.add_argument("first")
    p_diff.add_argument("second")
    return parser


def _cmd_run(args) -> int:
    config = load_config(args.config, _collect_overrides(args))
    summary = run(config)
    print(
        f"completed t = {summary['final_time']:g} in {summary['n_steps']} steps; "
        f"diagnostics: {summary['csv']}; snapshots: {len(summary['snapshots'])}"
    )
    return EXIT_OK


def _cmd_converge(args) -> int:
    config = load_config(args.config, _collect_overrides(args))
    try:
        levels = [int(tok) for tok in args.levels.replace(",", " ").split()]
    except ValueError as exc:
        raise ConfigError(f"--levels: {exc}") from exc
    table = convergence_study(config, levels)
    sys.stdout.write(table.to_csv())
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    csv = spectrum_report(args.snapshots)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(csv)
    else:
        sys.stdout.write(csv)
    return EXIT_OK


def _cmd_validate(args) -> int:
    config = load_config(args.config, _collect_overrides(args))
    print(validate(config))
    return EXIT_OK


def _cmd_diff(args) -> int:
    from .grid import to_spectral
    from .snapshot import read_snapshot

    stored_a, _ = read_snapshot(args.first)
    stored_b, _ = read_snapshot(args.second)
    ua = biot_savart(to_spectral(stored_a))
    ub = biot_savart(to_spectral(stored_b))
    if ua.grid.n_modes <= ub.grid.n_modes:
        print(repr(l2_error(ua, ub)))
    else:
        print(repr(l2_error(ub, ua)))
    return EXIT_OK


_COMMANDS = {
    "run": _cmd_run,
    "converge": _cmd_converge,
    "spectrum": _cmd_spectrum,
    "validate": _cmd_validate,
    "diff": _cmd_diff,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NonFinite, VelocityBlowup) as exc:
        print(f"numerical blow-up: {exc}", file=sys.stderr)
        return EXIT_BLOWUP
    except (SnapshotError, OSError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
