"""Command-line front end: single points, sweeps and figure recipes as CSV.

Exit codes: 0 success, 2 bad arguments, 3 physicality violation, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import io
import math
import sys
from pathlib import Path

import numpy as np

from .channels import BathParams
from .errors import CVCorrError, InvalidArgumentError, PhysicalityError
from .protocol import (
    AXES,
    PointRecord,
    ScenarioParams,
    SweepTable,
    figure_curves,
    make_grid,
    run_point,
    sweep,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PHYSICALITY = 3
EXIT_IO = 4

SWEEP_HEADER = ("axis", "value", "gip", "eof", "logneg", "nu_minus", "physical", "regularized")
POINT_HEADER = ("r", "theta", "phi", "t", "gip", "eof", "logneg", "nu_minus", "physical", "regularized")


class UsageError(Exception):
    pass


def _fmt(x: float | None, precision: int) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return "nan"
    return f"{x:.{precision}e}"


def _flag(b: bool) -> str:
    return "true" if b else "false"


def _quantities(rec: PointRecord, precision: int) -> list[str]:
    return [
        _fmt(rec.gip_value, precision),
        _fmt(rec.eof_value, precision),
        _fmt(rec.logneg_value, precision),
        _fmt(rec.nu_minus, precision),
        _flag(rec.physical),
        _flag(rec.regularized),
    ]


def format_point(rec: PointRecord, precision: int = 12) -> str:
    p = rec.params
    row = [_fmt(v, precision) for v in (p.r, p.theta, p.phi, p.t)] + _quantities(rec, precision)
    return ",".join(POINT_HEADER) + "\n" + ",".join(row) + "\n"


def format_table(table: SweepTable, precision: int = 12) -> str:
    buf = io.StringIO()
    buf.write(",".join(SWEEP_HEADER) + "\n")
    for value, rec in table.rows:
        buf.write(",".join([table.axis, _fmt(value, precision)] + _quantities(rec, precision)) + "\n")
    return buf.getvalue()


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _add_scenario_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("scenario")
    g.add_argument("--r", type=float, default=0.0, help="initial two-mode squeezing")
    g.add_argument("--theta", type=float, default=0.0, help="beam-splitter angle (radians)")
    g.add_argument("--t", type=float, default=0.0, help="interaction time with the bath")
    g.add_argument("--phi", type=float, default=0.0, help="black-box phase on mode A (radians)")
    g.add_argument("--nbar-in", type=float, nargs=2, default=(0.0, 0.0), metavar=("N1", "N2"))
    g.add_argument("--bath-n", type=float, nargs="+", default=[0.5], metavar="N",
                   help="bath occupation, one value for both modes or one per mode")
    g.add_argument("--bath-m-re", type=float, default=0.0)
    g.add_argument("--bath-m-im", type=float, default=0.0)
    g.add_argument("--gamma", type=float, default=1.0, help="damping rate")
    g.add_argument("--alpha", type=float, nargs=4, default=(0.0, 0.0, 0.0, 0.0),
                   metavar=("Q1", "P1", "Q2", "P2"), help="displacement of the probe")
    g.add_argument("--degrees", action="store_true", help="read --theta and --phi in degrees")


def _add_output_flags(p: argparse.ArgumentParser, what: str) -> None:
    p.add_argument("--precision", type=int, default=12, help="significant digits after the point")
    p.add_argument("--output", "-o", default=None, help=f"{what} (default: standard output)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvcorr",
        description="Quantum correlations of two-mode Gaussian probes in a thermal bath.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    point = sub.add_parser("point", help="evaluate one scenario")
    _add_scenario_flags(point)
    _add_output_flags(point, "CSV file")

    sw = sub.add_parser("sweep", help="sweep one scenario parameter")
    _add_scenario_flags(sw)
    sw.add_argument("--axis", choices=AXES, required=True)
    sw.add_argument("--min", type=float, required=True, dest="grid_min")
    sw.add_argument("--max", type=float, required=True, dest="grid_max")
    sw.add_argument("--step", type=float, required=True)
    _add_output_flags(sw, "CSV file")

    for k in (2, 3, 4):
        fig = sub.add_parser(f"fig{k}", help=f"write the default curves of figure {k}")
        fig.add_argument("--outdir", default=".", help="directory for the CSV files")
        fig.add_argument("--precision", type=int, default=12)
    return parser


def _scenario(args: argparse.Namespace) -> ScenarioParams:
    theta, phi = args.theta, args.phi
    if args.degrees:
        theta, phi = math.radians(theta), math.radians(phi)
    if len(args.bath_n) not in (1, 2):
        raise UsageError("--bath-n takes one or two values")
    n = tuple(args.bath_n) * (2 // len(args.bath_n))
    m = complex(args.bath_m_re, args.bath_m_im)
    for flag, value in (("--r", args.r), ("--theta", theta), ("--t", args.t), ("--phi", phi),
                        ("--gamma", args.gamma), ("--bath-m-re", args.bath_m_re),
                        ("--bath-m-im", args.bath_m_im)):
        if not math.isfinite(value):
            raise UsageError(f"{flag} must be finite")
    if args.t < 0:
        raise UsageError("--t must be >= 0")
    if any(x < 0 for x in args.nbar_in):
        raise UsageError("--nbar-in values must be >= 0")
    bath = BathParams(args.gamma, n, (m, m))
    return ScenarioParams(
        r=args.r, theta=theta, t=args.t, phi=phi,
        nbar_in=tuple(args.nbar_in), alpha=tuple(args.alpha), bath=bath,
    )


def _check_precision(precision: int) -> None:
    if not 6 <= precision <= 17:
        raise UsageError(f"--precision must lie in [6, 17], got {precision}")


def cmd_point(args: argparse.Namespace) -> int:
    _check_precision(args.precision)
    rec = run_point(_scenario(args))
    _write(format_point(rec, args.precision), args.output)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    _check_precision(args.precision)
    if not args.step > 0:
        raise UsageError("--step must be positive")
    if not args.grid_min < args.grid_max:
        raise UsageError("--min must be smaller than --max")
    base = _scenario(args)
    grid = make_grid(args.grid_min, args.grid_max, args.step)
    if args.axis == "theta" and args.degrees:
        grid = np.radians(grid)
    _write(format_table(sweep(base, args.axis, grid), args.precision), args.output)
    return EXIT_OK


def cmd_fig(args: argparse.Namespace, which: int) -> int:
    _check_precision(args.precision)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for curve in figure_curves(which):
        table = sweep(curve.base, curve.axis, curve.grid)
        _write(format_table(table, args.precision), str(outdir / f"{curve.name}.csv"))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "point":
            return cmd_point(args)
        if args.command == "sweep":
            return cmd_sweep(args)
        return cmd_fig(args, int(args.command[3:]))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PhysicalityError as exc:
        print(f"physicality error: {exc}", file=sys.stderr)
        return EXIT_PHYSICALITY
    except (InvalidArgumentError, CVCorrError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
