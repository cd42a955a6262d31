"""Command-line interface.

Subcommands mirror the library surface: ``bound`` and ``proportion`` print
single evaluations, ``curve`` and ``testfn`` emit CSV artifacts, ``verify``
runs the cross-validation matrix and sets the exit code.  Every run is
deterministic given its flags; CSV output uses LF line endings and
round-trip float precision so repeated runs are byte-identical.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Optional

import numpy as np

from . import bounds, proportion, rayleigh, solver, testfunction, verification
from .symmetry import Symmetry

__all__ = ["main"]


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _open_out(path: Optional[str]):
    if path is None or path == "-":
        return sys.stdout, False
    try:
        return open(path, "w", newline=""), True
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _symmetry(value: str) -> Symmetry:
    try:
        return Symmetry.parse(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def cmd_bound(args) -> int:
    result = bounds.height_bound_result(args.symmetry, args.nu_max)
    lines = {
        "symmetry": args.symmetry.value,
        "nu_max": _fmt(args.nu_max),
        "bound": _fmt(result.bound),
        "branch": result.branch,
        "lambda": _fmt(result.lam) if result.lam is not None else "",
        "m_tilde": _fmt(result.m_tilde),
    }
    if result.sp_flag:
        lines["sp_near_integer"] = "true"
        lines["sp_compat_integral"] = _fmt(result.sp_compat_integral)
    if args.oracle_check:
        nu = args.nu_max / 2.0
        R = nu if result.branch != "transcendental" else nu - 1e-5
        oracle = rayleigh.sqrt_quotient(args.symmetry, R, args.trunc)
        lines["oracle"] = _fmt(oracle)
        lines["oracle_gap"] = _fmt(abs(oracle - result.bound))
    if args.format == "json":
        print(json.dumps(lines, sort_keys=True))
    else:
        for key, value in lines.items():
            print(f"{key} {value}")
    return 0


def cmd_curve(args) -> int:
    if not args.nu_from < args.nu_to:
        print("error: --nu-from must be below --nu-to", file=sys.stderr)
        return 2
    if args.steps < 2:
        print("error: --steps must be at least 2", file=sys.stderr)
        return 2
    grid = np.linspace(args.nu_from, args.nu_to, args.steps)
    stream, owned = _open_out(args.out)
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["nu_max", "bound", "branch"])
        for nu in grid:
            result = bounds.height_bound_result(args.symmetry, float(nu))
            writer.writerow([_fmt(float(nu)), _fmt(result.bound), result.branch])
    finally:
        if owned:
            stream.close()
    return 0


def cmd_proportion(args) -> int:
    if args.family == "Hr":
        if args.sign is not None:
            print("error: --sign only applies to the Hrpm family", file=sys.stderr)
            return 2
        threshold, lower = proportion.sym_power_proportion(args.r, args.beta)
    else:
        if args.sign is None:
            print("error: Hrpm requires --sign", file=sys.stderr)
            return 2
        if args.r % 2 == 0:
            print("error: sign-restricted families require odd r", file=sys.stderr)
            return 2
        threshold, lower = proportion.sym_power_proportion_signed(
            args.r, args.sign, args.beta
        )
    cleared = args.beta >= threshold
    record = {
        "family": args.family,
        "r": args.r,
        "beta": _fmt(args.beta),
        "threshold": _fmt(threshold),
        "cleared": cleared,
        "lower_bound": _fmt(lower) if cleared else "not applicable (below threshold)",
    }
    if args.sign is not None:
        record["sign"] = args.sign
    if args.format == "json":
        print(json.dumps(record, sort_keys=True))
    else:
        for key, value in record.items():
            print(f"{key} {value}")
    return 0


def cmd_testfn(args) -> int:
    if args.symmetry is Symmetry.U:
        print("error: the unitary kernel has no reconstructed optimizer", file=sys.stderr)
        return 2
    if args.samples < 2:
        print("error: --samples must be at least 2", file=sys.stderr)
        return 2
    try:
        if args.symmetry is Symmetry.O or args.R <= 0.5:
            h, _ = testfunction.reconstruct(args.symmetry, args.R)
            ctx = None
        else:
            ctx = solver.build_context(args.symmetry, args.R)
            lam = solver.smallest_root(ctx)
            h = testfunction.assemble(ctx, lam)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    us = np.linspace(-args.R - 0.1, args.R + 0.1, args.samples)
    stream, owned = _open_out(args.out)
    try:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["u", "h"])
        for u in us:
            writer.writerow([_fmt(float(u)), _fmt(float(h(float(u))))])
    finally:
        if owned:
            stream.close()
    report = testfunction.residuals(h, ctx)
    print(
        "residuals:"
        f" delayed_ode={report.delayed_ode:.3e}"
        f" volterra={report.volterra:.3e}"
        f" compatibility={report.compatibility:.3e}"
        f" rayleigh_gap={report.rayleigh_gap:.3e}"
        f" int_tail_gap={report.int_tail_gap:.3e}"
        f" int_full_gap={report.int_full_gap:.3e}",
        file=sys.stderr,
    )
    return 0


def cmd_verify(args) -> int:
    summary = verification.run_all(grid_size=args.grid_size, trunc=args.trunc)
    stream, owned = _open_out(args.out)
    try:
        json.dump(summary, stream, indent=2, sort_keys=True)
        stream.write("\n")
    finally:
        if owned:
            stream.close()
    if not summary["passed"]:
        failures = [c["name"] for c in summary["cases"] if not c["pass"]]
        print(f"verification failed: {len(failures)} case(s)", file=sys.stderr)
        for name in failures:
            print(f"  FAIL {name}", file=sys.stderr)
        return 1
    return 0


def _sign(value: str) -> int:
    table = {"+1": 1, "1": 1, "plus": 1, "+": 1, "-1": -1, "minus": -1, "-": -1}
    try:
        return table[value]
    except KeyError:
        raise argparse.ArgumentTypeError(f"bad sign {value!r} (use +1 or -1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lowzero",
        description="Lowest-zero height bounds and small-zero proportions "
        "by random-matrix symmetry type.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="height bound for one symmetry type")
    p.add_argument("--symmetry", type=_symmetry, required=True)
    p.add_argument("--nu-max", type=float, required=True, dest="nu_max")
    p.add_argument("--oracle-check", action="store_true", dest="oracle_check")
    p.add_argument("--trunc", type=int, default=400)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("curve", help="CSV of the bound over a support range")
    p.add_argument("--symmetry", type=_symmetry, required=True)
    p.add_argument("--nu-from", type=float, required=True, dest="nu_from")
    p.add_argument("--nu-to", type=float, required=True, dest="nu_to")
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("proportion", help="small-first-zero proportion bound")
    p.add_argument("--family", choices=("Hr", "Hrpm"), required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--sign", type=_sign, default=None)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_proportion)

    p = sub.add_parser("testfn", help="sample the reconstructed optimizer to CSV")
    p.add_argument("--symmetry", type=_symmetry, required=True)
    p.add_argument("--R", type=float, required=True)
    p.add_argument("--samples", type=int, default=501)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_testfn)

    p = sub.add_parser("verify", help="run the cross-validation matrix")
    p.add_argument("--grid-size", type=int, default=12, dest="grid_size")
    p.add_argument("--trunc", type=int, default=400)
    p.add_argument("--out", default=None, help="JSON output path (default stdout)")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, solver.RootScanError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
