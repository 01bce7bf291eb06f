"""Command-line front end.

Subcommands:

  moment   exact E[det^k] for k in {2,4,6} by any evaluation route
  table1   determinant and permanent moment columns for the uniform +-1 law
  series   coefficients of the generating functions (numeric or symbolic)
  asym     high-precision asymptotic expansion value
  ratio    CSV of exact value vs expansion value vs their ratio
  verify   the self-check suite (quick or full)

Exit codes: 0 success, 1 verification failure, 2 usage error.  Exact values
always print as `p/q` text; only asymptotic columns are decimal.  Progress
for long enumerations goes to stderr, keeping stdout machine-parseable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__, asymptotics, moments, oracle, verify
from .exact import MomentSpec, format_rational, parse_rational
from .series import (
    asym_correction_gf,
    derangement_cycle_gf,
    fourth_moment_gf,
    sixth_moment_gf,
)

FORMATS = ("plain", "csv", "json")


class UsageError(Exception):
    """Flag validation failure; message names the violated precondition."""


def _add_moment_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--m3", help="third entry moment (rational, e.g. 3/2)")
    parser.add_argument("--m4", help="fourth entry moment (rational)")
    parser.add_argument("--m6", help="sixth entry moment (rational)")
    parser.add_argument(
        "--dist",
        help="distribution shortcut: 'pm1' or 'atoms:v1:p1,v2:p2,...' "
        "(must have mean 0, variance 1); explicit --m* flags override",
    )


def _resolve_spec(args, needed) -> MomentSpec:
    """Build a MomentSpec from --dist and/or explicit moment flags."""
    values = {"m3": None, "m4": None, "m6": None}
    if args.dist:
        try:
            dist = oracle.FiniteDistribution.parse(args.dist)
        except ValueError as exc:
            raise UsageError(str(exc))
        if not dist.is_standardized():
            raise UsageError("--dist must have mean 0 and variance 1")
        values["m3"] = dist.moment(3)
        values["m4"] = dist.moment(4)
        values["m6"] = dist.moment(6)
    for name in ("m3", "m4", "m6"):
        flag = getattr(args, name)
        if flag is not None:
            try:
                values[name] = parse_rational(flag)
            except ValueError:
                raise UsageError(f"--{name} is not a rational number: {flag!r}")
    missing = [name for name in needed if values[name] is None]
    if missing:
        flags = ", ".join(f"--{m}" for m in missing)
        raise UsageError(f"missing {flags} (provide them or use --dist)")
    return MomentSpec(values["m3"] or 0, values["m4"] or 0, values["m6"] or 0)


def _emit_value(args, command: str, inputs: dict, value: str) -> None:
    if args.format == "plain":
        print(value)
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["value"])
        writer.writerow([value])
        sys.stdout.write(buf.getvalue())
    else:
        print(json.dumps({"command": command, "inputs": inputs, "value": value}))


def _emit_rows(args, command: str, inputs: dict, columns, rows) -> None:
    if args.format == "plain":
        widths = [
            max(len(str(c)), *(len(str(r[i])) for r in rows)) if rows else len(str(c))
            for i, c in enumerate(columns)
        ]
        print("  ".join(str(c).ljust(w) for c, w in zip(columns, widths)).rstrip())
        for row in rows:
            print("  ".join(str(v).ljust(w) for v, w in zip(row, widths)).rstrip())
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([str(v) for v in row])
        sys.stdout.write(buf.getvalue())
    else:
        payload = {
            "command": command,
            "inputs": inputs,
            "rows": [dict(zip(columns, (str(v) for v in row))) for row in rows],
        }
        print(json.dumps(payload))


def _cmd_moment(args) -> int:
    needed = {2: (), 4: ("m4",), 6: ("m3", "m4", "m6")}[args.k]
    spec = _resolve_spec(args, needed)
    if args.method == "convolution" and args.k != 6:
        raise UsageError("--method convolution is only defined for k=6")
    if args.k == 6 and args.method == "recursive" and spec.m3 != 0:
        raise UsageError("--method recursive requires m3 = 0")
    value = moments.det_moment(args.k, args.n, spec, args.method)
    inputs = {"k": args.k, "n": args.n, "m3": str(spec.m3), "m4": str(spec.m4),
              "m6": str(spec.m6), "method": args.method}
    _emit_value(args, "moment", inputs, format_rational(value))
    return 0


def _cmd_table1(args) -> int:
    if args.max_n > 5:
        raise UsageError(
            "--max-n must be <= 5: the permanent column needs exhaustive "
            "enumeration, which is out of reach beyond 5x5"
        )
    if args.max_n < 1:
        raise UsageError("--max-n must be >= 1")
    dist = oracle.FiniteDistribution.uniform_pm1()
    spec = MomentSpec.bernoulli()
    rows = []
    for n in range(1, args.max_n + 1):
        f2 = moments.second_moment(n)
        f4 = moments.fourth_moment(n, spec.m4)
        f6 = moments.sixth_moment_closed(n, spec)
        p6 = oracle.per_power_moment(6, n, dist, symmetry=True, threads=args.threads)
        rows.append(
            [n] + [format_rational(Fraction(v)) for v in (f2, f4, f6, f2, f4, p6)]
        )
    _emit_rows(
        args,
        "table1",
        {"max_n": args.max_n},
        ["n", "f2", "f4", "f6", "p2", "p4", "p6"],
        rows,
    )
    return 0


def _cmd_series(args) -> int:
    if args.order < 0:
        raise UsageError("--order must be >= 0")
    if args.gf == "derangement":
        gf = derangement_cycle_gf(args.order)
        inputs = {"gf": args.gf, "order": args.order}
    elif args.symbolic:
        builder = {"f6": sixth_moment_gf, "ct": asym_correction_gf}.get(args.gf)
        gf = builder(args.order) if builder else fourth_moment_gf(args.order)
        inputs = {"gf": args.gf, "order": args.order, "symbolic": True}
    else:
        if args.gf == "f4":
            spec = _resolve_spec(args, ("m4",))
            gf = fourth_moment_gf(args.order, spec.m4)
        else:
            spec = _resolve_spec(args, ("m3", "m4", "m6"))
            builder = sixth_moment_gf if args.gf == "f6" else asym_correction_gf
            gf = builder(args.order, spec)
        inputs = {"gf": args.gf, "order": args.order, "m3": str(spec.m3),
                  "m4": str(spec.m4), "m6": str(spec.m6)}
    rows = [[n, str(gf.coeff(n))] for n in range(args.order + 1)]
    if args.format == "plain":
        for n, coeff in rows:
            print(f"{n}: {coeff}")
    else:
        _emit_rows(args, "series", inputs, ["n", "coefficient"], rows)
    return 0


def _cmd_asym(args) -> int:
    spec = _resolve_spec(args, ("m3", "m4", "m6"))
    if args.prec < asymptotics.MIN_DIGITS:
        raise UsageError(f"--prec must be at least {asymptotics.MIN_DIGITS} digits")
    if args.n < args.R - 6:
        raise UsageError(
            f"--n {args.n} is too small for --R {args.R}: factorial arguments "
            f"need n >= R - 6 = {args.R - 6}"
        )
    value = asymptotics.evaluate_expansion(args.n, spec, args.R, args.prec)
    inputs = {"n": args.n, "R": args.R, "prec": args.prec, "m3": str(spec.m3),
              "m4": str(spec.m4), "m6": str(spec.m6)}
    _emit_value(args, "asym", inputs, str(value.value))
    return 0


def _cmd_ratio(args) -> int:
    spec = _resolve_spec(args, ("m3", "m4", "m6"))
    if args.prec < asymptotics.MIN_DIGITS:
        raise UsageError(f"--prec must be at least {asymptotics.MIN_DIGITS} digits")
    if args.n_from < 1:
        raise UsageError("--from must be >= 1")
    if args.n_from < args.R - 6:
        raise UsageError(
            f"--from {args.n_from} is too small for --R {args.R}: need n >= R - 6"
        )
    table = asymptotics.ratio_table(spec, args.n_from, args.n_to, args.R, args.prec)
    rows = [[n, format_rational(exact), str(approx), str(ratio)]
            for n, exact, approx, ratio in table]
    inputs = {"from": args.n_from, "to": args.n_to, "R": args.R, "prec": args.prec,
              "m3": str(spec.m3), "m4": str(spec.m4), "m6": str(spec.m6)}
    _emit_rows(args, "ratio", inputs, ["n", "exact", "asymptotic", "ratio"], rows)
    return 0


def _cmd_verify(args) -> int:
    results = verify.run_checks(args.level, threads=args.threads)
    failed = [r for r in results if not r.ok]
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status} {r.name}: {r.detail}")
    if failed:
        print(f"FAILED: first failing check is '{failed[0].name}'")
        return 1
    print(f"all {len(results)} checks passed ({args.level})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="detmoments",
        description="Exact determinant/permanent moments of random matrices, "
        "their generating functions, and their asymptotics.",
    )
    parser.add_argument("--version", action="version", version=f"detmoments {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("moment", help="exact E[det^k]")
    p.add_argument("--k", type=int, choices=(2, 4, 6), required=True)
    p.add_argument("--n", type=int, required=True)
    _add_moment_flags(p)
    p.add_argument("--method", choices=moments.F6_METHODS, default="closed")
    p.add_argument("--format", choices=FORMATS, default="plain")
    p.set_defaults(fn=_cmd_moment)

    p = sub.add_parser("table1", help="f2/f4/f6 and p2/p4/p6 columns for the +-1 law")
    p.add_argument("--max-n", type=int, default=5, dest="max_n")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--format", choices=FORMATS, default="plain")
    p.set_defaults(fn=_cmd_table1)

    p = sub.add_parser("series", help="generating function coefficients")
    p.add_argument("--gf", choices=("f6", "f4", "ct", "derangement"), default="f6")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--symbolic", action="store_true",
                   help="coefficients as polynomials in q3, q4, q6")
    _add_moment_flags(p)
    p.add_argument("--format", choices=FORMATS, default="plain")
    p.set_defaults(fn=_cmd_series)

    p = sub.add_parser("asym", help="asymptotic expansion value")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--R", type=int, default=7, dest="R")
    p.add_argument("--prec", type=int, default=asymptotics.DEFAULT_DIGITS)
    _add_moment_flags(p)
    p.add_argument("--format", choices=FORMATS, default="plain")
    p.set_defaults(fn=_cmd_asym)

    p = sub.add_parser("ratio", help="exact vs asymptotic ratio table")
    p.add_argument("--from", type=int, required=True, dest="n_from")
    p.add_argument("--to", type=int, required=True, dest="n_to")
    p.add_argument("--R", type=int, default=7, dest="R")
    p.add_argument("--prec", type=int, default=asymptotics.DEFAULT_DIGITS)
    _add_moment_flags(p)
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.set_defaults(fn=_cmd_ratio)

    p = sub.add_parser("verify", help="run the self-check suite")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    oracle.PROGRESS_STREAM = sys.stderr
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        oracle.PROGRESS_STREAM = None


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
