"""Command line front end.

Single-shot computations (bounds, compensate) for one (i, D, A) triple,
full table reproduction (table2, table3) over seeded random samples,
and a quick self-check battery (selftest).  Tables print as CSV with
#-prefixed metadata lines or as JSON with the same numeric content.

Exit codes: 0 success, 1 validation error, 2 internal check failure
(selftest failure, or a bounds violation under --strict).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from . import __version__
from .bounds import (
    DEFAULT_EPS_COEFF,
    METHODS,
    InvalidSlope,
    UnsupportedBase,
    ZeroDivisor,
    candidate_interval,
    clock_estimate,
    emulated_clock_estimate,
    interval_deltas,
    reference_interval,
    theoretical_coefficients,
)
from .compensator import OverflowRisk, SkewOutOfRange, compensate, oracle_nearest
from .experiment import (
    DEFAULT_D,
    DEFAULT_I_LIST,
    DEFAULT_N,
    DEFAULT_RANGE_PPM,
    DEFAULT_SEED,
    bounds_experiment,
    compensation_experiment,
    generate_samples,
)
from .formats import BINARY32, FORMATS, FloatFormat, resolve_format, unit_roundoff
from .rationals import is_in_format, round_to_format

TABLE2_HEADER = [
    "method",
    "precision",
    "i",
    "dlb_min",
    "dlb_max",
    "dlb_avg",
    "dub_min",
    "dub_max",
    "dub_avg",
]

TABLE3_HEADER = [
    "algorithm",
    "precision",
    "i",
    "err_min",
    "err_max",
    "err_avg",
    "iter_min",
    "iter_max",
    "iter_avg",
    "violations",
]

_USER_ERRORS = (
    InvalidSlope,
    ZeroDivisor,
    SkewOutOfRange,
    OverflowRisk,
    UnsupportedBase,
    ValueError,
    TypeError,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; the contract here reserves 2 for
    # internal check failures, so route usage problems to exit 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_int(text: str) -> int:
    """Integer, allowing 1e9-style shorthand as long as it is exact."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value != value.to_integral_value():
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return int(value)


def _parse_i_list(text: str) -> list[int]:
    parts = [part.strip() for part in text.split(",") if part.strip()]
    if not parts:
        raise argparse.ArgumentTypeError("empty i list")
    return [_parse_int(part) for part in parts]


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return Fraction(Decimal(text))
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _avg_repr(avg: Fraction) -> tuple[str, float]:
    """Averages print with 4 significant decimals; JSON gets the same value."""
    text = f"{float(avg):.4e}"
    return text, float(text)


def _emit_table(rows, header, meta, fmt, out) -> None:
    if fmt == "json":
        _write_json(meta, [{**csv_row, **overrides} for csv_row, overrides in rows], out)
    else:
        _write_csv(meta, [csv_row for csv_row, _ in rows], header, out)


def _write_csv(meta, dict_rows, header, out) -> None:
    for key, value in meta.items():
        out.write(f"# {key}={value}\n")
    out.write(",".join(header) + "\n")
    for row in dict_rows:
        out.write(",".join(str(row[name]) for name in header) + "\n")


def _write_json(meta, dict_rows, out) -> None:
    json.dump({"meta": {k: str(v) for k, v in meta.items()}, "rows": dict_rows}, out, indent=2)
    out.write("\n")


def _table2_dicts(rows):
    for row in rows:
        dlb_avg, dlb_avg_num = _avg_repr(row.dlb.avg)
        dub_avg, dub_avg_num = _avg_repr(row.dub.avg)
        csv_row = {
            "method": row.method,
            "precision": row.precision,
            "i": row.i,
            "dlb_min": row.dlb.min,
            "dlb_max": row.dlb.max,
            "dlb_avg": dlb_avg,
            "dub_min": row.dub.min,
            "dub_max": row.dub.max,
            "dub_avg": dub_avg,
        }
        yield csv_row, {"dlb_avg": dlb_avg_num, "dub_avg": dub_avg_num}


def _table3_dicts(rows):
    for row in rows:
        err_avg, err_avg_num = _avg_repr(row.err.avg)
        iter_avg, iter_avg_num = _avg_repr(row.iterations.avg)
        csv_row = {
            "algorithm": row.algorithm,
            "precision": row.precision,
            "i": row.i,
            "err_min": row.err.min,
            "err_max": row.err.max,
            "err_avg": err_avg,
            "iter_min": row.iterations.min,
            "iter_max": row.iterations.max,
            "iter_avg": iter_avg,
            "violations": row.violations,
        }
        yield csv_row, {"err_avg": err_avg_num, "iter_avg": iter_avg_num}


def _table_meta(name: str, args) -> dict:
    return {
        "tool": f"skewcomp {__version__} {name}",
        "seed": args.seed,
        "samples": args.samples,
        "D": args.D,
        "range_ppm": args.range_ppm,
        "eps_coeff": args.eps_coeff,
        "i": ",".join(str(i) for i in args.i),
        "distribution": "skew uniform on the 1e-9 ppm lattice in [-range_ppm, +range_ppm]",
        "conventions": "dlb=ref_lb-lb dub=ub-ref_ub err=floor64-j avg printed as %.4e",
    }


def _cmd_bounds(args) -> int:
    fmt = resolve_format(args.precision)
    cand = candidate_interval(args.i, args.D, args.A, args.method, fmt, args.eps_coeff)
    ref = reference_interval(args.i, args.D, args.A, fmt)
    dlb, dub = interval_deltas(cand, ref)
    print(f"lb={cand.lb} ub={cand.ub} dlb={dlb} dub={dub}")
    return 0


def _cmd_compensate(args) -> int:
    result = compensate(args.i, args.D, args.A, args.method, args.precision, args.eps_coeff)
    err = oracle_nearest(args.i, args.D, args.A) - result.j
    print(
        f"j={result.j} iterations={result.iterations} err={err} "
        f"case={result.case} bounds_violated={result.bounds_violated}"
    )
    if args.strict and result.bounds_violated:
        print("strict mode: candidate interval missed the compensated clock", file=sys.stderr)
        return 2
    return 0


def _run_table(args, name) -> int:
    samples = generate_samples(args.seed, args.samples, args.D, args.range_ppm)
    if name == "table2":
        rows = list(_table2_dicts(bounds_experiment(samples, args.i, eps_coeff=args.eps_coeff)))
        header = TABLE2_HEADER
    else:
        rows = list(
            _table3_dicts(compensation_experiment(samples, args.i, eps_coeff=args.eps_coeff))
        )
        header = TABLE3_HEADER
    meta = _table_meta(name, args)
    if args.output and args.output != "-":
        with open(args.output, "w", newline="") as out:
            _emit_table(rows, header, meta, args.format, out)
    else:
        _emit_table(rows, header, meta, args.format, sys.stdout)
    return 0


def _selftest() -> int:
    failures = []

    def check(name, ok, detail=""):
        if ok:
            print(f"ok: {name}")
        else:
            failures.append(name)
            print(f"FAIL: {name} {detail}")

    rng = random.Random(20260825)
    fmt32 = BINARY32

    rounded_ok = True
    for _ in range(2000):
        q = Fraction(rng.randint(-10**12, 10**12), rng.randint(1, 10**9))
        r = round_to_format(q, fmt32)
        if round_to_format(r, fmt32) != r or not is_in_format(r, fmt32):
            rounded_ok = False
            break
        if q != 0 and abs(q - r) > abs(q) * Fraction(1, 2**24):
            rounded_ok = False
            break
    check("round_to_format idempotent and within one roundoff", rounded_ok)

    repr_ok = True
    for p in (11, 24, 53):
        f = FloatFormat(2, p)
        u = unit_roundoff(f)
        repr_ok &= is_in_format(1 - u, f) and is_in_format(1 + 2 * u, f)
        repr_ok &= not is_in_format(1 + u, f)
    check("1-u and 1+2u representable, 1+u not", repr_ok)

    c_lo, c_hi = theoretical_coefficients(fmt32)
    bracket_ok = True
    for _ in range(2000):
        i = rng.randint(0, 10**9)
        D = rng.randint(1, 10**6)
        A = rng.randint(1, 10**6)
        t_hat = emulated_clock_estimate(i, D, A, fmt32)
        t = Fraction(i * D, A)
        if not c_lo * t <= t_hat <= c_hi * t:
            bracket_ok = False
            break
    check("pipeline value stays inside the coefficient bracket", bracket_ok)

    hw_ok = True
    for _ in range(500):
        i = rng.randint(0, 10**9)
        D = rng.randint(1, 10**6)
        A = rng.randint(1, 10**6)
        for precision in ("binary32", "binary64"):
            hw = Fraction(clock_estimate(i, D, A, precision))
            if hw != emulated_clock_estimate(i, D, A, resolve_format(precision)):
                hw_ok = False
                break
    check("hardware and emulated pipelines agree", hw_ok)

    oracle_ok = True
    for _ in range(500):
        A = rng.randint(1, 10**6)
        D = rng.randint(1, 2 * A - 1)
        i = rng.randint(0, 10**6)
        want = oracle_nearest(i, D, A)
        for method in METHODS:
            for precision in ("binary32", "binary64"):
                res = compensate(i, D, A, method, precision)
                if not res.bounds_violated and res.j != want:
                    oracle_ok = False
                    break
    check("compensate matches the exact oracle", oracle_ok)

    if failures:
        print(f"{len(failures)} selftest failure(s)", file=sys.stderr)
        return 2
    print("selftest passed")
    return 0


def _add_triple_args(sub) -> None:
    sub.add_argument("--i", type=_parse_int, required=True, help="hardware clock value")
    sub.add_argument("--D", type=_parse_int, required=True, help="reference ticks per interval")
    sub.add_argument("--A", type=_parse_int, required=True, help="local ticks per interval")
    sub.add_argument("--method", choices=METHODS, default="practical")
    sub.add_argument("--precision", choices=sorted(FORMATS), default="binary32")
    sub.add_argument(
        "--eps-coeff",
        dest="eps_coeff",
        type=_parse_fraction,
        default=DEFAULT_EPS_COEFF,
        help="margin coefficient for the approximate method (exact rational)",
    )


def _add_table_args(sub) -> None:
    sub.add_argument("--samples", "-n", type=_parse_int, default=DEFAULT_N)
    sub.add_argument("--seed", type=_parse_int, default=DEFAULT_SEED)
    sub.add_argument("--D", type=_parse_int, default=DEFAULT_D)
    sub.add_argument("--range-ppm", dest="range_ppm", type=_parse_fraction, default=Fraction(DEFAULT_RANGE_PPM))
    sub.add_argument("--i", type=_parse_i_list, default=list(DEFAULT_I_LIST), help="comma separated, 1e9 shorthand ok")
    sub.add_argument(
        "--eps-coeff", dest="eps_coeff", type=_parse_fraction, default=DEFAULT_EPS_COEFF
    )
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--output", "-o", default=None, help="output path, - or omitted for stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="skewcomp",
        description="Clock-skew compensation with guaranteed floating-point bounds.",
        epilog="SKEWCOMP_THREADS sets the worker count for table runs.",
    )
    parser.add_argument("--version", action="version", version=f"skewcomp {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    bounds_cmd = commands.add_parser("bounds", help="candidate and reference interval for one triple")
    _add_triple_args(bounds_cmd)

    comp_cmd = commands.add_parser("compensate", help="compensated clock for one triple")
    _add_triple_args(comp_cmd)
    comp_cmd.add_argument("--strict", action="store_true", help="exit 2 on a bounds violation")

    table2_cmd = commands.add_parser("table2", help="bound deltas vs the exact reference")
    _add_table_args(table2_cmd)

    table3_cmd = commands.add_parser("table3", help="compensation errors and iteration counts")
    _add_table_args(table3_cmd)

    commands.add_parser("selftest", help="run the built-in invariant checks")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse handles --help/--version and usage errors by exiting;
        # keep main() returning codes so callers never need to catch
        return int(exc.code or 0)
    try:
        if args.command == "bounds":
            return _cmd_bounds(args)
        if args.command == "compensate":
            return _cmd_compensate(args)
        if args.command in ("table2", "table3"):
            return _run_table(args, args.command)
        if args.command == "selftest":
            return _selftest()
    except _USER_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
