"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 cusp not reduced, 3 failed
modular comparison.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from math import gcd

from .classical import classical_symbol, dedekind_sum
from .cochain import make_context, symbol_of_word
from .exactfield import (
    INFINITY,
    RATIONAL,
    FieldMismatch,
    FieldSpec,
    FieldValue,
    ParseError,
    approx,
    floor,
    parse,
    parse_point,
)
from .fuchsian import ConstraintViolation, GroupParams, make_params
from .reduction import NotReduced, ReductionConfig, reduce_cusp

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_REDUCED = 2
EXIT_COMPARE_FAILED = 3


class UsageError(Exception):
    pass


@dataclass
class OutputRecord:
    cusp: str
    symbol_exact: str | None
    symbol_decimal: str | None
    word: str | None
    steps: int
    reduced: bool = True


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _config(trace: bool = False) -> ReductionConfig:
    raw = os.environ.get("GDS_MAX_STEPS")
    if raw is None:
        return ReductionConfig(trace=trace)
    try:
        return ReductionConfig(max_steps=int(raw), trace=trace)
    except ValueError:
        raise UsageError(f"GDS_MAX_STEPS must be a positive integer, got {raw!r}") from None


def _spec(args) -> FieldSpec:
    if args.d is None:
        return RATIONAL
    try:
        return FieldSpec.quadratic(args.d)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _group(args) -> GroupParams:
    spec = _spec(args)
    try:
        return make_params(parse(args.u2, spec), parse(args.twot, spec), spec)
    except (ParseError, FieldMismatch, ConstraintViolation, ZeroDivisionError) as e:
        raise UsageError(str(e)) from None


def _cusp(text: str, spec: FieldSpec):
    try:
        return parse_point(text, spec)
    except (ParseError, FieldMismatch, ZeroDivisionError) as e:
        raise UsageError(str(e)) from None


def evaluate(params: GroupParams, kappa, digits: int = 6, cfg: ReductionConfig | None = None):
    """Reduce ``kappa`` and return its OutputRecord and the reduction result."""
    cfg = cfg or ReductionConfig()
    result = reduce_cusp(params, kappa, cfg)
    if kappa is INFINITY:
        exact = decimal = "inf"
    else:
        value = symbol_of_word(make_context(params), result.word)
        exact, decimal = str(value), approx(value, digits)
    return OutputRecord(str(kappa), exact, decimal, str(result.word), result.steps), result


def _table_row(job):
    params, kappa, digits, cfg = job
    try:
        return evaluate(params, kappa, digits, cfg)[0]
    except NotReduced as e:
        return OutputRecord(str(kappa), None, None, None, e.steps, reduced=False)


def farey_cusps(params: GroupParams, max_den: int):
    """Reduced p/q with 0 <= p/q < 2t and q <= max_den, ordered by q then p."""
    two_t = params.two_t
    for q in range(1, max_den + 1):
        top = floor(two_t * q)
        for p in range(0, top + 1):
            if gcd(p, q) != 1:
                continue
            kappa = FieldValue(p, 0, q, params.spec)
            if kappa < two_t:
                yield kappa


def _emit(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def cmd_symbol(args) -> int:
    params = _group(args)
    kappa = _cusp(args.cusp, params.spec)
    cfg = _config(args.trace)
    try:
        record, result = evaluate(params, kappa, args.digits, cfg)
    except NotReduced as e:
        print(f"not reduced: {e}", file=sys.stderr)
        return EXIT_NOT_REDUCED
    lines = [str(s) for s in result.trace or ()]
    if args.plain:
        for line in lines:
            print(line)
        print(f"S({record.cusp}) = {record.symbol_exact} ~ {record.symbol_decimal}")
        print(f"word = {record.word}, steps = {record.steps}")
    else:
        payload = asdict(record)
        if args.trace:
            payload["trace"] = lines
        print(json.dumps(payload))
    return EXIT_OK


def cmd_reduce(args) -> int:
    params = _group(args)
    kappa = _cusp(args.cusp, params.spec)
    cfg = _config(args.trace)
    try:
        result = reduce_cusp(params, kappa, cfg)
    except NotReduced as e:
        for step in e.trace:
            print(step)
        print(f"not reduced after {e.steps} steps; last cusp {e.last_cusp} ({e.reason})")
        return EXIT_NOT_REDUCED
    for step in result.trace or ():
        print(step)
    print(f"word: {result.word}")
    print(f"steps: {result.steps}")
    return EXIT_OK


def cmd_table(args) -> int:
    if args.max_den < 1:
        raise UsageError("--max-den must be at least 1")
    params = _group(args)
    cfg = _config()
    jobs = [(params, k, args.digits, cfg) for k in farey_cusps(params, args.max_den)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_table_row, jobs, chunksize=16))
    else:
        rows = [_table_row(j) for j in jobs]
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(OutputRecord.__dataclass_fields__), lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(asdict(row))
        text = buf.getvalue()
    else:
        text = json.dumps([asdict(r) for r in rows], indent=1) + "\n"
    try:
        _emit(text, args.out)
    except OSError as e:
        print(f"cannot write {args.out}: {e}", file=sys.stderr)
        return EXIT_USAGE
    missing = sum(not r.reduced for r in rows)
    if missing:
        print(f"{missing} of {len(rows)} cusps not reduced", file=sys.stderr)
    return EXIT_OK


def compare_samples(samples: int, max_den: int, seed: int) -> list[tuple[int, int]]:
    rng = random.Random(seed)
    out = []
    while len(out) < samples:
        c = rng.randint(1, max_den)
        a = rng.randint(-max_den, max_den)
        if gcd(a, c) == 1:
            out.append((a, c))
    return out


def run_compare(samples: int, max_den: int, seed: int, cfg: ReductionConfig | None = None) -> dict:
    """Compare S on Delta(1, 6) with 12 sign(c) s(a, c) on random coprime pairs."""
    params = make_params(1, 6)
    ctx = make_context(params)
    rho = None
    rows = []
    for a, c in compare_samples(samples, max_den, seed):
        kappa = FieldValue(a, 0, c)
        value = symbol_of_word(ctx, reduce_cusp(params, kappa, cfg).word)
        classical = classical_symbol(a, c)
        if rho is None and classical:
            rho = value / classical
        rows.append((a, c, value, classical))
    passed = failed = 0
    failures = []
    for a, c, value, classical in rows:
        expected = classical * rho if rho is not None else classical
        if value == expected:
            passed += 1
        else:
            failed += 1
            failures.append(f"{a}/{c}")
    return {
        "group": "Delta(1, 6)",
        "seed": seed,
        "samples": samples,
        "max_den": max_den,
        "rho": None if rho is None else str(rho),
        "passed": passed,
        "failed": failed,
        "failures": failures,
    }


def cmd_compare(args) -> int:
    if args.samples < 1 or args.max_den < 1:
        raise UsageError("--samples and --max-den must be at least 1")
    try:
        report = run_compare(args.samples, args.max_den, args.seed, _config())
    except NotReduced as e:
        print(f"not reduced: {e}", file=sys.stderr)
        return EXIT_NOT_REDUCED
    if args.plain:
        print(f"rho = {report['rho']}")
        print(f"passed {report['passed']} / {report['samples']}, failed {report['failed']}")
        for f in report["failures"]:
            print(f"  mismatch at {f}")
    else:
        print(json.dumps(report))
    return EXIT_OK if report["failed"] == 0 else EXIT_COMPARE_FAILED


def cmd_dedekind(args) -> int:
    try:
        s = dedekind_sum((args.a, args.c))
        S = classical_symbol(args.a, args.c)
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(str(e)) from None
    record = {"a": args.a, "c": args.c, "s": str(s), "symbol": str(S), "s_decimal": approx(s, args.digits)}
    if args.plain:
        print(f"s({args.a}, {args.c}) = {s}, 12 sign(c) s = {S}")
    else:
        print(json.dumps(record))
    return EXIT_OK


def _add_group(p: argparse.ArgumentParser):
    p.add_argument("--u2", required=True, help="u^2 as an exact value, e.g. 3/5")
    p.add_argument("--twot", required=True, help="2t as an exact value, e.g. 4 or (2+2*rt13)/2")
    p.add_argument("--d", type=int, default=None, help="work in Q(sqrt d), d square-free")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gds", description="Generalized Dedekind symbols for Delta(u^2, 2t).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("symbol", help="evaluate S at one cusp")
    _add_group(p)
    p.add_argument("--cusp", required=True, help="cusp, e.g. 3/4 or inf (use --cusp=-1/2 for negatives)")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--digits", type=int, default=6, help="decimal places in symbol_decimal")
    p.add_argument("--plain", action="store_true")
    p.set_defaults(func=cmd_symbol)

    p = sub.add_parser("reduce", help="find a witness word for a cusp")
    _add_group(p)
    p.add_argument("--cusp", required=True)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("table", help="tabulate S over Farey fractions in [0, 2t)")
    _add_group(p)
    p.add_argument("--max-den", type=int, required=True, help="largest denominator tabulated")
    p.add_argument("--out", default="-", help="output file, - for stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--digits", type=int, default=6, help="decimal places in symbol_decimal")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("compare", help="check proportionality with the classical sum on Delta(1, 6)")
    p.add_argument("--max-den", type=int, default=500, help="largest sampled denominator c")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--plain", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("dedekind", help="classical s(a, c) and 12 sign(c) s(a, c)")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--digits", type=int, default=6, help="decimal places in symbol_decimal")
    p.add_argument("--plain", action="store_true")
    p.set_defaults(func=cmd_dedekind)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "digits", 6) < 0 or getattr(args, "digits", 6) > 1000:
        print("gds: error: --digits must lie in [0, 1000]", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as e:
        print(f"gds: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
