"""Command line front end.

    affine-cycles series --group A --q 2 --order 10 --limits
    affine-cycles sample --algorithm affine --u 1/2 --q 2 --count 1000 --seed 7
    affine-cycles oracle --group A --n 1 --q 2
    affine-cycles verify --suite identities

Exit codes: 0 success, 1 a verification check failed, 2 invalid flags,
3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from .cycle_index import (
    GroupKind,
    bound_cyclic,
    bound_separable,
    cyclic_series,
    fixed_space_limit,
    fixed_space_prob,
    limit_cyclic,
    limit_separable,
    semisimple_limit_bounds,
    semisimple_series,
    separable_series,
    unipotent_rank_count,
)
from .exact import qcontext, to_decimal
from .measures import MeasureParams, measure_M, measure_N
from .oracle.field import CapExceeded, OracleError, is_prime
from .oracle.groups import DEFAULT_CAP
from .partitions import Partition, PartitionError

EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3

ALGORITHMS = ("yta", "terminating", "affine", "markov", "conditional")


def rational(text: str) -> Fraction:
    """Parse "p/r" or an integer; decimals are refused so values stay exact."""
    if any(ch in text for ch in ".eE"):
        raise argparse.ArgumentTypeError(f"{text!r}: give rationals as p/r, not decimals")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational p/r") from None


def group_kind(text: str) -> GroupKind:
    try:
        return GroupKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def partition_arg(text: str) -> Partition:
    try:
        parts = [int(x) for x in text.replace(" ", "").split(",") if x]
        return Partition.from_parts(parts)
    except (ValueError, PartitionError) as exc:
        raise argparse.ArgumentTypeError(f"bad partition {text!r}: {exc}") from None


def _q(value: int, parser: argparse.ArgumentParser, prime: bool = False) -> int:
    if value < 2:
        parser.error("--q must be an integer >= 2")
    if prime and not is_prime(value):
        parser.error("the matrix oracle needs a prime --q")
    return value


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _exact(x: Fraction) -> dict:
    return {"exact": str(x), "decimal": to_decimal(x, 15)}


# series ------------------------------------------------------------------------


def series_table(kind: GroupKind, q: int, order: int, limits: bool) -> dict:
    ctx = qcontext(q)
    s = separable_series(kind, ctx, order)
    c = cyclic_series(kind, ctx, order)
    ss = semisimple_series(kind, ctx, order)
    rows = []
    for n in range(order + 1):
        row = {"n": n, "separable": str(s[n]), "cyclic": str(c[n]), "semisimple": str(ss[n])}
        if kind is not GroupKind.GL:
            row["bound_cyclic"] = str(bound_cyclic(n, ctx))
            row["bound_separable"] = str(bound_separable(n, ctx))
        rows.append(row)
    out = {"group": kind.value, "q": q, "order": order, "rows": rows}
    if limits:
        val, err = semisimple_limit_bounds(kind, ctx)
        out["limits"] = {
            "separable": _exact(limit_separable(kind, ctx)),
            "cyclic": _exact(limit_cyclic(kind, ctx)),
            "semisimple": {"decimal": to_decimal(val, 18), "error_bound": f"{float(err):.1e}"},
        }
    return out


def _series_tsv(table: dict) -> str:
    cols = [k for k in table["rows"][0]]
    lines = ["\t".join(cols)]
    for row in table["rows"]:
        lines.append("\t".join("" if row[k] is None else str(row[k]) for k in cols))
    if "limits" in table:
        lim = table["limits"]
        lines.append(f"limit\t{lim['separable']['exact']}\t{lim['cyclic']['exact']}\t{lim['semisimple']['decimal']}")
    return "\n".join(lines) + "\n"


def cmd_series(args, parser) -> int:
    q = _q(args.q, parser)
    if args.order < 0:
        parser.error("--order must be non-negative")
    table = series_table(args.group, q, args.order, args.limits)
    _emit(json.dumps(table, indent=2) + "\n" if args.format == "json" else _series_tsv(table), args.output)
    return 0


# sample ------------------------------------------------------------------------


def cmd_sample(args, parser) -> int:
    from . import samplers as smp

    q = _q(args.q, parser)
    if args.count < 0:
        parser.error("--count must be non-negative")
    ctx = qcontext(q)
    params = {"algorithm": args.algorithm, "q": q}
    if args.algorithm == "conditional":
        if args.n is None or args.n < 0:
            parser.error("--algorithm conditional needs --n >= 0")
        params["n"] = args.n
        draw = lambda rng: smp.sample_N_given_size(args.n, ctx, rng)
    else:
        if args.u is None or not 0 < args.u < 1:
            parser.error("--u must be a rational strictly between 0 and 1")
        p = MeasureParams(args.u, ctx)
        params["u"] = str(args.u)
        draw = {
            "yta": lambda rng: smp.sample_M_yta(p, rng),
            "terminating": lambda rng: smp.sample_M_terminating(p, rng),
            "affine": lambda rng: smp.sample_N_affine(p, rng),
            "markov": lambda rng: smp.sample_N_markov(p, rng),
        }[args.algorithm]
    rng = smp.RandomStream(args.seed, args.stream)
    lines = []
    for i in range(args.count):
        out = draw(rng)
        if isinstance(out, smp.TableauPath):
            lam, path = out.partition, list(out.columns)
        else:
            lam, path = out, None
        if args.format == "json":
            rec = {"partition": lam.to_json(), "path": path, "seed": args.seed, "index": i, "params": params}
            lines.append(json.dumps(rec, separators=(",", ":")))
        else:
            lines.append(",".join(map(str, lam.parts)) + "\t" + ",".join(map(str, path or [])))
    _emit("".join(line + "\n" for line in lines), args.output)
    return 0


# oracle ------------------------------------------------------------------------


def cmd_oracle(args, parser) -> int:
    from .oracle.census import census

    q = _q(args.q, parser, prime=True)
    if args.n < 0 or (args.group is GroupKind.GL and args.n < 1):
        parser.error("--n too small for this group")
    if args.shards < 1:
        parser.error("--shards must be positive")
    rec = census(args.group, args.n, q, cap=args.cap, shards=args.shards, workers=args.workers)
    if args.summary:
        text = json.dumps(rec.summary(), indent=2) + "\n"
    elif args.format == "json":
        text = json.dumps(rec.to_json_records(), indent=None, separators=(",", ":")) + "\n"
    else:
        rows = ["polys\tcount"]
        for r in rec.to_json_records():
            rows.append(json.dumps(r["polys"], separators=(",", ":")) + f"\t{r['count']}")
        text = "\n".join(rows) + "\n"
    _emit(text, args.output)
    return 0


def cmd_centralizer(args, parser) -> int:
    from .oracle.centralizer import PAIR_CAP, centralizer_census

    q = _q(args.q, parser, prime=True)
    if args.group is GroupKind.GL:
        parser.error("the centralizer census covers A and P")
    rep = centralizer_census(args.group, args.n, q, cap=args.cap or PAIR_CAP)
    _emit(json.dumps(rep.to_json(), indent=2) + "\n", args.output)
    return 0


# small closed-form queries -----------------------------------------------------------


def cmd_measure(args, parser) -> int:
    q = _q(args.q, parser)
    if args.u is None or not 0 < args.u <= 1:
        parser.error("--u must lie in (0, 1]")
    p = MeasureParams(args.u, qcontext(q))
    lam = args.partition
    out = {"partition": lam.to_json(), "u": str(args.u), "q": q, "M": to_decimal(measure_M(p, lam), 18)}
    if lam.size():
        out["N"] = to_decimal(measure_N(p, lam), 18)
    _emit(json.dumps(out, indent=2) + "\n", args.output)
    return 0


def cmd_fixedspace(args, parser) -> int:
    q = _q(args.q, parser)
    if args.n < 0:
        parser.error("--n must be non-negative")
    ctx = qcontext(q)
    rows = []
    for k in range(1, args.n + 2):
        rows.append(
            {
                "k": k,
                "probability": str(fixed_space_prob(args.n, k, ctx)),
                "limit": to_decimal(fixed_space_limit(k, ctx), 18),
                "unipotent_count": str(unipotent_rank_count(args.n, k, ctx)),
            }
        )
    if args.format == "json":
        text = json.dumps({"n": args.n, "q": q, "rows": rows}, indent=2) + "\n"
    else:
        text = "k\tprobability\tlimit\tunipotent_count\n" + "".join("\t".join(str(r[c]) for c in r) + "\n" for r in rows)
    _emit(text, args.output)
    return 0


# verify ------------------------------------------------------------------------


def cmd_verify(args, parser) -> int:
    from .verify import SUITES, run_suite

    names = []
    for item in args.suite or ["all"]:
        names.extend(x for x in item.split(",") if x)
    if "all" in names:
        names = list(SUITES)
    for name in names:
        if name not in SUITES:
            parser.error(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    first_failure = None
    for name in names:
        print(f"# suite {name}", flush=True)
        for check in run_suite(name, args.max_order, args.samples):
            print(check.line(), flush=True)
            if not check.passed and first_failure is None:
                first_failure = check.name
    if first_failure is not None:
        print(f"first failing check: {first_failure}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return 0


# parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="affine-cycles", description="Conjugacy-class statistics of A(n,q), P(n,q) and GL(n,q).")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        if fmt:
            p.add_argument("--format", choices=("json", "tsv"), default="json")
        p.add_argument("--output", "-o", help="write here instead of stdout")

    p = sub.add_parser("series", help="proportion series, bounds and limits")
    p.add_argument("--group", type=group_kind, default=GroupKind.AFFINE)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--order", type=int, default=30)
    p.add_argument("--limits", action="store_true", help="append n -> infinity limits")
    common(p)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("sample", help="draw random partitions")
    p.add_argument("--algorithm", choices=ALGORITHMS, required=True)
    p.add_argument("--u", type=rational)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, help="size parameter of the conditional sampler (|lambda| = n + 1)")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stream", type=int, default=0, help="independent stream id under the same seed")
    common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("oracle", help="exhaustive census of rational canonical form data")
    p.add_argument("--group", type=group_kind, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest group order to enumerate")
    p.add_argument("--shards", type=int, default=1)
    p.add_argument("--workers", type=int, default=None, help="capped by AFFINE_CYCLES_THREADS")
    p.add_argument("--summary", action="store_true", help="print derived statistics instead of the histogram")
    common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("centralizer", help="conjugacy classes and centralizer orders of A or P")
    p.add_argument("--group", type=group_kind, default=GroupKind.AFFINE)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--cap", type=int, default=None, help="largest |G|^2 to attempt")
    common(p, fmt=False)
    p.set_defaults(func=cmd_centralizer)

    p = sub.add_parser("measure", help="M_{u,q} and N_{u,q} of one partition")
    p.add_argument("--u", type=rational, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--partition", type=partition_arg, required=True, help="comma separated parts, e.g. 2,1")
    common(p, fmt=False)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("fixedspace", help="fixed-space law and unipotent counts in A(n,q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_fixedspace)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", action="append", help="identities, measures, samplers, oracle, bounds or all (repeatable)")
    p.add_argument("--max-order", type=int, default=100_000, help="largest group order the oracle suite enumerates")
    p.add_argument("--samples", type=int, default=100_000, help="draws per sampler check")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (OracleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
