"""Command line front end: verification suites and table dumps.

Exit codes: 0 pass, 1 hard failure or domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import correlations, decomposition, ramanujan, transforms
from .arith import EXACT_BUILTINS, REAL_BUILTINS, DomainError, InvariantViolation, builtin_window, read_window_csv
from .characters import character_table_rows
from .generators import random_bh_instance, random_prime_instance
from .suites import SUITES, SuiteConfig, run_suite


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _emit(args, name: str, header: list[str], rows: list[list]) -> None:
    """Write a table as CSV or JSON, to stdout or ``--out DIR/name``."""
    if args.format == "json":
        text = json.dumps([dict(zip(header, map(_fmt, r))) for r in rows], indent=2) + "\n"
        suffix = ".json"
    else:
        buf = [",".join(header)] + [",".join(_fmt(x) for x in r) for r in rows]
        text = "\n".join(buf) + "\n"
        suffix = ".csv"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{name}{suffix}").write_text(text)
    else:
        sys.stdout.write(text)


def _window(source: str, M: int):
    if source in EXACT_BUILTINS or source in REAL_BUILTINS:
        return builtin_window(source, M)
    path = Path(source)
    if not path.exists():
        raise DomainError(f"{source!r} is neither a named function nor a CSV file")
    return read_window_csv(path, M)


def _range(text: str) -> range:
    """``a:b`` (inclusive) or a single integer."""
    if ":" in text:
        lo, hi = text.split(":")
        return range(int(lo), int(hi) + 1)
    return range(int(text), int(text) + 1)


def _instance(args, prime_supported: bool) -> correlations.CorrelationInstance:
    if args.random is not None:
        gen = random_prime_instance if prime_supported else random_bh_instance
        return gen(args.random)
    if args.f is None or args.gprime is None or args.N is None or args.Q is None:
        raise DomainError("give --f, --gprime, --N and --Q, or --random SEED")
    if args.Q > args.N:
        raise correlations.HypothesisError(f"range Q={args.Q} exceeds length N={args.N}")
    f = _window(args.f, args.N)
    g = correlations.truncate(_window(args.gprime, args.Q), args.Q)
    return correlations.CorrelationInstance(f, g, args.N, require=("squarefree", "primes") if prime_supported else ())


# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        print(f"unknown suite {args.suite!r}", file=sys.stderr)
        return 2
    report = run_suite(args.suite, SuiteConfig(args.scale, args.seed, args.tolerance))
    text = report.to_json()
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"verify_{args.suite}_{args.scale}.json").write_text(text + "\n")
    else:
        print(text)
    for c in report.checks:
        print(f"{c.status:9s} {c.id}", file=sys.stderr)
    return 0 if report.ok else 1


def cmd_ramanujan(args) -> int:
    rows = []
    for q in _range(args.q):
        for n in _range(args.n):
            rows.append([q, n, ramanujan.c_kluyver(q, n)])
    _emit(args, "ramanujan", ["q", "n", "c"], rows)
    return 0


def cmd_characters(args) -> int:
    rows = character_table_rows(args.modulus)
    _emit(args, f"characters_{args.modulus}", [str(h) for h in rows[0]], rows[1:])
    return 0


def cmd_transform(args) -> int:
    F = _window(args.f, args.M)
    rows = []
    if args.period:
        values = [F(a) for a in range(1, args.period + 1)]
        P = transforms.PeriodicFunction.from_function(lambda a: values[(a - 1) % args.period], args.period)
        for ell in _range(args.ell):
            rows.append([ell, transforms.carmichael_coefficient(P, ell), "EXACT"])
    elif args.given_transform:
        for ell in _range(args.ell):
            w = transforms.wintner_coefficient(F, ell, args.cutoff)
            rows.append([ell, w.value, w.flag])
    else:
        for ell, w in transforms.wintner_transform(F, _range(args.ell), args.cutoff).items():
            rows.append([ell, w.value, w.flag])
    _emit(args, "transform", ["ell", "coefficient", "flag"], rows)
    return 0


def cmd_correlate(args) -> int:
    inst = _instance(args, prime_supported=False)
    coeffs = correlations.correlation_coefficients(inst)
    rows, all_match = [], True
    for a in _range(args.shifts):
        C = correlations.correlate(inst, a)
        expansion = sum((w * ramanujan.c_kluyver(ell, a) for ell, w in coeffs.items()), inst.zero())
        match = C == expansion if inst.exact else abs(C - expansion) <= correlations.REAL_TOL * inst.N * (1 + abs(C))
        all_match &= match
        rows.append([a, C, expansion, int(match)])
    _emit(args, "correlation", ["a", "C", "expansion", "match"], rows)
    _emit(args, "coefficients", ["ell", "coefficient"], [[ell, w] for ell, w in coeffs.items()])
    if not all_match:
        print("finite expansion does not reproduce the correlation on every shift", file=sys.stderr)
    return 0 if all_match else 1


def cmd_decompose(args) -> int:
    inst = _instance(args, prime_supported=True)
    rows = []
    for a in _range(args.shifts):
        r = decomposition.decompose(inst, a, tol=args.tolerance)
        rows.append([a, r.correlation, r.primary, r.secondary, r.char_error])
    _emit(args, "decomposition", ["a", "C", "P", "S", "char_delta"], rows)
    return 0


def cmd_wintner_ipp(args) -> int:
    inst = _instance(args, prime_supported=True)
    rows = []
    for ell in range(1, inst.Q + 1):
        prim = decomposition.primary_coefficient(inst, ell)
        sec = decomposition.secondary_coefficient(inst, ell)
        corr = correlations.correlation_coefficient(inst, ell)
        rows.append([ell, prim, sec, corr, int(prim + sec == corr)])
    _emit(args, "wintner_ipp", ["ell", "primary", "secondary", "correlation", "match"], rows)
    return 0 if all(r[-1] for r in rows) else 1


def cmd_hl_demo(args) -> int:
    euler = decomposition.singular_series_euler(args.shift)
    rows = []
    for X in args.cutoffs:
        s = decomposition.singular_series_demo(args.shift, X)
        rows.append([X, s, euler, s - euler])
    _emit(args, "hl_demo", ["X", "partial_sum", "euler_product", "delta"], rows)
    return 0


# ---------------------------------------------------------------------------


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="directory for output files (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_instance(p: argparse.ArgumentParser) -> None:
    p.add_argument("--f", help="named function or CSV file (n,numerator,denominator)")
    p.add_argument("--gprime", help="named function or CSV file for g'")
    p.add_argument("--N", type=int)
    p.add_argument("--Q", type=int)
    p.add_argument("--random", type=int, metavar="SEED", help="use a seeded random instance instead")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ramcorr", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("verify", help="run an identity-verification suite")
    p.add_argument("suite", help="one of: " + ", ".join(SUITES + ("all",)))
    p.add_argument("scale", nargs="?", choices=("small", "full"), default="small")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ramanujan", help="table of c_q(n)")
    p.add_argument("--q", default="1:12", help="q range a:b")
    p.add_argument("--n", default="0:12", help="n range a:b")
    _add_output(p)
    p.set_defaults(func=cmd_ramanujan)

    p = sub.add_parser("characters", help="character table (exponents) mod m")
    p.add_argument("modulus", type=int)
    _add_output(p)
    p.set_defaults(func=cmd_characters)

    p = sub.add_parser("transform", help="Wintner (or Carmichael, with --period) coefficients")
    p.add_argument("--f", required=True)
    p.add_argument("--M", type=int, default=1000, help="window length")
    p.add_argument("--ell", default="1:12")
    p.add_argument("--cutoff", type=int)
    p.add_argument("--period", type=int, help="treat F as periodic with this period")
    p.add_argument("--given-transform", action="store_true", help="the source is F' rather than F")
    _add_output(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("correlate", help="correlation vs its finite expansion")
    _add_instance(p)
    p.add_argument("--shifts", default="1:50")
    _add_output(p)
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("decompose", help="primary and secondary parts")
    _add_instance(p)
    p.add_argument("--shifts", default="1:50")
    p.add_argument("--tolerance", type=float, default=decomposition.CHAR_TOL)
    _add_output(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("wintner-ipp", help="closed-form coefficients of the two parts")
    _add_instance(p)
    _add_output(p)
    p.set_defaults(func=cmd_wintner_ipp)

    p = sub.add_parser("hl-demo", help="singular series partial sums vs Euler product")
    p.add_argument("--shift", type=int, default=2)
    p.add_argument("--cutoffs", type=int, nargs="+", default=[10, 100, 1000, 10000])
    _add_output(p)
    p.set_defaults(func=cmd_hl_demo)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, InvariantViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
