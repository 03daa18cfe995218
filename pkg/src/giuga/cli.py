"""Command-line front end.

Exit codes: 0 positive verdict / success, 1 negative verdict, 2 input error,
3 factorization budget or size limit hit, 4 characterizations disagree,
5 catalog verification failed, 130 interrupted search (partial summary
printed).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Any

from .catalog import (
    CatalogParseError,
    IrreconcilableEntry,
    load_catalog,
    verify_catalog,
)
from .characterizations import (
    DEFAULT_POWERSUM_LIMIT,
    GiugaDisagreement,
    check_all,
    check_bernoulli,
    check_definition,
    check_index,
    check_power_sum,
)
from .derivative import derive_factored, linear_form_factored
from .numtheory import (
    DEFAULT_FACTOR_BUDGET,
    FactorizationBudgetExceeded,
    factorize,
    parse_natural,
)
from .search import (
    SearchHit,
    SearchReport,
    SieveConfig,
    TupleSearchConfig,
    min_prime_count,
    sieve_search,
    tuple_search,
)

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BUDGET, EXIT_DISAGREE, EXIT_CATALOG = 0, 1, 2, 3, 4, 5
EXIT_INTERRUPTED = 130


def _literature_notes(a: int, odd_only: bool) -> list[str]:
    notes = []
    if a >= 2:
        notes.append("literature: Giuga numbers of index a >= 2 need more than 59 prime factors")
    if odd_only:
        notes.append("literature: an odd Giuga number needs at least 14 prime factors")
    return notes


log = logging.getLogger("giuga")


def _natural(text: str) -> int:
    try:
        return parse_natural(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    v = _natural(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _emit(args: argparse.Namespace, doc: dict[str, Any], lines: list[str]) -> None:
    if args.json:
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for line in lines:
            print(line)


# -- commands -----------------------------------------------------------------

def cmd_derive(args: argparse.Namespace) -> int:
    n = args.n
    try:
        f = factorize(n, args.factor_budget) if n else None
    except FactorizationBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    if f is None:
        d, lf, fac = 0, None, []
    else:
        d = derive_factored(f, n)
        lf = linear_form_factored(f, n)
        fac = f.to_json()
    a = None if lf is None else lf.a
    doc = {
        "command": "derive",
        "n": str(n),
        "factorization": fac,
        "derivative": str(d),
        "linear_form_a": None if a is None else str(a),
    }
    lines = [
        f"n           {n}",
        f"factors     {f if f is not None else '0'}",
        f"derivative  {d}",
        f"linear form {'none' if a is None else f'a = {a}'}",
    ]
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_giuga_check(args: argparse.Namespace) -> int:
    n, method = args.n, args.method
    if n < 1:
        print("error: n must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        f = factorize(n, args.factor_budget)
        if method == "all":
            cert = check_all(n, args.powersum_limit, f) if n >= 2 else check_definition(n, f)
            verdict = cert.is_giuga
        else:
            cert = check_definition(n, f)
            if not cert.composite:
                verdict = False
            elif method == "def":
                verdict = cert.is_giuga
            elif method == "index":
                verdict = cert.verdicts["index"] = check_index(n, f) is not None
            elif method == "bernoulli":
                verdict = cert.verdicts["bernoulli"] = check_bernoulli(n, f)
            else:
                ps = check_power_sum(n, args.powersum_limit, f)
                if ps is None:
                    print(f"error: n exceeds --powersum-limit {args.powersum_limit}",
                          file=sys.stderr)
                    return EXIT_BUDGET
                verdict = cert.verdicts["power_sum"] = ps
            if verdict != cert.is_giuga:
                raise GiugaDisagreement(n, dict(cert.verdicts))
    except FactorizationBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except GiugaDisagreement as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_DISAGREE

    doc = {"command": "giuga-check", "method": method, "certificate": cert.to_json()}
    lines = [
        f"n          {n}",
        f"composite  {cert.composite}",
        f"squarefree {cert.squarefree}",
        "residues   " + " ".join(f"{p}:{r}" for p, r in cert.per_prime),
        f"index a    {cert.index_a if cert.index_a is not None else '-'}",
        "verdicts   " + ", ".join(f"{m}={v}" for m, v in cert.verdicts.items()),
        f"giuga      {'yes' if verdict else 'no'}",
    ]
    _emit(args, doc, lines)
    return EXIT_OK if verdict else EXIT_NO


def cmd_catalog_verify(args: argparse.Namespace) -> int:
    try:
        entries = load_catalog(args.data)
        reports = verify_catalog(entries, strict=False, effort_limit=args.factor_budget)
    except (CatalogParseError, OSError, IrreconcilableEntry) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    ok = all(r.passed for r in reports)
    if args.json:
        json.dump([r.to_json() for r in reports], sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for r in reports:
            n = r.entry.decimal_value
            flag = "PASS" if r.passed else "FAIL"
            print(f"{flag} {n} ({r.factor_count} primes, a={r.index_a}, n'=n+1: "
                  f"{r.derivative_is_n_plus_1})")
            if r.reconciliation_applied:
                print(f"     reconciled: {r.reconciliation_applied}")
            if r.probabilistic_primes:
                print("     probable primes (64 random SPRP rounds): "
                      + ", ".join(map(str, r.probabilistic_primes)))
        print(f"{sum(r.passed for r in reports)}/{len(reports)} passed")
    return EXIT_OK if ok else EXIT_CATALOG


def _summary(report: SearchReport, partial: bool) -> str:
    return (f"{'partial ' if partial else ''}summary: {len(report.hits)} hits, "
            f"explored={report.nodes_explored} pruned={report.nodes_pruned} "
            f"complete={report.complete and not partial} elapsed={report.elapsed:.3f}s")


def cmd_search(args: argparse.Namespace) -> int:
    seen: list[SearchHit] = []

    def on_hit(hit: SearchHit) -> None:
        seen.append(hit)
        if not args.json:
            print(f"hit {hit.n} a={hit.a} = {hit.factorization}", flush=True)

    try:
        if args.engine == "sieve":
            cfg = SieveConfig(args.limit, args.segment_size, args.index, args.jobs)
            report = sieve_search(cfg, on_hit)
        else:
            cfg = TupleSearchConfig(
                max_factors=args.max_factors,
                index_a=args.index,
                prefix_prime_bound=args.prefix_bound,
                worker_count=args.jobs,
                min_factors=args.min_factors,
                factor_budget=args.factor_budget,
            )
            report = tuple_search(cfg, on_hit, args.checkpoint)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except KeyboardInterrupt:
        partial = SearchReport(hits=sorted(set(seen)), complete=False)
        if args.json:
            _emit(args, {"command": "search", "engine": args.engine, "partial": True,
                         **partial.to_json()}, [])
        else:
            print(_summary(partial, True))
        return EXIT_INTERRUPTED
    doc = {"command": "search", "engine": args.engine, "partial": False, **report.to_json()}
    _emit(args, doc, [_summary(report, False)])
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    a = args.index
    if a < 1:
        print("error: --index must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        k = min_prime_count(a, odd_only=args.odd_only)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    caveat = "necessary bound only: sum of 1/p over the first k primes must exceed a"
    notes = _literature_notes(a, args.odd_only)
    doc = {
        "command": "bound",
        "index_a": str(a),
        "odd_only": args.odd_only,
        "min_prime_count": k,
        "caveat": caveat,
        "literature": notes,
    }
    lines = [str(k), f"({caveat})"] + [f"({note})" for note in notes]
    _emit(args, doc, lines)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=default(False),
                   help="emit one JSON document on stdout")
    p.add_argument("--jobs", type=_positive, default=default(1), metavar="N",
                   help="worker processes for searches (default 1)")
    p.add_argument("--powersum-limit", type=_natural, default=default(DEFAULT_POWERSUM_LIMIT),
                   metavar="N", help="largest n for the power-sum test (default 10**6)")
    p.add_argument("--factor-budget", type=_positive, default=default(DEFAULT_FACTOR_BUDGET),
                   metavar="N", help="rho iterations allowed per factorization")
    p.add_argument("-v", "--verbose", action="store_true", default=default(False),
                   help="log diagnostics to stderr")
    return p


def build_parser() -> argparse.ArgumentParser:
    leaf = _global_flags(suppress=True)
    parser = argparse.ArgumentParser(
        prog="giuga",
        description="Arithmetic derivative and Giuga-number toolkit.",
        parents=[_global_flags(suppress=False)],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", parents=[leaf], help="arithmetic derivative of n")
    p.add_argument("n", type=_natural)
    p.set_defaults(func=cmd_derive)

    g = sub.add_parser("giuga", help="Giuga-number tests").add_subparsers(dest="action",
                                                                          required=True)
    p = g.add_parser("check", parents=[leaf], help="test whether n is a Giuga number")
    p.add_argument("n", type=_natural)
    p.add_argument("--method", choices=["def", "index", "powersum", "bernoulli", "all"],
                   default="all")
    p.set_defaults(func=cmd_giuga_check)

    c = sub.add_parser("catalog", help="known Giuga numbers").add_subparsers(dest="action",
                                                                            required=True)
    p = c.add_parser("verify", parents=[leaf], help="re-verify the shipped catalog")
    p.add_argument("--data", metavar="FILE", help="alternative catalog file")
    p.set_defaults(func=cmd_catalog_verify)

    s = sub.add_parser("search", help="search for n' = a*n + 1").add_subparsers(
        dest="engine", required=True)
    p = s.add_parser("sieve", parents=[leaf], help="exhaustive derivative sieve over [2, limit]")
    p.add_argument("--limit", type=_natural, required=True)
    p.add_argument("--index", type=_positive, default=None, help="only this a (default: any)")
    p.add_argument("--segment-size", type=_positive, default=1 << 18)
    p.set_defaults(func=cmd_search)
    p = s.add_parser("tuples", parents=[leaf], help="branch-and-bound prime-tuple search")
    p.add_argument("--max-factors", type=_positive, required=True)
    p.add_argument("--min-factors", type=_positive, default=3)
    p.add_argument("--index", type=_positive, default=1)
    p.add_argument("--prefix-bound", type=_positive, default=None,
                   help="cap on enumerated primes (report flagged incomplete if hit)")
    p.add_argument("--checkpoint", metavar="FILE", help="resumable progress file")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bound", parents=[leaf], help="least prime-factor count for index a")
    p.add_argument("--index", type=_natural, required=True)
    p.add_argument("--odd-only", action="store_true")
    p.set_defaults(func=cmd_bound)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
