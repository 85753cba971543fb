"""Command-line front-end: ``pcengel check|collect|series|claims``.

Exit codes: 0 success, 1 a verified-false result, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import corpus, series, subgroups
from .consistency import DEFAULT_ENUMERATION_BOUND, EnumerationLimitError, check_consistency, group_order
from .engel import DEFAULT_ORBIT_LIMIT, OrbitLimitError
from .model import PcPresentation, PresentationError
from .textio import ParseError, dump_report, evaluate, format_element, parse_presentation

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _load(args: argparse.Namespace) -> tuple[PcPresentation, dict[str, str]]:
    if args.named and args.file:
        raise _UsageError("give either a file or --named, not both")
    if args.named:
        try:
            path = corpus.corpus_file(args.named)
        except corpus.UnknownPresentationError as exc:
            raise _UsageError(str(exc)) from None
        aliases = corpus.aliases_for(args.named)
    elif args.file:
        path = Path(args.file)
        aliases = {}
    else:
        raise _UsageError("no presentation given (FILE or --named NAME)")
    try:
        text = path.read_text()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from None
    return parse_presentation(text), aliases


def _split_top_level(text: str) -> list[str]:
    """Split on commas that are not inside brackets or parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [s.strip() for s in parts if s.strip()]


def cmd_check(args: argparse.Namespace) -> int:
    p, _ = _load(args)
    report = check_consistency(p)
    if report.consistent:
        print(f"consistent, order {group_order(p, checked=False)}")
        return EXIT_OK
    f = report.failures[0]
    names = ", ".join(p.names[i - 1] for i in f.indices)
    print(f"inconsistent: {len(report.failures)} failing overlaps")
    print(f"first: {f.kind} overlap at ({names}): {format_element(p, f.left)} != {format_element(p, f.right)}")
    return EXIT_FALSE


def cmd_collect(args: argparse.Namespace) -> int:
    p, aliases = _load(args)
    print(format_element(p, evaluate(p, args.word, aliases)))
    return EXIT_OK


def cmd_series(args: argparse.Namespace) -> int:
    p, aliases = _load(args)
    if not check_consistency(p).consistent:
        print(f"{p.name} is inconsistent; run 'check' for details", file=sys.stderr)
        return EXIT_FALSE
    within = None
    if args.within:
        within = subgroups.induced_pcs(p, [evaluate(p, w, aliases) for w in _split_top_level(args.within)])
    if args.kind == "lower":
        chain = series.lower_central_series(p, within)
        label, measure = "gamma", "class"
    else:
        chain = series.derived_series(p, within)
        label, measure = "delta", "derived length"
    for k, order in enumerate(chain.orders, start=1 if args.kind == "lower" else 0):
        print(f"{label}_{k}: order {order}")
    if chain.reaches_trivial:
        print(f"{measure} {len(chain.terms) - 1}")
        return EXIT_OK
    print(f"series stabilises at order {chain.orders[-1]}; not nilpotent" if args.kind == "lower" else "not solvable")
    return EXIT_FALSE


def _run_one(job: tuple[corpus.Claim, int | None, int, int, bool]) -> corpus.ClaimResult:
    c, seed, max_enum, max_orbit, timing = job
    return corpus.run_claim(c, seed=seed, max_enumeration=max_enum, max_orbit=max_orbit, timing=timing)


def cmd_claims(args: argparse.Namespace) -> int:
    claims = corpus.claim_suite()
    if args.only:
        wanted = [w.strip() for w in args.only.split(",") if w.strip()]
        claims = [c for c in claims if any(c.claim_id == w or c.claim_id.startswith(w + "-") for w in wanted)]
        if not claims:
            raise _UsageError(f"--only {args.only!r} matches no claim")
    jobs = [(c, args.seed, args.max_enumeration, args.max_orbit, args.timing) for c in claims]
    if args.threads > 1:
        with ProcessPoolExecutor(max_workers=args.threads) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    results.sort(key=lambda r: r.claim_id)
    for r in results:
        line = f"{r.claim_id:<36} {r.status}"
        if args.timing:
            line += f"  {r.elapsed_ms:.0f} ms"
        print(line)
        if r.status == "fail" or args.verbose:
            print(f"    {r.details}")
    if args.json:
        try:
            Path(args.json).write_text(dump_report(r.to_dict() for r in results))
        except OSError as exc:
            print(f"cannot write {args.json}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    return EXIT_OK if all(r.status != "fail" for r in results) else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    limits = argparse.ArgumentParser(add_help=False)
    limits.add_argument("--max-enumeration", type=int, default=DEFAULT_ENUMERATION_BOUND, metavar="N")
    limits.add_argument("--max-orbit", type=int, default=DEFAULT_ORBIT_LIMIT, metavar="N")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("file", nargs="?", help="presentation file")
    source.add_argument("--named", metavar="NAME", help=f"corpus presentation ({', '.join(corpus.NAMES)})")

    parser = argparse.ArgumentParser(prog="pcengel", description="Power-conjugate presentations and sandwich-group checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[source, limits], help="check consistency and print the order")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("collect", parents=[source, limits], help="print the normal form of a word")
    p.add_argument("--word", required=True, help="word or commutator expression")
    p.set_defaults(func=cmd_collect)

    p = sub.add_parser("series", parents=[source, limits], help="lower central or derived series")
    p.add_argument("--kind", choices=("lower", "derived"), default="lower")
    p.add_argument("--within", metavar="WORDS", help="comma-separated generators of a subgroup")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("claims", parents=[limits], help="run the claim suite")
    p.add_argument("--suite", choices=("paper",), default="paper")
    p.add_argument("--json", metavar="PATH", help="write the JSON report here")
    p.add_argument("--only", metavar="IDS", help="comma-separated claim ids or prefixes such as C01")
    p.add_argument("--seed", type=int, default=None, help="seed for sampled checks")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="record wall-clock times (reports then differ run to run)")
    p.add_argument("-v", "--verbose", action="store_true", help="print details for passing claims too")
    p.set_defaults(func=cmd_claims)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (_UsageError, ParseError, PresentationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EnumerationLimitError, OrbitLimitError) as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
