"""Command-line interface.

Verbs: ``gen`` builds an uncrossing order and writes exports; ``verify``
runs named check suites; ``mobius`` reports the Mobius/Eulerian data;
``bruhat`` runs the symmetric-group suites; ``tuffley`` generates the
forest poset and matches its intervals; ``export`` writes exports without
printing counts.

Exit codes: 0 when every check passes, 1 on any check failure, 2 on usage
errors.  Reports are deterministic: identical invocations write identical
bytes regardless of ``--workers``.
"""

from __future__ import annotations

import argparse
import sys

from .posets import TooManyChainsError
from .reporting import Report
from .uncross_poset import TooLargeError, UncrossingPoset
from .verification import ALL_CHECKS, run_suite


def _positive_fraction(text: str) -> float:
    value = float(text)
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError("sample fraction must be in (0, 1]")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uncrossing",
        description="Uncrossing posets of wire diagrams: generation, "
        "shellability verification, and exports.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_outputs(p: argparse.ArgumentParser, dot: bool = True) -> None:
        if dot:
            p.add_argument("--dot", metavar="PATH", help="write a DOT export")
        p.add_argument("--json", metavar="PATH", help="write a JSON export/report")
        p.add_argument("--csv", metavar="PATH", help="write a delimited check summary")
        p.add_argument("--fig", metavar="PATH", help="render a Hasse diagram figure")

    gen = sub.add_parser("gen", help="generate the order on n wires and export it")
    gen.add_argument("n", type=int)
    gen.add_argument("--dual", action="store_true", help="export the dual orientation")
    gen.add_argument("--limit", type=int, default=10_000_000, help="element limit")
    gen.add_argument("--dot", metavar="PATH")
    gen.add_argument("--json", metavar="PATH")
    gen.add_argument("--fig", metavar="PATH")

    export = sub.add_parser("export", help="like gen but requires an output path")
    export.add_argument("n", type=int)
    export.add_argument("--dual", action="store_true")
    export.add_argument("--limit", type=int, default=10_000_000)
    export.add_argument("--dot", metavar="PATH")
    export.add_argument("--json", metavar="PATH")
    export.add_argument("--fig", metavar="PATH")

    verify = sub.add_parser("verify", help="run verification suites on n wires")
    verify.add_argument("n", type=int)
    verify.add_argument("--all", action="store_true", help="run every suite")
    verify.add_argument(
        "--checks",
        metavar="LIST",
        help="comma-separated checks: %s, shelling, dyer" % ",".join(ALL_CHECKS),
    )
    verify.add_argument("--sample", type=_positive_fraction, metavar="FRACTION")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--limit", type=int, default=10**6, help="chain budget")
    verify.add_argument("--workers", type=int, default=1)
    add_outputs(verify, dot=False)

    mobius = sub.add_parser("mobius", help="Mobius function and Eulerian check")
    mobius.add_argument("n", type=int)
    mobius.add_argument("--dual", action="store_true")
    add_outputs(mobius, dot=False)

    bruhat = sub.add_parser("bruhat", help="symmetric group cover and EL suites")
    bruhat.add_argument("m", type=int)
    bruhat.add_argument("--workers", type=int, default=1)
    add_outputs(bruhat, dot=False)

    tuffley = sub.add_parser("tuffley", help="forest poset and interval matching")
    tuffley.add_argument("n", type=int)
    tuffley.add_argument(
        "--scope",
        type=int,
        default=4,
        help="match against uncrossing orders on up to this many wires",
    )
    tuffley.add_argument("--workers", type=int, default=1)
    add_outputs(tuffley)

    return parser


def _emit(report: Report, args: argparse.Namespace) -> int:
    for line in report.summary_lines():
        print(line)
    if getattr(args, "json", None):
        report.to_json(args.json)
    if getattr(args, "csv", None):
        report.to_csv(args.csv)
    return 0 if report.ok else 1


def _run_gen(args: argparse.Namespace, quiet: bool) -> int:
    if args.n < 2:
        raise SystemExit(2)
    try:
        P = UncrossingPoset.generate(args.n, limit=args.limit)
    except TooLargeError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    if not quiet:
        print(
            "wires=%d elements=%d atoms=%d coatoms=%d profile=%s"
            % (
                P.n,
                len(P),
                len(P.atoms()),
                len(P.coatoms()),
                ",".join(map(str, P.rank_profile())),
            )
        )
    wrote = False
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(P.to_dot(dual=args.dual))
        wrote = True
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(P.to_json(dual=args.dual) + "\n")
        wrote = True
    if args.fig:
        from .drawing import draw_hasse

        draw_hasse(P.as_finite_poset(dual=args.dual), args.fig)
        wrote = True
    if quiet and not wrote:
        print("error: export requires --dot, --json or --fig", file=sys.stderr)
        return 2
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verb in ("gen", "export"):
        return _run_gen(args, quiet=args.verb == "export")

    if args.verb == "verify":
        if not 2 <= args.n <= 4:
            parser.error("verify supports 2 <= n <= 4")
        checks: list[str] = []
        if args.all or not args.checks:
            checks = list(ALL_CHECKS)
            if args.n <= 3:
                checks.append("shelling")
        if args.checks:
            checks.extend(c.strip() for c in args.checks.split(",") if c.strip())
        try:
            report = run_suite(
                args.n,
                checks,
                sample=args.sample,
                seed=args.seed,
                limit=args.limit,
                workers=args.workers,
            )
        except (TooManyChainsError, ValueError) as exc:
            print("error: %s" % exc, file=sys.stderr)
            return 2 if isinstance(exc, ValueError) else 1
        if args.fig:
            from .drawing import draw_hasse

            draw_hasse(
                UncrossingPoset.generate(args.n).as_finite_poset(dual=True), args.fig
            )
        return _emit(report, args)

    if args.verb == "mobius":
        if args.n < 2:
            parser.error("mobius requires n >= 2")
        try:
            P = UncrossingPoset.generate(args.n)
        except TooLargeError as exc:
            print("error: %s" % exc, file=sys.stderr)
            return 1
        F = P.as_finite_poset(dual=args.dual)
        report = Report(F.name)
        mu = F.mobius(F.bottom(), F.top())
        rank = F.rank_of(F.top())
        report.add(
            "mobius-bottom-top",
            mu == (-1) ** rank,
            witness={"mobius": mu, "rank": rank},
        )
        report.extend(F.is_eulerian())
        report.extend(F.is_thin())
        if args.fig:
            from .drawing import draw_hasse

            draw_hasse(F, args.fig)
        return _emit(report, args)

    if args.verb == "bruhat":
        if not 2 <= args.m <= 5:
            parser.error("bruhat supports 2 <= m <= 5")
        from itertools import permutations as iter_permutations

        from .bruhat import (
            Permutation,
            bruhat_covers_up,
            bruhat_covers_up_by_length,
            verify_dyer_el,
        )

        report = Report("bruhat-S%d" % args.m)
        mismatch = [
            str(Permutation(p))
            for p in iter_permutations(range(1, args.m + 1))
            if bruhat_covers_up(Permutation(p))
            != bruhat_covers_up_by_length(Permutation(p))
        ]
        report.add("cover-oracle", not mismatch, witness=mismatch[:10] or None)
        if args.m <= 4:
            report.extend(verify_dyer_el(args.m, workers=args.workers))
        return _emit(report, args)

    if args.verb == "tuffley":
        if not 3 <= args.n <= 4:
            parser.error("tuffley supports 3 <= n <= 4")
        if not 2 <= args.scope <= 4:
            parser.error("--scope must be between 2 and 4")
        from .tuffley import generate_tuffley, tuffley_to_dot
        from .verification import verify_tuffley_suite

        report = verify_tuffley_suite(
            args.n, scope=tuple(range(2, args.scope + 1)), workers=args.workers
        )
        if args.dot:
            with open(args.dot, "w", encoding="utf-8") as fh:
                fh.write(tuffley_to_dot(generate_tuffley(args.n)))
        if args.fig:
            from .drawing import draw_hasse

            draw_hasse(generate_tuffley(args.n), args.fig, edge_labels=False)
        return _emit(report, args)

    parser.error("unknown verb %r" % args.verb)
    return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
