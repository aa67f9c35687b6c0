"""Command line front end.

Exit codes: 0 consistent, 1 divergence (or a failed validation), 2 input or
usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import report
from .documents import DocumentError, apply_overrides, load_domain, load_facts, load_grid, parse_range
from .engine import evaluate
from .search import DomainTooLarge, bounded_search, cross_validation_grid, sweep_prior_exclusion
from .statute import CombineRule, NumeratorMode, StatuteParams, TimeUnit
from .validation import FixtureError, determinism_check, run_suite

EXIT_OK, EXIT_DIVERGENCE, EXIT_ERROR = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _common(sp: argparse.ArgumentParser, unit=True, mode=True) -> None:
    sp.add_argument("--format", choices=report.FORMATS, default="table")
    if unit:
        sp.add_argument("--unit", choices=[u.value for u in TimeUnit], help="override the time unit")
    if mode:
        sp.add_argument("--mode", choices=[m.value for m in NumeratorMode], help="joint numerator mode")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sec121", description="Compare the two readings of the section 121 joint-return limitation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("evaluate", help="evaluate one facts file")
    sp.add_argument("facts", help="facts JSON file")
    _common(sp)

    sp = sub.add_parser("sweep", help="vary spouse B's prior-exclusion period")
    sp.add_argument("range", nargs="?", default="1..36", help="LOW..HIGH (default 1..36)")
    _common(sp, mode=False)

    sp = sub.add_parser("search", help="bounded search for divergent fact patterns")
    sp.add_argument("domain", help="search domain JSON file")
    sp.add_argument("--limit", type=int, default=10)
    sp.add_argument("--override-domain-bound", action="store_true")
    sp.add_argument("--workers", type=int, default=1)
    _common(sp)

    sp = sub.add_parser("grid", help="unit x combine-rule cross-validation grid")
    sp.add_argument("facts", help="per-unit facts JSON file")
    sp.add_argument("--unit", action="append", choices=[u.value for u in TimeUnit],
                    help="unit to include (repeatable; default: every unit in the file)")
    sp.add_argument("--rule", action="append", choices=[r.value for r in CombineRule],
                    help="combine rule to include (repeatable; default: all)")
    sp.add_argument("--format", choices=report.FORMATS, default="table")

    sp = sub.add_parser("validate", help="run the validation runners")
    sp.add_argument("--runs", type=int, default=2)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--fixtures", help="directory holding fixture files (default: bundled)")
    sp.add_argument("--format", choices=report.FORMATS, default="table")
    return parser


def cmd_evaluate(args) -> int:
    facts, p = load_facts(args.facts)
    p = apply_overrides(p, args.unit, args.mode)
    o = evaluate(facts, p)
    sys.stdout.write(report.render_evaluation(facts, p, o, args.format))
    return EXIT_DIVERGENCE if o.diverges else EXIT_OK


def cmd_sweep(args) -> int:
    p = apply_overrides(StatuteParams(), args.unit)
    rows = sweep_prior_exclusion(parse_range(args.range), p)
    sys.stdout.write(report.render_sweep(rows, p, args.format))
    return EXIT_DIVERGENCE if any(r.diverges for r in rows) else EXIT_OK


def cmd_search(args) -> int:
    if args.limit < 1:
        raise DocumentError("--limit must be >= 1")
    domain, p = load_domain(args.domain)
    p = apply_overrides(p, args.unit, args.mode)
    found = bounded_search(domain, p, args.limit, override_bound=args.override_domain_bound, workers=args.workers)
    sys.stdout.write(report.render_search(found, p, args.format))
    return EXIT_DIVERGENCE if found else EXIT_OK


def cmd_grid(args) -> int:
    facts, base = load_grid(args.facts)
    units = [TimeUnit(u) for u in args.unit] if args.unit else list(facts)
    rules = [CombineRule(r) for r in args.rule] if args.rule else list(CombineRule)
    missing = [u.value for u in units if u not in facts]
    if missing:
        raise DocumentError(f"{args.facts}: no facts for unit(s): {', '.join(missing)}")
    cells = cross_validation_grid(facts, units, rules, base)
    sys.stdout.write(report.render_grid(cells, args.format))
    return EXIT_OK if all(c.converged for c in cells) else EXIT_DIVERGENCE


def cmd_validate(args) -> int:
    if args.runs < 1:
        raise DocumentError("--runs must be >= 1")
    reports = run_suite(fixtures_dir=args.fixtures, workers=args.workers)
    det = None
    if args.runs >= 2:
        det = determinism_check(args.runs, fixtures_dir=args.fixtures, workers=args.workers)
    sys.stdout.write(report.render_validation(reports, det, args.runs, args.format))
    ok = all(r.overall for r in reports) and det is not False
    return EXIT_OK if ok else EXIT_DIVERGENCE


COMMANDS = {
    "evaluate": cmd_evaluate,
    "sweep": cmd_sweep,
    "search": cmd_search,
    "grid": cmd_grid,
    "validate": cmd_validate,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (DocumentError, DomainTooLarge, FixtureError, ValueError, TypeError) as exc:
        print(f"sec121 {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
