"""Fixed and mixed validation runners checked against golden fixtures.

Fixtures are pipe-delimited text files, one per runner, shipped in
``sec121/fixtures``.  Every expected amount is a whole-dollar integer and is
compared against the exact result after rounding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Callable, List, Optional, Sequence, Tuple, Union

from .engine import evaluate
from .report import runner_doc
from .search import SearchDomain, bounded_search, sweep_prior_exclusion, table3_facts
from .statute import BASE_LIMIT, CoupleFacts, SpouseTimeline, StatuteParams, round_dollars

FixtureDir = Union[str, Path, None]


class FixtureError(Exception):
    """A fixture file is missing or cannot be parsed."""


@dataclass(frozen=True)
class CaseResult:
    label: str
    facts: Optional[CoupleFacts]
    expected: Tuple[Tuple[str, Any], ...]
    actual: Tuple[Tuple[str, Any], ...]
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class RunnerReport:
    runner_name: str
    cases: Tuple[CaseResult, ...] = field(default_factory=tuple)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def canonical_serialization(self) -> bytes:
        doc = runner_doc(self)
        return json.dumps(doc, separators=(",", ":"), ensure_ascii=False).encode("utf-8")

    def failures(self) -> List[CaseResult]:
        return [c for c in self.cases if not c.passed]


# -- fixture parsing ---------------------------------------------------------


def _fixture_text(name: str, fixtures_dir: FixtureDir) -> Tuple[str, str]:
    if fixtures_dir is None:
        res = resources.files("sec121").joinpath("fixtures", name)
        where = f"sec121/fixtures/{name}"
        try:
            return res.read_text(encoding="utf-8"), where
        except FileNotFoundError as exc:
            raise FixtureError(f"fixture file missing: {where}") from exc
    path = Path(fixtures_dir) / name
    if not path.is_file():
        raise FixtureError(f"fixture file missing: {path}")
    return path.read_text(encoding="utf-8"), str(path)


def _fixture_rows(name: str, fixtures_dir: FixtureDir, ncols: int) -> List[Tuple[int, List[str]]]:
    text, where = _fixture_text(name, fixtures_dir)
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = [c.strip() for c in line.split("|")]
        if len(cols) != ncols:
            raise FixtureError(f"{where}:{lineno}: expected {ncols} columns, got {len(cols)}")
        rows.append((lineno, cols))
    return rows


def _parse_spouse(text: str) -> SpouseTimeline:
    own, use, prior, reason = (x.strip() for x in text.split(","))
    if reason not in ("true", "false"):
        raise ValueError(f"reason must be true/false, got {reason!r}")
    return SpouseTimeline(
        int(own), int(use), None if prior == "never" else int(prior), reason == "true"
    )


def parse_inputs(text: str) -> CoupleFacts:
    """Parse ``A=own,use,prior,reason; B=...`` into couple facts."""
    parts = dict(p.strip().split("=", 1) for p in text.split(";"))
    return CoupleFacts(_parse_spouse(parts["A"]), _parse_spouse(parts["B"]))


@dataclass(frozen=True)
class FixtureCase:
    label: str
    facts: CoupleFacts
    sum_reading: int
    joint_reading: int
    diverges: bool


def load_cases(name: str, fixtures_dir: FixtureDir = None) -> List[FixtureCase]:
    out = []
    for lineno, (label, inputs, s, j, d) in _fixture_rows(name, fixtures_dir, 5):
        try:
            if d not in ("yes", "no"):
                raise ValueError(f"divergence must be yes/no, got {d!r}")
            out.append(FixtureCase(label, parse_inputs(inputs), int(s), int(j), d == "yes"))
        except (ValueError, KeyError) as exc:
            raise FixtureError(f"{name}:{lineno}: {exc}") from exc
    return out


def load_sweep_table(fixtures_dir: FixtureDir = None) -> List[Tuple[int, ...]]:
    name = "run_joint_prior_table.txt"
    out = []
    for lineno, cols in _fixture_rows(name, fixtures_dir, 5):
        try:
            out.append(tuple(int(c) for c in cols))
        except ValueError as exc:
            raise FixtureError(f"{name}:{lineno}: {exc}") from exc
    return out


# -- runners -----------------------------------------------------------------


def _scale(p: StatuteParams) -> Fraction:
    # fixtures are stated at the default limits; all dollar outputs scale linearly
    return p.base_limit / BASE_LIMIT


def _check_case(case: FixtureCase, p: StatuteParams) -> CaseResult:
    o = evaluate(case.facts, p)
    k = _scale(p)
    exp_sum, exp_joint = round_dollars(case.sum_reading * k), round_dollars(case.joint_reading * k)
    got_sum, got_joint = round_dollars(o.sum_reading), round_dollars(o.joint_reading)
    problems = []
    if got_sum != exp_sum:
        problems.append(f"sum_reading expected {exp_sum} got {got_sum}")
    if got_joint != exp_joint:
        problems.append(f"joint_reading expected {exp_joint} got {got_joint}")
    if o.diverges != case.diverges:
        problems.append(f"diverges expected {case.diverges} got {o.diverges}")
    return CaseResult(
        case.label,
        case.facts,
        (("sum_reading", exp_sum), ("joint_reading", exp_joint), ("diverges", case.diverges)),
        (("sum_reading", o.sum_reading), ("joint_reading", o.joint_reading), ("diverges", o.diverges)),
        not problems,
        "; ".join(problems),
    )


def _fixed_runner(name: str, p: Optional[StatuteParams], fixtures_dir: FixtureDir) -> RunnerReport:
    p = p or StatuteParams()
    cases = load_cases(f"{name}.txt", fixtures_dir)
    return RunnerReport(name, tuple(_check_case(c, p) for c in cases))


def run_case_no_inconsistency(
    params: Optional[StatuteParams] = None, fixtures_dir: FixtureDir = None
) -> RunnerReport:
    return _fixed_runner("run_case_no_inconsistency", params, fixtures_dir)


def run_case_with_inconsistency(
    params: Optional[StatuteParams] = None, fixtures_dir: FixtureDir = None
) -> RunnerReport:
    return _fixed_runner("run_case_with_inconsistency", params, fixtures_dir)


def _boundary_witness_case(label: str, domain: SearchDomain, expected: FixtureCase, p, workers) -> CaseResult:
    """Search a domain exhaustively and check its last divergent pattern.

    The last witness in canonical order sits at the edge of the inconsistency
    zone; it has to match the fixture up to a swap of spouses and re-evaluate
    to the same outcome.
    """
    found = bounded_search(domain, p, limit=domain.size, workers=workers)
    expected_pair = {expected.facts, expected.facts.swapped()}
    problems = []
    if not found:
        problems.append("no divergent pattern found")
        actual: Tuple[Tuple[str, Any], ...] = (("witnesses", 0),)
        facts = None
    else:
        w = found[-1]
        facts = w.facts
        actual = (
            ("witnesses", len(found)),
            ("sum_reading", w.outcome.sum_reading),
            ("joint_reading", w.outcome.joint_reading),
        )
        if any(evaluate(x.facts, p) != x.outcome or not x.outcome.diverges for x in found):
            problems.append("a witness does not reproduce on re-evaluation")
        if w.facts not in expected_pair:
            problems.append("boundary witness differs from the fixture pattern")
        if round_dollars(w.outcome.sum_reading) != expected.sum_reading:
            problems.append(f"sum_reading expected {expected.sum_reading} got {round_dollars(w.outcome.sum_reading)}")
        if round_dollars(w.outcome.joint_reading) != expected.joint_reading:
            problems.append(f"joint_reading expected {expected.joint_reading} got {round_dollars(w.outcome.joint_reading)}")
    return CaseResult(
        label,
        facts,
        (("sum_reading", expected.sum_reading), ("joint_reading", expected.joint_reading)),
        actual,
        not problems,
        "; ".join(problems),
    )


def run_all_validation_tests(
    params: Optional[StatuteParams] = None,
    fixtures_dir: FixtureDir = None,
    workers: int = 1,
) -> RunnerReport:
    """Six parts: full, partial and asymmetric cases; a determinism re-run of
    those three; two searches that must rediscover the boundary witness."""
    p = params or StatuteParams()
    by_label = {c.label: c for c in load_cases("run_all_validation_tests.txt", fixtures_dir)}
    missing = {"full_qualification", "partial_qualification", "asymmetric_qualification", "search_witness"} - set(by_label)
    if missing:
        raise FixtureError(f"run_all_validation_tests.txt lacks rows: {', '.join(sorted(missing))}")

    fixed = [by_label[k] for k in ("full_qualification", "partial_qualification", "asymmetric_qualification")]
    cases = [_check_case(c, p) for c in fixed]

    first = RunnerReport("parts_1_3", tuple(cases)).canonical_serialization
    again = RunnerReport("parts_1_3", tuple(_check_case(c, p) for c in fixed)).canonical_serialization
    same = first == again
    cases.append(
        CaseResult("determinism_rerun", None, (("identical", True),), (("identical", same),), same,
                   "" if same else "re-run of parts 1-3 differs")
    )

    target = by_label["search_witness"]
    span = target.facts.spouse_a.ownership
    # part 5: spouse B's prior-exclusion period is the free variable
    vary_b = SearchDomain(
        own_a=(span, span), use_a=(span, span), prior_a=(span, span),
        own_b=(span, span), use_b=(span, span), prior_b=(1, span),
        reason_policy="fixed", reason_a=False, reason_b=True,
    )
    cases.append(_boundary_witness_case("search_vary_spouse_b", vary_b, target, p, workers))
    # part 6: mirrored, with reasons assigned by which spouse fails
    vary_a = SearchDomain(
        own_a=(span, span), use_a=(span, span), prior_a=(1, span),
        own_b=(span, span), use_b=(span, span), prior_b=(span, span),
        reason_policy="failing", require_failure=True,
    )
    cases.append(_boundary_witness_case("search_vary_spouse_a", vary_a, target, p, workers))
    return RunnerReport("run_all_validation_tests", tuple(cases))


SWEEP_COLUMNS = ("SumA", "min_six", "min_three_joint", "held_b2A_months")


def run_joint_prior_table(
    params: Optional[StatuteParams] = None, fixtures_dir: FixtureDir = None
):
    """Sweep the prior-exclusion period over 1..36 and compare every cell.

    Returns ``(report, rows)``.
    """
    p = params or StatuteParams()
    golden = load_sweep_table(fixtures_dir)
    rows = sweep_prior_exclusion((1, 36), p)
    by_p = {r.p: r for r in rows}
    k = _scale(p)
    cases = []
    for g in golden:
        prior, expected = g[0], tuple(round_dollars(x * k) for x in g[1:])
        row = by_p.get(prior)
        if row is None:
            cases.append(CaseResult(f"P={prior}", None, (), (), False, f"row P={prior} not in sweep"))
            continue
        got = (row.sum_a, row.min_six, row.min_three_joint, row.held_b2A)
        problems = [
            f"(row {prior}, column {col}, expected {e}, actual {round_dollars(a)})"
            for col, e, a in zip(SWEEP_COLUMNS, expected, got)
            if round_dollars(a) != e
        ]
        cases.append(
            CaseResult(
                f"P={prior}",
                table3_facts(prior),
                tuple(zip(SWEEP_COLUMNS, expected)),
                tuple(zip(SWEEP_COLUMNS, got)),
                not problems,
                "; ".join(problems),
            )
        )
    if len(golden) != len(rows):
        cases.append(CaseResult("row_count", None, (("rows", len(rows)),), (("rows", len(golden)),), False,
                                f"fixture has {len(golden)} rows, sweep has {len(rows)}"))
    return RunnerReport("run_joint_prior_table", tuple(cases)), rows


def run_suite(
    params: Optional[StatuteParams] = None, fixtures_dir: FixtureDir = None, workers: int = 1
) -> List[RunnerReport]:
    return [
        run_case_no_inconsistency(params, fixtures_dir),
        run_case_with_inconsistency(params, fixtures_dir),
        run_all_validation_tests(params, fixtures_dir, workers),
        run_joint_prior_table(params, fixtures_dir)[0],
    ]


def suite_serialization(reports: Sequence[RunnerReport]) -> bytes:
    return b"\n".join(r.canonical_serialization for r in reports)


def determinism_check(
    n_runs: int = 2,
    params: Optional[StatuteParams] = None,
    fixtures_dir: FixtureDir = None,
    workers: int = 1,
    fault: Optional[Callable[[int, bytes], bytes]] = None,
) -> bool:
    """Run the whole suite ``n_runs`` times; pass iff all serializations match.

    ``fault`` is a test hook that may alter the bytes of run ``i``.
    """
    if n_runs < 2:
        raise ValueError("determinism_check needs at least 2 runs")
    seen = []
    for i in range(n_runs):
        blob = suite_serialization(run_suite(params, fixtures_dir, workers))
        if fault is not None:
            blob = fault(i, blob)
        seen.append(blob)
    return all(b == seen[0] for b in seen[1:])
