"""Rendering of outcomes, sweeps, witnesses, grids and runner reports.

JSON documents carry ``schema_version`` and write every dollar amount twice:
rounded whole dollars and the exact ``"numerator/denominator"``.  Key order is
fixed by construction so identical inputs give identical bytes.  Thousands
separators appear only in the plain-text table format.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional, Sequence

from .engine import InterpretationOutcome
from .statute import CoupleFacts, SpouseTimeline, StatuteParams, format_exact, round_dollars

SCHEMA_VERSION = 1
FORMATS = ("table", "json", "csv")


def amount_doc(x: Fraction) -> Dict[str, Any]:
    return {"dollars": round_dollars(x), "exact": format_exact(x)}


def spouse_doc(t: SpouseTimeline) -> Dict[str, Any]:
    return {
        "ownership": t.ownership,
        "use": t.use,
        "since_prior_exclusion": t.since_prior_exclusion,
        "qualifying_reason": t.qualifying_reason,
    }


def facts_doc(c: CoupleFacts) -> Dict[str, Any]:
    return {"spouse_a": spouse_doc(c.spouse_a), "spouse_b": spouse_doc(c.spouse_b)}


def params_doc(p: StatuteParams) -> Dict[str, Any]:
    return {
        "time_unit": p.time_unit.value,
        "full_test_length": p.full_test_length,
        "base_limit": amount_doc(p.base_limit),
        "joint_limit": amount_doc(p.joint_limit),
        "numerator_mode": p.numerator_mode.value,
        "combine_rule": p.combine_rule.value if p.combine_rule else None,
    }


def outcome_doc(o: InterpretationOutcome) -> Dict[str, Any]:
    return {
        "sum_reading": amount_doc(o.sum_reading),
        "joint_reading": amount_doc(o.joint_reading),
        "delta": amount_doc(o.delta),
        "diverges": o.diverges,
    }


def dumps(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def usd(x) -> str:
    if isinstance(x, Fraction):
        x = round_dollars(x)
    sign = "-" if x < 0 else ""
    return f"{sign}${abs(x):,}"


def _csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _just(cell: str, width: int) -> str:
    numeric = cell[:1].isdigit() or cell[:1] in "$-"
    return cell.rjust(width) if numeric else cell.ljust(width)


def _table(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    rows = [[str(c) for c in r] for r in rows]
    widths = [len(h) for h in header]
    for r in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, r)]
    lines = [" | ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("-+-".join("-" * w for w in widths))
    for r in rows:
        lines.append(" | ".join(_just(c, w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _spouse_short(t: SpouseTimeline) -> str:
    prior = "never" if t.since_prior_exclusion is None else t.since_prior_exclusion
    reason = "yes" if t.qualifying_reason else "no"
    return f"own={t.ownership} use={t.use} prior={prior} reason={reason}"


# -- evaluation --------------------------------------------------------------


def evaluation_doc(c: CoupleFacts, p: StatuteParams, o: InterpretationOutcome) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "evaluation",
        "params": params_doc(p),
        "facts": facts_doc(c),
        "outcome": outcome_doc(o),
    }


def render_evaluation(c: CoupleFacts, p: StatuteParams, o: InterpretationOutcome, fmt: str) -> str:
    if fmt == "json":
        return dumps(evaluation_doc(c, p, o))
    verdict = "divergence" if o.diverges else "consistent"
    if fmt == "csv":
        return _csv(
            ["sum_reading", "joint_reading", "delta", "verdict"],
            [[round_dollars(o.sum_reading), round_dollars(o.joint_reading), round_dollars(o.delta), verdict]],
        )
    head = (
        f"A: {_spouse_short(c.spouse_a)}\n"
        f"B: {_spouse_short(c.spouse_b)}\n"
        f"unit={p.time_unit.value} mode={p.numerator_mode.value}\n"
    )
    return head + _table(
        ["sum_reading", "joint_reading", "delta", "verdict"],
        [[usd(o.sum_reading), usd(o.joint_reading), usd(o.delta), verdict]],
    )


# -- sweep -------------------------------------------------------------------

SWEEP_HEADER = ["P", "SumA", "min_six", "min_three_joint", "held_b2A_months"]


def sweep_doc(rows, p: StatuteParams) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "sweep",
        "params": params_doc(p),
        "rows": [
            {
                "p": r.p,
                "sum_a": amount_doc(r.sum_a),
                "min_six": amount_doc(r.min_six),
                "min_three_joint": amount_doc(r.min_three_joint),
                "held_b2A_months": amount_doc(r.held_b2A),
                "diverges": r.diverges,
            }
            for r in rows
        ],
    }


def render_sweep(rows, p: StatuteParams, fmt: str) -> str:
    if fmt == "json":
        return dumps(sweep_doc(rows, p))
    cells = [[r.p, r.sum_a, r.min_six, r.min_three_joint, r.held_b2A] for r in rows]
    if fmt == "csv":
        return _csv(SWEEP_HEADER, [[r[0]] + [round_dollars(x) for x in r[1:]] for r in cells])
    return _table(SWEEP_HEADER, [[r[0]] + [usd(x) for x in r[1:]] for r in cells])


# -- search ------------------------------------------------------------------


def witness_line(w) -> str:
    o = w.outcome
    return (
        f"A: {_spouse_short(w.facts.spouse_a)} | B: {_spouse_short(w.facts.spouse_b)}"
        f" | sum={usd(o.sum_reading)} joint={usd(o.joint_reading)}"
    )


def search_doc(witnesses, p: StatuteParams) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "search",
        "params": params_doc(p),
        "witnesses": [{"facts": facts_doc(w.facts), "outcome": outcome_doc(w.outcome)} for w in witnesses],
    }


def render_search(witnesses, p: StatuteParams, fmt: str) -> str:
    if fmt == "json":
        return dumps(search_doc(witnesses, p))
    if fmt == "csv":
        header = ["own_a", "use_a", "prior_a", "reason_a", "own_b", "use_b", "prior_b", "reason_b", "sum_reading", "joint_reading"]
        rows = []
        for w in witnesses:
            a, b = w.facts.spouse_a, w.facts.spouse_b
            rows.append([
                a.ownership, a.use, a.since_prior_exclusion, int(a.qualifying_reason),
                b.ownership, b.use, b.since_prior_exclusion, int(b.qualifying_reason),
                round_dollars(w.outcome.sum_reading), round_dollars(w.outcome.joint_reading),
            ])
        return _csv(header, rows)
    if not witnesses:
        return "no divergent fact pattern in domain\n"
    return "".join(witness_line(w) + "\n" for w in witnesses)


# -- grid --------------------------------------------------------------------


def grid_doc(cells) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "grid",
        "cells": [
            {
                "unit": c.unit.value,
                "rule": c.rule.value,
                "sum_reading": amount_doc(c.sum_reading),
                "joint_reading": amount_doc(c.joint_reading),
                "converged": c.converged,
            }
            for c in cells
        ],
    }


def render_grid(cells, fmt: str) -> str:
    if fmt == "json":
        return dumps(grid_doc(cells))
    status = lambda c: "converge" if c.converged else "diverge"  # noqa: E731
    if fmt == "csv":
        return _csv(
            ["unit", "rule", "sum_reading", "joint_reading", "status"],
            [[c.unit.value, c.rule.value, round_dollars(c.sum_reading), round_dollars(c.joint_reading), status(c)] for c in cells],
        )
    return _table(
        ["unit", "rule", "sum_reading", "joint_reading", "status"],
        [[c.unit.value, c.rule.value, usd(c.sum_reading), usd(c.joint_reading), status(c)] for c in cells],
    )


# -- runner reports ----------------------------------------------------------


def _value_doc(v: Any) -> Any:
    if isinstance(v, Fraction):
        return amount_doc(v)
    return v


def case_doc(case) -> Dict[str, Any]:
    return {
        "label": case.label,
        "facts": facts_doc(case.facts) if case.facts is not None else None,
        "expected": {k: _value_doc(v) for k, v in case.expected},
        "actual": {k: _value_doc(v) for k, v in case.actual},
        "passed": case.passed,
        "detail": case.detail,
    }


def runner_doc(report) -> Dict[str, Any]:
    return {
        "runner": report.runner_name,
        "overall": "pass" if report.overall else "fail",
        "cases": [case_doc(c) for c in report.cases],
    }


def validate_doc(reports, determinism: Optional[bool], runs: int) -> Dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "validation",
        "runs": runs,
        "determinism": "skipped" if determinism is None else ("pass" if determinism else "fail"),
        "runners": [runner_doc(r) for r in reports],
    }


def render_validation(reports, determinism: Optional[bool], runs: int, fmt: str) -> str:
    if fmt == "json":
        return dumps(validate_doc(reports, determinism, runs))
    rows: List[List[Any]] = []
    for r in reports:
        for c in r.cases:
            rows.append([r.runner_name, c.label, "pass" if c.passed else "FAIL", c.detail])
    det = "skipped (runs < 2)" if determinism is None else ("pass" if determinism else "FAIL")
    if fmt == "csv":
        return _csv(["runner", "case", "status", "detail"], rows + [["determinism_check", f"runs={runs}", det, ""]])
    return _table(["runner", "case", "status", "detail"], rows) + f"determinism_check ({runs} runs): {det}\n"
