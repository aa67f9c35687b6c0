"""Sweeps, bounded fact-pattern search and the unit x rule cross-validation grid."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .engine import InterpretationOutcome, evaluate, joint_cap_exclusion, sum_of_limitations
from .statute import (
    CombineRule,
    CoupleFacts,
    NumeratorMode,
    SpouseTimeline,
    StatuteParams,
    TimeUnit,
    shortest_of_three,
)

Range = Tuple[int, int]

DEFAULT_DOMAIN_BOUND = 1_000_000


class Variable(str, Enum):
    """The six searchable periods, in canonical enumeration order."""

    OWN_A = "own_a"
    USE_A = "use_a"
    PRIOR_A = "prior_a"
    OWN_B = "own_b"
    USE_B = "use_b"
    PRIOR_B = "prior_b"


VARIABLES: Tuple[Variable, ...] = tuple(Variable)


class DomainTooLarge(ValueError):
    pass


def _check_range(r: Range, what: str = "range") -> Range:
    lo, hi = int(r[0]), int(r[1])
    if lo > hi:
        raise ValueError(f"empty {what}: {lo}..{hi}")
    return lo, hi


def set_period(c: CoupleFacts, var: Variable, value: int) -> CoupleFacts:
    var = Variable(var)
    field = {"own": "ownership", "use": "use", "prior": "since_prior_exclusion"}[
        var.value.split("_")[0]
    ]
    if var.value.endswith("_a"):
        return CoupleFacts(replace(c.spouse_a, **{field: value}), c.spouse_b)
    return CoupleFacts(c.spouse_a, replace(c.spouse_b, **{field: value}))


# -- prior-exclusion sweep ---------------------------------------------------


def table3_facts(prior: int, span: int = 120) -> CoupleFacts:
    """Spouse A fully qualified; spouse B identical except for the prior-sale period."""
    return CoupleFacts(
        SpouseTimeline(span, span, span, False),
        SpouseTimeline(span, span, prior, True),
    )


@dataclass(frozen=True)
class SweepRow:
    p: int
    sum_a: Fraction
    min_six: Fraction
    min_three_joint: Fraction
    held_b2A: Fraction

    @property
    def joint_columns(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self.min_six, self.min_three_joint, self.held_b2A)

    @property
    def diverges(self) -> bool:
        return any(j != self.sum_a for j in self.joint_columns)


def sweep_prior_exclusion(
    prior_range: Range, p: Optional[StatuteParams] = None
) -> List[SweepRow]:
    p = p or StatuteParams()
    lo, hi = _check_range(prior_range)
    by_mode = {m: p.with_(numerator_mode=m, combine_rule=None) for m in NumeratorMode}
    rows = []
    for prior in range(lo, hi + 1):
        c = table3_facts(prior)
        rows.append(
            SweepRow(
                prior,
                sum_of_limitations(c, p),
                joint_cap_exclusion(c, by_mode[NumeratorMode.MIN_SIX]),
                joint_cap_exclusion(c, by_mode[NumeratorMode.MIN_THREE_JOINT]),
                joint_cap_exclusion(c, by_mode[NumeratorMode.HELD_B2A_MONTHS]),
            )
        )
    return rows


# -- bounded search ----------------------------------------------------------


@dataclass(frozen=True)
class SearchDomain:
    """Inclusive ranges for the six periods plus a reason policy.

    ``reason_policy="fixed"`` uses ``reason_a``/``reason_b`` as given.
    ``reason_policy="failing"`` gives a qualifying reason to every spouse that
    fails its own time test and none to a spouse that passes.
    ``require_failure`` keeps only patterns where at least one spouse fails.
    """

    own_a: Range
    use_a: Range
    prior_a: Range
    own_b: Range
    use_b: Range
    prior_b: Range
    reason_policy: str = "fixed"
    reason_a: bool = False
    reason_b: bool = False
    require_failure: bool = False

    def __post_init__(self) -> None:
        for var in VARIABLES:
            r = _check_range(getattr(self, var.value), f"range for {var.value}")
            if r[0] < 0:
                raise ValueError(f"range for {var.value} must be non-negative")
            object.__setattr__(self, var.value, r)
        if self.reason_policy not in ("fixed", "failing"):
            raise ValueError(f"unknown reason policy {self.reason_policy!r}")

    @property
    def ranges(self) -> Tuple[Range, ...]:
        return tuple(getattr(self, v.value) for v in VARIABLES)

    @property
    def size(self) -> int:
        n = 1
        for lo, hi in self.ranges:
            n *= hi - lo + 1
        return n

    def facts(self, point: Sequence[int], p: StatuteParams) -> CoupleFacts:
        oa, ua, pa, ob, ub, pb = point
        if self.reason_policy == "fixed":
            ra, rb = self.reason_a, self.reason_b
        else:
            T = p.full_test_length
            ra = min(oa, ua, pa) < T
            rb = min(ob, ub, pb) < T
        return CoupleFacts(SpouseTimeline(oa, ua, pa, ra), SpouseTimeline(ob, ub, pb, rb))

    def admits(self, c: CoupleFacts, p: StatuteParams) -> bool:
        if not self.require_failure:
            return True
        T = p.full_test_length
        return shortest_of_three(c.spouse_a, p) < T or shortest_of_three(c.spouse_b, p) < T

    def points(self) -> Iterator[Tuple[int, ...]]:
        return itertools.product(*(range(lo, hi + 1) for lo, hi in self.ranges))


@dataclass(frozen=True)
class DivergenceWitness:
    facts: CoupleFacts
    params: StatuteParams
    outcome: InterpretationOutcome


def _both_qualified(corner: Sequence[int], T: int) -> bool:
    return min(corner[0:3]) >= T and min(corner[3:6]) >= T


def _search_serial(
    d: SearchDomain, p: StatuteParams, limit: int
) -> List[DivergenceWitness]:
    T = p.full_test_length
    ranges = d.ranges
    lows = [lo for lo, _ in ranges]
    # Once both spouses pass every test at the low corner of a box, every point
    # in the box does too (periods only grow), so the box is either all
    # non-divergent (limits add up to the joint limit) or all filtered out.
    box_is_dead = d.require_failure or 2 * p.base_limit == p.joint_limit
    out: List[DivergenceWitness] = []
    prefix: List[int] = []

    def walk(depth: int) -> bool:
        if box_is_dead and _both_qualified(prefix + lows[depth:], T):
            return False
        if depth == len(ranges):
            c = d.facts(prefix, p)
            if d.admits(c, p):
                outcome = evaluate(c, p)
                if outcome.diverges:
                    out.append(DivergenceWitness(c, p, outcome))
                    return len(out) >= limit
            return False
        lo, hi = ranges[depth]
        for v in range(lo, hi + 1):
            prefix.append(v)
            done = walk(depth + 1)
            prefix.pop()
            if done:
                return True
        return False

    walk(0)
    return out


def _search_chunk(args) -> List[DivergenceWitness]:
    return _search_serial(*args)


def bounded_search(
    d: SearchDomain,
    p: Optional[StatuteParams] = None,
    limit: int = 1,
    *,
    max_domain_size: int = DEFAULT_DOMAIN_BOUND,
    override_bound: bool = False,
    workers: int = 1,
) -> List[DivergenceWitness]:
    """First ``limit`` divergent fact patterns in lexicographic variable order.

    With ``workers > 1`` the first variable's range is split across processes;
    chunks are merged in order, so the result equals the serial one.
    """
    p = p or StatuteParams()
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if d.size > max_domain_size and not override_bound:
        raise DomainTooLarge(
            f"domain has {d.size} points, over the safety bound of {max_domain_size}"
        )
    lo, hi = d.own_a
    if workers <= 1 or hi == lo:
        return _search_serial(d, p, limit)
    chunks = [replace(d, own_a=(v, v)) for v in range(lo, hi + 1)]
    out: List[DivergenceWitness] = []
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for found in pool.map(_search_chunk, [(c, p, limit) for c in chunks]):
            out.extend(found)
            if len(out) >= limit:
                break
    return out[:limit]


# -- inconsistency zone ------------------------------------------------------


def find_inconsistency_zone(
    vary: Variable,
    value_range: Range,
    fixed: CoupleFacts,
    p: Optional[StatuteParams] = None,
) -> List[Tuple[int, int]]:
    """Maximal runs of ``vary`` values over which the two readings differ."""
    p = p or StatuteParams()
    lo, hi = _check_range(value_range)
    zones: List[Tuple[int, int]] = []
    start = None
    for v in range(lo, hi + 1):
        if evaluate(set_period(fixed, vary, v), p).diverges:
            if start is None:
                start = v
        elif start is not None:
            zones.append((start, v - 1))
            start = None
    if start is not None:
        zones.append((start, hi))
    return zones


# -- cross-validation grid ---------------------------------------------------


@dataclass(frozen=True)
class GridCell:
    unit: TimeUnit
    rule: CombineRule
    sum_reading: Fraction
    joint_reading: Fraction

    @property
    def converged(self) -> bool:
        return self.sum_reading == self.joint_reading


def cross_validation_grid(
    facts_by_unit: Mapping[TimeUnit, CoupleFacts],
    units: Iterable[TimeUnit] = tuple(TimeUnit),
    rules: Iterable[CombineRule] = tuple(CombineRule),
    base: Optional[StatuteParams] = None,
) -> List[GridCell]:
    """Evaluate both readings for every (unit, rule) pair.

    Facts are never converted between units; each unit needs its own fact set.
    Cells come back in enum order (days, months, years; minimum, maximum, average).
    """
    base = base or StatuteParams()
    units = sorted({TimeUnit(u) for u in units}, key=list(TimeUnit).index)
    rules = sorted({CombineRule(r) for r in rules}, key=list(CombineRule).index)
    facts = {TimeUnit(k): v for k, v in facts_by_unit.items()}
    missing = [u.value for u in units if u not in facts]
    if missing:
        raise KeyError(f"no facts supplied for unit(s): {', '.join(missing)}")
    cells = []
    for unit in units:
        for rule in rules:
            p = base.with_(time_unit=unit, combine_rule=rule)
            o = evaluate(facts[unit], p)
            cells.append(GridCell(unit, rule, o.sum_reading, o.joint_reading))
    return cells
