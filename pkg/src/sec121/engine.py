"""The two competing couple-level readings and their comparison.

``sum_of_limitations`` adds each spouse's own limitation (full, prorated, or
zero).  ``joint_cap_exclusion`` applies one joint limitation, reduced by a
single couple-level numerator when the joint requirements are not met.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .statute import (
    CombineRule,
    CoupleFacts,
    NumeratorMode,
    SpouseTimeline,
    StatuteParams,
    meets_time_test,
    proration_ratio,
    shortest_of_three,
    to_amount,
)


@dataclass(frozen=True)
class InterpretationOutcome:
    sum_reading: Fraction
    joint_reading: Fraction

    @property
    def delta(self) -> Fraction:
        return self.sum_reading - self.joint_reading

    @property
    def diverges(self) -> bool:
        return self.sum_reading != self.joint_reading


def individual_limitation(t: SpouseTimeline, p: StatuteParams) -> Fraction:
    """One spouse's limitation computed on a separate basis.

    Proration only applies when the time test fails and a qualifying reason
    exists; failing without a reason yields zero.
    """
    if meets_time_test(shortest_of_three(t, p), p):
        return p.base_limit
    if t.qualifying_reason:
        return p.base_limit * proration_ratio(t, p)
    return Fraction(0)


def sum_of_limitations(c: CoupleFacts, p: StatuteParams) -> Fraction:
    return individual_limitation(c.spouse_a, p) + individual_limitation(c.spouse_b, p)


def _periods(c: CoupleFacts, p: StatuteParams):
    T = p.full_test_length
    a, b = c.spouse_a, c.spouse_b
    return (
        (a.ownership, b.ownership),
        (a.use, b.use),
        (a.prior_or(T), b.prior_or(T)),
    )


def joint_numerator(c: CoupleFacts, p: StatuteParams) -> int:
    """Couple-level proration numerator under ``p.numerator_mode``, capped at the test length."""
    T = p.full_test_length
    own, use, prior = _periods(c, p)
    mode = p.numerator_mode
    if mode is NumeratorMode.MIN_SIX:
        n = min(*own, *use, *prior)
    elif mode is NumeratorMode.MIN_THREE_JOINT:
        n = min(max(own), min(use), min(prior))
    elif mode is NumeratorMode.HELD_B2A_MONTHS:
        # ownership gate: at least one spouse meets the ownership test
        n = min(min(use), min(prior)) if max(own) >= T else 0
    else:  # pragma: no cover
        raise ValueError(f"unknown numerator mode {mode!r}")
    return min(n, T)


def combined_numerator(c: CoupleFacts, p: StatuteParams, rule: CombineRule) -> Fraction:
    """Numerator from combining each period pairwise, spouses capped first.

    The couple numerator is the smallest of the three combined periods.
    """
    T = p.full_test_length
    combined = []
    for x, y in _periods(c, p):
        x, y = min(x, T), min(y, T)
        if rule is CombineRule.MINIMUM:
            combined.append(Fraction(min(x, y)))
        elif rule is CombineRule.MAXIMUM:
            combined.append(Fraction(max(x, y)))
        elif rule is CombineRule.AVERAGE:
            combined.append(Fraction(x + y, 2))
        else:  # pragma: no cover
            raise ValueError(f"unknown combine rule {rule!r}")
    return min(combined)


def joint_fully_qualifies(c: CoupleFacts, p: StatuteParams) -> bool:
    """Either spouse owns long enough, both use long enough, both pass the prior-sale test."""
    T = p.full_test_length
    a, b = c.spouse_a, c.spouse_b
    return (
        max(a.ownership, b.ownership) >= T
        and min(a.use, b.use) >= T
        and min(a.prior_or(T), b.prior_or(T)) >= T
    )


def joint_cap_exclusion(c: CoupleFacts, p: StatuteParams) -> Fraction:
    """Joint limitation, reduced when the couple fails the joint requirements.

    When ``p.combine_rule`` is set the numerator comes from
    :func:`combined_numerator` instead of ``p.numerator_mode``.
    """
    if joint_fully_qualifies(c, p):
        return p.joint_limit
    if not (c.spouse_a.qualifying_reason or c.spouse_b.qualifying_reason):
        return Fraction(0)
    T = p.full_test_length
    if p.combine_rule is not None:
        n = combined_numerator(c, p, p.combine_rule)
    else:
        n = joint_numerator(c, p)
    return p.joint_limit * min(n, T) / T


def evaluate(c: CoupleFacts, p: StatuteParams) -> InterpretationOutcome:
    return InterpretationOutcome(sum_of_limitations(c, p), joint_cap_exclusion(c, p))


def apply_gain_cap(
    limit: Union[int, str, Fraction], realized_gain: Union[int, str, Fraction]
) -> Fraction:
    """The excluded amount: the limitation, but never more than the realized gain."""
    limit, realized_gain = to_amount(limit), to_amount(realized_gain)
    if realized_gain < 0:
        raise ValueError(f"realized gain must be non-negative, got {realized_gain}")
    return min(limit, realized_gain)
