"""Domain types and time tests for the section 121 home-sale exclusion.

Periods are plain non-negative integer counts in one time unit. Money is an
exact :class:`fractions.Fraction` of dollars; rounding to whole dollars only
happens when a value is rendered (see :func:`round_dollars`).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

ExactAmount = Fraction

BASE_LIMIT = Fraction(250_000)
JOINT_LIMIT = Fraction(500_000)


class TimeUnit(str, Enum):
    DAYS = "days"
    MONTHS = "months"
    YEARS = "years"

    @property
    def full_test_length(self) -> int:
        """The two-year test expressed in this unit."""
        return _FULL_TEST[self]


_FULL_TEST = {TimeUnit.DAYS: 730, TimeUnit.MONTHS: 24, TimeUnit.YEARS: 2}


class NumeratorMode(str, Enum):
    MIN_SIX = "min_six"
    MIN_THREE_JOINT = "min_three_joint"
    HELD_B2A_MONTHS = "held_b2A_months"


class CombineRule(str, Enum):
    MINIMUM = "minimum"
    MAXIMUM = "maximum"
    AVERAGE = "average"


def to_amount(value: Union[int, str, Fraction]) -> Fraction:
    """Coerce an int, a ``"n/d"``/decimal string or a Fraction to an exact amount.

    Floats are rejected: they cannot carry an exact dollar value.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"exact amount required, got {type(value).__name__}")
    return Fraction(value)


def round_dollars(amount: Fraction) -> int:
    """Round to the nearest whole dollar, halves away from zero."""
    sign = -1 if amount < 0 else 1
    mag = abs(amount)
    whole, rem = divmod(mag.numerator, mag.denominator)
    if 2 * rem >= mag.denominator:
        whole += 1
    return sign * whole


def format_exact(amount: Fraction) -> str:
    return f"{amount.numerator}/{amount.denominator}"


def _check_period(name: str, value: Optional[int]) -> None:
    if value is None:
        return
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an integer count, got {value!r}")
    if value < 0:
        raise ValueError(f"{name} must be >= 0, got {value}")


@dataclass(frozen=True)
class SpouseTimeline:
    """One spouse's qualifying periods, all in the same time unit.

    ``since_prior_exclusion=None`` means the spouse never claimed an exclusion.
    """

    ownership: int
    use: int
    since_prior_exclusion: Optional[int] = None
    qualifying_reason: bool = False

    def __post_init__(self) -> None:
        _check_period("ownership", self.ownership)
        _check_period("use", self.use)
        _check_period("since_prior_exclusion", self.since_prior_exclusion)

    def prior_or(self, full_test_length: int) -> int:
        if self.since_prior_exclusion is None:
            return full_test_length
        return self.since_prior_exclusion


@dataclass(frozen=True)
class CoupleFacts:
    spouse_a: SpouseTimeline
    spouse_b: SpouseTimeline

    def swapped(self) -> "CoupleFacts":
        return CoupleFacts(self.spouse_b, self.spouse_a)


@dataclass(frozen=True)
class StatuteParams:
    time_unit: TimeUnit = TimeUnit.MONTHS
    full_test_length: Optional[int] = None
    base_limit: Fraction = BASE_LIMIT
    joint_limit: Fraction = JOINT_LIMIT
    numerator_mode: NumeratorMode = NumeratorMode.MIN_SIX
    combine_rule: Optional[CombineRule] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "time_unit", TimeUnit(self.time_unit))
        object.__setattr__(self, "numerator_mode", NumeratorMode(self.numerator_mode))
        if self.combine_rule is not None:
            object.__setattr__(self, "combine_rule", CombineRule(self.combine_rule))
        if self.full_test_length is None:
            object.__setattr__(self, "full_test_length", self.time_unit.full_test_length)
        _check_period("full_test_length", self.full_test_length)
        if self.full_test_length <= 0:
            raise ValueError("full_test_length must be positive")
        object.__setattr__(self, "base_limit", to_amount(self.base_limit))
        object.__setattr__(self, "joint_limit", to_amount(self.joint_limit))
        if self.base_limit < 0 or self.joint_limit < 0:
            raise ValueError("dollar limits must be non-negative")

    def with_(self, **changes) -> "StatuteParams":
        if "time_unit" in changes and "full_test_length" not in changes:
            changes["full_test_length"] = None
        return replace(self, **changes)


def shortest_of_three(t: SpouseTimeline, p: StatuteParams) -> int:
    """Shortest of ownership, use and time since the last exclusion (uncapped)."""
    return min(t.ownership, t.use, t.prior_or(p.full_test_length))


def meets_time_test(period: int, p: StatuteParams) -> bool:
    return period >= p.full_test_length


def proration_ratio(t: SpouseTimeline, p: StatuteParams) -> Fraction:
    T = p.full_test_length
    return Fraction(min(shortest_of_three(t, p), T), T)
