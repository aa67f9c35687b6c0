"""Dual-reading evaluator for the section 121 home-sale exclusion on joint returns."""

from .engine import (
    InterpretationOutcome,
    apply_gain_cap,
    combined_numerator,
    evaluate,
    individual_limitation,
    joint_cap_exclusion,
    joint_fully_qualifies,
    joint_numerator,
    sum_of_limitations,
)
from .search import (
    DivergenceWitness,
    DomainTooLarge,
    GridCell,
    SearchDomain,
    SweepRow,
    Variable,
    bounded_search,
    cross_validation_grid,
    find_inconsistency_zone,
    sweep_prior_exclusion,
    table3_facts,
)
from .statute import (
    BASE_LIMIT,
    JOINT_LIMIT,
    CombineRule,
    CoupleFacts,
    ExactAmount,
    NumeratorMode,
    SpouseTimeline,
    StatuteParams,
    TimeUnit,
    format_exact,
    meets_time_test,
    proration_ratio,
    round_dollars,
    shortest_of_three,
)
from .validation import (
    RunnerReport,
    determinism_check,
    run_all_validation_tests,
    run_case_no_inconsistency,
    run_case_with_inconsistency,
    run_joint_prior_table,
)

__version__ = "0.1.0"
