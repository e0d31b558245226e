"""Inexact line search by bracketing on the logarithmic scale."""

from .linesearch import (
    GEOMETRIC,
    ITP_LOG,
    ChoiceRule,
    SearchOutcome,
    Status,
    TurningPointProblem,
    backtrack,
    backtrack_bound,
    fasttrack,
    fasttrack_bound,
    geometric_point,
    validate_conditions,
)

__all__ = [
    "GEOMETRIC",
    "ITP_LOG",
    "ChoiceRule",
    "SearchOutcome",
    "Status",
    "TurningPointProblem",
    "backtrack",
    "backtrack_bound",
    "fasttrack",
    "fasttrack_bound",
    "geometric_point",
    "validate_conditions",
]
