"""Inexact line search: backtracking and bracketing-based fast-tracking.

A line-search problem asks for a step ``x`` in ``(0, x0]`` with ``g(x) <= 0``,
where ``g(x) <= 0`` holds exactly for ``x <= x_star`` and ``x_star`` is unknown.
The returned step should stay within a factor ``beta`` of ``x_star`` and the
caller promises ``x_star > epsilon``.

Backtracking walks ``x0, x0*beta, x0*beta**2, ...``.  Fast-tracking keeps a
bracket ``[a, b]`` around ``x_star`` and shrinks it until ``a > beta*b``, which
is a binary search on the logarithmic scale and needs exponentially fewer
evaluations in the worst case.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable

from .rootfind import ItpParams, ItpState, RootBracket, itp_point, update_bracket


class Status(str, enum.Enum):
    ACCEPTED = "accepted"
    EXACT_HIT = "exact_hit"
    CONDITION2_VIOLATED = "condition2_violated"
    EVAL_BUDGET_EXCEEDED = "eval_budget_exceeded"


@dataclass(frozen=True)
class TurningPointProblem:
    g: Callable[[float], float]
    x0: float = 1.0
    beta: float = 0.8
    epsilon: float = 1e-10
    max_evals: int | None = None

    def __post_init__(self):
        if not 0 < self.beta < 1:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta!r}")
        if not 0 < self.epsilon < self.x0:
            raise ValueError(f"need 0 < epsilon < x0, got {self.epsilon!r}, {self.x0!r}")
        if self.max_evals is None:
            object.__setattr__(self, "max_evals", backtrack_bound(self) + 8)
        elif self.max_evals < 1:
            raise ValueError("max_evals must be positive")


@dataclass
class SearchOutcome:
    x_hat: float
    loop_evals: int
    total_evals: int
    trace: list[tuple[float, float]]
    status: Status

    @property
    def ok(self) -> bool:
        return self.status in (Status.ACCEPTED, Status.EXACT_HIT)


@dataclass(frozen=True)
class ChoiceRule:
    """Query-point rule for :func:`fasttrack`.

    For ``itp_log`` the midpoint, truncation and projection always live in
    normalized log coordinates.  ``interpolation`` picks the secant feeding the
    interpolation step: ``"linear"`` takes the secant root of ``g`` on the step
    scale, ``"log"`` the secant of ``g(2**X)`` on the log scale, ``"quotient"``
    the secant root of ``g(x)/x``.
    """

    tag: str
    itp: ItpParams = field(default_factory=ItpParams)
    interpolation: str = "linear"

    def __post_init__(self):
        if self.tag not in ("geometric_bisection", "itp_log"):
            raise ValueError(f"unknown choice rule {self.tag!r}")
        if self.interpolation not in INTERPOLATIONS:
            raise ValueError(f"unknown interpolation {self.interpolation!r}")


INTERPOLATIONS = ("log", "linear", "quotient")

GEOMETRIC = ChoiceRule("geometric_bisection")
ITP_LOG = ChoiceRule("itp_log")


def geometric_point(a: float, b: float) -> float:
    return math.sqrt(a * b)


def backtrack_bound(problem: TurningPointProblem) -> int:
    """Worst-case backtracking iterations, ``ceil(log_beta(epsilon/x0))``."""
    return math.ceil(math.log(problem.epsilon / problem.x0) / math.log(problem.beta))


def fasttrack_bound(problem: TurningPointProblem) -> int:
    """Worst-case geometric-bisection iterations, ``ceil(log2(log_beta(epsilon/x0)))``."""
    n = math.log(problem.epsilon / problem.x0) / math.log(problem.beta)
    return max(0, math.ceil(math.log2(n)))


def validate_conditions(outcome: SearchOutcome, x_star: float, beta: float) -> bool:
    return beta * x_star < outcome.x_hat <= x_star


def backtrack(problem: TurningPointProblem) -> SearchOutcome:
    g, beta = problem.g, problem.beta
    trace = []
    x = problem.x0
    while True:
        gx = g(x)
        trace.append((x, gx))
        if gx <= 0:
            status = Status.ACCEPTED
            break
        if len(trace) >= problem.max_evals:
            status = Status.EVAL_BUDGET_EXCEEDED
            break
        x *= beta
    return SearchOutcome(x, len(trace), len(trace), trace, status)


class _LogScale:
    """Affine map between steps ``x`` and normalized log coordinates in [0, 1]."""

    def __init__(self, epsilon, x0):
        self.base = math.log2(epsilon)
        self.span = math.log2(x0) - self.base
        self.epsilon, self.x0 = epsilon, x0

    def to_unit(self, x):
        return (math.log2(x) - self.base) / self.span

    def from_unit(self, u):
        if u <= 0:
            return self.epsilon
        if u >= 1:
            return self.x0
        return 2.0 ** (self.base + u * self.span)


def _bracket_value(gx):
    # the bracket orientation needs signed, comparable values
    return math.inf if math.isnan(gx) else gx


def _secant_root(a, ga, b, gb):
    if ga == gb:
        return None
    x = (b * ga - a * gb) / (ga - gb)
    return x if math.isfinite(x) and a <= x <= b else None


def _interpolant(mode, scale, a, ga, b, gb):
    if mode == "log":
        return None
    if mode == "quotient":
        ga, gb = ga / a, gb / b
    x = _secant_root(a, ga, b, gb)
    return None if x is None else scale.to_unit(x)


def fasttrack(problem: TurningPointProblem, rule: ChoiceRule = GEOMETRIC) -> SearchOutcome:
    """Bracketing line search; ``rule`` picks the interior query point.

    ``g(x0)`` is checked first and ``x0`` returned when acceptable.  That check,
    and any endpoint evaluation at ``epsilon``, count toward ``total_evals`` but
    not ``loop_evals``.  The ITP rule needs ``g(epsilon)`` up front for its
    interpolation; the geometric rule only evaluates it if no query ever
    raised the lower end of the bracket.
    """
    g, beta, eps, x0 = problem.g, problem.beta, problem.epsilon, problem.x0
    trace = []
    loop = 0

    def evaluate(x):
        gx = g(x)
        trace.append((x, gx))
        return gx

    def outcome(x_hat, status):
        return SearchOutcome(x_hat, loop, len(trace), trace, status)

    g_x0 = evaluate(x0)
    if g_x0 <= 0:
        return outcome(x0, Status.ACCEPTED)

    itp = rule.tag == "itp_log"
    g_eps = None
    if itp:
        g_eps = evaluate(eps)
        if not g_eps <= 0:
            return outcome(eps, Status.CONDITION2_VIOLATED)
        scale = _LogScale(eps, x0)
        params = replace(rule.itp, eps_tol=-math.log2(beta) / (2 * scale.span))
        bracket = RootBracket(0.0, 1.0, g_eps, _bracket_value(g_x0))
        state = ItpState.start(bracket, params)

    a, b = eps, x0
    g_a, g_b = g_eps, g_x0
    raised = False
    while a <= beta * b:
        if len(trace) >= problem.max_evals:
            return outcome(a, Status.EVAL_BUDGET_EXCEEDED)
        if itp:
            hint = _interpolant(rule.interpolation, scale, a, g_a, b, g_b)
            u = itp_point(bracket, params, state, hint)
            x = scale.from_unit(u)
        else:
            x = geometric_point(a, b)
        if not a < x < b:
            # bracket narrower than floating-point resolution
            break
        gx = evaluate(x)
        loop += 1
        if gx == 0:
            return outcome(x, Status.EXACT_HIT)
        if gx < 0:
            a, g_a, raised = x, gx, True
        else:
            b, g_b = x, _bracket_value(gx)
        if itp:
            bracket = update_bracket(bracket, u, _bracket_value(gx))
            state = state.advance()

    if raised:
        return outcome(a, Status.ACCEPTED)
    if g_eps is None:
        if len(trace) >= problem.max_evals:
            return outcome(eps, Status.EVAL_BUDGET_EXCEEDED)
        g_eps = evaluate(eps)
    if g_eps <= 0:
        return outcome(eps, Status.ACCEPTED)
    return outcome(eps, Status.CONDITION2_VIOLATED)


SEARCHERS = {
    "backtrack": backtrack,
    "fasttrack_geometric": lambda p: fasttrack(p, GEOMETRIC),
    "fasttrack_itp": lambda p: fasttrack(p, ITP_LOG),
}


def searcher(name: str) -> Callable[[TurningPointProblem], SearchOutcome]:
    try:
        return SEARCHERS[name]
    except KeyError:
        raise ValueError(f"unknown searcher {name!r}; choose from {sorted(SEARCHERS)}") from None
