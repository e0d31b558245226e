"""Bracketing root solvers on a sign-change interval.

Brackets use the canonical orientation ``f(lo) <= 0 <= f(hi)``; callers with a
decreasing function negate it first.  Everything here is pure: functions take a
bracket and return a new one, and evaluation counting is left to the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple


class DegenerateInterpolation(ValueError):
    """Raised when the secant through the bracket endpoints is horizontal."""


@dataclass(frozen=True)
class RootBracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float
    exact: bool = False

    def __post_init__(self):
        if self.exact:
            if self.lo != self.hi:
                raise ValueError("an exact-hit bracket must collapse to a point")
            return
        if not self.lo < self.hi:
            raise ValueError(f"invalid bracket: lo={self.lo!r} >= hi={self.hi!r}")
        # NaN fails both comparisons and is rejected here as well
        if not (self.f_lo <= 0 and self.f_hi >= 0):
            raise ValueError(
                f"bracket values must satisfy f_lo <= 0 <= f_hi, got {self.f_lo!r}, {self.f_hi!r}"
            )

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class ItpParams:
    """Tuning constants of the ITP step.

    ``eps_tol`` is the target half-width; the search stops once the bracket is
    no wider than ``2 * eps_tol``.
    """

    kappa1: float = 0.1
    kappa2: float = 2.0
    n0: float = 0.99
    eps_tol: float = 1e-8

    def __post_init__(self):
        golden = (1 + math.sqrt(5)) / 2
        if not self.kappa1 > 0:
            raise ValueError("kappa1 must be positive")
        if not 1 <= self.kappa2 < 1 + golden:
            raise ValueError("kappa2 must lie in [1, 1 + golden ratio)")
        if not self.n0 >= 0:
            raise ValueError("n0 must be non-negative")
        if not self.eps_tol > 0:
            raise ValueError("eps_tol must be positive")


@dataclass(frozen=True)
class ItpState:
    j: int
    n_half: int
    n_max: float

    @classmethod
    def start(cls, bracket: RootBracket, params: ItpParams) -> ItpState:
        ratio = bracket.width / (2 * params.eps_tol)
        n_half = max(0, math.ceil(math.log2(ratio))) if ratio > 0 else 0
        return cls(j=0, n_half=n_half, n_max=n_half + params.n0)

    def advance(self) -> ItpState:
        return replace(self, j=self.j + 1)


class ItpStep(NamedTuple):
    x_half: float
    x_f: float
    sigma: float
    delta: float
    x_t: float
    r: float
    x_itp: float


def bisect_point(bracket: RootBracket) -> float:
    return (bracket.lo + bracket.hi) / 2


def regula_falsi_point(bracket: RootBracket) -> float:
    lo, hi, f_lo, f_hi = bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi
    if f_lo == f_hi:
        raise DegenerateInterpolation(f"f_lo == f_hi == {f_lo!r}")
    return (hi * f_lo - lo * f_hi) / (f_lo - f_hi)


def itp_step(
    bracket: RootBracket, params: ItpParams, state: ItpState, interpolant: float | None = None
) -> ItpStep:
    """Interpolate, truncate and project; returns every intermediate quantity.

    Falls back to the midpoint as the interpolant when the secant is undefined
    (equal or non-finite endpoint values).  ``interpolant`` replaces the
    regula falsi estimate when the caller has a better model of ``f``.
    """
    width = bracket.width
    x_half = bisect_point(bracket)
    if interpolant is not None:
        x_f = interpolant
    else:
        try:
            x_f = regula_falsi_point(bracket)
        except DegenerateInterpolation:
            x_f = x_half
    if not (math.isfinite(x_f) and bracket.lo <= x_f <= bracket.hi):
        x_f = x_half

    diff = x_half - x_f
    sigma = 0.0 if diff == 0 else math.copysign(1.0, diff)
    delta = params.kappa1 * width**params.kappa2
    x_t = x_f + sigma * delta if delta <= abs(diff) else x_half

    r = params.eps_tol * 2.0 ** (state.n_max - state.j) - width / 2
    if r <= 0:
        # budget exhausted: the minmax interval shrinks to the midpoint
        x_itp = x_half
    elif abs(x_t - x_half) <= r:
        x_itp = x_t
    else:
        x_itp = x_half - sigma * r
    if not bracket.lo < x_itp < bracket.hi:
        # truncation below floating-point resolution landed on an endpoint
        x_itp = x_half
    return ItpStep(x_half, x_f, sigma, delta, x_t, r, x_itp)


def itp_point(
    bracket: RootBracket, params: ItpParams, state: ItpState, interpolant: float | None = None
) -> float:
    return itp_step(bracket, params, state, interpolant).x_itp


def update_bracket(bracket: RootBracket, x: float, fx: float) -> RootBracket:
    """Shrink ``bracket`` with the value ``fx = f(x)`` at an interior point.

    A NaN value is treated as positive (the point is not acceptable).
    """
    if not bracket.lo < x < bracket.hi:
        raise ValueError(f"query {x!r} outside ({bracket.lo!r}, {bracket.hi!r})")
    if fx < 0:
        return replace(bracket, lo=x, f_lo=fx)
    if fx == 0:
        return RootBracket(x, x, 0.0, 0.0, exact=True)
    return replace(bracket, hi=x, f_hi=math.inf if math.isnan(fx) else fx)


def _drive(f, bracket, choose, width_tol, max_queries):
    trace = []
    while bracket.width > width_tol and not bracket.exact and len(trace) < max_queries:
        x = choose(bracket, len(trace))
        fx = f(x)
        trace.append((x, fx))
        bracket = update_bracket(bracket, x, fx)
    return bracket, trace


def bisect(
    f: Callable[[float], float],
    bracket: RootBracket,
    width_tol: float,
    max_queries: int = 2000,
) -> tuple[RootBracket, list[tuple[float, float]]]:
    """Plain bisection until ``hi - lo <= width_tol``; returns the final bracket and the queries."""
    return _drive(f, bracket, lambda b, _: bisect_point(b), width_tol, max_queries)


def itp(
    f: Callable[[float], float],
    bracket: RootBracket,
    params: ItpParams = ItpParams(),
    max_queries: int = 2000,
) -> tuple[RootBracket, list[tuple[float, float]]]:
    """ITP search until ``hi - lo <= 2 * params.eps_tol``."""
    state0 = ItpState.start(bracket, params)

    def choose(b, j):
        return itp_point(b, params, replace(state0, j=j))

    return _drive(f, bracket, choose, 2 * params.eps_tol, max_queries)
