import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fasttrack.rootfind import (
    DegenerateInterpolation,
    ItpParams,
    ItpState,
    RootBracket,
    bisect,
    bisect_point,
    itp,
    itp_point,
    itp_step,
    regula_falsi_point,
    update_bracket,
)


def reference_root(f, lo, hi):
    """Bisection to 1e-15 width, written independently of the library."""
    while hi - lo > 1e-15:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if f(mid) <= 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


# increasing functions with a single sign change at r, on [-1, 1]
FAMILY = {
    "affine": lambda r, k: lambda x: k * (x - r),
    "cubic": lambda r, k: lambda x: (x - r) ** 3 + k * 1e-3 * (x - r),
    "exp": lambda r, k: lambda x: math.expm1(k * (x - r)),
    "tanh": lambda r, k: lambda x: math.tanh(5 * k * (x - r)),
    "kinked": lambda r, k: lambda x: (x - r) if x < r else k * 50 * (x - r),
    "flat_left": lambda r, k: lambda x: max(x - r, 0.0) ** 2 - (1e-9 if x < r else 0.0),
}


@pytest.mark.parametrize(
    "lo, hi, expected",
    [(-4.0, 0.0, -2.0), (0.0, 1.0, 0.5), (-3.3219, 0.0, -1.66095)],
)
def test_bisect_point(lo, hi, expected):
    assert bisect_point(RootBracket(lo, hi, -1.0, 1.0)) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize(
    "lo, hi, f_lo, f_hi, expected",
    [(-1.0, 1.0, -0.8, 1.2, -0.2), (-1.0, 1.0, -1.0, 1.0, 0.0), (0.0, 2.0, -1.0, 3.0, 0.5)],
)
def test_regula_falsi_point(lo, hi, f_lo, f_hi, expected):
    assert regula_falsi_point(RootBracket(lo, hi, f_lo, f_hi)) == pytest.approx(expected, abs=1e-15)


def test_regula_falsi_degenerate():
    with pytest.raises(DegenerateInterpolation):
        regula_falsi_point(RootBracket(0.0, 1.0, 0.0, 0.0))


def test_bracket_rejects_bad_orientation():
    with pytest.raises(ValueError):
        RootBracket(0.0, 1.0, 1.0, 2.0)
    with pytest.raises(ValueError):
        RootBracket(1.0, 0.0, -1.0, 1.0)


def test_itp_params_defaults_and_validation():
    p = ItpParams()
    assert (p.kappa1, p.kappa2, p.n0) == (0.1, 2.0, 0.99)
    for bad in ({"kappa1": 0.0}, {"kappa2": 0.5}, {"kappa2": 2.7}, {"n0": -0.1}, {"eps_tol": 0.0}):
        with pytest.raises(ValueError):
            ItpParams(**bad)


def test_itp_worked_example():
    bracket = RootBracket(-1.0, 1.0, -0.8, 1.2)
    params = ItpParams(eps_tol=0.01)
    state = ItpState.start(bracket, params)
    assert state.n_half == 7
    assert state.n_max == pytest.approx(7.99)
    step = itp_step(bracket, params, state)
    assert step.x_f == pytest.approx(-0.2)
    assert step.x_half == 0.0
    assert step.sigma == 1.0
    assert step.delta == pytest.approx(0.4)
    # delta > |x_half - x_f| so truncation falls back to the midpoint
    assert step.x_t == 0.0
    assert step.r == pytest.approx(0.01 * 2**7.99 - 1)
    assert step.r == pytest.approx(1.542, abs=1e-3)
    assert step.x_itp == 0.0


def test_itp_antisymmetric_values_give_midpoint():
    bracket = RootBracket(-0.25, 0.75, -2.5, 2.5)
    params = ItpParams(eps_tol=1e-3)
    step = itp_step(bracket, params, ItpState.start(bracket, params))
    assert step.sigma == 0.0
    assert step.x_itp == 0.25


def test_itp_truncation_and_budget_exhaustion():
    bracket = RootBracket(-1.0, 1.0, -0.2, 1.8)
    params = ItpParams(eps_tol=0.01)
    state = ItpState.start(bracket, params)
    step = itp_step(bracket, params, state)
    # x_f = -0.8, delta = 0.4 <= 0.8: truncated toward the midpoint
    assert step.x_f == pytest.approx(-0.8)
    assert step.x_t == pytest.approx(-0.4)
    assert step.x_itp == pytest.approx(-0.4)

    exhausted = ItpState(j=math.ceil(state.n_max), n_half=state.n_half, n_max=state.n_max)
    step = itp_step(bracket, params, exhausted)
    assert step.r <= 0
    assert step.x_itp == 0.0


def test_itp_projection_clamps_to_minmax_interval():
    bracket = RootBracket(0.0, 1.0, -1e-6, 1.0)
    params = ItpParams(eps_tol=1 / 128)
    # budget chosen so that 0 < r < |x_t - x_half|
    state = ItpState(j=0, n_half=6, n_max=6.5)
    step = itp_step(bracket, params, state)
    assert 0 < step.r < abs(step.x_t - step.x_half)
    assert step.x_itp == pytest.approx(step.x_half - step.sigma * step.r)


@pytest.mark.parametrize(
    "fx, expected",
    [(-0.3, (-2.0, 0.0)), (0.3, (-4.0, -2.0))],
)
def test_update_bracket(fx, expected):
    b = update_bracket(RootBracket(-4.0, 0.0, -1.0, 1.0), -2.0, fx)
    assert (b.lo, b.hi) == expected
    assert not b.exact


def test_update_bracket_exact_hit():
    b = update_bracket(RootBracket(-4.0, 0.0, -1.0, 1.0), -2.0, 0.0)
    assert b.exact and b.lo == b.hi == -2.0


def test_update_bracket_rejects_outside_query():
    with pytest.raises(ValueError):
        update_bracket(RootBracket(-4.0, 0.0, -1.0, 1.0), 0.0, 1.0)


monotone_cases = st.tuples(
    st.sampled_from(sorted(FAMILY)),
    st.floats(-0.95, 0.95),
    st.floats(0.1, 10.0),
)


@settings(max_examples=300, deadline=None)
@given(monotone_cases, st.booleans())
def test_nesting_and_sign_preservation(case, use_itp):
    name, r, k = case
    f = FAMILY[name](r, k)
    ref_lo, ref_hi = reference_root(f, -1.0, 1.0)
    bracket = RootBracket(-1.0, 1.0, f(-1.0), f(1.0))
    params = ItpParams(eps_tol=1e-9)
    state = ItpState.start(bracket, params)
    for _ in range(200):
        if bracket.exact or bracket.width <= 2e-9:
            break
        x = itp_point(bracket, params, state) if use_itp else bisect_point(bracket)
        assert bracket.lo < x < bracket.hi
        new = update_bracket(bracket, x, f(x))
        assert new.lo >= bracket.lo and new.hi <= bracket.hi and new.lo <= new.hi
        assert new.f_lo <= 0 <= new.f_hi
        bracket, state = new, state.advance()
        assert bracket.lo <= ref_hi + 1e-15 and ref_lo - 1e-15 <= bracket.hi


@settings(max_examples=300, deadline=None)
@given(monotone_cases, st.floats(1e-12, 1e-2))
def test_itp_minmax_budget(case, eps_tol):
    name, r, k = case
    r *= 0.5
    f = FAMILY[name](r, k)
    params = ItpParams(eps_tol=eps_tol)
    bracket = RootBracket(-0.5, 0.5, f(-0.5), f(0.5))
    state = ItpState.start(bracket, params)
    final, trace = itp(f, bracket, params)
    assert len(trace) <= state.n_half + math.ceil(params.n0)
    assert final.exact or final.width <= 2 * eps_tol


def test_bisect_halving_to_ulp():
    f = lambda x: x - 0.123456789
    bracket = RootBracket(-3.0, 5.0, f(-3.0), f(5.0))
    width0 = bracket.width
    for n in range(1, 40):
        bracket = update_bracket(bracket, bisect_point(bracket), f(bisect_point(bracket)))
        expected = width0 / 2**n
        assert abs(bracket.width - expected) <= 4 * np.spacing(max(abs(bracket.lo), abs(bracket.hi)))


def test_bisect_driver_reaches_width():
    f = lambda x: x**3 - 0.2
    final, trace = bisect(f, RootBracket(0.0, 1.0, f(0.0), f(1.0)), 1e-6)
    assert final.width <= 1e-6
    assert len(trace) == math.ceil(math.log2(1e6))
    assert final.lo <= 0.2 ** (1 / 3) <= final.hi
