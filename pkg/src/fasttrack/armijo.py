"""Armijo residuals, a normalized-direction gradient descent driver and a
ten-function test suite in dimension 10."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .linesearch import SearchOutcome, Status, TurningPointProblem, searcher

DIM = 10
GRAD_TOL = 1e-12
_TINY = 1e-300


class NotDescentDirection(ValueError):
    pass


@dataclass(frozen=True)
class ObjectiveFunction:
    name: str
    dim: int
    f: Callable[[np.ndarray], float]
    grad: Callable[[np.ndarray], np.ndarray]
    formula: str = ""

    def __call__(self, x):
        return self.f(x)


@dataclass(frozen=True)
class DescentConfig:
    start: tuple[float, ...] = (1.0,) * DIM
    steps: int = 20
    armijo_c: float = 1e-4
    beta: float = 0.8
    epsilon: float = 1e-10
    x0_step: float = 1.0

    def __post_init__(self):
        if not 0 < self.armijo_c < 1:
            raise ValueError("armijo_c must lie in (0, 1)")
        if self.steps < 0:
            raise ValueError("steps must be non-negative")


@dataclass
class StepRecord:
    iterate: np.ndarray
    value: float
    grad_norm: float
    outcome: SearchOutcome


@dataclass
class DescentTrace:
    function: str
    method: str
    steps: list[StepRecord] = field(default_factory=list)
    status: str = "completed"
    final: np.ndarray | None = None

    @property
    def loop_evals(self) -> list[int]:
        return [s.outcome.loop_evals for s in self.steps]

    @property
    def total_evals(self) -> list[int]:
        return [s.outcome.total_evals for s in self.steps]


class ArmijoResidual:
    """``g(t) = f(x + t d) - f(x) - c t grad(x).d``, counting calls.

    ``g(t) <= 0`` is the Armijo sufficient-decrease test for the step ``t``.
    """

    def __init__(self, f, x, d, c, fx=None, gx=None):
        self.f = f
        self.x = np.asarray(x, dtype=float)
        self.d = np.asarray(d, dtype=float)
        self.c = c
        self.fx = f(self.x) if fx is None else fx
        gx = f.grad(self.x) if gx is None else gx
        self.slope = float(np.dot(gx, self.d))
        if not self.slope < 0:
            raise NotDescentDirection(f"grad(x).d = {self.slope!r} is not negative")
        self.evals = 0

    def __call__(self, t):
        self.evals += 1
        if t == 0:
            return 0.0
        return float(self.f(self.x + t * self.d) - self.fx - self.c * t * self.slope)


def armijo_residual(f, x_k, d, c):
    return ArmijoResidual(f, x_k, d, c)


def gradient_descent(
    f: ObjectiveFunction,
    config: DescentConfig = DescentConfig(),
    method: str = "fasttrack_itp",
    search: Callable[[TurningPointProblem], SearchOutcome] | None = None,
) -> DescentTrace:
    """Normalized steepest descent; ``search`` overrides the searcher looked up by ``method``."""
    if search is None:
        search = searcher(method)
    x = np.asarray(config.start, dtype=float)
    trace = DescentTrace(f.name, method)
    fx = f(x)
    for _ in range(config.steps):
        gx = f.grad(x)
        gnorm = float(np.linalg.norm(gx))
        if not gnorm >= GRAD_TOL:
            trace.status = "stationary" if gnorm < GRAD_TOL else "domain_error"
            break
        d = -gx / gnorm
        g = ArmijoResidual(f, x, d, config.armijo_c, fx=fx, gx=gx)
        problem = TurningPointProblem(g, x0=config.x0_step, beta=config.beta, epsilon=config.epsilon)
        outcome = search(problem)
        trace.steps.append(StepRecord(x.copy(), fx, gnorm, outcome))
        if not outcome.ok:
            trace.status = outcome.status.value
            break
        x = x + outcome.x_hat * d
        fx = f(x)
        if not math.isfinite(fx):
            trace.status = "domain_error"
            break
    trace.final = x
    return trace


def chebyshev_vandermonde(n: int) -> np.ndarray:
    """``I + W`` with ``W[i, j] = t_i**j`` on the n Chebyshev-Gauss nodes."""
    if n < 1:
        raise ValueError("n must be at least 1")
    i = np.arange(1, n + 1)
    t = np.cos((2 * i - 1) * np.pi / (2 * n))
    return np.eye(n) + np.vander(t, n, increasing=True)


def test_suite(dim: int = DIM) -> list[ObjectiveFunction]:
    n = np.arange(1, dim + 1, dtype=float)
    V = chebyshev_vandermonde(dim)
    Vs = V + V.T
    root_n = n ** (1 / n)
    sqrt_n = np.sqrt(n)

    def quad(x):
        return float(x @ x)

    def high_poly(x):
        return float(np.sum(x ** (2 * n)))

    def high_poly_grad(x):
        return 2 * n * x ** (2 * n - 1)

    def vander(x):
        return float(x @ V @ x)

    def log_poly(x):
        r = float(np.linalg.norm(x - root_n))
        return -math.inf if r < _TINY else 2 * math.log(r)

    def log_poly_grad(x):
        diff = x - root_n
        r2 = float(diff @ diff)
        if r2 < _TINY**2 or r2 == 0:
            return np.zeros_like(x)
        return 2 * diff / r2

    def quartic(x):
        s = float(n @ x)
        return float(np.sum(x)) ** 4 / dim + math.sqrt(abs(s))

    def quartic_grad(x):
        s = float(n @ x)
        g = np.full_like(x, 4 * float(np.sum(x)) ** 3 / dim)
        if s != 0:
            g = g + math.copysign(1.0, s) * n / (2 * math.sqrt(abs(s)))
        return g

    def _safe_inv(x):
        small = np.abs(x) < _TINY
        return small, n / np.where(small, 1.0, x)

    def noisy_hard(x):
        small, ratio = _safe_inv(x)
        return float(x @ x + 1e-3 * np.sum(np.where(small, 0.0, np.sin(ratio))))

    def noisy_hard_grad(x):
        small, ratio = _safe_inv(x)
        safe = np.where(small, 1.0, x)
        return 2 * x + np.where(small, 0.0, -1e-3 * np.cos(ratio) * n / safe**2)

    return [
        ObjectiveFunction("simple_quadratic", dim, quad, lambda x: 2 * x, "sum x_i^2"),
        ObjectiveFunction("high_degree_polynomial", dim, high_poly, high_poly_grad, "sum x_i^(2i)"),
        ObjectiveFunction("vandermonde_interpolation", dim, vander, lambda x: Vs @ x, "x'Vx"),
        ObjectiveFunction(
            "trigonometric_1", dim,
            lambda x: float(n @ np.cos(x)), lambda x: -n * np.sin(x), "sum i cos(x_i)",
        ),
        ObjectiveFunction(
            "trigonometric_2", dim,
            lambda x: float(n @ np.cos(np.cos(x))),
            lambda x: n * np.sin(np.cos(x)) * np.sin(x),
            "sum i cos(cos(x_i))",
        ),
        ObjectiveFunction("log_poly", dim, log_poly, log_poly_grad, "2 log ||x - n^(1/n)||"),
        ObjectiveFunction("quartic", dim, quartic, quartic_grad, "(sum x_i)^4 / n + sqrt|n'x|"),
        ObjectiveFunction(
            "interpolation_regularized", dim,
            lambda x: float(x @ V @ x + np.sum(np.abs(x - sqrt_n))),
            lambda x: Vs @ x + np.sign(x - sqrt_n),
            "x'Vx + ||x - sqrt(n)||_1",
        ),
        ObjectiveFunction(
            "noisy_quadratic_hard", dim, noisy_hard, noisy_hard_grad, "||x||^2 + 1e-3 sum sin(i/x_i)",
        ),
        ObjectiveFunction(
            "noisy_quadratic_easy", dim,
            lambda x: float(x @ x + 1e-3 * np.sum(np.sin(1e3 * n * x))),
            lambda x: 2 * x + n * np.cos(1e3 * n * x),
            "||x||^2 + 1e-3 sum sin(1e3 i x_i)",
        ),
    ]


def get_function(name: str, dim: int = DIM) -> ObjectiveFunction:
    for fn in test_suite(dim):
        if fn.name == name:
            return fn
    raise KeyError(name)
