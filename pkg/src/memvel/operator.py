"""Evaluation of the memory-weighted velocity V_{alpha,beta}[x](t)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .errors import DomainError, MemvelError
from .kernel import denominator
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_singular
from .schedule import ExponentSchedule
from .specfun import gamma
from .trajectory import Trajectory


@dataclass(frozen=True)
class EvaluationBreakdown:
    """V = coefficient * integral, where

    coefficient = (beta+1) Gamma(beta) / (t^(beta+1) Gamma(alpha)) and
    integral = int_0^t (t - tau)^(alpha-1) [x(t) - x(tau)] dtau.

    At t = 0 the value is xdot(0); ``degenerate`` is set and the pair
    (coefficient, integral) is (1, xdot(0)) by convention.
    """

    t: float
    coefficient: float
    integral: float
    value: float
    quad_err: float = 0.0
    degenerate: bool = False


def _check_inputs(x, alpha, beta, t):
    if not (x.T == alpha.T == beta.T):
        raise DomainError("trajectory and schedules must share the horizon T")
    t = float(t)
    if not (0.0 <= t <= x.T):
        raise DomainError(f"t={t!r} outside [0, {x.T!r}]")
    return t


def velocity(
    x: Trajectory,
    alpha: ExponentSchedule,
    beta: ExponentSchedule,
    t: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> EvaluationBreakdown:
    """Evaluate V_{alpha,beta}[x](t) through the closed-form denominator.

    Tiny positive ``t`` is evaluated directly; only ``t == 0`` takes the
    ``xdot(0)`` branch.
    """
    t = _check_inputs(x, alpha, beta, t)
    if t == 0.0:
        d0 = x.xdot_at(0.0)
        return EvaluationBreakdown(0.0, 1.0, d0, d0, 0.0, True)

    a = alpha(t)
    coefficient = 1.0 / (gamma(a) * denominator(beta, t))
    x_t = float(x.values(t))

    def increment(u):
        return x_t - x.values(t - u)

    integral, err = integrate_singular(increment, a, t, spec)
    return EvaluationBreakdown(t, coefficient, integral, coefficient * integral, err)


@dataclass
class GridEvaluation:
    """Pointwise results plus the (t, error) pairs that failed."""

    points: List[Tuple[float, EvaluationBreakdown]] = field(default_factory=list)
    failures: List[Tuple[float, MemvelError]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def times(self):
        return [t for t, _ in self.points]

    @property
    def values(self):
        return [b.value for _, b in self.points]


def velocity_grid(
    x: Trajectory,
    alpha: ExponentSchedule,
    beta: ExponentSchedule,
    ts: Sequence[float],
    spec: QuadratureSpec = DEFAULT_SPEC,
) -> GridEvaluation:
    ts = [float(t) for t in ts]
    if any(b < a for a, b in zip(ts, ts[1:])):
        raise DomainError("evaluation times must be sorted")
    out = GridEvaluation()
    for t in ts:
        try:
            out.points.append((t, velocity(x, alpha, beta, t, spec)))
        except MemvelError as exc:
            out.failures.append((t, exc))
    return out


def velocity_by_definition(x, alpha, beta, t, oracle) -> float:
    """Ratio-of-integrals form, with both integrals from ``oracle(g, a, t)``.

    Used to cross-check the closed-form route; not for production use.
    """
    t = _check_inputs(x, alpha, beta, t)
    a, b = alpha(t), beta(t)
    x_t = float(x.values(t))
    numerator = oracle(lambda u: x_t - x.values(t - u), a, t) / gamma(a)
    denom = oracle(lambda u: u, b, t) / gamma(b)
    return numerator / denom

