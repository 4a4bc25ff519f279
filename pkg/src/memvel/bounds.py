"""Explicit constants of the weighted estimates and checks against them."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._grid import GRID_POINTS, grid_extrema
from .errors import DomainError, MemvelError
from .operator import velocity
from .quadrature import DEFAULT_SPEC, QuadratureSpec
from .report import SlackTracker, VerificationReport
from .schedule import ExponentSchedule
from .specfun import GAMMA_ARGMIN, gamma
from .trajectory import Trajectory

SLACK_RTOL = 1e-9
SIGN_TOL = 1e-12


def _check_bounds(m, M):
    if not (0.0 < m <= M <= 1.0):
        raise DomainError(f"need 0 < m <= M <= 1, got m={m!r}, M={M!r}")


def gamma_extrema(m: float, M: float):
    """(Gamma_low, Gamma_up) = (min, max) of Gamma over [m, M].

    Gamma decreases on (0, 1.4616...], so these are Gamma(M) and Gamma(m);
    a 10^3-point grid guards the assumption.
    """
    _check_bounds(m, M)
    if M > GAMMA_ARGMIN:
        raise DomainError("[m, M] must lie left of the minimiser of Gamma")
    low, up = gamma(M), gamma(m)
    grid = [gamma(z) for z in np.linspace(m, M, 1000)]
    if abs(min(grid) - low) > 1e-12 * low or abs(max(grid) - up) > 1e-12 * up:
        raise ArithmeticError("grid extrema of Gamma disagree with the monotone shortcut")
    return low, up


def weighted_constant(m: float, M: float) -> float:
    """C_W = (M + 1) Gamma_up / ((m + 1) Gamma_low)."""
    low, up = gamma_extrema(m, M)
    return (M + 1.0) * up / ((m + 1.0) * low)


def dependence_bound_constant(m: float, M: float, T: float) -> float:
    """Uniform bound C_F of u^xi |ln u| over [0, T] x [m, M]."""
    _check_bounds(m, M)
    if not T > 0:
        raise DomainError(f"T must be positive, got {T!r}")
    c = 2.0 / (m * math.e)
    if T <= 1.0:
        return c
    return max(c, T ** (M + 1.0))


def exponent_difference_extrema(alpha: ExponentSchedule, beta: ExponentSchedule):
    """(Delta_min, Delta_max) of beta(t) - alpha(t) over [0, T]."""
    if alpha.T != beta.T:
        raise DomainError("schedules must share the horizon T")
    if alpha.is_constant and beta.is_constant:
        d = beta.m - alpha.m
        return d, d
    lo, _, hi, _ = grid_extrema(lambda t: beta.values(t) - alpha.values(t), 0.0, alpha.T, GRID_POINTS)
    return lo, hi


@dataclass(frozen=True)
class BoundContext:
    m: float
    M: float
    gamma_low: float
    gamma_up: float
    c_w: float
    delta_min: float
    delta_max: float
    c_f: float
    T: float

    @property
    def case(self) -> str:
        """'A' (beta <= alpha), 'B' (beta >= alpha) or 'C' (mixed or within tolerance of 0)."""
        if self.delta_max < -SIGN_TOL:
            return "A"
        if self.delta_min > SIGN_TOL:
            return "B"
        return "C"

    def envelope(self, t: float, norm: float) -> float:
        """Pointwise bound on |V(t)| for t > 0 according to the sign case."""
        if not t > 0:
            raise DomainError("case envelopes are only defined for t > 0")
        base = self.c_w * norm
        case = self.case
        if case == "A":
            return base * max(1.0, self.T ** (self.M - self.m))
        if case == "B":
            return base * t ** (-self.delta_max) if t <= 1.0 else base
        # boundary configurations fall here; clipping at 0 keeps the envelope valid
        if t <= 1.0:
            return base * t ** (-max(self.delta_max, 0.0))
        return base * t ** (-min(self.delta_min, 0.0))


def bound_context(alpha: ExponentSchedule, beta: ExponentSchedule) -> BoundContext:
    m = min(alpha.m, beta.m)
    M = max(alpha.M, beta.M)
    low, up = gamma_extrema(m, M)
    d_min, d_max = exponent_difference_extrema(alpha, beta)
    return BoundContext(
        m=m, M=M, gamma_low=low, gamma_up=up,
        c_w=(M + 1.0) * up / ((m + 1.0) * low),
        delta_min=d_min, delta_max=d_max,
        c_f=dependence_bound_constant(m, M, alpha.T),
        T=alpha.T,
    )


def weight(alpha: ExponentSchedule, beta: ExponentSchedule, t: float) -> float:
    """min(1, t^(beta(t) - alpha(t))) for t > 0."""
    return min(1.0, math.exp((beta(t) - alpha(t)) * math.log(t)))


def check_weighted_bound(
    x: Trajectory,
    alpha: ExponentSchedule,
    beta: ExponentSchedule,
    ts,
    spec: QuadratureSpec = DEFAULT_SPEC,
    ctx: BoundContext = None,
) -> VerificationReport:
    """min(1, t^(beta-alpha)) |V(t)| <= C_W ||x||_C1 at every t (|xdot(0)| at t = 0)."""
    ctx = ctx or bound_context(alpha, beta)
    rhs = ctx.c_w * x.norm.c1
    tracker = SlackTracker()
    for t in ts:
        t = float(t)
        try:
            v = velocity(x, alpha, beta, t, spec).value
            lhs = abs(v) if t == 0.0 else weight(alpha, beta, t) * abs(v)
        except MemvelError as exc:
            tracker.error(t, exc)
            continue
        slack = rhs - lhs
        tracker.record(t, slack, slack >= -SLACK_RTOL * rhs)
    report = VerificationReport("weighted-bound")
    check = tracker.check("weighted_inequality", len(ts))
    check.detail += f"; C_W={ctx.c_w:.17g}, ||x||_C1={x.norm.c1:.17g}"
    report.add(check)
    return report


def check_case_envelopes(
    x: Trajectory,
    alpha: ExponentSchedule,
    beta: ExponentSchedule,
    ts,
    spec: QuadratureSpec = DEFAULT_SPEC,
    ctx: BoundContext = None,
) -> VerificationReport:
    """|V(t)| against the envelope of the case picked by the signs of Delta_min/max."""
    ctx = ctx or bound_context(alpha, beta)
    norm = x.norm.c1
    tracker = SlackTracker()
    for t in ts:
        t = float(t)
        env = ctx.envelope(t, norm)
        try:
            v = velocity(x, alpha, beta, t, spec).value
        except MemvelError as exc:
            tracker.error(t, exc)
            continue
        slack = env - abs(v)
        tracker.record(t, slack, slack >= -SLACK_RTOL * env)
    report = VerificationReport("envelopes")
    check = tracker.check(f"case_{ctx.case}_envelope", len(ts))
    check.detail += f"; delta_min={ctx.delta_min:.6g}, delta_max={ctx.delta_max:.6g}"
    report.add(check)
    return report
