"""Limit behaviour of the operator: error control near t = 0, recovery of
the classical derivative, the mean-value midpoint law, and continuous
dependence on the memory exponents."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq

from . import expr as ex
from ._grid import GRID_POINTS, grid_extrema, grid_sup_abs
from .bounds import dependence_bound_constant
from .errors import ConvergenceError, DomainError, HypothesisError, MemvelError, ScheduleRangeError
from .operator import velocity
from .quadrature import DEFAULT_SPEC, QuadratureSpec
from .report import Check, VerificationReport
from .schedule import ExponentSchedule, make_schedule
from .trajectory import Trajectory

EPS_DECADES = 6
EPS_GRID_POINTS = 2000
EPS_INFLATION = 1e-3
# below this step x(h) - x(0) - xdot(0) h is dominated by cancellation noise
EPS_H_FLOOR = 1e-8
RECOVERY_ATOL = 1e-10
CLAMP_TOL = 1e-9


# ---------------------------------------------------------------------------
# error control


def remainder(x: Trajectory, h: float) -> float:
    """First-order Taylor remainder r(h) = x(h) - x(0) - xdot(0) h."""
    h = float(h)
    if not (0.0 <= h <= x.T):
        raise DomainError(f"h={h!r} outside [0, {x.T!r}]")
    return x.x_at(h) - x.x_at(0.0) - x.xdot_at(0.0) * h


def error_control(x: Trajectory, s: float, grid_points: int = EPS_GRID_POINTS) -> float:
    """Numeric sup of |r(h)/h| over 0 < h <= s.

    Sampled on a geometric grid over the six decades below ``s``, but not
    below ``EPS_H_FLOOR`` where rounding swamps r(h)/h.  The result
    under-approximates the true sup, so callers inflate it slightly.
    """
    s = float(s)
    if not (0.0 <= s <= x.T):
        raise DomainError(f"s={s!r} outside [0, {x.T!r}]")
    if grid_points < 2:
        raise DomainError("grid_points must be >= 2")
    if s == 0.0:
        return 0.0
    lo = min(s, max(s * 10.0**-EPS_DECADES, EPS_H_FLOOR))
    h = np.geomspace(lo, s, grid_points)
    h[-1] = s
    x0 = float(x.values(0.0))
    a0 = float(x.derivatives(0.0))
    r = x.values(h) - x0 - a0 * h
    return float(np.max(np.abs(r / h)))


# ---------------------------------------------------------------------------
# uniform-memory recovery


@dataclass(frozen=True)
class RecoveryPoint:
    t: float
    v11: float
    deviation: float
    eps_t: float

    @property
    def certificate(self) -> float:
        return 3.0 * self.eps_t

    @property
    def holds(self) -> bool:
        return self.deviation <= self.certificate * (1.0 + EPS_INFLATION) + RECOVERY_ATOL


@dataclass
class RecoveryCurve:
    points: List[RecoveryPoint] = field(default_factory=list)
    failures: List[Tuple[float, MemvelError]] = field(default_factory=list)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)

    @property
    def all_hold(self) -> bool:
        return not self.failures and all(p.holds for p in self.points)


def recovery_curve(x: Trajectory, ts: Sequence[float], spec: QuadratureSpec = DEFAULT_SPEC) -> RecoveryCurve:
    """V_{1,1}[x](t) against xdot(0), with the 3 eps_t certificate at each t > 0."""
    uniform = make_schedule(1.0, x.T)
    d0 = x.xdot_at(0.0)
    out = RecoveryCurve()
    for t in ts:
        t = float(t)
        try:
            if not (0.0 < t <= x.T):
                raise DomainError(f"t={t!r} outside (0, {x.T!r}]")
            v = velocity(x, uniform, uniform, t, spec).value
            out.points.append(RecoveryPoint(t, v, abs(v - d0), error_control(x, t)))
        except MemvelError as exc:
            out.failures.append((t, exc))
    return out


# ---------------------------------------------------------------------------
# mean-value point


@dataclass(frozen=True)
class MeanValueResult:
    t: float
    xi: float
    theta: float
    degenerate: bool = False


SCAN_POINTS = 1001
_GL_X, _GL_W = np.polynomial.legendre.leggauss(32)


def interval_average(x: Trajectory, t: float, panels: int = 8) -> float:
    """(1/t) int_0^t x(tau) dtau by composite Gauss-Legendre."""
    edges = np.linspace(0.0, t, panels + 1)
    half = 0.5 * np.diff(edges)[:, None]
    nodes = edges[:-1, None] + half * (1.0 + _GL_X[None, :])
    return float(np.sum(half * _GL_W[None, :] * x.values(nodes.ravel()).reshape(nodes.shape))) / t


def mean_value_point(x: Trajectory, t: float, tol: float = 1e-12) -> MeanValueResult:
    """Leftmost xi in [0, t] with x(xi) equal to the average of x over [0, t].

    ``tol`` is scaled by max(1, max|x|) on [0, t].  A trajectory whose range
    on [0, t] is below that tolerance is reported degenerate with xi = t/2.
    """
    t = float(t)
    if not (0.0 < t <= x.T):
        raise DomainError(f"t={t!r} outside (0, {x.T!r}]")
    if not tol > 0:
        raise DomainError("tol must be positive")
    scan = np.linspace(0.0, t, SCAN_POINTS)
    xs = x.values(scan)
    scaled_tol = tol * max(1.0, float(np.max(np.abs(xs))))
    if float(np.max(xs) - np.min(xs)) < scaled_tol:
        return MeanValueResult(t, 0.5 * t, 0.5, True)

    avg = interval_average(x, t)
    f = xs - avg
    hits = np.flatnonzero(f == 0.0)
    changes = np.flatnonzero(np.signbit(f[:-1]) != np.signbit(f[1:]))
    candidates = []
    if hits.size:
        candidates.append((scan[hits[0]], None))
    if changes.size:
        candidates.append((scan[changes[0]], changes[0]))
    if not candidates:
        raise ConvergenceError(f"no mean-value point found on [0, {t!r}]")
    left, i = min(candidates, key=lambda c: c[0])
    if i is None:
        xi = float(left)
    else:
        xi = brentq(lambda s: float(x.values(s)) - avg, scan[i], scan[i + 1], xtol=1e-300, rtol=8.9e-16)
    if abs(float(x.values(xi)) - avg) > scaled_tol:
        raise ConvergenceError(f"mean-value residual exceeds tolerance at t={t!r}")
    return MeanValueResult(t, xi, xi / t, False)


def midpoint_limit_check(x: Trajectory, ts: Sequence[float], tol_final: float, tol: float = 1e-12) -> VerificationReport:
    """theta(t) -> 1/2 along decreasing ``ts``; requires xdot(0) != 0."""
    if abs(x.xdot_at(0.0)) < 1e-12:
        raise HypothesisError("the midpoint law needs xdot(0) != 0")
    ts = [float(t) for t in ts]
    if not ts or any(b >= a for a, b in zip(ts, ts[1:])) or ts[-1] <= 0:
        raise DomainError("ts must be positive and strictly decreasing")
    results = [mean_value_point(x, t, tol) for t in ts]
    dist = [abs(r.theta - 0.5) for r in results]

    report = VerificationReport("midpoint")
    slack = tol_final - dist[-1]
    report.add(Check("final_theta", slack >= 0, slack, ts[-1],
                     f"theta={results[-1].theta:.17g}, tol_final={tol_final:g}"))
    tail = list(zip(ts, dist))[-3:]
    slacks = [(t1, 1.1 * d0 + 1e-12 - d1) for (_, d0), (t1, d1) in zip(tail, tail[1:])]
    if slacks:
        t_w, worst = min(slacks, key=lambda p: p[1])
    else:
        t_w, worst = ts[-1], float("inf")
    report.add(Check("monotone_tail", worst >= 0, worst, t_w,
                     "|theta - 1/2| non-increasing over the last 3 times (10% slack)"))
    return report


# ---------------------------------------------------------------------------
# continuous dependence


@dataclass(frozen=True)
class DependenceResult:
    n: int
    sup_dev: float
    sup_exp_dev: float
    integral_bound: float
    sup_integral_dev: float
    integral_bound_holds: bool


def _perturbed(base: ExponentSchedule, pert, n) -> ExponentSchedule:
    T = base.T

    def raw(t):
        return base.values(t) + pert(t) / n

    lo, _, hi, _ = grid_extrema(raw, 0.0, T, GRID_POINTS)
    if lo <= 0.0:
        raise ScheduleRangeError(f"perturbed exponent reaches {lo!r} <= 0 at n={n}")
    if hi > 1.0 + CLAMP_TOL:
        raise ScheduleRangeError(f"perturbed exponent would be clamped by {hi - 1.0:.3g} at n={n}")

    def clamped(t):
        return np.minimum(raw(t), 1.0)
    clamped.__name__ = f"perturbed_n{n}"
    return make_schedule(clamped, T)


def dependence_experiment(
    x: Trajectory,
    alpha: ExponentSchedule,
    beta: ExponentSchedule,
    perturbation,
    ns: Sequence[int],
    eps_lo: float,
    spec: QuadratureSpec = DEFAULT_SPEC,
    targets=("alpha",),
    grid_points: int = 100,
) -> List[DependenceResult]:
    """sup over [eps_lo, T] of |V_{alpha_n, beta_n} - V_{alpha, beta}| for each n.

    ``alpha_n = alpha + perturbation/n`` (and likewise ``beta_n`` when
    ``'beta'`` is among ``targets``).  Also records the integral-part bound
    L_x C_F T sup|alpha_n - alpha| and whether |I_n - I| obeys it pointwise.
    """
    T = x.T
    if not (0.0 < eps_lo < T):
        raise DomainError(f"eps_lo must lie in (0, T), got {eps_lo!r}")
    unknown = set(targets) - {"alpha", "beta"}
    if unknown:
        raise DomainError(f"unknown perturbation targets {sorted(unknown)}")
    p_ast = ex.as_expr(perturbation)

    def pert(t):
        return ex.eval_ast(p_ast, t)

    grid = np.linspace(eps_lo, T, grid_points)
    base = [velocity(x, alpha, beta, t, spec) for t in grid]
    L_x = x.lipschitz

    results = []
    for n in sorted(int(n) for n in ns):
        if n < 1:
            raise DomainError("ns must be positive integers")
        alpha_n = _perturbed(alpha, pert, n) if "alpha" in targets else alpha
        beta_n = _perturbed(beta, pert, n) if "beta" in targets else beta
        m = min(s.m for s in (alpha, beta, alpha_n, beta_n))
        M = max(s.M for s in (alpha, beta, alpha_n, beta_n))
        c_f = dependence_bound_constant(m, M, T)

        alpha_dev = grid_sup_abs(lambda t: alpha_n.values(t) - alpha.values(t), 0.0, T)
        beta_dev = grid_sup_abs(lambda t: beta_n.values(t) - beta.values(t), 0.0, T)
        bound = L_x * c_f * T * alpha_dev

        sup_dev = 0.0
        sup_idev = 0.0
        holds = True
        for t, b in zip(grid, base):
            bn = velocity(x, alpha_n, beta_n, t, spec)
            sup_dev = max(sup_dev, abs(bn.value - b.value))
            idev = abs(bn.integral - b.integral)
            sup_idev = max(sup_idev, idev)
            pointwise = L_x * c_f * T * abs(alpha_n(t) - alpha(t))
            if idev > pointwise + 1e-9 * max(abs(b.integral), abs(bn.integral)):
                holds = False
        results.append(DependenceResult(n, sup_dev, max(alpha_dev, beta_dev), bound, sup_idev, holds))
    return results
