"""Continuously differentiable trajectories x on [0, T]."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import expr as ex
from ._grid import GRID_POINTS, grid_sup_abs
from .errors import DomainError, EvaluationError

VALIDATION_POINTS = 257
DERIVATIVE_RTOL = 1e-6


@dataclass(frozen=True)
class C1Norm:
    sup_x: float
    sup_xdot: float
    c1: float

    def __iter__(self):
        return iter((self.sup_x, self.sup_xdot, self.c1))


@dataclass(frozen=True)
class Trajectory:
    """x(t) together with its exact symbolic derivative."""

    value: ex.Node
    derivative: ex.Node
    T: float

    @classmethod
    def from_expr(cls, source, T, validate=True):
        T = float(T)
        if not T > 0:
            raise DomainError(f"horizon T must be positive, got {T!r}")
        ast = ex.as_expr(source)
        tr = cls(ast, ex.differentiate(ast), T)
        if validate:
            tr.validate()
        return tr

    def validate(self):
        """Check finiteness on [0, T] and the derivative against finite differences."""
        grid = np.linspace(0.0, self.T, VALIDATION_POINTS)
        self.values(grid)
        d = self.derivatives(grid)
        h = 1e-4 * self.T
        inner = grid[(grid - 2 * h >= 0) & (grid + 2 * h <= self.T)]
        if inner.size == 0:
            return
        # fourth-order central difference
        fd = (
            -self.values(inner + 2 * h) + 8 * self.values(inner + h)
            - 8 * self.values(inner - h) + self.values(inner - 2 * h)
        ) / (12 * h)
        d_inner = self.derivatives(inner)
        scale = 1.0 + np.abs(d_inner) + np.abs(self.values(inner)) / self.T
        if np.any(np.abs(fd - d_inner) > DERIVATIVE_RTOL * scale):
            raise EvaluationError(
                f"derivative of {ex.to_source(self.value)!r} disagrees with finite differences"
            )

    def values(self, t):
        """Vectorised x(t), no domain checks."""
        return ex.eval_ast(self.value, t)

    def derivatives(self, t):
        """Vectorised xdot(t), no domain checks."""
        return ex.eval_ast(self.derivative, t)

    def _check(self, t):
        t = float(t)
        if not (0.0 <= t <= self.T):
            raise DomainError(f"t={t!r} outside [0, {self.T!r}]")
        return t

    def x_at(self, t):
        return float(self.values(self._check(t)))

    def xdot_at(self, t):
        return float(self.derivatives(self._check(t)))

    @cached_property
    def norm(self) -> C1Norm:
        sup_x = grid_sup_abs(self.values, 0.0, self.T, GRID_POINTS)
        sup_xdot = grid_sup_abs(self.derivatives, 0.0, self.T, GRID_POINTS)
        return C1Norm(sup_x, sup_xdot, sup_x + sup_xdot)

    @property
    def lipschitz(self) -> float:
        """L_x = sup |xdot|."""
        return self.norm.sup_xdot

    def describe(self):
        return ex.to_source(self.value)


def make_trajectory(source, T) -> Trajectory:
    return Trajectory.from_expr(source, T)


def x_at(tr: Trajectory, t: float) -> float:
    return tr.x_at(t)


def xdot_at(tr: Trajectory, t: float) -> float:
    return tr.xdot_at(t)


def c1_norm(tr: Trajectory) -> C1Norm:
    """(sup|x|, sup|xdot|, sup|x| + sup|xdot|) over [0, T]."""
    return tr.norm


def linear_combination(c1, x1: Trajectory, c2, x2: Trajectory) -> Trajectory:
    """The trajectory c1*x1 + c2*x2 (shared horizon)."""
    if x1.T != x2.T:
        raise DomainError("trajectories must share the horizon T")
    ast = ex.Add(ex.Mul(ex.Num(float(c1)), x1.value), ex.Mul(ex.Num(float(c2)), x2.value))
    return Trajectory(ast, ex.differentiate(ast), x1.T)
