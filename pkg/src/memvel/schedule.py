"""Time-varying memory exponents rho: [0, T] -> (0, 1]."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from . import expr as ex
from ._grid import GRID_POINTS, grid_extrema
from .errors import DomainError, ScheduleRangeError

# Values at most this far above one are treated as float noise and clamped.
UPPER_CLAMP = 1e-12

Definition = Union[ex.Node, float, str, Callable]


@dataclass(frozen=True)
class ExponentSchedule:
    """A validated memory exponent with certified bounds ``m <= rho(t) <= M``.

    Build instances with :func:`make_schedule`; the constructor does no
    validation.
    """

    definition: object
    T: float
    m: float
    M: float
    _fn: Callable = field(repr=False, compare=False, default=None)

    @property
    def is_constant(self) -> bool:
        return self.m == self.M

    def values(self, t):
        """Vectorised rho(t) without domain checks (internal hot path)."""
        return np.minimum(self._fn(t), 1.0)

    def __call__(self, t):
        return exponent_at(self, t)

    def describe(self) -> str:
        if isinstance(self.definition, ex.Node):
            return ex.to_source(self.definition)
        if isinstance(self.definition, float):
            return repr(self.definition)
        return getattr(self.definition, "__name__", "<callable>")


def _constant_fn(value):
    def fn(t):
        if np.ndim(t) == 0:
            return value
        return np.full(np.shape(t), value)
    return fn


def _check_range(lo, hi, label):
    if not lo > 0.0:
        raise ScheduleRangeError(f"memory exponent {label} reaches {lo!r} <= 0")
    if hi > 1.0 + UPPER_CLAMP:
        raise ScheduleRangeError(f"memory exponent {label} reaches {hi!r} > 1")


def make_schedule(definition: Definition, T: float) -> ExponentSchedule:
    """Validate a memory exponent on ``[0, T]`` and certify its bounds.

    ``definition`` may be a number, expression source, AST, or a vectorised
    callable.  Bounds come from a 10^4-point grid refined around the grid
    extrema; constant definitions report ``m == M`` exactly.
    """
    T = float(T)
    if not T > 0:
        raise DomainError(f"horizon T must be positive, got {T!r}")
    if isinstance(definition, str):
        definition = ex.parse(definition)
    if isinstance(definition, (int, float)) and not isinstance(definition, bool):
        definition = float(definition)
    if isinstance(definition, ex.Node) and not ex.depends_on_t(definition):
        definition = ex.eval_ast(definition, 0.0)

    if isinstance(definition, float):
        _check_range(definition, definition, repr(definition))
        value = min(definition, 1.0)
        return ExponentSchedule(definition, T, value, value, _constant_fn(value))

    if isinstance(definition, ex.Node):
        ast = definition

        def fn(t):
            return ex.eval_ast(ast, t)
        label = repr(ex.to_source(ast))
    elif callable(definition):
        fn = definition
        label = getattr(definition, "__name__", "<callable>")
    else:
        raise TypeError(f"unsupported schedule definition {definition!r}")

    lo, _, hi, _ = grid_extrema(fn, 0.0, T, GRID_POINTS)
    _check_range(lo, hi, label)
    return ExponentSchedule(definition, T, lo, min(hi, 1.0), fn)


def exponent_at(s: ExponentSchedule, t: float) -> float:
    """rho(t) for ``0 <= t <= T``."""
    t = float(t)
    if not (0.0 <= t <= s.T):
        raise DomainError(f"t={t!r} outside [0, {s.T!r}]")
    return float(min(s._fn(t), 1.0))
