"""Elementary logarithm/power inequalities, exposed as (lhs, rhs) pairs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError

NAMES = ("log_power", "log_growth", "power_linear")


@dataclass(frozen=True)
class InequalitySample:
    name: str
    parameter: float
    point: float
    lhs: float
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs + 1e-12 * max(1.0, abs(self.rhs))


def _out(lhs, rhs, scalar):
    if scalar:
        return float(lhs), float(rhs)
    return lhs, rhs


def log_power_bound(delta, x):
    """|ln x| <= x^(-delta) / (delta e) on (0, 1]; equality at x = exp(-1/delta)."""
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    if not delta > 0:
        raise DomainError(f"delta must be positive, got {delta!r}")
    if np.any((x <= 0) | (x > 1)):
        raise DomainError("x must lie in (0, 1]")
    return _out(np.abs(np.log(x)), x ** (-delta) / (delta * np.e), scalar)


def log_growth_bound(alpha0, x):
    """ln x <= x^alpha0 / alpha0 for x >= 1."""
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    if not alpha0 > 0:
        raise DomainError(f"alpha0 must be positive, got {alpha0!r}")
    if np.any(x < 1):
        raise DomainError("x must be >= 1")
    return _out(np.log(x), x**alpha0 / alpha0, scalar)


def power_linear_bound(gamma, u):
    """u^gamma <= 1 + u for u >= 0 and 0 < gamma <= 1."""
    scalar = np.ndim(u) == 0
    u = np.asarray(u, dtype=float)
    if not (0 < gamma <= 1):
        raise DomainError(f"gamma must lie in (0, 1], got {gamma!r}")
    if np.any(u < 0):
        raise DomainError("u must be non-negative")
    return _out(u**gamma, 1.0 + u, scalar)


BOUNDS = {"log_power": log_power_bound, "log_growth": log_growth_bound, "power_linear": power_linear_bound}

# parameter grids and admissible point ranges (log10 decades) used by the sampler
PARAMETERS = {"log_power": (0.1, 0.5, 1.0, 2.0), "log_growth": (0.1, 0.5, 1.0, 2.0), "power_linear": (0.1, 0.5, 1.0)}
DECADES = {"log_power": (-10.0, 0.0), "log_growth": (0.0, 10.0), "power_linear": (-5.0, 5.0)}


def _draw(name, n, rng):
    params = np.resize(np.asarray(PARAMETERS[name]), n)
    lo, hi = DECADES[name]
    points = 10.0 ** rng.uniform(lo, hi, n)
    if name == "log_power":
        points = np.minimum(points, 1.0)
    return params, points


def sample(name, n, rng):
    """Return ``n`` InequalitySamples: parameters cycled over the grid, points log-uniform over 10 decades."""
    params, points = _draw(name, n, rng)
    out = []
    for p in PARAMETERS[name]:
        mask = params == p
        lhs, rhs = BOUNDS[name](p, points[mask])
        out.extend(InequalitySample(name, float(p), float(x), float(l), float(r))
                   for x, l, r in zip(points[mask], lhs, rhs))
    return out


def violations(name, n, rng):
    """(violation count, smallest rhs - lhs) among ``n`` random samples."""
    params, points = _draw(name, n, rng)
    count = 0
    worst = np.inf
    for p in PARAMETERS[name]:
        mask = params == p
        lhs, rhs = BOUNDS[name](p, points[mask])
        slack = rhs + 1e-12 * np.maximum(1.0, np.abs(rhs)) - lhs
        count += int(np.sum(slack < 0))
        if slack.size:
            worst = min(worst, float(np.min(rhs - lhs)))
    return count, worst
