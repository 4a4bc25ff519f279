"""The power-law memory kernel with time-varying exponent, and its closed-form integrals."""

import math

from .errors import DomainError
from .schedule import ExponentSchedule
from .specfun import gamma


def _power(t, a):
    # t^a as exp(a ln t), t > 0
    return math.exp(a * math.log(t))


def kernel_value(rho: ExponentSchedule, t: float, tau: float) -> float:
    """K(t, tau) = (t - tau)^(rho(t) - 1) / Gamma(rho(t)), and 0 for tau >= t.

    The kernel is singular (but integrable) at ``tau == t`` when
    ``rho(t) < 1``; that point is returned as 0 like every ``tau >= t``.
    """
    t, tau = float(t), float(tau)
    for name, v in (("t", t), ("tau", tau)):
        if not (0.0 <= v <= rho.T):
            raise DomainError(f"{name}={v!r} outside [0, {rho.T!r}]")
    if tau >= t:
        return 0.0
    r = rho(t)
    return _power(t - tau, r - 1.0) / gamma(r)


def _check_time(s, t):
    t = float(t)
    if not (0.0 < t <= s.T):
        raise DomainError(f"t={t!r} outside (0, {s.T!r}]")
    return t


def kernel_mass(rho: ExponentSchedule, t: float) -> float:
    """Total mass t^rho(t) / Gamma(rho(t) + 1) of K(t, .) on [0, t]."""
    t = _check_time(rho, t)
    r = rho(t)
    return _power(t, r) / gamma(r + 1.0)


def denominator(beta: ExponentSchedule, t: float) -> float:
    """Elapsed-time measure: integral of K_beta(t, tau) (t - tau) over [0, t].

    Closed form t^(beta+1) / ((beta + 1) Gamma(beta)).
    """
    t = _check_time(beta, t)
    b = beta(t)
    return _power(t, b + 1.0) / ((b + 1.0) * gamma(b))
