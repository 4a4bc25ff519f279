"""Gamma function on the bounded range used by the memory kernels."""

import math

from .errors import DomainError

GAMMA_DOMAIN_MAX = 4.0

# Minimiser of Gamma on the positive axis; Gamma strictly decreases on (0, GAMMA_ARGMIN].
GAMMA_ARGMIN = 1.4616321449683623


def gamma(z):
    """Gamma(z) for 0 < z <= 4.

    Backed by :func:`math.gamma` (correctly rounded to a few ulps on this
    range, well inside the 1e-13 relative budget).
    """
    z = float(z)
    if not (0.0 < z <= GAMMA_DOMAIN_MAX):
        raise DomainError(f"gamma is only provided on (0, {GAMMA_DOMAIN_MAX}], got z={z!r}")
    return math.gamma(z)
