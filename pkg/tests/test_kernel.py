import math

import numpy as np
import pytest

from memvel.errors import DomainError
from memvel.kernel import denominator, kernel_mass, kernel_value
from memvel.quadrature import oracle_integrate
from memvel.schedule import make_schedule
from memvel.specfun import gamma


def S(d, T=4.0):
    return make_schedule(d, T)


@pytest.mark.parametrize("rho, t, tau, expected", [(1.0, 0.8, 0.2, 1.0), (0.5, 1.0, 0.0, 0.5641895835477563),
                                                   (0.7, 0.3, 0.5, 0.0), (0.7, 0.3, 0.3, 0.0)])
def test_kernel_value(rho, t, tau, expected):
    assert kernel_value(S(rho), t, tau) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("rho, t, expected", [(1.0, 2.0, 2.0), (0.5, 1.0, 1.1283791670955126),
                                              (0.5, 4.0, 2.2567583341910252)])
def test_kernel_mass(rho, t, expected):
    assert kernel_mass(S(rho), t) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("beta, t, expected", [(1.0, 0.4, 0.08), (1.0, 1.0, 0.5), (0.5, 1.0, 0.3761263890318255)])
def test_denominator(beta, t, expected):
    assert denominator(S(beta), t) == pytest.approx(expected, rel=1e-15)


def test_domain_errors():
    s = S(0.5, 1.0)
    for bad in (0.0, -1.0, 1.5):
        with pytest.raises(DomainError):
            kernel_mass(s, bad)
        with pytest.raises(DomainError):
            denominator(s, bad)
    with pytest.raises(DomainError):
        kernel_value(s, 0.5, 1.2)


def test_time_varying_exponent_uses_current_time():
    s = S("0.5 + 0.4*sin(t)", 2.0)
    t = 1.3
    r = 0.5 + 0.4 * math.sin(t)
    assert kernel_mass(s, t) == pytest.approx(t**r / gamma(r + 1), rel=1e-14)
    assert kernel_value(s, t, 0.2) == pytest.approx((t - 0.2) ** (r - 1) / gamma(r), rel=1e-14)


def test_causality():
    s = S("0.5 + 0.4*sin(t)", 2.0)
    rng = np.random.default_rng(0)
    for t, tau in rng.uniform(0, 2, (200, 2)):
        if tau >= t:
            assert kernel_value(s, t, tau) == 0.0
        else:
            assert kernel_value(s, t, tau) > 0.0


def test_closed_forms_against_oracle():
    rng = np.random.default_rng(11)
    T = 2.0
    for _ in range(100):
        rho = float(rng.uniform(0.1, 1.0))
        t = float(T * (1.0 - rng.uniform()))
        s = S(rho, T)
        # a stronger grading than the oracle default, since the mass integrand does not vanish at 0
        mass = oracle_integrate(np.ones_like, rho, t, panels=1024, grading=6.0 / rho) / gamma(rho)
        denom = oracle_integrate(lambda u: u, rho, t) / gamma(rho)
        assert abs(mass - kernel_mass(s, t)) <= 1e-10 * kernel_mass(s, t)
        assert abs(denom - denominator(s, t)) <= 1e-10 * denominator(s, t)
        assert kernel_mass(s, t) > 0 and denominator(s, t) > 0
