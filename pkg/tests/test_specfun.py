import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from memvel.errors import DomainError
from memvel.specfun import GAMMA_ARGMIN, gamma


@pytest.mark.parametrize("z, expected", [(1.0, 1.0), (2.0, 1.0), (0.5, 1.7724538509055160)])
def test_anchor_values(z, expected):
    assert gamma(z) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("z", [0.0, -0.5, 4.0000001, math.inf, math.nan])
def test_domain(z):
    with pytest.raises(DomainError):
        gamma(z)


def test_accuracy_against_mpmath():
    for z in np.linspace(1e-3, 4.0, 400):
        ref = float(mpmath.gamma(mpmath.mpf(float(z))))
        assert abs(gamma(z) - ref) <= 1e-13 * ref


def test_functional_equation():
    rng = np.random.default_rng(1)
    for z in rng.uniform(0.0, 3.0, 200):
        z = float(z) or 1e-3
        assert abs(gamma(z + 1) - z * gamma(z)) / gamma(z + 1) <= 1e-12


@given(st.floats(min_value=1e-6, max_value=4.0))
def test_positive(z):
    assert gamma(z) > 0


@given(st.floats(min_value=1e-6, max_value=1.46), st.floats(min_value=1e-6, max_value=1.46))
def test_decreasing_left_of_minimum(z1, z2):
    if z1 < z2:
        assert gamma(z1) > gamma(z2)


def test_argmin_constant():
    assert GAMMA_ARGMIN == pytest.approx(float(mpmath.findroot(mpmath.digamma, 1.46)), abs=1e-15)
