import math

import numpy as np
import pytest

from memvel.errors import DomainError, EvaluationError
from memvel.suites import EXPRESSION_POOL
from memvel.trajectory import c1_norm, linear_combination, make_trajectory, x_at, xdot_at


@pytest.mark.parametrize("source, t, expected", [("t", 0.5, 0.5), ("sin(t)", 0.0, 0.0), ("t^2", 2.0, 4.0)])
def test_values(source, t, expected):
    assert x_at(make_trajectory(source, 2.0), t) == expected


@pytest.mark.parametrize("source, t, expected", [("t", 0.0, 1.0), ("sin(t)", 0.0, 1.0), ("7", 0.3, 0.0)])
def test_derivatives(source, t, expected):
    assert xdot_at(make_trajectory(source, 1.0), t) == expected


@pytest.mark.parametrize("source, T, expected", [("t", 1.0, (1, 1, 2)), ("sin(t)", math.pi, (1, 1, 2)),
                                                 ("t^2", 1.0, (1, 2, 3))])
def test_c1_norm(source, T, expected):
    norm = c1_norm(make_trajectory(source, T))
    assert tuple(norm) == pytest.approx(expected, abs=1e-12)
    assert make_trajectory(source, T).lipschitz == norm.sup_xdot


def test_domain():
    x = make_trajectory("t", 1.0)
    with pytest.raises(DomainError):
        x_at(x, 1.1)
    with pytest.raises(DomainError):
        xdot_at(x, -0.1)


def test_rejects_expressions_undefined_on_horizon():
    with pytest.raises(EvaluationError):
        make_trajectory("log(t)", 1.0)
    with pytest.raises(EvaluationError):
        make_trajectory("1/(t - 0.5)", 1.0)


def test_rejects_non_differentiable_at_zero():
    # sqrt(t) has an unbounded derivative at 0
    with pytest.raises(EvaluationError):
        make_trajectory("sqrt(t)", 1.0)


@pytest.mark.parametrize("source", EXPRESSION_POOL)
def test_lipschitz_estimate(source):
    x = make_trajectory(source, 2.0)
    rng = np.random.default_rng(3)
    t, tau = rng.uniform(0.0, 2.0, (2, 1000))
    lhs = np.abs(x.values(t) - x.values(tau))
    assert np.all(lhs <= (x.norm.sup_xdot + 1e-9) * np.abs(t - tau))


def test_norm_subadditive():
    for a in EXPRESSION_POOL:
        for b in EXPRESSION_POOL[::3]:
            xa, xb = make_trajectory(a, 2.0), make_trajectory(b, 2.0)
            s = linear_combination(1.0, xa, 1.0, xb)
            assert s.norm.c1 <= xa.norm.c1 + xb.norm.c1 + 1e-9


def test_linear_combination_values():
    xa, xb = make_trajectory("sin(t)", 1.0), make_trajectory("t^2", 1.0)
    s = linear_combination(2.0, xa, -3.0, xb)
    ts = np.linspace(0, 1, 11)
    np.testing.assert_allclose(s.values(ts), 2 * np.sin(ts) - 3 * ts**2, rtol=1e-15, atol=1e-15)
    np.testing.assert_allclose(s.derivatives(ts), 2 * np.cos(ts) - 6 * ts, rtol=1e-15, atol=1e-15)
