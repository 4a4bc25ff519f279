import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from memvel.errors import DomainError, EvaluationError, ScheduleRangeError
from memvel.schedule import exponent_at, make_schedule


def test_constant_one():
    s = make_schedule(1.0, 2.0)
    assert s.m == s.M == 1.0
    assert s.is_constant


def test_rejects_values_above_one():
    with pytest.raises(ScheduleRangeError):
        make_schedule("1.2", 1.0)
    with pytest.raises(ScheduleRangeError):
        make_schedule(1.2, 1.0)


@pytest.mark.parametrize("definition", ["0", "-0.1", "t", "0.5*cos(t)"])
def test_rejects_non_positive_values(definition):
    with pytest.raises(ScheduleRangeError):
        make_schedule(definition, 2.0)


def test_float_noise_above_one_is_clamped():
    s = make_schedule("1 + 1e-13*t", 1.0)
    assert s.M == 1.0
    assert exponent_at(s, 1.0) == 1.0


def test_sine_schedule_bounds_against_grid():
    s = make_schedule("0.5 + 0.4*sin(t)", 2.0)
    grid = 0.5 + 0.4 * np.sin(np.linspace(0.0, 2.0, 10_000))
    assert s.m == pytest.approx(grid.min(), abs=1e-12)
    # the refined maximum sits at pi/2 and cannot be below the grid maximum
    assert s.M >= grid.max()
    assert s.M == pytest.approx(0.9, abs=1e-12)


@pytest.mark.parametrize("definition, t, expected", [(0.7, 0.3, 0.7), ("0.5+0.4*sin(t)", 0.0, 0.5),
                                                     ("0.5+0.4*sin(t)", math.pi / 2, 0.9)])
def test_exponent_at(definition, t, expected):
    s = make_schedule(definition, 2.0)
    assert exponent_at(s, t) == pytest.approx(expected, abs=1e-15)
    assert s(t) == exponent_at(s, t)


def test_exponent_at_domain():
    s = make_schedule(0.5, 1.0)
    with pytest.raises(DomainError):
        exponent_at(s, 1.5)
    with pytest.raises(DomainError):
        exponent_at(s, -1e-3)


def test_bad_horizon_and_undefined_expression():
    with pytest.raises(DomainError):
        make_schedule(0.5, 0.0)
    with pytest.raises(EvaluationError):
        make_schedule("0.5 + 0.1*log(t)", 1.0)


def test_callable_definition():
    s = make_schedule(lambda t: 0.6 + 0.2 * np.cos(t), 1.0)
    assert s.M == pytest.approx(0.8, abs=1e-15)
    assert s.m == pytest.approx(0.6 + 0.2 * math.cos(1.0), abs=1e-12)


def test_constant_expression_reports_equal_bounds():
    s = make_schedule("0.5*(1 + pi/10)", 1.0)
    assert s.m == s.M


SCHEDULES = st.sampled_from([
    "0.5 + 0.4*sin(t)", "0.6 + 0.3*cos(3*t)", "0.2 + 0.7*exp(-t)", "0.9 - 0.4*t/(1 + t)",
    "0.55 + 0.4*sin(7*t)^2", "0.3 + 0.2*abs(t - 0.7)", "1/(1 + t^2)",
])


@settings(max_examples=20, deadline=None)
@given(SCHEDULES, st.sampled_from([0.5, 1.0, 2.0, 3.0]), st.integers(0, 2**31))
def test_certified_bounds_contain_fresh_samples(definition, T, seed):
    s = make_schedule(definition, T)
    assert 0 < s.m <= s.M <= 1
    ts = np.random.default_rng(seed).uniform(0.0, T, 1000)
    for t in ts:
        v = exponent_at(s, t)
        assert s.m - 1e-9 <= v <= s.M + 1e-9
