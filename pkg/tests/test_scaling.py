import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anaqsim.errors import InvalidArgumentError
from anaqsim.scaling import ErrorMonomialSet, legendre_scaling, loglog_slope


@pytest.mark.parametrize(
    "points,alpha,rate",
    [
        ([(2, 0), (0, 1)], 0.5, 0.5),
        ([(2, 0), (1, 1), (0, 2)], 1.0, 1.0),
        ([(3, 0), (2, 1), (1, 2), (0, 3)], 1.0, 2.0),
    ],
)
def test_table_examples(points, alpha, rate):
    r = legendre_scaling(ErrorMonomialSet(tuple(points)))
    assert r.alpha == pytest.approx(alpha)
    assert r.rate_exponent == pytest.approx(rate)
    assert r.alpha_range is None


def test_kink_gives_range():
    r = legendre_scaling([(0, 2), (1, 1), (3, 0)])
    assert r.rate_exponent == 1.0
    assert r.alpha_range == (0.5, 1.0)
    assert r.alpha_mid == 0.75


@pytest.mark.parametrize("m", [1, 2, 3])
def test_single_point(m):
    r = legendre_scaling([(0, m)])
    assert r.rate_exponent == m
    assert r.alpha_range == (0.0, math.inf)


def test_invalid_sets():
    with pytest.raises(InvalidArgumentError):
        ErrorMonomialSet(())
    with pytest.raises(InvalidArgumentError):
        ErrorMonomialSet(((1, 1), (1, 2)))
    with pytest.raises(InvalidArgumentError):
        ErrorMonomialSet(((-1, 1),))
    with pytest.raises(InvalidArgumentError):
        legendre_scaling([(2, 0), (3, 0)])  # envelope starts right of k1 = 1


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=5, max_size=5), st.integers(0, 4))
def test_dominated_points_do_not_matter(extra, which):
    base = [(0, 2), (1, 1), (2, 0)]
    ref = legendre_scaling(base)
    # any point strictly above the lower envelope (here B(k) = max(2 - k, 0))
    k1 = 3 + which
    pts = base + [(k1, 1 + extra[0])]
    assert legendre_scaling(pts) == ref


def test_loglog_exact_power_law():
    eps = np.logspace(-5, -2, 5)
    slope, intercept, r2 = loglog_slope(list(zip(eps, 7 * eps**2)))
    assert slope == pytest.approx(2.0, abs=1e-6)
    assert intercept == pytest.approx(math.log(7))
    assert r2 == pytest.approx(1.0)


@settings(max_examples=40, deadline=None)
@given(st.floats(1e-3, 1e3), st.floats(-3, 3))
def test_loglog_recovers_exponent(coef, p):
    eps = np.logspace(-4, -1, 6)
    slope, _, _ = loglog_slope(list(zip(eps, coef * eps**p)))
    assert slope == pytest.approx(p, abs=1e-6)


def test_loglog_errors():
    with pytest.raises(InvalidArgumentError):
        loglog_slope([(1e-3, 1.0), (1e-2, 2.0)])
    with pytest.raises(InvalidArgumentError):
        loglog_slope([(1e-3, 1.0), (1e-2, 0.0), (1e-1, 3.0)])
