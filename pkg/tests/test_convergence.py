import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lkweld.convergence import NUMERICAL_FLOOR, fit_order

X = [0.08, 0.04, 0.02, 0.01]


@settings(max_examples=50, deadline=None)
@given(order=st.floats(0.5, 4.0), const=st.floats(1e-3, 1e3))
def test_exact_power_law(order, const):
    e = [const * x**order for x in X]
    fit = fit_order(X, e, floor=0.0)
    assert fit.slope == pytest.approx(order, abs=1e-10)
    assert fit.intercept == pytest.approx(np.log(const), abs=1e-8)
    assert fit.half_width < 1e-6


def test_matches_polyfit_on_noisy_data(rng):
    e = np.array(X) ** 2 * np.exp(0.1 * rng.normal(size=4))
    fit = fit_order(X, e)
    assert fit.slope == pytest.approx(np.polyfit(np.log(X), np.log(e), 1)[0], abs=1e-12)
    assert fit.half_width > 0


def test_floor_exclusion():
    e = [1e-4, 2.5e-5, 1e-10, 1e-12]
    fit = fit_order(X, e)
    assert fit.used == (True, True, False, False)
    assert fit.slope == pytest.approx(2.0)
    assert fit.half_width is None
    assert "2 points" in fit.describe()


def test_degenerate():
    fit = fit_order(X, [NUMERICAL_FLOOR] * 4)
    assert fit.degenerate
    assert "degenerate" in fit.describe()


def test_length_mismatch():
    with pytest.raises(ValueError):
        fit_order(X, [1.0, 2.0])
