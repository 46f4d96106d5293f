import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lkweld.homeo import CircleHomeo, MonotonicityError, circle_distance
from lkweld.trig import grid

TWO_PI = 2 * np.pi


def smooth_map(amps, n=128):
    x = grid(n)
    disp = sum(a * np.sin((k + 1) * x + k) / (k + 1) for k, a in enumerate(amps))
    return CircleHomeo(x + disp)


amplitudes = st.lists(st.floats(-0.25, 0.25), min_size=1, max_size=4)


@settings(max_examples=40, deadline=None)
@given(amps=amplitudes)
def test_monotone_lift_invariants(amps):
    h = smooth_map(amps)
    x = np.linspace(-7, 7, 301)
    assert np.all(np.diff(h(x)) > 0)
    assert np.max(np.abs(h(x + TWO_PI) - h(x) - TWO_PI)) < 1e-12


@settings(max_examples=40, deadline=None)
@given(amps=amplitudes, y=st.floats(-10, 10))
def test_inverse_round_trip(amps, y):
    h = smooth_map(amps)
    x = h.inverse(y)
    assert abs(h(x) - y) < 1e-12
    assert abs(h.inverse(h(x)) - x) < 1e-12


def test_identity():
    h = CircleHomeo.identity(64)
    x = np.array([0.1, 3.0, 7.5])
    assert np.max(np.abs(h(x) - x)) < 1e-15
    assert np.max(np.abs(h.inverse(x) - x)) < 1e-13


def test_compose_with_inverse_is_identity():
    h = smooth_map([0.2, -0.1, 0.05], n=256)
    ident = h.compose(h.inverse_homeo())
    assert ident.sup_distance(lambda x: x) < 1e-12


def test_non_monotone_rejected():
    x = grid(64)
    with pytest.raises(MonotonicityError):
        CircleHomeo(x + 1.5 * np.sin(x))
    lift = x.copy()
    lift[10] = lift[9]
    with pytest.raises(MonotonicityError):
        CircleHomeo(lift)


def test_rotation_conjugation():
    h = smooth_map([0.2, 0.1])
    a = 0.9
    g = h.conjugate_by_rotation(a)
    x = np.linspace(0, 6, 40)
    assert np.max(np.abs(g(x) - (h(x - a) + a))) < 1e-12


def test_circle_distance():
    assert circle_distance(0.1, TWO_PI - 0.1) == pytest.approx(0.2)
    assert circle_distance(np.pi, 0.0) == pytest.approx(np.pi)
    assert circle_distance(-0.3, 0.0) == pytest.approx(-0.3)
