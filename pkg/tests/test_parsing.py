import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lkweld.caratheodory import CaratheodoryError, DrivingFunction, Term
from lkweld.parsing import ParseError, parse_delta, parse_driving

small = st.floats(-0.15, 0.15, allow_nan=False)


class TestDriving:
    def test_trivial(self):
        p = parse_driving("p = 1")
        assert p.degree == 0

    def test_terms(self):
        p = parse_driving("p = 1 + (0.2, 0.1)*z^2 + (0, 0.3)*exp(-0.5*t)*z^1")
        assert p.coefficients(0.0)[2] == 0.2 + 0.1j
        assert p.coefficients(2.0)[1] == pytest.approx(0.3j * math.exp(-1.0))

    def test_whitespace_insensitive(self):
        a = parse_driving("p=1+(0.2,0)*z^3")
        b = parse_driving("  p =  1 +  ( 0.2 , 0 ) * z ^ 3 ")
        assert np.array_equal(a.coefficients(), b.coefficients())

    @pytest.mark.parametrize("text,pos", [
        ("q = 1", 0),
        ("p = 2", 4),
        ("p = 1 + (0.2,0.1)*z^0", 20),
        ("p = 1 + (0.2)*z^1", 12),
        ("p = 1 + (0.2,0.1)*z^1 junk", 22),
    ])
    def test_errors_report_position(self, text, pos):
        with pytest.raises(ParseError) as info:
            parse_driving(text)
        assert info.value.position == pos

    def test_positivity_enforced(self):
        with pytest.raises(CaratheodoryError):
            parse_driving("p = 1 + (0.9,0)*z^1 + (0,0.5)*z^2")

    def test_horizon(self):
        p = parse_driving("p = 1 + (0.2,0)*exp(2*t)*z^1", horizon=0.5)
        assert p.horizon == 0.5


@settings(max_examples=60, deadline=None)
@given(coeffs=st.lists(st.tuples(small, small, st.floats(-1, 0)), min_size=0, max_size=4))
def test_driving_round_trip(coeffs):
    terms = tuple(Term(k + 1, complex(a, b), lam) for k, (a, b, lam) in enumerate(coeffs))
    p = DrivingFunction(terms)
    q = parse_driving(str(p))
    for t in (0.0, 0.7):
        assert np.array_equal(p.coefficients(t), q.coefficients(t))


class TestDelta:
    def test_forms(self):
        shape = parse_delta("0.5 + cos(2*psi) - 0.3*sin(psi)")
        psi = np.linspace(0, 6, 11)
        assert np.max(np.abs(shape(psi) - (0.5 + np.cos(2 * psi) - 0.3 * np.sin(psi)))) < 1e-15
        assert not shape.constant
        assert parse_delta("2").constant

    @pytest.mark.parametrize("text", ["cos(psi", "tan(psi)", "0.3*", "cos(2psi)", "cos(psi) +"])
    def test_errors(self, text):
        with pytest.raises(ParseError):
            parse_delta(text)


@settings(max_examples=60, deadline=None)
@given(items=st.lists(st.tuples(st.sampled_from(["cos", "sin", "const"]),
                                 st.integers(1, 6), st.floats(-2, 2, allow_nan=False)),
                      min_size=1, max_size=5))
def test_delta_round_trip(items):
    items = tuple((kind, 0 if kind == "const" else k, amp) for kind, k, amp in items)
    from lkweld.parsing import DeltaShape

    shape = DeltaShape(items)
    assert parse_delta(str(shape)) == shape
