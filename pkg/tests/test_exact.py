import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gmestab.exact import ONE, ROOT2, ZERO, QSqrt2

fracs = st.fractions(min_value=-50, max_value=50, max_denominator=20)
elems = st.builds(QSqrt2, fracs, fracs)


@given(elems, elems)
def test_arithmetic_matches_floats(a, b):
    assert float(a + b) == pytest.approx(float(a) + float(b), abs=1e-9)
    assert float(a - b) == pytest.approx(float(a) - float(b), abs=1e-9)
    assert float(a * b) == pytest.approx(float(a) * float(b), rel=1e-9, abs=1e-9)
    if b:
        assert (a / b) * b == a


@given(elems, elems)
def test_ordering_is_exact(a, b):
    d = float(a) - float(b)
    if abs(d) > 1e-9:
        assert (a < b) == (d < 0)
    assert (a <= b) == (not a > b)
    assert (a == b) == (a - b == ZERO)


def test_signum_near_cancellation():
    # 99/70 is a convergent of sqrt2, so 99 - 70 sqrt2 is tiny but positive
    assert QSqrt2(99, -70).signum() == 1
    assert QSqrt2(-99, 70).signum() == -1
    assert QSqrt2(140, -99).signum() == -1
    assert ZERO.signum() == 0


def test_constants_and_str():
    assert ROOT2 * ROOT2 == 2
    assert str(1 + 2 * ROOT2) == "1+2*sqrt2"
    assert str(QSqrt2(0, Fraction(1, 2))) == "1/2*sqrt2"
    assert float(ROOT2) == pytest.approx(math.sqrt(2))
    assert ONE == 1 and hash(ONE) == hash(QSqrt2(1, 0))


@given(elems)
def test_json_round_trip(a):
    assert QSqrt2.from_json(a.to_json()) == a


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO
    with pytest.raises(TypeError):
        QSqrt2.of(0.5)
