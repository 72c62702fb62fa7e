import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from delannoy.xfloat import XArray, XFloat, XFloatOverflow, xa_add

finite = st.floats(min_value=-1e300, max_value=1e300, allow_nan=False).filter(lambda x: x == 0 or abs(x) > 1e-300)


def test_normal_form():
    x = XFloat.make(12.0, 3)
    assert x.mantissa == 1.5 and x.exponent == 6
    assert XFloat.make(0.0).is_zero()


def test_beyond_double_range():
    big = XFloat.from_fraction(Fraction(3) ** 2000)
    assert big.log2_abs() == pytest.approx(2000 * math.log2(3), rel=1e-15)
    assert float(big) == math.inf
    ratio = XFloat.from_fraction(Fraction(3) ** 2001) / big
    assert float(ratio) == pytest.approx(3.0, rel=1e-15)


def test_from_fraction_small_and_negative():
    x = XFloat.from_fraction(Fraction(-1, 3 ** 700))
    assert x.mantissa < 0
    assert x.log2_abs() == pytest.approx(-700 * math.log2(3), rel=1e-15)


def test_overflow_is_reported():
    with pytest.raises(XFloatOverflow):
        XFloat.make(1.0, 2**62)


@given(finite, finite)
def test_arithmetic_matches_float(a, b):
    xa, xb = XFloat.from_float(a), XFloat.from_float(b)
    exact = Fraction(a) + Fraction(b)
    got = Fraction(float(xa + xb))
    if exact != 0:
        assert abs(got - exact) <= abs(exact) * Fraction(1, 2**50) + Fraction(abs(a) + abs(b)) * Fraction(1, 2**52)
    prod = (xa * xb).log2_abs()
    if a and b:
        assert prod == pytest.approx(math.log2(abs(a)) + math.log2(abs(b)), abs=1e-12)


@given(st.floats(min_value=-1e6, max_value=1e6))
def test_from_log2(v):
    assert XFloat.from_log2(v).log2_abs() == pytest.approx(v, abs=1e-9)


def test_xarray_add_and_scale():
    a = XArray.normalized(np.array([1.0, 3.0, 0.0]), np.array([0, 1000, 0]))
    b = XArray.normalized(np.array([1.0, 1.0, 0.0]), np.array([0, 1000, 0]))
    s = xa_add(a, b)
    assert float(s[0]) == 2.0
    assert s[1].log2_abs() == pytest.approx(1002.0)
    assert s[2].is_zero()
    t = s.scale(XFloat.make(0.5))
    assert float(t[0]) == 1.0
