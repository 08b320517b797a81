from fractions import Fraction
from math import sqrt

import pytest
from hypothesis import given, strategies as st

from streamzeros import QuadIrr, parse_quadirr
from streamzeros.quadratic import squarefree_split

rat = st.fractions(min_value=-20, max_value=20, max_denominator=12)
D = st.sampled_from([2, 3, 5, 6, 7, 13])


def test_parse_and_value():
    golden = parse_quadirr("(3+sqrt(5))/2")
    assert abs(float(golden) - (3 + sqrt(5)) / 2) < 1e-15
    assert str(golden) == "(3+sqrt(5))/2"
    assert parse_quadirr("sqrt(12)") == 2 * QuadIrr.sqrt(3)


def test_str_of_pure_surds():
    assert str(1 / QuadIrr.sqrt(3)) == "sqrt(3)/3"
    assert str(-1 / QuadIrr.sqrt(5)) == "-sqrt(5)/5"


def test_squarefree_split():
    # (squarefree part, square root of the square part)
    assert squarefree_split(12) == (3, 2)
    assert squarefree_split(50) == (2, 5)


def test_floor_and_sign_exact():
    x = parse_quadirr("(3-sqrt(5))/2")
    assert x.floor() == 0
    assert x.sign() == 1
    assert (x - 1).sign() == -1
    assert parse_quadirr("-sqrt(2)").floor() == -2


def test_rational_collapse():
    s = QuadIrr.sqrt(5)
    assert (s * s).is_rational
    assert (s * s).to_fraction() == 5


@given(rat, rat, rat, D)
def test_field_laws(a, b, c, d):
    x = QuadIrr(a) + b * QuadIrr.sqrt(d)
    y = QuadIrr(c) + QuadIrr.sqrt(d)
    assert x + y - y == x
    assert (x * y) / y == x
    assert abs(float(x * y) - float(x) * float(y)) < 1e-9 * max(1, abs(float(x * y)))


@given(rat, rat, D)
def test_floor_matches_float(a, b, d):
    x = QuadIrr(a) + b * QuadIrr.sqrt(d)
    f = float(x)
    if abs(f - round(f)) > 1e-9:
        assert x.floor() == int(f // 1)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QuadIrr(Fraction(1)) / QuadIrr(Fraction(0))
