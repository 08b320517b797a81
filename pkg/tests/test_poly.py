import random

import pytest
import sympy
from hypothesis import given, strategies as st

from streamzeros import (LaurentPoly, ParseError, bezout, format_poly,
                         parse_poly, poly_gcd, resultant,
                         squarefree_decomposition)
from streamzeros.poly import int_det

Z = sympy.Symbol("z")


def to_sympy(p):
    return sum(a * Z ** e for e, a in p.items())


polys = st.lists(st.integers(-9, 9), min_size=2, max_size=5).filter(
    lambda c: c[0] != 0 and c[-1] != 0).map(LaurentPoly.from_dense)


def test_parse_examples():
    assert parse_poly("z^2-3z+1").coeffs == {0: 1, 1: -3, 2: 1}
    assert parse_poly("z^-1-3+z").coeffs == {-1: 1, 0: -3, 1: 1}
    assert parse_poly("2*z^(-2) + z").coeffs == {-2: 2, 1: 1}
    assert parse_poly("-3z^2+1").low == 0


@pytest.mark.parametrize("bad", ["", "z^^2", "3 4", "z-z", "(z-3)"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_poly(bad)


@given(polys, st.integers(-3, 3))
def test_format_roundtrip(p, h):
    q = p.shift(h)
    assert parse_poly(format_poly(q)) == q


@given(polys, polys)
def test_gcd_matches_sympy(p, q):
    g = poly_gcd(p, q)
    ref = sympy.Poly(sympy.gcd(to_sympy(p), to_sympy(q)), Z)
    assert g.degree == ref.degree()


def test_gcd_coprime_is_unit():
    assert poly_gcd(parse_poly("z-2"), parse_poly("z-3")).degree == 0


def test_resultant_examples():
    assert resultant(parse_poly("z-2"), parse_poly("z-3")).delta == 1
    assert resultant(parse_poly("z^2-3z+1"), parse_poly("z-1")).delta == -1
    info = resultant(parse_poly("z-2"), parse_poly("z-3"))
    assert int_det([list(r) for r in info.matrix]) == info.delta


@given(polys, polys)
def test_resultant_abs_matches_sympy(p, q):
    ref = sympy.resultant(to_sympy(p), to_sympy(q), Z)
    assert abs(resultant(p, q).delta) == abs(int(ref))


def test_resultant_shift_invariant():
    p, q = parse_poly("z^2-3z+1"), parse_poly("z+2")
    assert resultant(p.shift(3), q.shift(-2)).delta == resultant(p, q).delta


def test_bezout_examples():
    a, b, d = bezout(parse_poly("z-2"), parse_poly("z-3"))
    assert (a, b, d) == (LaurentPoly({0: 1}), LaurentPoly({0: -1}), 1)
    p, q = parse_poly("z^2-3z+1"), parse_poly("z-1")
    a, b, d = bezout(p, q)
    assert d == -1 and a * p + b * q == LaurentPoly({0: -1})


@given(polys, polys)
def test_bezout_identity(p, q):
    d = resultant(p, q).delta
    if d == 0:
        return
    a, b, delta = bezout(p, q)
    assert delta == d
    assert a * p + b * q == LaurentPoly({0: d})


def test_bezout_random_pairs():
    rng = random.Random(11)
    for _ in range(100):
        p = LaurentPoly.from_dense([rng.randint(1, 9)] + [rng.randint(-9, 9) for _ in range(rng.randint(0, 3))] + [1])
        q = LaurentPoly.from_dense([rng.randint(1, 9), rng.randint(-9, 9), rng.choice([-1, 1, 2])])
        if resultant(p, q).delta:
            a, b, d = bezout(p, q)
            assert a * p + b * q == LaurentPoly({0: d})


def test_squarefree_decomposition():
    p = parse_poly("z^2-2z+1") * parse_poly("z+3")
    parts = {m: f for f, m in squarefree_decomposition(p) if f.degree}
    assert parts[2].degree == 1 and parts[1].degree == 1


def test_json_roundtrip():
    p = parse_poly("z^-2+4z^3")
    assert LaurentPoly.from_json(p.to_json()) == p
