from fractions import Fraction
from math import log

import pytest
from hypothesis import given, strategies as st

from streamzeros import (NotAnOrbit, NotCoprime, TorusSeq, conjugacy_check,
                         decompose, dim_check, dim_omega, entropy_exact,
                         enumerate_common_zeros, factor_check, is_member,
                         parse_poly)
from streamzeros.errors import NotUnimodular, WindowTooShort
from streamzeros.structure import random_members, sample_member

F = Fraction
PAIRS = [("z-2", "z-3"), ("z^2-3z+1", "z-1"), ("z-1", "z+1"), ("z^2+z-1", "z+3")]


def test_dim_examples():
    assert dim_omega(parse_poly("z^2-3z+1")) == 2
    assert dim_omega(parse_poly("z^2-2z")) == 1
    assert dim_omega(parse_poly("z^-1-3+z")) == 2


def test_dim_check_examples():
    p = parse_poly("z^2-3z+1")
    assert dim_check(p, 2, 8)
    assert not dim_check(p, 3, 2)


@pytest.mark.parametrize("text", ["z-2", "2z-1", "-3z^2+1", "z^3-z-1", "3z^2+4z+1", "z^-2+z"])
def test_dim_check_corpus(text):
    p = parse_poly(text)
    d = dim_omega(p)
    assert dim_check(p, d, 7)
    assert not dim_check(p, d + 1, 7)


def test_common_zeros():
    zs = enumerate_common_zeros(parse_poly("z-2"), parse_poly("z-3"), (0, 3))
    assert [x.values for x in zs] == [(0, 0, 0, 0)]
    zs = enumerate_common_zeros(parse_poly("z-1"), parse_poly("z+1"), (0, 2))
    assert sorted(x.values for x in zs) == [(0, 0, 0), (F(1, 2),) * 3]
    with pytest.raises(NotCoprime):
        enumerate_common_zeros(parse_poly("z-1"), parse_poly("z^2-1"))


def test_common_zeros_are_common():
    p, q = parse_poly("z^2+1"), parse_poly("z+3")  # resultant 10
    for x in enumerate_common_zeros(p, q, (0, 4)):
        for c in (p, q):
            vals = [sum(a * x.entry(n - e) for e, a in c.items()) for n in range(c.high, 5)]
            assert all(v.denominator == 1 for v in vals)


def test_factor_check():
    p, q = parse_poly("z-2"), parse_poly("z-3")
    # 4/7, 2/7, 1/7, 4/7, ... halves at each step, so it lies in Omega_{z-2}
    xs = [TorusSeq(0, tuple(F(4 ** (n + 1), 7) % 1 for n in range(8)))]
    assert is_member(p, xs[0])
    assert all(not factor_check(p, q, xs, d) for d in range(1, 7))
    assert factor_check(p, q, xs, 7)


@pytest.mark.parametrize("ps,qs", PAIRS)
def test_decompose_pairs(ps, qs):
    p, q = parse_poly(ps), parse_poly(qs)
    for x in random_members(p * q, 20, 12, denominator=89, seed=3):
        w = decompose(p, q, x)
        assert w.verify(p, q, x)


def test_decompose_explicit_cofactors():
    p, q = parse_poly("z-2"), parse_poly("z-3")
    x = sample_member(p * q, (F(1, 5), F(2, 5)), 8)
    w = decompose(p, q, x)
    # u = (3 - z) * x and v = (z - 2) * x
    for n in range(w.u.start_index, w.u.end_index + 1):
        assert w.u.entry(n) == (3 * x.entry(n) - x.entry(n - 1)) % 1
        assert w.v.entry(n) == (x.entry(n - 1) - 2 * x.entry(n)) % 1


def test_decompose_errors():
    p, q = parse_poly("z-2"), parse_poly("z-3")
    with pytest.raises(NotAnOrbit):
        decompose(p, q, TorusSeq(0, (F(1, 3), F(1, 5), F(1, 7))))
    with pytest.raises(WindowTooShort):
        decompose(p, q, TorusSeq(0, (F(1, 3),)))


@given(st.integers(2, 60), st.integers(0, 59), st.integers(0, 59))
def test_decompose_property(den, a, b):
    p, q = parse_poly("z^2-3z+1"), parse_poly("z+2")
    x = sample_member(p * q, (F(a % den, den), F(b % den, den), F(0)), 10)
    assert decompose(p, q, x).verify(p, q, x)


def test_conjugacy():
    q, r = parse_poly("z-2"), parse_poly("z-3")
    xs = random_members(q * r, 10, 10, seed=4)
    assert conjugacy_check(q, r, xs)
    with pytest.raises(NotUnimodular):
        conjugacy_check(parse_poly("z-1"), parse_poly("z+1"), [])
    with pytest.raises(NotCoprime):
        conjugacy_check(parse_poly("z-1"), parse_poly("z^2-1"), [])


def test_entropy_additive():
    q, r = parse_poly("z-2"), parse_poly("z-3")
    assert abs(entropy_exact(q * r) - entropy_exact(q) - entropy_exact(r)) < 1e-12
    assert abs(entropy_exact(q * r) - log(6)) < 1e-12
