from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from streamzeros import (IDENTITY, FiniteSupport, NonSummable, Window, add,
                         convolve, inverse, negate, parse_poly, scale, shift,
                         window_of)
from streamzeros.streams import Tail, dumps, loads, streams_close

entries = st.dictionaries(st.integers(-6, 6), st.fractions(-5, 5, max_denominator=6), max_size=5)
fs = entries.map(FiniteSupport)


def test_shift_convention():
    a = FiniteSupport({0: 1, 1: 2})
    b = shift(a, 1)
    assert b.entry(-1) == 1 and b.entry(0) == 2


def test_finite_difference_times_ones_is_identity():
    # (1, -1) against a long run of ones: the non-summable case handled on a window
    diff = FiniteSupport({0: 1, 1: -1})
    n = 30
    ones = FiniteSupport({i: 1 for i in range(0, n + 1)})
    prod = convolve(diff, ones)
    assert [prod.entry(i) for i in range(0, n + 1)] == [1] + [0] * n


def test_window_of_geometric_tail():
    inv = inverse(parse_poly("z-2"))
    w = window_of(inv, 0, 3)
    assert np.allclose(w.values, [-0.5, -0.25, -0.125, -0.0625], atol=1e-15)
    assert w.entry(-1) == 0


def test_tail_must_decay():
    with pytest.raises(NonSummable):
        Tail(1.0, (1.0,), "causal", 0)


def test_window_mass_raises_when_truncated():
    w = Window(0, 2, [1.0, 2.0, 3.0], tail_bound=0.5)
    assert w.sup_norm() >= 3.0
    with pytest.raises(NonSummable):
        w.l1_norm()


@given(fs, fs, fs)
def test_ring_laws(a, b, c):
    assert convolve(a, b) == convolve(b, a)
    assert convolve(convolve(a, b), c) == convolve(a, convolve(b, c))
    assert convolve(a, IDENTITY) == a
    assert convolve(a, add(b, c)) == add(convolve(a, b), convolve(a, c))


@given(fs, fs, st.integers(-5, 5))
def test_shift_equivariance(a, b, d):
    assert shift(convolve(a, b), d) == convolve(shift(a, d), b)


@given(fs)
def test_scalar_ops(a):
    assert add(a, negate(a)).is_zero
    assert scale(a, Fraction(2)) == add(a, a)


@given(fs)
def test_serialization_lossless(a):
    assert loads(dumps(a)) == a


def test_geometric_serialization():
    inv = inverse(parse_poly("z^2-3z+1"))
    back = loads(dumps(inv))
    assert streams_close(inv, back, -15, 15, 1e-15)
    assert back.is_exact


def test_convolve_tails_matches_direct():
    inv = inverse(parse_poly("z^2-3z+1"))
    p = FiniteSupport.from_poly(parse_poly("z^2-3z+1"))
    w = window_of(convolve(p, inv), -10, 10)
    assert np.allclose(w.values, [1.0 if n == 0 else 0.0 for n in range(-10, 11)], atol=1e-12)


def test_convolve_two_inverses():
    # (z-2)^-1 * (z-3)^-1 == ((z-2)(z-3))^-1
    a = inverse(parse_poly("z-2"))
    b = inverse(parse_poly("z-3"))
    c = inverse(parse_poly("z^2-5z+6"))
    w1 = window_of(convolve(a, b, -5, 5), -5, 5)
    w2 = window_of(c, -5, 5)
    assert np.allclose(w1.values, w2.values, atol=1e-10)


def test_convolve_mixed_sides():
    # inside and outside roots: (2z-1)^-1 * (z-3)^-1
    a = inverse(parse_poly("2z-1"))
    b = inverse(parse_poly("z-3"))
    c = inverse(parse_poly("2z-1") * parse_poly("z-3"))
    w1 = window_of(convolve(a, b, -8, 8), -8, 8)
    w2 = window_of(c, -8, 8)
    assert np.allclose(w1.values, w2.values, atol=1e-10)
