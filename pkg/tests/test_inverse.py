from math import sqrt

import numpy as np
import pytest
import sympy

from streamzeros import (FiniteSupport, Indeterminate, NotHyperbolic,
                         RootIsolationFailure, find_roots, inverse,
                         is_hyperbolic, parse_poly, verify_inverse, window_of)
from streamzeros.streams import convolve

WP, WM = (3 + sqrt(5)) / 2, (3 - sqrt(5)) / 2


def kaneko(n):
    return -WP ** (-(n + 1)) / sqrt(5) if n >= 0 else -WM ** (-n - 1) / sqrt(5)


def test_kaneko_roots():
    rs = find_roots(parse_poly("z^2-3z+1"))
    vals = sorted(r.value.real for r in rs.roots)
    assert np.allclose(vals, [WM, WP], atol=1e-14)
    assert all(r.error_radius < 1e-12 for r in rs.roots)


def test_neg3_roots():
    vals = sorted(r.value.real for r in find_roots(parse_poly("-3z^2+1")).roots)
    assert np.allclose(vals, [-1 / sqrt(3), 1 / sqrt(3)], atol=1e-14)


def _key(c):
    return (round(c.real, 8), round(c.imag, 8))


@pytest.mark.parametrize("text", ["z^3-z-1", "z^4-z^3+2z-1", "5z^5-3z^2+z+7", "z^3-3z^2+3z-1"])
def test_roots_against_sympy(text):
    p = parse_poly(text)
    ref = [complex(r.evalf(30)) for r in sympy.Poly(list(reversed(p.dense())), sympy.Symbol("z")).all_roots()]
    got = find_roots(p).values()
    assert np.allclose(sorted(got, key=_key), sorted(ref, key=_key), atol=1e-10)


def test_repeated_root_multiplicity():
    rs = find_roots(parse_poly("z^2-2z+1"))
    assert len(rs.roots) == 1 and rs.roots[0].multiplicity == 2


def test_hyperbolicity():
    h = is_hyperbolic(parse_poly("z^2-3z+1"))
    assert h.hyperbolic and abs(h.margin - (1 - WM)) < 1e-12
    assert is_hyperbolic(parse_poly("-3z^2+1"))
    assert not is_hyperbolic(parse_poly("z-1"))
    assert not is_hyperbolic(parse_poly("z^2+1"))


def test_hyperbolic_tolerance_band():
    # root 1.0001 sits inside a band of width 1e-3
    assert not is_hyperbolic(parse_poly("10000z-10001"), tol=1e-3)
    assert is_hyperbolic(parse_poly("10000z-10001"), tol=1e-6)


def test_kaneko_inverse_entries():
    inv = inverse(parse_poly("z^2-3z+1"))
    w = window_of(inv, -20, 20)
    assert np.allclose(w.values, [kaneko(n) for n in range(-20, 21)], atol=1e-12, rtol=0)
    assert abs(w.entry(-1) + 1 / sqrt(5)) < 1e-15
    assert abs(w.entry(0) + 1 / (WP * sqrt(5))) < 1e-15


def test_kaneko_exact_entries():
    inv = inverse(parse_poly("z^2-3z+1"))
    assert str(inv.exact_entry(-1)) == "-sqrt(5)/5"


def test_simple_tails():
    w = window_of(inverse(parse_poly("z-2")), -2, 3)
    assert np.allclose(w.values, [0, 0, -0.5, -0.25, -0.125, -0.0625])
    w = window_of(inverse(parse_poly("2z-1")), -4, 1)
    # 2z - 1 = 2 (z - 1/2): anticausal, a_{-k} = (1/2)**k
    assert np.allclose(w.values, [0.0625, 0.125, 0.25, 0.5, 0, 0])


@pytest.mark.parametrize("text", ["z^2-3z+1", "-3z^2+1", "z^3-z-1", "z^2-4z+4", "2z^3-7z^2+2",
                                  "z^2+z+3", "z^-1-3+z", "z^4-z^3+2z-1", "z"])
def test_inverse_verifies(text):
    p = parse_poly(text)
    assert verify_inverse(p, inverse(p), -25, 25, 1e-9)


def test_verify_inverse_rejects_wrong_inverse():
    assert not verify_inverse(parse_poly("z-2"), inverse(parse_poly("z-3")), -5, 5, 1e-9)


def test_monomial_inverse():
    inv = inverse(parse_poly("-2z^3"))
    assert isinstance(inv, FiniteSupport)
    assert inv.entry(-3) == -0.5


def test_not_hyperbolic_raises():
    with pytest.raises(NotHyperbolic):
        inverse(parse_poly("z^2-2z+1"))
    with pytest.raises(NotHyperbolic):
        inverse(parse_poly("z^2+z+1"))


def test_inverse_is_two_sided():
    p = parse_poly("z^3-z-1")
    inv = inverse(p)
    w = window_of(convolve(inv, FiniteSupport.from_poly(p)), -15, 15)
    assert np.allclose(w.values, [1.0 if n == 0 else 0.0 for n in range(-15, 16)], atol=1e-10)
