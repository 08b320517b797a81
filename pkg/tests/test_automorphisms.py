from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from sympy.ntheory.continued_fraction import continued_fraction_periodic
from sympy.solvers.diophantine.diophantine import diop_DN

from streamzeros import (IntMatrix, QuadIrr, apply_automorphism,
                         block_images, cf_expand, cf_matrices, is_saut,
                         parse_poly, parse_quadirr, pell_solve,
                         periodic_orbit, saut_eigendata, saut_group)
from streamzeros.automorphisms import (companion, is_minimal_generator,
                                       pell_of_generator, saut_from_pell,
                                       saut_search)
from streamzeros.errors import (NegativeDiscriminant, RationalInput, SquareD,
                                UnsupportedDegree)

F = Fraction
M = IntMatrix
KANEKO = parse_poly("z^2-3z+1")
NEG3 = parse_poly("-3z^2+1")
DOUBLE = parse_poly("z^2-2z+1")
B_KANEKO = M(((-1, 1), (-1, 2)))
B_NEG3 = M(((2, -1), (-3, 2)))
B_DOUBLE = M(((0, 1), (-1, 2)))


def same_class(g, b):
    return g in (b, -b, b.inverse(), -b.inverse())


def test_matrix_basics():
    assert B_KANEKO.det() == -1 and B_NEG3.det() == 1
    assert B_KANEKO @ B_KANEKO.inverse() == M.identity(2)
    assert B_NEG3 ** -2 == (B_NEG3.inverse() @ B_NEG3.inverse())


def test_companion():
    assert companion(KANEKO).rows == ((0, 1), (-1, 3))
    assert companion(DOUBLE).rows == ((0, 1), (-1, 2))
    assert companion(NEG3).rows == ((0, 1), (3, 0))


def test_is_saut():
    assert is_saut(B_KANEKO, KANEKO)
    assert is_saut(B_NEG3, NEG3)
    assert not is_saut(M(((1, 1), (0, 1))), KANEKO)


def test_block_images():
    assert block_images(B_KANEKO, KANEKO, 0).rows == ((-1, 1), (-1, 2))
    assert block_images(B_KANEKO, KANEKO, 1).rows == ((-1, 2), (-2, 5))
    assert block_images(B_NEG3, NEG3, 1).rows == ((-3, 2), (6, -3))


def test_eigendata():
    lams = [lam for _, lam in saut_eigendata(B_NEG3, NEG3)]
    assert lams == [parse_quadirr("2-sqrt(3)"), parse_quadirr("2+sqrt(3)")]
    lams = [lam for _, lam in saut_eigendata(B_KANEKO, KANEKO)]
    assert lams[0] * lams[1] == B_KANEKO.det()
    assert sorted(lams, key=float) == [parse_quadirr("(1-sqrt(5))/2"), parse_quadirr("(1+sqrt(5))/2")]


@pytest.mark.parametrize("theta,p,q,d", [("(3+sqrt(5))/2", 3, 2, 5), ("1/sqrt(3)", 0, 3, 3),
                                          ("sqrt(13)", 0, 1, 13), ("(1+sqrt(7))/3", 1, 3, 7),
                                          ("(-5+sqrt(21))/2", -5, 2, 21)])
def test_cf_matches_sympy(theta, p, q, d):
    cf = cf_expand(parse_quadirr(theta))
    ref = continued_fraction_periodic(p, q, d)
    assert list(cf.preperiod) + [list(cf.period)] == ref


def test_cf_examples():
    assert str(cf_expand(parse_quadirr("(3+sqrt(5))/2"))) == "[2;(1)]"
    assert str(cf_expand(parse_quadirr("1/sqrt(3)"))) == "[0;1,(1,2)]"
    assert str(cf_expand(QuadIrr(F(7, 3)))) == "[2;3]"


def test_cf_value_converges():
    theta = parse_quadirr("(3+sqrt(5))/2")
    assert abs(float(cf_expand(theta).value(40)) - float(theta)) < 1e-12


def test_cf_matrices():
    m = cf_matrices(cf_expand(parse_quadirr("(3+sqrt(5))/2")))
    assert (m.C, m.G, m.Cp, m.Gp, m.E, m.F, m.Ep, m.Fp) == (2, 1, 1, 0, 1, 1, 1, 0)
    m = cf_matrices(cf_expand(parse_quadirr("1/sqrt(3)")))
    assert (m.C, m.G, m.Cp, m.Gp, m.E, m.F, m.Ep, m.Fp) == (1, 1, 0, 1, 3, 2, 1, 1)
    assert same_class(m.saut_element(1), M(((2, 1), (3, 2))))
    with pytest.raises(RationalInput):
        cf_matrices(cf_expand(QuadIrr(F(7, 3))))


def test_pell_examples():
    for d, want in ((5, (1, 1, -4)), (12, (4, 1, 4)), (2, (2, 2, -4)), (61, (39, 5, -4))):
        s = pell_solve(d)
        assert (s.w, s.v, s.sign) == want
    with pytest.raises(SquareD):
        pell_solve(9)


def _pell_oracle(d):
    sols = [(abs(v), abs(w), n) for n in (-4, 4) for w, v in diop_DN(d, n) if v]
    return min(sols)


@given(st.integers(2, 400).filter(lambda d: int(d ** 0.5) ** 2 != d))
def test_pell_matches_sympy(d):
    s = pell_solve(d)
    v, w, n = _pell_oracle(d)
    assert (s.v, s.w, s.sign) == (v, w, n)


def test_pell_beyond_brute_force():
    s = pell_solve(94)
    assert (s.w, s.v, s.sign) == (4286590, 442128, 4)


def test_saut_examples():
    for p, b in ((KANEKO, B_KANEKO), (NEG3, B_NEG3), (DOUBLE, B_DOUBLE)):
        c = saut_group(p)
        assert c.kind == "infinite_cyclic"
        assert same_class(c.generator, b)
    c = saut_group(parse_poly("3z^2+4z+1"))
    assert c.kind == "cyclic_order2"
    assert c.generator.rows == ((2, 1), (-3, -2))
    assert c.generator @ c.generator == M.identity(2)
    assert saut_group(parse_poly("4z^2+5z+1")).kind == "trivial"


def test_saut_errors():
    with pytest.raises(NegativeDiscriminant):
        saut_group(parse_poly("z^2+z+1"))
    with pytest.raises(UnsupportedDegree):
        saut_group(parse_poly("z^3-z-1"))


@pytest.mark.parametrize("text", ["z^2-3z+1", "-3z^2+1", "z^2-5z+1", "z^2+3z-1", "-z^2+3z+1", "z^2-z-1"])
def test_generator_is_fundamental(text):
    p = parse_poly(text)
    g = saut_group(p).generator
    assert is_saut(g, p)
    assert is_minimal_generator(g, p)
    w, v, sign = pell_of_generator(g, p)
    s = pell_solve((w * w - sign) // (v * v))
    assert (w, v) == (s.w, s.v)
    assert same_class(saut_from_pell(p, s), g)


def test_saut_search_trivial():
    found = saut_search(parse_poly("4z^2+5z+1"), 50)
    assert set(found) == {M.identity(2), -M.identity(2)}


def test_apply_automorphism_block():
    x = periodic_orbit(KANEKO, (F(1, 5), F(2, 5)))
    y = apply_automorphism(B_KANEKO, x, KANEKO)
    assert y.entry(0) == (-x.entry(0) + x.entry(1)) % 1
    assert y.entry(1) == (-x.entry(0) + 2 * x.entry(1)) % 1
    assert y.entry(2) == (-2 * x.entry(0) + 5 * x.entry(1)) % 1


@given(st.integers(2, 150), st.integers(0, 149), st.integers(0, 149),
       st.sampled_from([B_KANEKO, B_KANEKO.inverse(), -B_KANEKO, B_KANEKO @ B_KANEKO]), st.sampled_from([B_KANEKO, -B_KANEKO.inverse(), M.identity(2)]))
def test_homomorphism(den, a, b, g, h):
    x = periodic_orbit(KANEKO, (F(a % den, den), F(b % den, den)))
    lhs = apply_automorphism(g, apply_automorphism(h, x, KANEKO), KANEKO)
    assert lhs == apply_automorphism(g @ h, x, KANEKO)
