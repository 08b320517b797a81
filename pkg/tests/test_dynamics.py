from fractions import Fraction
from math import log, sqrt

import pytest
from hypothesis import given, strategies as st

from streamzeros import (BranchOutOfRange, CodeWord, NotAdmissible,
                         NotAnOrbit, NotHyperbolic, TorusSeq, Verdict,
                         alphabet, decode, encode, entropy_estimate,
                         entropy_exact, is_admissible, is_member, orbit,
                         parse_poly, periodic_orbit, preimage)
from streamzeros.dynamics import form3
from streamzeros.errors import UnsupportedConstantTerm

F = Fraction
KANEKO = parse_poly("z^2-3z+1")
NEG3 = parse_poly("-3z^2+1")

seeds = st.tuples(st.integers(2, 300), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6)).map(
    lambda t: (F(t[1] % t[0], t[0]), F(t[2] % t[0], t[0])))


def test_form3():
    assert form3(KANEKO) == [1, -3, 1]
    assert form3(NEG3) == [1, 0, -3]
    assert form3(parse_poly("-z^2+3z-1")) == [1, -3, 1]
    with pytest.raises(UnsupportedConstantTerm):
        form3(parse_poly("z^2-3z+2"))


def test_alphabet_examples():
    assert alphabet(KANEKO).letters == (-2, -1, 0, 1)
    assert alphabet(parse_poly("z-2")).letters == (-1, 0)
    assert alphabet(NEG3).letters == (-2, -1, 0)


def test_orbit_examples():
    x = orbit(KANEKO, (F(0), F(1, 2)), 4)
    assert x.values == (0, F(1, 2), F(1, 2), 0, F(1, 2), F(1, 2))
    y = orbit(NEG3, (F(1, 4), F(0)), 4)
    assert y.values == (F(1, 4), 0, F(3, 4), 0, F(1, 4), 0)


def test_backward_branches():
    x = orbit(NEG3, (F(1, 3), F(1, 2)), 0, 1, branch=2)
    assert is_member(NEG3, x)
    assert x.start_index == -1
    # 3 x_{-1} = x_1 mod 1 with x_1 = 1/2: residues 1/6, 1/2, 5/6
    assert x.values[0] == F(5, 6)
    with pytest.raises(BranchOutOfRange):
        orbit(NEG3, (F(0), F(0)), 0, 1, branch=3)


def test_periodic_orbit():
    x = periodic_orbit(KANEKO, (F(0), F(1, 2)))
    assert x.periodic and x.values == (0, F(1, 2), F(1, 2))


def test_encode_examples():
    x = periodic_orbit(KANEKO, (F(0), F(1, 2)))
    w = encode(KANEKO, x)
    assert w.letters == (-1, 1, -1) and w.start_index == 0
    assert w.rotated_to(2).letters == (-1, -1, 1)
    win = TorusSeq(0, (F(0), F(1, 2), F(1, 2), F(0)))
    w = encode(KANEKO, win)
    assert w.letters == (-1, -1) and w.start_index == 2


def test_encode_rejects_non_orbits():
    with pytest.raises(NotAnOrbit):
        encode(KANEKO, TorusSeq(0, (F(0), F(1, 3), F(1, 3))))


def test_decode_examples():
    x = decode(KANEKO, CodeWord((-1, -1, 1), periodic=True, start_index=2))
    assert x.periodic
    assert [x.entry(n) for n in range(6)] == [0, F(1, 2), F(1, 2)] * 2


def test_admissibility_examples():
    assert is_admissible(KANEKO, CodeWord((-1, -1, 1), periodic=True)) is Verdict.YES
    assert is_admissible(KANEKO, CodeWord((1, 1, 1), periodic=True)) is Verdict.NO
    pre = preimage(KANEKO, CodeWord((1, 1, 1), periodic=True))
    assert set(pre.values) == {-1}
    with pytest.raises(NotAdmissible):
        decode(KANEKO, CodeWord((1, 1, 1), periodic=True))


def test_finite_word_admissibility():
    assert is_admissible(KANEKO, CodeWord((0,))) is Verdict.YES
    assert is_admissible(KANEKO, CodeWord((1,))) is Verdict.NO


def test_decode_needs_hyperbolic():
    with pytest.raises(NotHyperbolic):
        decode(parse_poly("z^2-2z+1"), CodeWord((0,), periodic=True))


@given(seeds)
def test_roundtrip_kaneko(seed):
    x = periodic_orbit(KANEKO, seed)
    assert decode(KANEKO, encode(KANEKO, x)) == x


@given(seeds)
def test_roundtrip_neg3(seed):
    x = periodic_orbit(NEG3, seed)
    assert decode(NEG3, encode(NEG3, x)) == x


@given(seeds, st.integers(-7, 7))
def test_encode_shift_equivariant(seed, d):
    x = periodic_orbit(KANEKO, seed)
    a, b = encode(KANEKO, x.shifted(d)), encode(KANEKO, x).shifted(d)
    assert all(a.entry(n) == b.entry(n) for n in range(-12, 12))


@given(seeds)
def test_encoded_letters_in_alphabet(seed):
    x = periodic_orbit(KANEKO, seed)
    assert all(a in alphabet(KANEKO) for a in encode(KANEKO, x).letters)


def test_windowed_decode():
    x = periodic_orbit(KANEKO, (F(1, 7), F(3, 7)))
    w = encode(KANEKO, x)
    y = decode(KANEKO, w, window=(-4, 9))
    assert all(y.entry(n) == x.entry(n) for n in range(-4, 10))


def test_laurent_roundtrip():
    p = parse_poly("z^-1-3+z")
    x = periodic_orbit(p, (F(2, 9), F(5, 9)))
    assert decode(p, encode(p, x)) == x


def test_entropy_exact_examples():
    assert abs(entropy_exact(KANEKO) - log((3 + sqrt(5)) / 2)) < 1e-12
    assert abs(entropy_exact(NEG3) - log(3)) < 1e-12
    assert entropy_exact(parse_poly("z^2-2z+1")) == 0.0
    assert abs(entropy_exact(parse_poly("z^2-5z+6")) - log(6)) < 1e-12


def test_entropy_estimate_counts():
    est = entropy_estimate(KANEKO, 4, 64)
    assert est.rows[0][1] == 4
    counts = [c for _, c, _ in est.rows]
    assert counts == sorted(counts)


def test_entropy_estimate_thread_independent():
    a = entropy_estimate(NEG3, 6, 32, threads=1)
    b = entropy_estimate(NEG3, 6, 32, threads=4)
    assert a == b


def test_entropy_estimate_neg3_full_shift():
    est = entropy_estimate(NEG3, 6, 64)
    assert est.rows[-1][1] == 3 ** 6
