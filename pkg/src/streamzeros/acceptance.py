"""Reproducible acceptance checks, shared by the test-suite and ``verify-all``.

Each ``criterion_N`` returns a :class:`CriterionResult`; the individual
sub-checks are kept so a failure shows exactly which claim did not hold.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import log, sqrt
import random
import time

import numpy as np

from . import automorphisms as au
from .dynamics import (CodeWord, Verdict, alphabet, decode, encode,
                       entropy_estimate, entropy_exact, is_admissible,
                       periodic_orbit)
from .inverse import inverse
from .poly import LaurentPoly, bezout, parse_poly, poly_gcd, resultant
from .quadratic import parse_quadirr
from .streams import IDENTITY, FiniteSupport, convolve, shift, window_of
from .structure import (decompose, dim_check, dim_omega,
                        enumerate_common_zeros, random_members)


@dataclass
class CriterionResult:
    number: int
    title: str
    checks: list = field(default_factory=list)  # (description, passed, detail)
    seconds: float = 0.0
    time_limit: float = None

    @property
    def passed(self):
        in_time = self.time_limit is None or self.seconds < self.time_limit
        return in_time and all(ok for _, ok, _ in self.checks)

    def add(self, description, ok, detail=""):
        self.checks.append((description, bool(ok), detail))

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        failed = [d for d, ok, _ in self.checks if not ok]
        tail = f" (failed: {'; '.join(failed)})" if failed else ""
        if self.time_limit is not None and self.seconds >= self.time_limit:
            tail += f" (over time limit {self.time_limit}s)"
        return f"[{status}] criterion {self.number}: {self.title} [{self.seconds:.2f}s]{tail}"


def _timed(fn):
    def run(*args, **kwargs):
        t0 = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t0
        return res
    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


KANEKO = parse_poly("z^2-3z+1")
NEG3 = parse_poly("-3z^2+1")
DOUBLE = parse_poly("z^2-2z+1")


def kaneko_entry(n):
    """Closed form of the inverse of ``z**2 - 3z + 1`` (floats)."""
    wp = (3 + sqrt(5)) / 2
    wm = (3 - sqrt(5)) / 2
    if n >= 0:
        return -wp ** (-(n + 1)) / sqrt(5)
    return -wm ** (-n - 1) / sqrt(5)


@_timed
def criterion_1():
    res = CriterionResult(1, "Kaneko formula reproduction", time_limit=1.0)
    inv = inverse(KANEKO)
    w = window_of(inv, -20, 20)
    closed = np.array([kaneko_entry(n) for n in range(-20, 21)])
    gap = float(np.max(np.abs(w.values - closed)))
    res.add("inverse matches closed form on [-20,20] to 1e-10", gap <= 1e-10, f"max gap {gap:.2e}")
    prod = window_of(convolve(FiniteSupport.from_poly(KANEKO), inv), -20, 20)
    ident = window_of(IDENTITY, -20, 20).values
    gap2 = float(np.max(np.abs(prod.values - ident)))
    res.add("P * inverse(P) == I on [-20,20] to 1e-9", gap2 <= 1e-9, f"max gap {gap2:.2e}")
    return res


@_timed
def criterion_2(n_orbits=50, seed=2):
    res = CriterionResult(2, "alphabet and coding")
    a = alphabet(KANEKO)
    res.add("K_P == {-2,-1,0,1}", a.letters == (-2, -1, 0, 1), str(a.letters))
    x = periodic_orbit(KANEKO, (Fraction(0), Fraction(1, 2)))
    word = encode(KANEKO, x).rotated_to(2)
    res.add("encode of (0,1/2,1/2) is periodic (-1,-1,1)", word.letters == (-1, -1, 1) and word.periodic,
            str(word.letters))
    rng = random.Random(seed)
    bad = 0
    for _ in range(n_orbits):
        q = rng.randint(2, 1000)
        x = periodic_orbit(KANEKO, (Fraction(rng.randrange(q), q), Fraction(rng.randrange(q), q)))
        if decode(KANEKO, encode(KANEKO, x)) != x:
            bad += 1
    res.add(f"decode(encode(x)) == x on {n_orbits} random rational orbits", bad == 0, f"{bad} failures")
    return res


@_timed
def criterion_3(grid=1024, word_len=10):
    res = CriterionResult(3, "entropy exact and estimated", time_limit=60.0)
    h1 = entropy_exact(KANEKO)
    target = log((3 + sqrt(5)) / 2)
    res.add("entropy_exact(z^2-3z+1) == 0.962424 +- 1e-6", abs(h1 - 0.962424) <= 1e-6 and abs(h1 - target) < 1e-12,
            f"{h1:.9f}")
    est = entropy_estimate(KANEKO, word_len, grid).rows[-1]
    res.add("estimate at n=10, grid=1024 within 0.05", abs(est[2] - h1) <= 0.05,
            f"count {est[1]}, estimate {est[2]:.6f}, gap {est[2] - h1:.4f}")
    h3 = entropy_exact(NEG3)
    res.add("entropy_exact(-3z^2+1) == log 3 +- 1e-6", abs(h3 - log(3)) <= 1e-6, f"{h3:.9f}")
    est3 = entropy_estimate(NEG3, word_len, grid)
    row = est3.rows[-1]
    res.add("estimate for -3z^2+1 within 0.07", abs(row[2] - h3) <= 0.07,
            f"count {row[1]}, estimate {row[2]:.6f}, backward depth {est3.backward_depth}")
    return res


@_timed
def criterion_4(grid=64):
    res = CriterionResult(4, "admissibility")
    cache = {}
    bad = 0
    total = 0
    for i in range(grid):
        for j in range(grid):
            x = periodic_orbit(KANEKO, (Fraction(i, grid), Fraction(j, grid)))
            w = encode(KANEKO, x)
            key = w.rotated_to(0).letters
            if key not in cache:
                cache[key] = is_admissible(KANEKO, w)
            total += 1
            if cache[key] is not Verdict.YES:
                bad += 1
    res.add(f"all {grid}x{grid} grid words admissible", bad == 0,
            f"{total} orbits, {len(cache)} distinct words, {bad} rejected")
    v = is_admissible(KANEKO, CodeWord((1, 1, 1), periodic=True))
    res.add("constant word (1,1,1) is not admissible", v is Verdict.NO, v.value)
    return res


def _random_poly(rng, max_deg=4, max_coef=9):
    while True:
        deg = rng.randint(1, max_deg)
        c = [rng.randint(-max_coef, max_coef) for _ in range(deg + 1)]
        if c[0] and c[-1]:
            return LaurentPoly.from_dense(c)


@_timed
def criterion_5(n_pairs=200, seed=5):
    res = CriterionResult(5, "resultant and Bezout")
    z2, z3 = parse_poly("z-2"), parse_poly("z-3")
    res.add("Delta(z-2, z-3) == 1", resultant(z2, z3).delta == 1)
    res.add("Delta(P, P) == 0", resultant(KANEKO, KANEKO).delta == 0)
    res.add("Delta(z^2-3z+1, z-1) == -1", resultant(KANEKO, parse_poly("z-1")).delta == -1)
    rng = random.Random(seed)
    bez_fail = equiv_fail = coprime = 0
    attempts = 0
    while coprime < n_pairs:
        attempts += 1
        p, q = _random_poly(rng), _random_poly(rng)
        if attempts % 5 == 0:
            r = _random_poly(rng, 2)
            p, q = p * r, q * r
        d = resultant(p, q).delta
        unit = poly_gcd(p, q).degree == 0
        if (d != 0) != unit:
            equiv_fail += 1
        if d != 0:
            coprime += 1
            a, b, delta = bezout(p, q)
            if a * p + b * q != LaurentPoly({0: delta}) or delta != d:
                bez_fail += 1
    res.add(f"A P + B Q == Delta on {n_pairs} coprime pairs", bez_fail == 0, f"{bez_fail} failures")
    res.add("Delta != 0 iff gcd is a unit", equiv_fail == 0, f"{attempts} pairs, {equiv_fail} failures")
    return res


DIM_CORPUS = [
    "z-2", "z+3", "2z-1", "z^2-3z+1", "-3z^2+1", "z^2-2z+1", "z^2+z+1", "3z^2+4z+1",
    "4z^2+5z+1", "z^2-2z", "z^3-z-1", "2z^3+z^2-3", "z^-1-3+z", "z^2+1", "z^3-3z+1",
    "z^4-z^3+2z-1", "5z^2-z+3", "z^-2+z", "z^3+2z^2+z+1", "6z^2-5z+1",
]

COPRIME_PAIRS = [("z-2", "z-3"), ("z^2-3z+1", "z-1"), ("z-1", "z+1"),
                 ("z^2+z-1", "z+3"), ("z^2-3z+1", "z^2+1")]


@_timed
def criterion_6(grid=7, n_samples=50, seed=6):
    res = CriterionResult(6, "structure theorems at desk scale")
    bad = []
    for s in DIM_CORPUS:
        p = parse_poly(s)
        d = dim_omega(p)
        ok = dim_check(p, d, grid) and not dim_check(p, d + 1, grid)
        if not ok:
            bad.append(s)
    res.add(f"dim_check agrees with dim_omega on {len(DIM_CORPUS)} polynomials", not bad, ", ".join(bad))
    zeros = enumerate_common_zeros(parse_poly("z-1"), parse_poly("z+1"), (0, 5))
    got = sorted({x.values for x in zeros})
    want = sorted({(Fraction(0),) * 6, (Fraction(1, 2),) * 6})
    res.add("common zeros of z-1, z+1 are 0 and 1/2", got == want, str([x.values[0] for x in zeros]))
    fails = 0
    for i, (ps, qs) in enumerate(COPRIME_PAIRS):
        p, q = parse_poly(ps), parse_poly(qs)
        for x in random_members(p * q, n_samples, 14, denominator=101, seed=seed + i):
            try:
                w = decompose(p, q, x)
                if not w.verify(p, q, x):
                    fails += 1
            except Exception:
                fails += 1
    res.add(f"decompose verifies on {n_samples} samples for {len(COPRIME_PAIRS)} pairs", fails == 0,
            f"{fails} failures")
    h = entropy_exact(parse_poly("z-2") * parse_poly("z-3"))
    res.add("entropy((z-2)(z-3)) == log 2 + log 3 to 1e-9", abs(h - log(2) - log(3)) <= 1e-9, f"{h:.12f}")
    return res


def _in_class(g, b):
    cands = [b, -b, b.inverse(), -b.inverse()]
    return g in cands


@_timed
def criterion_7():
    res = CriterionResult(7, "Saut_P regression")
    M = au.IntMatrix
    b2, b3, b4 = M(((-1, 1), (-1, 2))), M(((2, -1), (-3, 2))), M(((0, 1), (-1, 2)))
    for name, p, b in (("z^2-3z+1", KANEKO, b2), ("-3z^2+1", NEG3, b3), ("z^2-2z+1", DOUBLE, b4)):
        c = au.saut_group(p)
        res.add(f"{name}: infinite cyclic, generator in +-B^(+-1)",
                c.kind == "infinite_cyclic" and _in_class(c.generator, b), str(c.generator))
    eig = [lam for _, lam in au.saut_eigendata(b3, NEG3)]
    want = [parse_quadirr("2-sqrt(3)"), parse_quadirr("2+sqrt(3)")]
    res.add("-3z^2+1: eigenvalues of (2,-1;-3,2) are 2-sqrt3, 2+sqrt3", eig == want, ", ".join(map(str, eig)))
    img2 = au.block_images(b2, KANEKO, 1)
    res.add("z^2-3z+1: block (y1,y2) is (-x0+2x1, -2x0+5x1)", img2.rows == ((-1, 2), (-2, 5)), str(img2))
    img3 = au.block_images(b3, NEG3, 1)
    res.add("-3z^2+1: block (y1,y2) is (-3x0+2x1, 6x0-3x1)", img3.rows == ((-3, 2), (6, -3)), str(img3))
    img4 = au.block_images(b4, DOUBLE, 1)
    res.add("z^2-2z+1: block (y1,y2) is (-x0+2x1, -2x0+3x1)", img4.rows == ((-1, 2), (-2, 3)), str(img4))
    return res


@_timed
def criterion_8():
    res = CriterionResult(8, "Pell equation and continued fractions")
    s5, s12 = au.pell_solve(5), au.pell_solve(12)
    res.add("pell_solve(5) == (1,1,-4)", (s5.w, s5.v, s5.sign) == (1, 1, -4), str(s5))
    res.add("pell_solve(12) == (4,1,+4)", (s12.w, s12.v, s12.sign) == (4, 1, 4), str(s12))
    cf1 = au.cf_expand(parse_quadirr("(3+sqrt(5))/2"))
    res.add("cf((3+sqrt5)/2) == [2;(1)]", (cf1.preperiod, cf1.period) == ((2,), (1,)), str(cf1))
    cf2 = au.cf_expand(parse_quadirr("1/sqrt(3)"))
    res.add("cf(1/sqrt3) == [0;(1,1,2)]", (cf2.preperiod, cf2.period) == ((0,), (1, 1, 2)), str(cf2))
    for name, p in (("z^2-3z+1", KANEKO), ("-3z^2+1", NEG3)):
        g = au.saut_group(p).generator
        w, v, sign = au.pell_of_generator(g, p)
        _, _, d = au._quadratic_params(p)
        sol = au.pell_solve(d)
        res.add(f"{name}: CF generator solves Pell and is fundamental",
                sign in (4, -4) and (w, v) == (sol.w, sol.v), f"(w,v)=({w},{v}) vs {sol}")
    c = au.saut_group(parse_poly("3z^2+4z+1"))
    ok = c.kind == "cyclic_order2" and c.generator @ c.generator == au.IntMatrix.identity(2)
    res.add("3z^2+4z+1: order-2 generator squaring to I", ok, str(c.generator))
    p9 = parse_poly("4z^2+5z+1")
    found = au.saut_search(p9, 50)
    ident = au.IntMatrix.identity(2)
    res.add("4z^2+5z+1: trivial, search |p'| <= 50 finds only +-I",
            au.saut_group(p9).kind == "trivial" and set(found) == {ident, -ident}, f"{len(found)} elements")
    return res


@_timed
def criterion_9(n_triples=1000, n_orbits=100, seed=9):
    res = CriterionResult(9, "algebra property suite")
    rng = random.Random(seed)

    def rand_fs():
        n = rng.randint(0, 4)
        return FiniteSupport({rng.randint(-5, 5): Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)})

    bad = 0
    for _ in range(n_triples):
        a, b, c = rand_fs(), rand_fs(), rand_fs()
        if convolve(a, b) != convolve(b, a):
            bad += 1
        if convolve(convolve(a, b), c) != convolve(a, convolve(b, c)):
            bad += 1
        if convolve(IDENTITY, a) != a or convolve(a, IDENTITY) != a:
            bad += 1
    res.add(f"commutativity/associativity/identity on {n_triples} triples", bad == 0, f"{bad} failures")
    bad = 0
    for _ in range(100):
        a, b = rand_fs(), rand_fs()
        d = rng.randint(-4, 4)
        if shift(convolve(a, b), d) != convolve(shift(a, d), b):
            bad += 1
        q = rng.randint(2, 60)
        x = periodic_orbit(KANEKO, (Fraction(rng.randrange(q), q), Fraction(rng.randrange(q), q)))
        e1 = encode(KANEKO, x.shifted(d))
        e2 = encode(KANEKO, x).shifted(d)
        if any(e1.entry(n) != e2.entry(n) for n in range(-10, 10)):
            bad += 1
    res.add("shift equivariance of convolve and encode", bad == 0, f"{bad} failures")
    M = au.IntMatrix
    g = M(((-1, 1), (-1, 2)))
    elems = [g, g.inverse(), -g, g @ g, M.identity(2), -(g @ g @ g)]
    bad = 0
    for _ in range(n_orbits):
        q = rng.randint(2, 200)
        x = periodic_orbit(KANEKO, (Fraction(rng.randrange(q), q), Fraction(rng.randrange(q), q)))
        b1, b2 = rng.choice(elems), rng.choice(elems)
        lhs = au.apply_automorphism(b1, au.apply_automorphism(b2, x, KANEKO), KANEKO)
        rhs = au.apply_automorphism(b1 @ b2, x, KANEKO)
        if lhs != rhs:
            bad += 1
    res.add(f"apply_automorphism homomorphism law on {n_orbits} orbits", bad == 0, f"{bad} failures")
    return res


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def run_all(echo=None):
    results = []
    for fn in CRITERIA:
        r = fn()
        results.append(r)
        if echo:
            echo(r.line())
    return results
