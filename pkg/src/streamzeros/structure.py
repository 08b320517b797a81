"""Dimension, common zeros, factor criterion and the coprime splitting of Omega_{PQ}.

Statements about bi-infinite sequences are checked on finite windows: a window
``x`` is in Omega_P when ``P * x`` is an integer at every index the window
determines.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
import random

from .dynamics import TorusSeq, _as_integer, extend, is_member
from .errors import (InconsistentWindow, NotAnOrbit, NotCoprime,
                     NotUnimodular, WindowTooShort)
from .poly import LaurentPoly, bezout, resultant


def dim_omega(p):
    return p.high - p.low


def _constraints_hold(coeffs, vals):
    d = len(coeffs) - 1
    for m in range(d, len(vals)):
        s = sum(coeffs[i] * vals[m - i] for i in range(d + 1))
        if _as_integer(s) is None:
            return False
    return True


def dim_check(p, k, grid=8):
    """Does every point of ``{i/grid}^k`` occur as ``k`` consecutive coordinates?

    Points are extended constructively (forward and backward, residue
    branch 0) to confirm they sit inside orbit windows.
    """
    if k < 1:
        raise ValueError("k must be positive")
    coeffs = p.normalized().dense()
    d = len(coeffs) - 1
    steps = max(d, 2)
    for point in product(range(grid), repeat=k):
        vals = [Fraction(i, grid) for i in point]
        if d == 0:
            if any(vals):
                return False
            continue
        if not _constraints_hold(coeffs, vals):
            return False
        # grow to the right from the last d coordinates and to the left from the first d
        if len(vals) < d:
            vals = vals + [Fraction(0)] * (d - len(vals))
        right = extend(coeffs, vals[-d:], steps, 0)
        left = extend(coeffs, vals[:d], 0, steps)
        full = left[:steps] + vals + right[d:]
        if not _constraints_hold(coeffs, full):
            return False
    return True


def enumerate_common_zeros(p, q, window=(0, 0), max_states=1_000_000):
    """All windows of common zeros of ``P`` and ``Q``.

    Coordinates live in ``(1/|Delta|) Z / Z``.  A de Bruijn-style graph on
    blocks of consecutive coordinates is pruned to the states lying on
    bi-infinite paths, so every returned window extends to a true common zero.
    """
    delta = resultant(p, q).delta
    if delta == 0:
        raise NotCoprime(f"{p} and {q} share a factor")
    lo, hi = window
    length = hi - lo + 1
    if length < 1:
        raise ValueError("empty window")
    n = abs(delta)
    cp = p.normalized().dense()
    cq = q.normalized().dense()
    w = max(len(cp), len(cq)) - 1
    if n == 1 or w == 0:
        return [TorusSeq(lo, (Fraction(0),) * length)]
    if n ** w > max_states:
        raise ValueError(f"{n}**{w} states exceed the search limit")

    def ok(block):
        # constraints ending at the last coordinate of ``block`` (length w + 1)
        for c in (cp, cq):
            d = len(c) - 1
            s = sum(c[i] * block[-1 - i] for i in range(d + 1))
            if s % n:
                return False
        return True

    states = set(product(range(n), repeat=w))
    edges = {}
    for s in states:
        edges[s] = [s[1:] + (x,) for x in range(n) if ok(s + (x,))]
    # the state constraints of length < w + 1 are implied by earlier edges
    alive = set(states)
    changed = True
    while changed:
        changed = False
        has_in = set()
        for s in alive:
            for t in edges[s]:
                if t in alive:
                    has_in.add(t)
        keep = {s for s in alive if s in has_in and any(t in alive for t in edges[s])}
        if keep != alive:
            alive, changed = keep, True
    found = set()
    if length <= w:
        for s in alive:
            found.add(s[:length])
    else:
        paths = [(s, list(s)) for s in alive]
        for _ in range(length - w):
            paths = [(t, vals + [t[-1]]) for s, vals in paths for t in edges[s] if t in alive]
        found = {tuple(vals) for _, vals in paths}
    return [TorusSeq(lo, tuple(Fraction(x, n) for x in vals)) for vals in sorted(found)]


def _convolve_mod1(c, x):
    """``c * x`` mod 1 on the indices the window determines."""
    items = list(c.items())
    if x.periodic:
        lo, hi = x.start_index, x.end_index
    else:
        lo, hi = x.start_index + c.high, x.end_index + c.low
    if lo > hi:
        return None
    vals = []
    for m in range(lo, hi + 1):
        vals.append(sum(a * x.entry(m - e) for e, a in items) % 1)
    return TorusSeq(lo, tuple(vals), x.periodic)


def factor_check(p, q, samples, d):
    """``D * (Q * xi) == 0`` mod 1 on every sample's determined window."""
    for xi in samples:
        img = _convolve_mod1(q, xi)
        if img is None:
            continue
        for v in img.values:
            if (d * v) % 1:
                return False
    return True


@dataclass(frozen=True)
class DecompositionWitness:
    u: TorusSeq
    v: TorusSeq
    scale: int

    def verify(self, p, q, x):
        if not (is_member(p, self.u) and is_member(q, self.v)):
            return False
        idx = range(self.u.start_index, self.u.end_index + 1)
        return all((self.u.entry(n) + self.v.entry(n) - self.scale * x.entry(n)) % 1 == 0 for n in idx)


def _restrict(x, lo, hi):
    if x.periodic:
        return x
    return TorusSeq(lo, tuple(x.entry(n) for n in range(lo, hi + 1)))


def decompose(p, q, x):
    """Split ``x`` in Omega_{PQ} as ``u + v = Delta * x`` with ``u`` in Omega_P, ``v`` in Omega_Q.

    With Bezout cofactors ``A P + B Q = Delta``: ``u = (B Q) * x`` and
    ``v = (A P) * x``.  The window shrinks by the supports of ``BQ`` and ``AP``.
    """
    a, b, delta = bezout(p, q)
    if not is_member(p * q, x):
        raise NotAnOrbit("x is not annihilated by P*Q on its window")
    u = _convolve_mod1(b * q, x)
    v = _convolve_mod1(a * p, x)
    if u is None or v is None:
        raise WindowTooShort("window shorter than the cofactor supports")
    if not x.periodic:
        lo = max(u.start_index, v.start_index)
        hi = min(u.end_index, v.end_index)
        if lo > hi:
            raise WindowTooShort("window shorter than the cofactor supports")
        u, v = _restrict(u, lo, hi), _restrict(v, lo, hi)
    w = DecompositionWitness(u, v, delta)
    if not w.verify(p, q, x):
        raise InconsistentWindow("decomposition failed to verify")
    return w


def _add_mod1(x, y):
    lo = max(x.start_index, y.start_index)
    hi = min(x.end_index, y.end_index)
    periodic = x.periodic and y.periodic
    if periodic:
        n = len(x.values) * len(y.values)
        lo, hi = x.start_index, x.start_index + n - 1
    return TorusSeq(lo, tuple((x.entry(i) + y.entry(i)) % 1 for i in range(lo, hi + 1)), periodic)


def _same(x, y):
    lo = max(x.start_index, y.start_index)
    hi = min(x.end_index, y.end_index)
    return all(x.entry(n) == y.entry(n) for n in range(lo, hi + 1))


def conjugacy_check(q, r, samples):
    """Check the splitting ``x -> (u, v)`` is additive, shift-commuting and injective."""
    delta = resultant(q, r).delta
    if delta == 0:
        raise NotCoprime(f"{q} and {r} share a factor")
    if abs(delta) != 1:
        raise NotUnimodular(f"resultant {delta} is not +-1")
    wits = [decompose(q, r, x) for x in samples]
    for x, w in zip(samples, wits):
        # injective: x is recovered from (u, v)
        back = _add_mod1(w.u, w.v)
        if not all((delta * back.entry(n) - x.entry(n)) % 1 == 0 for n in back.indices()):
            return False
        # shift-commuting
        ws = decompose(q, r, x.shifted(1))
        if not (_same(ws.u, w.u.shifted(1)) and _same(ws.v, w.v.shifted(1))):
            return False
    for (x, wx), (y, wy) in zip(zip(samples, wits), zip(samples[1:], wits[1:])):
        if x.periodic != y.periodic or (not x.periodic and (x.start_index, x.end_index) != (y.start_index, y.end_index)):
            continue
        s = _add_mod1(x, y)
        ws = decompose(q, r, s)
        if not (_same(ws.u, _add_mod1(wx.u, wy.u)) and _same(ws.v, _add_mod1(wx.v, wy.v))):
            return False
    return True


def sample_member(p, seed, length, branch=0):
    """Window of Omega_P of the given length grown from ``seed`` (``dim_omega`` values).

    Extends in whichever direction is single-valued (constant term ``+-1``:
    forward; top coefficient ``+-1``: backward), otherwise forward on
    ``branch``.
    """
    c = p.normalized().dense()
    d = len(c) - 1
    steps = length - d
    if steps < 0:
        raise ValueError("length shorter than the seed")
    if abs(c[0]) == 1 or abs(c[-1]) != 1:
        vals = extend(c, seed, steps, 0, branch_fwd=branch)
    else:
        vals = extend(c, seed, 0, steps)
    return TorusSeq(0, tuple(vals))


def random_members(p, count, length, denominator=97, seed=0):
    """Reproducible sample of Omega_P windows with rational coordinates."""
    rng = random.Random(seed)
    d = dim_omega(p)
    out = []
    for _ in range(count):
        start = [Fraction(rng.randrange(denominator), denominator) for _ in range(d)]
        out.append(sample_member(p, start, length))
    return out
