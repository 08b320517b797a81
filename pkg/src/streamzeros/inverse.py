"""Certified roots, hyperbolicity and the summable convolution inverse."""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import mpmath
import numpy as np

from .errors import Indeterminate, NotHyperbolic, RootIsolationFailure
from .poly import LaurentPoly, squarefree_decomposition
from .quadratic import QuadIrr
from .streams import (FiniteSupport, GeometricTails, Tail, convolve, shift,
                      window_of, IDENTITY)

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Root:
    value: complex
    error_radius: float
    multiplicity: int
    modulus_side: str  # "inside", "outside" or "on" when the disk meets the circle


@dataclass(frozen=True)
class RootSet:
    roots: tuple
    leading_coeff: int
    low_exponent: int

    @property
    def degree(self):
        return sum(r.multiplicity for r in self.roots)

    def values(self):
        out = []
        for r in self.roots:
            out.extend([r.value] * r.multiplicity)
        return out


@dataclass(frozen=True)
class HyperbolicResult:
    hyperbolic: bool
    margin: float

    def __bool__(self):
        return self.hyperbolic


def _side(z, r):
    m = abs(z)
    if m - r > 1:
        return "outside"
    if m + r < 1:
        return "inside"
    return "on"


def _newton(coeffs, z, dps):
    """Refine ``z`` towards a root of the polynomial with descending ``coeffs``."""
    tiny = mpmath.mpf(10) ** (-dps + 8)
    for _ in range(200):
        f, df = mpmath.polyval(coeffs, z, derivative=True)
        if df == 0:
            break
        step = f / df
        z -= step
        if abs(step) <= tiny * max(1, abs(z)):
            break
    return z


def _weierstrass_radii(coeffs, zs):
    n = len(zs)
    lc = coeffs[0]
    radii = []
    for i, z in enumerate(zs):
        den = lc
        for j, w in enumerate(zs):
            if j != i:
                den *= z - w
        if den == 0:
            return None
        radii.append(n * abs(mpmath.polyval(coeffs, z) / den))
    return radii


def _disjoint(zs, radii):
    for i in range(len(zs)):
        for j in range(i + 1, len(zs)):
            if abs(zs[i] - zs[j]) <= radii[i] + radii[j]:
                return False
    return True


def _isolate(dense, precision):
    """Certified roots of a squarefree integer polynomial (ascending ``dense``)."""
    desc = [int(c) for c in reversed(dense)]
    deg = len(desc) - 1
    if deg == 1:
        z = mpmath.mpf(-desc[1]) / desc[0]
        return [(mpmath.mpc(z), mpmath.mpf(0))]
    seeds = [complex(s) for s in np.roots(desc)]
    for dps in (40, 80, 160):
        with mpmath.workdps(dps):
            zs = [_newton(desc, mpmath.mpc(s), dps) for s in seeds]
            radii = _weierstrass_radii(desc, zs)
            if radii is None or not _disjoint(zs, radii):
                zs = list(mpmath.polyroots(desc, maxsteps=400, extraprec=4 * dps))
                radii = _weierstrass_radii(desc, zs)
            if radii is not None and _disjoint(zs, radii) and max(radii) < precision / 4:
                return [(+z, +r) for z, r in zip(zs, radii)]
        seeds = [complex(z) for z in zs]
    raise RootIsolationFailure(f"could not isolate the roots of degree-{deg} factor")


@lru_cache(maxsize=256)
def _certified(p, precision):
    """``[(mp_root, radius, multiplicity)]`` for ``z^-h P``, sorted by (re, im)."""
    s = p.normalized()
    out = []
    if s.degree == 0:
        return ()
    for factor, mult in squarefree_decomposition(s):
        if factor.degree == 0:
            continue
        for z, r in _isolate(factor.dense(), precision):
            out.append((z, r, mult))
    out.sort(key=lambda t: (float(t[0].real), float(t[0].imag)))
    return tuple(out)


def find_roots(p, precision=1e-12):
    """All complex roots of ``z^-h P`` with certified error radii.

    Seeds come from companion-matrix eigenvalues, are refined by Newton
    iteration in extended precision, and are certified by Weierstrass
    inclusion disks (pairwise disjoint, hence one root each).  Multiplicities
    come from an exact squarefree decomposition.
    """
    if not precision > 0:
        raise ValueError("precision must be positive")
    roots = []
    for z, r, mult in _certified(p, precision):
        value = complex(z)
        radius = float(r) + abs(value) * 2.0 ** -52
        if abs(value.imag) <= radius:
            radius += abs(value.imag)
            value = complex(value.real, 0.0)
        if radius > precision:
            raise RootIsolationFailure(f"root {value} only certified to {radius:.3g}")
        roots.append(Root(value, radius, mult, _side(value, radius)))
    return RootSet(tuple(roots), p.leading, p.low)


def is_hyperbolic(p, tol=DEFAULT_TOL, precision=1e-12):
    """Decide whether no root of ``P`` lies within ``tol`` of the unit circle."""
    rs = find_roots(p, precision)
    margin = float("inf")
    hyper = True
    for r in rs.roots:
        gap = abs(abs(r.value) - 1)
        margin = min(margin, gap)
        if gap - r.error_radius > tol:
            continue
        if gap + r.error_radius <= tol:
            hyper = False
            continue
        raise Indeterminate(f"root {r.value} straddles the tolerance band")
    return HyperbolicResult(hyper, margin)


# -- inverse -----------------------------------------------------------------

def _binom_poly(r):
    """Ascending coefficients of ``t -> C(t + r - 1, r - 1)``."""
    poly = [Fraction(1)]
    for i in range(1, r):
        nxt = [Fraction(0)] * (len(poly) + 1)
        for k, c in enumerate(poly):
            nxt[k] += c * i
            nxt[k + 1] += c
        poly = nxt
    f = factorial(r - 1)
    return [c / f for c in poly]


def _tail_for(root, amp, r, outside, exact=False, fvalue=None):
    """Tail of ``amp * (z - root)**-r``; ``root``/``amp`` may be exact."""
    binom = _binom_poly(r)
    if outside:
        scale = amp * (-root) ** (-r)
        coeffs = [scale * b for b in binom]
        side, start = "causal", 0
    else:
        coeffs = [amp * b for b in binom]
        side, start = "anticausal", -r
    fv = fvalue if fvalue is not None else complex(root)
    fc = tuple(complex(c) for c in coeffs)
    if exact:
        return Tail(fv, fc, side, start, root, tuple(coeffs))
    return Tail(fv, fc, side, start)


def _exact_inverse(s):
    """Exact partial fractions for degree <= 2 with real roots, else ``None``."""
    c = [s[0], s[1], s[2]] if s.degree == 2 else [s[0], s[1]]
    if len(c) == 2:
        root = QuadIrr(Fraction(-c[0], c[1]))
        if abs(root) == 1:
            raise NotHyperbolic(f"{s} has a root on the unit circle")
        return [_tail_for(root, QuadIrr(Fraction(1, c[1])), 1, abs(root) > 1, True)]
    c0, c1, c2 = c
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return None
    if disc == 0:
        root = QuadIrr(Fraction(-c1, 2 * c2))
        if abs(root) == 1:
            raise NotHyperbolic(f"{s} has a root on the unit circle")
        return [_tail_for(root, QuadIrr(Fraction(1, c2)), 2, abs(root) > 1, True)]
    sq = QuadIrr.sqrt(disc)
    tails = []
    for sign in (1, -1):
        root = (QuadIrr(-c1) + sign * sq) / (2 * c2)
        if abs(root) == 1:
            raise NotHyperbolic(f"{s} has a root on the unit circle")
        amp = sign / sq  # 1 / S'(root)
        tails.append(_tail_for(root, amp, 1, abs(root) > 1, True))
    return tails


def _float_inverse(s, precision):
    roots = _certified(s, min(precision, 1e-12))
    lc = s.leading
    tails = []
    with mpmath.workdps(50):
        for j, (wj, _, mj) in enumerate(roots):
            # Taylor series of 1 / (lc * prod_{i != j} (u + wj - wi)**mi) to order mj - 1
            series = [mpmath.mpc(1) / lc] + [mpmath.mpc(0)] * (mj - 1)
            for i, (wi, _, mi) in enumerate(roots):
                if i == j:
                    continue
                d = wj - wi
                factor = [(-1) ** k * mpmath.binomial(mi + k - 1, k) / d ** (mi + k) for k in range(mj)]
                series = [sum(series[a] * factor[k - a] for a in range(k + 1)) for k in range(mj)]
            outside = abs(wj) > 1
            for r in range(1, mj + 1):
                amp = series[mj - r]
                binom = _binom_poly(r)
                if outside:
                    scale = amp * (-wj) ** (-r)
                    coeffs = tuple(complex(scale * mpmath.mpf(b.numerator) / b.denominator) for b in binom)
                    tails.append(Tail(complex(wj), coeffs, "causal", 0))
                else:
                    coeffs = tuple(complex(amp * mpmath.mpf(b.numerator) / b.denominator) for b in binom)
                    tails.append(Tail(complex(wj), coeffs, "anticausal", -r))
    return tails


def inverse(p, precision=1e-12, tol=DEFAULT_TOL):
    """Absolutely summable convolution inverse of a hyperbolic ``P``.

    Partial fractions give one causal tail per root outside the unit circle
    and one anticausal tail per root inside (polynomial-times-geometric for
    repeated roots).  Degree <= 2 with real roots is handled in exact
    quadratic-field arithmetic.
    """
    if p.is_zero:
        raise NotHyperbolic("zero polynomial")
    h = p.low
    s = p.normalized()
    if s.degree == 0:
        return FiniteSupport({-h: Fraction(1, s[0])})
    tails = None
    if s.degree <= 2:
        tails = _exact_inverse(s)
    if tails is None:
        res = is_hyperbolic(p, tol, precision)
        if not res.hyperbolic:
            raise NotHyperbolic(f"{p} has a root within {tol} of the unit circle")
        tails = _float_inverse(s, precision)
    elif any(t.margin <= tol for t in tails):
        raise NotHyperbolic(f"{p} has a root within {tol} of the unit circle")
    return shift(GeometricTails(FiniteSupport({}), tails), h)


def verify_inverse(p, inv, lo, hi, tol=1e-9):
    """Check ``P * inv == I`` entrywise on ``[lo, hi]``."""
    prod = convolve(FiniteSupport.from_poly(p), inv)
    w = window_of(prod, lo, hi)
    ident = window_of(IDENTITY, lo, hi)
    return bool(np.all(np.abs(w.values - ident.values) <= tol + w.error))
