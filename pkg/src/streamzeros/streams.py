"""Two-sided streams and the convolution product.

Three representations are used:

* :class:`FiniteSupport` -- finitely many nonzero entries, exact values;
* :class:`GeometricTails` -- a finite part plus closed-form tails
  ``p(t) * ratio**t`` running off to ``+inf`` (causal) or ``-inf``
  (anticausal);
* :class:`Window` -- float values on ``[lo, hi]`` with an error bound for the
  stored values and a bound on every omitted entry.

Index convention: ``(a * b)[n] = sum_i a[i] * b[n - i]``; ``shift(a, d)[n] ==
a[n + d]``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, log
import json

import numpy as np

from .errors import NonSummable
from .quadratic import QuadIrr

EPS = np.finfo(float).eps


def _is_exact(v):
    return isinstance(v, (int, Fraction, QuadIrr))


def _cabs(v):
    return abs(complex(v))


# -- finite support ----------------------------------------------------------

class FiniteSupport:
    """Finitely supported stream; zero entries are dropped."""

    __slots__ = ("_e",)

    def __init__(self, entries=None):
        items = {}
        for n, v in dict(entries or {}).items():
            if isinstance(v, int) and not isinstance(v, bool):
                v = Fraction(v)
            if v != 0:
                items[int(n)] = v
        self._e = dict(sorted(items.items()))

    @classmethod
    def from_poly(cls, p):
        return cls({e: Fraction(a) for e, a in p.items()})

    @property
    def entries(self):
        return dict(self._e)

    @property
    def support(self):
        return tuple(self._e)

    @property
    def is_zero(self):
        return not self._e

    @property
    def is_exact(self):
        return all(_is_exact(v) for v in self._e.values())

    def entry(self, n):
        return self._e.get(n, Fraction(0))

    exact_entry = entry

    def items(self):
        return self._e.items()

    def span(self):
        if not self._e:
            return (0, -1)
        return (next(iter(self._e)), next(reversed(self._e)))

    def l1_norm(self):
        return sum(_cabs(v) for v in self._e.values())

    def sup_norm(self):
        return max((_cabs(v) for v in self._e.values()), default=0.0)

    def sup_above(self, n):
        return max((_cabs(v) for k, v in self._e.items() if k > n), default=0.0)

    def sup_below(self, n):
        return max((_cabs(v) for k, v in self._e.items() if k < n), default=0.0)

    def mass_above(self, n):
        return sum(_cabs(v) for k, v in self._e.items() if k > n)

    def mass_below(self, n):
        return sum(_cabs(v) for k, v in self._e.items() if k < n)

    def __eq__(self, other):
        if not isinstance(other, FiniteSupport):
            return NotImplemented
        return self._e == other._e

    def __hash__(self):
        return hash(tuple(self._e.items()))

    def __repr__(self):
        body = ", ".join(f"{n}: {v}" for n, v in self._e.items())
        return f"FiniteSupport({{{body}}})"


IDENTITY = FiniteSupport({0: 1})
ZERO = FiniteSupport({})


# -- geometric tails ---------------------------------------------------------

def _poly_eval(coeffs, t):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _poly_shift(coeffs, c):
    """Coefficients of ``p(t + c)`` given those of ``p(t)``."""
    out = [0] * len(coeffs)
    for d, a in enumerate(coeffs):
        for k in range(d + 1):
            out[k] = out[k] + a * comb(d, k) * c ** (d - k)
    return out


def _sup_tdr(d, r, t0):
    """``sup_{t >= t0} t**d * r**t`` for ``0 < r < 1`` (continuous bound)."""
    if r == 0:
        return 1.0 if (d == 0 and t0 <= 0) else (0.0 if t0 > 0 else 1.0)
    t0 = max(t0, 0)
    if d == 0:
        return r ** t0
    tm = max(t0, d / -log(r))
    return tm ** d * r ** tm


def _mass_tdr(d, r, t0):
    """``sum_{t >= t0} t**d * r**t`` bound for ``0 <= r < 1``."""
    t0 = max(int(t0), 0)
    if r == 0:
        return 1.0 if (t0 == 0 and d == 0) else 0.0
    if d == 0:
        return r ** t0 / (1 - r)
    tc = int(1 / (r ** (-1.0 / d) - 1)) + 1
    t1 = max(t0, tc, 1)
    head = sum(t ** d * r ** t for t in range(t0, t1))
    q = ((t1 + 1) / t1) ** d * r
    return head + t1 ** d * r ** t1 / (1 - q)


@dataclass(frozen=True)
class Tail:
    """Geometric tail ``p(t) * ratio**t`` with ``t = |n - start|``.

    ``side == "causal"``: indices ``n >= start``, ``ratio = 1/root`` with
    ``|root| > 1``.  ``side == "anticausal"``: indices ``n <= start``,
    ``ratio = root`` with ``|root| < 1``.  ``coeffs`` are the polynomial
    coefficients of ``p`` (ascending); a simple root has a constant ``p``.
    ``exact_root``/``exact_coeffs`` optionally carry the same data in exact
    quadratic-field arithmetic.
    """

    root: complex
    coeffs: tuple
    side: str
    start: int
    exact_root: object = None
    exact_coeffs: tuple = None
    margin: float = field(init=False)

    def __post_init__(self):
        if self.side not in ("causal", "anticausal"):
            raise ValueError(f"bad side {self.side!r}")
        m = abs(self.root)
        margin = m - 1 if self.side == "causal" else 1 - m
        if not margin > 0:
            raise NonSummable(f"tail root {self.root} has modulus on the wrong side of 1")
        object.__setattr__(self, "margin", margin)
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if self.exact_coeffs is not None:
            object.__setattr__(self, "exact_coeffs", tuple(self.exact_coeffs))

    @property
    def coeff(self):
        return self.coeffs[0]

    @property
    def ratio(self):
        return 1 / self.root if self.side == "causal" else self.root

    @property
    def exact_ratio(self):
        if self.exact_root is None:
            return None
        return 1 / self.exact_root if self.side == "causal" else self.exact_root

    @property
    def is_exact(self):
        return self.exact_root is not None

    def _t(self, n):
        return n - self.start if self.side == "causal" else self.start - n

    def entry(self, n):
        t = self._t(n)
        if t < 0:
            return 0j
        return _poly_eval(self.coeffs, t) * self.ratio ** t

    def exact_entry(self, n):
        t = self._t(n)
        if t < 0:
            return Fraction(0)
        return _poly_eval(self.exact_coeffs, t) * self.exact_ratio ** t

    def sup_from(self, t0):
        r = abs(self.ratio)
        return sum(abs(c) * _sup_tdr(d, r, t0) for d, c in enumerate(self.coeffs))

    def mass_from(self, t0):
        r = abs(self.ratio)
        return sum(abs(c) * _mass_tdr(d, r, t0) for d, c in enumerate(self.coeffs))

    def shifted(self, d):
        return Tail(self.root, self.coeffs, self.side, self.start - d, self.exact_root, self.exact_coeffs)

    def scaled(self, s):
        ec = None
        if self.exact_coeffs is not None and _is_exact(s):
            ec = tuple(c * s for c in self.exact_coeffs)
        root = self.exact_root if ec is not None else None
        return Tail(self.root, tuple(c * complex(s) for c in self.coeffs), self.side, self.start, root, ec)


class GeometricTails:
    """Finite part plus a list of geometric tails."""

    __slots__ = ("finite_part", "tails")

    def __init__(self, finite_part=None, tails=()):
        self.finite_part = finite_part if finite_part is not None else ZERO
        self.tails = tuple(tails)

    @property
    def is_exact(self):
        return self.finite_part.is_exact and all(t.is_exact for t in self.tails)

    def entry(self, n):
        v = complex(self.finite_part.entry(n))
        for t in self.tails:
            v += t.entry(n)
        return v

    def exact_entry(self, n):
        if not self.is_exact:
            raise ValueError("stream has no exact representation")
        v = self.finite_part.entry(n)
        for t in self.tails:
            v = v + t.exact_entry(n)
        return v

    def margin(self):
        return min((t.margin for t in self.tails), default=float("inf"))

    def l1_norm(self):
        return self.finite_part.l1_norm() + sum(t.mass_from(0) for t in self.tails)

    def _tail_bound(self, n, above, kind):
        total = 0.0
        for t in self.tails:
            forward = (t.side == "causal") == above
            if forward:
                t0 = (n + 1 - t.start) if above else (t.start - (n - 1))
                total += t.sup_from(t0) if kind == "sup" else t.mass_from(t0)
            else:
                reaches = t.start > n if above else t.start < n
                if reaches:
                    total += t.sup_from(0) if kind == "sup" else t.mass_from(0)
        return total

    def sup_above(self, n):
        return self.finite_part.sup_above(n) + self._tail_bound(n, True, "sup")

    def sup_below(self, n):
        return self.finite_part.sup_below(n) + self._tail_bound(n, False, "sup")

    def mass_above(self, n):
        return self.finite_part.mass_above(n) + self._tail_bound(n, True, "mass")

    def mass_below(self, n):
        return self.finite_part.mass_below(n) + self._tail_bound(n, False, "mass")

    def sup_norm(self):
        lo, hi = self.core_span()
        inner = max((abs(self.entry(n)) for n in range(lo, hi + 1)), default=0.0)
        return max(inner, self.sup_above(hi), self.sup_below(lo))

    def core_span(self):
        """Index range holding the finite part and all tail starts."""
        idx = list(self.finite_part.support) + [t.start for t in self.tails]
        if not idx:
            return (0, -1)
        return (min(idx), max(idx))

    def __repr__(self):
        return f"GeometricTails({self.finite_part!r}, {len(self.tails)} tails)"


# -- windows -----------------------------------------------------------------

class Window:
    """Float values on ``[lo, hi]``.

    ``error`` bounds ``|value - true|`` inside the window; ``tail_bound``
    bounds every omitted ``|a_n|`` (it is also the in-window error of any
    window later widened beyond this range).
    """

    __slots__ = ("lo", "hi", "values", "tail_bound", "error")

    def __init__(self, lo, hi, values, tail_bound=0.0, error=0.0):
        if lo > hi:
            raise ValueError("empty window")
        if tail_bound < 0 or error < 0:
            raise ValueError("negative bound")
        vals = np.asarray(values)
        if vals.shape != (hi - lo + 1,):
            raise ValueError(f"expected {hi - lo + 1} values, got {vals.shape}")
        vals = vals.copy()
        vals.setflags(write=False)
        self.lo, self.hi = int(lo), int(hi)
        self.values = vals
        self.tail_bound = float(tail_bound)
        self.error = float(error)

    def entry(self, n):
        if self.lo <= n <= self.hi:
            return self.values[n - self.lo]
        return 0.0

    def _abs(self):
        return np.abs(self.values)

    def sup_norm(self):
        return max(float(self._abs().max()) + self.error, self.tail_bound)

    def sup_above(self, n):
        a = self._abs()[max(n + 1 - self.lo, 0):]
        inner = float(a.max()) + self.error if a.size else 0.0
        return max(inner, self.tail_bound)

    def sup_below(self, n):
        a = self._abs()[:max(n - self.lo, 0)]
        inner = float(a.max()) + self.error if a.size else 0.0
        return max(inner, self.tail_bound)

    def _mass(self, a):
        if self.tail_bound > 0:
            raise NonSummable("window with a nonzero tail bound has no l1 bound")
        return float(a.sum()) + self.error * a.size

    def l1_norm(self):
        return self._mass(self._abs())

    def mass_above(self, n):
        return self._mass(self._abs()[max(n + 1 - self.lo, 0):])

    def mass_below(self, n):
        return self._mass(self._abs()[:max(n - self.lo, 0)])

    @property
    def summable(self):
        return self.tail_bound == 0

    def as_dict(self):
        return {n: self.values[n - self.lo] for n in range(self.lo, self.hi + 1)}

    def __repr__(self):
        return f"Window([{self.lo}, {self.hi}], tail_bound={self.tail_bound:.3g}, error={self.error:.3g})"


def _summable(s):
    return isinstance(s, (FiniteSupport, GeometricTails)) or (isinstance(s, Window) and s.summable)


# -- evaluation --------------------------------------------------------------

def _realify(vals, err):
    if np.iscomplexobj(vals):
        scale = float(np.abs(vals).max()) if vals.size else 0.0
        if vals.size == 0 or float(np.abs(vals.imag).max()) <= max(err, 1e3 * EPS * scale):
            return vals.real.copy()
    return vals


def window_of(a, lo, hi, precision=1e-12):
    """Evaluate ``a`` on ``[lo, hi]`` as a :class:`Window`."""
    if not precision > 0:
        raise ValueError("precision must be positive")
    if lo > hi:
        raise ValueError("empty window")
    idx = range(lo, hi + 1)
    if isinstance(a, FiniteSupport):
        vals = np.array([complex(a.entry(n)) for n in idx])
        err = EPS * float(np.abs(vals).max()) if vals.size else 0.0
        tb = max(a.sup_above(hi), a.sup_below(lo))
        return Window(lo, hi, _realify(vals, err), tb, err)
    if isinstance(a, GeometricTails):
        for t in a.tails:
            if not t.margin > 0:
                raise NonSummable("tail without decay")
        vals = np.array([a.entry(n) for n in idx], dtype=complex)
        # float evaluation of p(t) * r**t loses about (t + deg + 2) ulps per term
        err = 0.0
        for n in idx:
            s = abs(complex(a.finite_part.entry(n)))
            for t in a.tails:
                tt = t._t(n)
                if tt >= 0:
                    s += abs(t.entry(n)) * (tt + len(t.coeffs) + 2)
            err = max(err, 4 * EPS * s)
        tb = max(a.sup_above(hi), a.sup_below(lo))
        return Window(lo, hi, _realify(vals, err), tb, err)
    if isinstance(a, Window):
        vals = np.array([a.entry(n) for n in idx], dtype=a.values.dtype)
        widened = lo < a.lo or hi > a.hi
        err = max(a.error, a.tail_bound) if widened else a.error
        outside = [abs(a.values[n - a.lo]) + a.error for n in range(a.lo, a.hi + 1) if n < lo or n > hi]
        tb = max([a.tail_bound] + outside)
        return Window(lo, hi, vals, tb, err)
    raise TypeError(f"not a stream: {type(a).__name__}")


# -- algebra -----------------------------------------------------------------

def shift(a, d):
    """``shift(a, d)[n] == a[n + d]`` (``d = 1`` is one application of the shift map)."""
    if isinstance(a, FiniteSupport):
        return FiniteSupport({n - d: v for n, v in a.items()})
    if isinstance(a, GeometricTails):
        return GeometricTails(shift(a.finite_part, d), [t.shifted(d) for t in a.tails])
    if isinstance(a, Window):
        return Window(a.lo - d, a.hi - d, a.values, a.tail_bound, a.error)
    raise TypeError(f"not a stream: {type(a).__name__}")


def negate(a):
    if isinstance(a, FiniteSupport):
        return FiniteSupport({n: -v for n, v in a.items()})
    if isinstance(a, GeometricTails):
        return GeometricTails(negate(a.finite_part), [t.scaled(-1) for t in a.tails])
    if isinstance(a, Window):
        return Window(a.lo, a.hi, -a.values, a.tail_bound, a.error)
    raise TypeError(f"not a stream: {type(a).__name__}")


def scale(a, c):
    """Multiply every entry by the scalar ``c``."""
    if isinstance(a, FiniteSupport):
        return FiniteSupport({n: v * c for n, v in a.items()})
    if isinstance(a, GeometricTails):
        return GeometricTails(scale(a.finite_part, c), [t.scaled(c) for t in a.tails])
    if isinstance(a, Window):
        m = abs(complex(c))
        return Window(a.lo, a.hi, a.values * complex(c) if np.iscomplexobj(a.values) or isinstance(c, complex) else a.values * float(c),
                      a.tail_bound * m, a.error * m)
    raise TypeError(f"not a stream: {type(a).__name__}")


def add(a, b):
    """Componentwise sum; exact where both operands are."""
    if isinstance(a, FiniteSupport) and isinstance(b, FiniteSupport):
        out = dict(a.entries)
        for n, v in b.items():
            out[n] = out.get(n, 0) + v
        return FiniteSupport(out)
    if isinstance(a, Window) or isinstance(b, Window):
        if not isinstance(a, Window):
            a, b = b, a
        if isinstance(b, Window):
            lo, hi = min(a.lo, b.lo), max(a.hi, b.hi)
            wa = window_of(a, lo, hi)
            wb = window_of(b, lo, hi)
        else:
            lo, hi = a.lo, a.hi
            if isinstance(b, FiniteSupport) and not b.is_zero:
                s_lo, s_hi = b.span()
                lo, hi = min(lo, s_lo), max(hi, s_hi)
            wa = window_of(a, lo, hi)
            wb = window_of(b, lo, hi)
        return Window(lo, hi, wa.values + wb.values, wa.tail_bound + wb.tail_bound, wa.error + wb.error)
    ga = a if isinstance(a, GeometricTails) else GeometricTails(a)
    gb = b if isinstance(b, GeometricTails) else GeometricTails(b)
    return GeometricTails(add(ga.finite_part, gb.finite_part), ga.tails + gb.tails)


def _map_tail(items, ratio, coeffs, side, start):
    """Convolve the finite stream ``items`` with one tail.

    Returns ``(new_start, new_coeffs, corrections)`` where ``corrections`` maps
    indices near the tail start to values that belong to the finite part.
    Works for any number type (complex or exact).
    """
    js = [j for j, _ in items]
    jmin, jmax = min(js), max(js)
    zero = coeffs[0] * 0
    new = [zero] * len(coeffs)
    corr = {}
    if side == "causal":
        s2 = start + jmax
        for j, f in items:
            c = jmax - j
            sh = _poly_shift(coeffs, c)
            w = f * ratio ** c
            new = [x + w * y for x, y in zip(new, sh)]
        for n in range(start + jmin, s2):
            v = zero
            for j, f in items:
                t = n - j - start
                if t >= 0:
                    v = v + f * _poly_eval(coeffs, t) * ratio ** t
            if v != 0:
                corr[n] = v
    else:
        s2 = start + jmin
        for j, f in items:
            c = j - jmin
            sh = _poly_shift(coeffs, c)
            w = f * ratio ** c
            new = [x + w * y for x, y in zip(new, sh)]
        for n in range(s2 + 1, start + jmax + 1):
            v = zero
            for j, f in items:
                t = start - n + j
                if t >= 0:
                    v = v + f * _poly_eval(coeffs, t) * ratio ** t
            if v != 0:
                corr[n] = v
    return s2, new, corr


def _fs_times_gt(f, g):
    items = list(f.items())
    if not items:
        return GeometricTails()
    finite = _convolve_fs(f, g.finite_part)
    exact_ok = f.is_exact
    float_corr = {}
    exact_corr = {}
    tails = []
    for t in g.tails:
        s2, new, corr = _map_tail([(j, complex(v)) for j, v in items], t.ratio, list(t.coeffs), t.side, t.start)
        use_exact = exact_ok and t.is_exact
        if use_exact:
            s2e, newe, corre = _map_tail(items, t.exact_ratio, list(t.exact_coeffs), t.side, t.start)
            for n, v in corre.items():
                exact_corr[n] = exact_corr.get(n, 0) + v
            if any(c != 0 for c in newe):
                tails.append(Tail(t.root, tuple(complex(c) for c in newe), t.side, s2e, t.exact_root, tuple(newe)))
        else:
            for n, v in corr.items():
                float_corr[n] = float_corr.get(n, 0) + v
            if any(abs(c) > 0 for c in new):
                tails.append(Tail(t.root, tuple(new), t.side, s2))
    if float_corr:
        merged = {n: complex(v) for n, v in finite.items()}
        for n, v in exact_corr.items():
            merged[n] = merged.get(n, 0) + complex(v)
        for n, v in float_corr.items():
            merged[n] = merged.get(n, 0) + v
        finite = FiniteSupport(merged)
    elif exact_corr:
        finite = add(finite, FiniteSupport(exact_corr))
    return GeometricTails(finite, tails)


def _convolve_fs(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return FiniteSupport(out)


def _fs_times_window(f, w):
    items = list(f.items())
    if not items:
        return Window(w.lo, w.hi, np.zeros(w.hi - w.lo + 1))
    jmin, jmax = f.span()
    lo, hi = w.lo + jmin, w.hi + jmax
    dtype = complex if (np.iscomplexobj(w.values) or any(isinstance(v, complex) for _, v in items)) else float
    out = np.zeros(hi - lo + 1, dtype=dtype)
    for j, v in items:
        c = complex(v) if dtype is complex else float(v)
        out[w.lo + j - lo: w.hi + j - lo + 1] += c * w.values
    l1 = f.l1_norm()
    err = l1 * max(w.error, w.tail_bound) + 4 * EPS * l1 * float(np.abs(w.values).max())
    return Window(lo, hi, out, l1 * w.tail_bound, err)


def _truncation(s, budget, cap=1_000_000):
    """Index range ``[a, b]`` outside of which ``s`` carries l1 mass <= budget."""
    if isinstance(s, FiniteSupport):
        return s.span() if not s.is_zero else (0, 0)
    if isinstance(s, Window):
        return (s.lo, s.hi)
    lo, hi = s.core_span()
    if lo > hi:
        lo = hi = 0
    step = 1
    while s.mass_above(hi) > budget / 2:
        hi += step
        step *= 2
        if hi - lo > cap:
            raise NonSummable("tails decay too slowly for the requested precision")
    step = 1
    while s.mass_below(lo) > budget / 2:
        lo -= step
        step *= 2
        if hi - lo > cap:
            raise NonSummable("tails decay too slowly for the requested precision")
    return lo, hi


def _convolve_numeric(s, w, lo, hi, precision):
    """``s * w`` on ``[lo, hi]`` where ``s`` is summable and ``w`` bounded."""
    w_sup = w.sup_norm()
    s_l1 = s.l1_norm()
    budget = precision / (2 * max(w_sup, 1e-300))
    a, b = _truncation(s, budget)
    sw = window_of(s, a, b)
    need_lo, need_hi = lo - b, hi - a
    ww = window_of(w, need_lo, need_hi, precision / (2 * max(s_l1, 1e-300)))
    full = np.convolve(sw.values, ww.values)
    # full[k] corresponds to index a + need_lo + k
    off = lo - (a + need_lo)
    vals = full[off: off + (hi - lo + 1)]
    trunc = s.mass_above(b) + s.mass_below(a)
    err = (trunc * w_sup + s_l1 * max(ww.error, sw.error * w_sup / max(s_l1, 1e-300))
           + sw.error * (b - a + 1) * w_sup + 8 * EPS * s_l1 * w_sup * (b - a + 2))
    tb = max(_outside_bound(s, w, hi, True), _outside_bound(s, w, lo, False))
    return Window(lo, hi, _realify(vals, err), tb, err)


def _outside_bound(s, w, edge, above):
    """Bound ``|(s * w)[n]|`` for all ``n`` beyond ``edge``.

    Splitting the defining sum at ``i = c`` gives
    ``mass_s(beyond c) * sup|w| + |s|_1 * sup_w(beyond edge - c)``.
    """
    w_sup = w.sup_norm()
    s_l1 = s.l1_norm()
    best = s_l1 * w_sup
    lo, hi = (s.core_span() if isinstance(s, GeometricTails) else s.span()) if not isinstance(s, Window) else (s.lo, s.hi)
    span = max(abs(edge), abs(lo), abs(hi)) + 2
    for c in range(-2 * span, 2 * span + 1, max(1, span // 8)):
        if above:
            v = s.mass_above(c) * w_sup + s_l1 * w.sup_above(edge - c)
        else:
            v = s.mass_below(c) * w_sup + s_l1 * w.sup_below(edge - c)
        best = min(best, v)
    return best


def convolve(a, b, lo=None, hi=None, precision=1e-12):
    """Convolution product ``a * b``.

    Exact :class:`FiniteSupport` when both operands are finite; tails mapped
    through the polynomial for finite times :class:`GeometricTails`; a
    :class:`Window` otherwise (on ``[lo, hi]``, defaulting to the window
    operand's range or ``[-20, 20]``).
    """
    if isinstance(b, FiniteSupport) and not isinstance(a, FiniteSupport):
        a, b = b, a
    if isinstance(a, FiniteSupport):
        if isinstance(b, FiniteSupport):
            return _convolve_fs(a, b)
        if isinstance(b, GeometricTails):
            return _fs_times_gt(a, b)
        if isinstance(b, Window):
            return _fs_times_window(a, b)
        raise TypeError(f"not a stream: {type(b).__name__}")
    if not (_summable(a) or _summable(b)):
        raise NonSummable("neither operand guarantees convergence of the convolution sum")
    s, w = (a, b) if _summable(a) and (isinstance(a, GeometricTails) or not _summable(b)) else (b, a)
    if lo is None or hi is None:
        if isinstance(w, Window):
            dlo, dhi = w.lo, w.hi
        elif isinstance(s, Window):
            dlo, dhi = s.lo, s.hi
        else:
            dlo, dhi = -20, 20
        lo = dlo if lo is None else lo
        hi = dhi if hi is None else hi
    return _convolve_numeric(s, w, lo, hi, precision)


def streams_close(a, b, lo, hi, tol):
    """Windowed equality: every entry on ``[lo, hi]`` agrees within ``tol`` plus the stated errors."""
    wa, wb = window_of(a, lo, hi), window_of(b, lo, hi)
    gap = np.abs(wa.values - wb.values)
    return bool(np.all(gap <= tol + wa.error + wb.error))


# -- serialization -----------------------------------------------------------

def _num_to_json(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, QuadIrr):
        return {"quadirr": list(v.abc) + [v.D]}
    c = complex(v)
    return [c.real, c.imag]


def _num_from_json(x):
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, dict):
        a, b, c, d = x["quadirr"]
        return QuadIrr(a, b, c, d)
    if isinstance(x, list):
        re_, im = x
        return complex(re_, im)
    return Fraction(x)


def to_record(a):
    """Tagged, JSON-ready record; lossless for :class:`FiniteSupport`."""
    if isinstance(a, FiniteSupport):
        return {"kind": "finite", "entries": {str(n): _num_to_json(v) for n, v in a.items()}}
    if isinstance(a, GeometricTails):
        tails = []
        for t in a.tails:
            rec = {"root": [t.root.real, t.root.imag],
                   "coeffs": [[c.real, c.imag] for c in t.coeffs],
                   "side": t.side, "start": t.start, "margin": t.margin}
            if t.is_exact:
                rec["exact_root"] = _num_to_json(t.exact_root)
                rec["exact_coeffs"] = [_num_to_json(c) for c in t.exact_coeffs]
            tails.append(rec)
        return {"kind": "geometric_tails", "finite_part": to_record(a.finite_part), "tails": tails}
    if isinstance(a, Window):
        vals = a.values
        if np.iscomplexobj(vals):
            out = [[float(v.real), float(v.imag)] for v in vals]
        else:
            out = [float(v) for v in vals]
        return {"kind": "window", "lo": a.lo, "hi": a.hi, "values": out,
                "tail_bound": a.tail_bound, "error": a.error}
    raise TypeError(f"not a stream: {type(a).__name__}")


def from_record(rec):
    kind = rec["kind"]
    if kind == "finite":
        return FiniteSupport({int(n): _num_from_json(v) for n, v in rec["entries"].items()})
    if kind == "geometric_tails":
        tails = []
        for t in rec["tails"]:
            er = _num_from_json(t["exact_root"]) if "exact_root" in t else None
            ec = tuple(_num_from_json(c) for c in t["exact_coeffs"]) if "exact_coeffs" in t else None
            tails.append(Tail(complex(*t["root"]), tuple(complex(*c) for c in t["coeffs"]),
                              t["side"], int(t["start"]), er, ec))
        return GeometricTails(from_record(rec["finite_part"]), tails)
    if kind == "window":
        vals = rec["values"]
        if vals and isinstance(vals[0], list):
            vals = [complex(*v) for v in vals]
        return Window(rec["lo"], rec["hi"], vals, rec["tail_bound"], rec.get("error", 0.0))
    raise ValueError(f"unknown stream kind {kind!r}")


def dumps(a):
    return json.dumps(to_record(a), sort_keys=True)


def loads(text):
    return from_record(json.loads(text))
