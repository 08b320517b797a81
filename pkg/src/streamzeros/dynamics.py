"""Torus orbits of Omega_P, their integer coding, admissibility and entropy.

A point of Omega_P is a sequence ``x`` on the circle with ``P * x == 0``
mod 1.  Its code is ``delta = P * {x}``, computed from the representatives
in ``[0, 1)``; the code is an integer sequence over the alphabet ``K_P`` and
``x = P^-1 * delta`` recovers the point.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import log
import os

import numpy as np

from .errors import (BranchOutOfRange, NotAdmissible, NotAnOrbit,
                     NotHyperbolic, UnsupportedConstantTerm)
from .inverse import find_roots, inverse, is_hyperbolic
from .poly import LaurentPoly
from .quadratic import QuadIrr
from .streams import FiniteSupport, GeometricTails, _poly_shift, convolve, window_of

FLOAT_TOL = 1e-9


def _is_exact(v):
    return isinstance(v, (int, Fraction, QuadIrr))


# -- types -------------------------------------------------------------------

@dataclass(frozen=True)
class TorusSeq:
    """Window ``x[start_index], x[start_index + 1], ...`` of a torus sequence.

    With ``periodic=True`` the values are one period of a bi-infinite
    periodic sequence.
    """

    start_index: int
    values: tuple
    periodic: bool = False

    def __post_init__(self):
        vals = tuple(Fraction(v) if isinstance(v, int) else v for v in self.values)
        for v in vals:
            if not 0 <= v < 1:
                raise ValueError(f"coordinate {v} outside [0, 1)")
        if self.periodic and not vals:
            raise ValueError("empty period")
        object.__setattr__(self, "values", vals)

    @classmethod
    def mod1(cls, values, start_index=0, periodic=False):
        return cls(start_index, tuple(_mod1(v) for v in values), periodic)

    @property
    def end_index(self):
        return self.start_index + len(self.values) - 1

    @property
    def is_exact(self):
        return all(_is_exact(v) for v in self.values)

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        return self.entry(n)

    def entry(self, n):
        i = n - self.start_index
        if self.periodic:
            return self.values[i % len(self.values)]
        if not 0 <= i < len(self.values):
            raise IndexError(f"index {n} outside [{self.start_index}, {self.end_index}]")
        return self.values[i]

    def indices(self):
        return range(self.start_index, self.end_index + 1)

    def window(self, lo, hi):
        return TorusSeq(lo, tuple(self.entry(n) for n in range(lo, hi + 1)))

    def shifted(self, d):
        """``shifted(d)[n] == self[n + d]``."""
        return TorusSeq(self.start_index - d, self.values, self.periodic)


@dataclass(frozen=True)
class Alphabet:
    k_star: int
    k_star_hi: int

    @property
    def letters(self):
        return tuple(range(self.k_star, self.k_star_hi + 1))

    def __contains__(self, letter):
        return self.k_star <= letter <= self.k_star_hi

    def __len__(self):
        return self.k_star_hi - self.k_star + 1


@dataclass(frozen=True)
class CodeWord:
    """Integer word; zero outside unless ``periodic``."""

    letters: tuple
    periodic: bool = False
    start_index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(a) for a in self.letters))
        if self.periodic and not self.letters:
            raise ValueError("empty period")

    def __len__(self):
        return len(self.letters)

    def entry(self, n):
        i = n - self.start_index
        if self.periodic:
            return self.letters[i % len(self.letters)]
        return self.letters[i] if 0 <= i < len(self.letters) else 0

    def shifted(self, d):
        return CodeWord(self.letters, self.periodic, self.start_index - d)

    def rotated_to(self, start):
        """Same periodic word listed from index ``start``."""
        if not self.periodic:
            raise ValueError("only periodic words can be rotated")
        n = len(self.letters)
        return CodeWord(tuple(self.entry(start + i) for i in range(n)), True, start)

    def as_stream(self):
        if self.periodic:
            raise ValueError("periodic words have no finite-support form")
        return FiniteSupport({self.start_index + i: a for i, a in enumerate(self.letters)})


class Verdict(Enum):
    YES = "yes"
    NO = "no"
    BOUNDARY = "boundary"


# -- helpers -----------------------------------------------------------------

def _mod1(v):
    if isinstance(v, Fraction):
        return v % 1
    if isinstance(v, int):
        return Fraction(0)
    if isinstance(v, QuadIrr):
        return v - v.floor()
    r = float(v) % 1.0
    return 0.0 if r >= 1.0 else r


def _as_integer(v, tol=FLOAT_TOL):
    """Integer value of an exact or float quantity, or ``None``."""
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else None
    if isinstance(v, int):
        return v
    if isinstance(v, QuadIrr):
        if v.is_rational and v.to_fraction().denominator == 1:
            return int(v.to_fraction())
        return None
    r = round(float(v))
    return r if abs(float(v) - r) <= tol else None


def form3(p):
    """Coefficients ``[1, a_1, ..., a_k]`` of ``z^-h P`` up to a global sign.

    Raises :class:`UnsupportedConstantTerm` when the constant term is not
    ``+-1``.
    """
    s = p.normalized()
    a0 = s[0]
    if abs(a0) != 1:
        raise UnsupportedConstantTerm(f"constant term {a0} of {s} is not +-1")
    return [a0 * c for c in s.dense()]


def alphabet(p):
    neg = sum(a for _, a in p.items() if a < 0)
    pos = sum(a for _, a in p.items() if a > 0)
    return Alphabet(min(neg + 1, 0), max(pos - 1, 0))


def _solve_mod1(a, r):
    """All ``x`` in ``[0, 1)`` with ``a * x == r`` mod 1, ascending."""
    m = abs(a)
    if isinstance(r, float):
        base = (r if a > 0 else -r) % 1.0
        return [((base + j) / m) % 1.0 for j in range(m)]
    base = (r if a > 0 else -r) % 1
    return sorted((base + j) / m for j in range(m))


def _step_forward(coeffs, tail, branch):
    """Next coordinate after ``tail`` (the previous ``k`` values, oldest first)."""
    k = len(coeffs) - 1
    r = -sum(coeffs[i] * tail[k - i] for i in range(1, k + 1))
    sols = _solve_mod1(coeffs[0], r)
    if not 0 <= branch < len(sols):
        raise BranchOutOfRange(f"branch {branch} not in [0, {len(sols)})")
    return sols[branch]


def _step_back(coeffs, head, branch):
    """Coordinate preceding ``head`` (the next ``k`` values, oldest first)."""
    k = len(coeffs) - 1
    r = -sum(coeffs[i] * head[k - 1 - i] for i in range(k))
    sols = _solve_mod1(coeffs[k], r)
    if not 0 <= branch < len(sols):
        raise BranchOutOfRange(f"branch {branch} not in [0, {len(sols)})")
    return sols[branch]


def extend(coeffs, seed, steps_fwd, steps_back, branch=0, branch_fwd=0):
    """Extend ``seed`` (k consecutive values) through ``sum c_i x_{m-i} == 0``.

    ``coeffs`` are ascending coefficients with nonzero ends; forward steps pick
    solution number ``branch_fwd`` among the ``|c_0|`` residues, backward
    steps solution number ``branch`` among the ``|c_k|`` residues.  Works for any nonzero end coefficients.
    """
    k = len(coeffs) - 1
    vals = list(seed)
    if len(vals) != k:
        raise ValueError(f"seed must have {k} values, got {len(vals)}")
    for _ in range(steps_fwd):
        vals.append(_step_forward(coeffs, vals[len(vals) - k:], branch_fwd))
    front = []
    head = vals[:k]
    for _ in range(steps_back):
        v = _step_back(coeffs, head, branch)
        front.append(v)
        head = [v] + head[:-1]
    return front[::-1] + vals


# -- orbits ------------------------------------------------------------------

def orbit(p, seed, steps_fwd, steps_back=0, branch=0):
    """Orbit window of Omega_P grown from ``seed`` (length ``k``).

    Forward steps follow ``x_{n+k} = -a_k x_n - ... - a_1 x_{n+k-1}``;
    backward steps solve ``a_k x = c`` mod 1 and take residue number
    ``branch`` in ascending order.
    """
    coeffs = form3(p)
    k = len(coeffs) - 1
    if not isinstance(seed, TorusSeq):
        seed = TorusSeq(0, tuple(seed))
    if k == 0:
        if len(seed):
            raise ValueError("Omega_P is trivial for a monomial P")
        return seed
    if steps_back and not 0 <= branch < abs(coeffs[k]):
        raise BranchOutOfRange(f"branch {branch} not in [0, {abs(coeffs[k])})")
    vals = extend(coeffs, seed.values, steps_fwd, steps_back, branch)
    return TorusSeq(seed.start_index - steps_back, tuple(vals))


def periodic_orbit(p, seed, max_steps=1_000_000):
    """The periodic part of the forward orbit of a rational ``seed``.

    Returns a periodic :class:`TorusSeq` listing one period, indexed so that
    it agrees with the forward orbit of ``seed`` from the start of the cycle.
    """
    coeffs = form3(p)
    k = len(coeffs) - 1
    if not isinstance(seed, TorusSeq):
        seed = TorusSeq(0, tuple(seed))
    vals = list(seed.values)
    seen = {tuple(vals): 0}
    for step in range(1, max_steps + 1):
        vals.append(_step_forward(coeffs, vals[-k:], 0))
        block = tuple(vals[-k:])
        if block in seen:
            first = seen[block]
            period = vals[first:first + step - first]
            return TorusSeq(seed.start_index + first, tuple(period), periodic=True)
        seen[block] = step
    raise ValueError("no period found within max_steps")


def is_member(p, x, tol=FLOAT_TOL):
    """``P * x == 0`` mod 1 wherever the window determines it."""
    items = list(p.items())
    lo, hi = p.low, p.high
    rng = range(x.start_index, x.end_index + 1)
    if not x.periodic:
        rng = range(x.start_index + hi, x.end_index + lo + 1)
    for m in rng:
        s = sum(a * x.entry(m - e) for e, a in items)
        if _as_integer(s, tol) is None:
            return False
    return True


# -- coding ------------------------------------------------------------------

def encode(p, x):
    """``delta_i = sum_n a_n {x_{i-n}}`` on every index the window determines."""
    items = list(p.items())
    if x.periodic:
        idx = range(x.start_index, x.end_index + 1)
    else:
        idx = range(x.start_index + p.high, x.end_index + p.low + 1)
        if len(idx) == 0:
            raise NotAnOrbit("window too short to produce a letter")
    letters = []
    for i in idx:
        s = sum(a * x.entry(i - e) for e, a in items)
        v = _as_integer(s)
        if v is None:
            raise NotAnOrbit(f"P * x at index {i} is {s}, not an integer")
        letters.append(v)
    return CodeWord(tuple(letters), x.periodic, idx.start)


def _periodic_solve(p, delta):
    """Exact periodic ``x`` with ``P * x == delta`` for a periodic word.

    Each coordinate is an affine function of the first ``k`` unknowns through
    the recursion; closing the period gives a ``k x k`` rational system.  It is
    regular when no root of ``P`` is a root of unity, in particular for
    hyperbolic ``P``.
    """
    c = [Fraction(a) for a in p.normalized().dense()]
    k = len(c) - 1
    per = len(delta.letters)
    s = delta.start_index
    h = p.low
    if k == 0:
        return [delta.entry(n + h) / c[0] for n in range(s, s + per)]
    # forms[j] = (coefficient vector over unknowns x_s .. x_{s+k-1}, constant)
    forms = [([Fraction(int(i == j)) for i in range(k)], Fraction(0)) for j in range(k)]
    for m in range(s + k, s + per + k):
        # c_0 x_m + c_1 x_{m-1} + ... + c_k x_{m-k} = delta_{m+h}
        vec = [Fraction(0)] * k
        const = Fraction(delta.entry(m + h))
        for i in range(1, k + 1):
            fv, fc = forms[m - i - s]
            for t in range(k):
                vec[t] -= c[i] * fv[t]
            const -= c[i] * fc
        forms.append(([v / c[0] for v in vec], const / c[0]))
    # closing conditions x_{s+per+j} = x_{s+j}
    rows = []
    rhs = []
    for j in range(k):
        fv, fc = forms[per + j]
        rows.append([fv[t] - int(t == j) for t in range(k)])
        rhs.append(-fc)
    sol = _solve_fractions(rows, rhs)
    if sol is None:
        raise NotHyperbolic(f"{p} has a root of unity of order dividing {per}")
    return [sum(fv[t] * sol[t] for t in range(k)) + fc for fv, fc in forms[:per]]


def _solve_fractions(rows, rhs):
    n = len(rows)
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        f = aug[col][col]
        aug[col] = [a / f for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                g = aug[r][col]
                aug[r] = [a - g * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


@dataclass(frozen=True)
class Preimage:
    """Raw values of ``P^-1 * delta`` on a window with an error bound."""

    start_index: int
    values: tuple
    error: float
    periodic: bool = False

    @property
    def exact(self):
        return self.error == 0 and all(_is_exact(v) for v in self.values)


def preimage(p, delta, window=None, precision=1e-12):
    """``P^-1 * delta`` without reduction mod 1.

    Periodic words are solved exactly as a periodic linear recursion;
    hyperbolicity makes the bounded periodic solution unique.  Finite words
    use the convolution inverse (exact for quadratic ``P`` with real roots).
    """
    hyp = is_hyperbolic(p)
    if not hyp.hyperbolic:
        raise NotHyperbolic(f"{p} is not hyperbolic")
    if delta.periodic:
        period = len(delta.letters)
        sol = _periodic_solve(p, delta)
        base = {(delta.start_index + i) % period: v for i, v in enumerate(sol)}
        if window is None:
            lo = delta.start_index
            vals = tuple(base[n % period] for n in range(lo, lo + period))
            return Preimage(lo, vals, 0.0, True)
        lo, hi = window
        return Preimage(lo, tuple(base[n % period] for n in range(lo, hi + 1)), 0.0)
    if window is None:
        lo, hi = delta.start_index, delta.start_index + len(delta.letters) - 1
    else:
        lo, hi = window
    x = convolve(delta.as_stream(), inverse(p, precision))
    if isinstance(x, FiniteSupport) or (isinstance(x, GeometricTails) and x.is_exact):
        vals = tuple(_simplify(x.exact_entry(n)) for n in range(lo, hi + 1))
        return Preimage(lo, vals, 0.0)
    w = window_of(x, lo, hi, precision)
    return Preimage(lo, tuple(float(np.real(v)) for v in w.values), w.error)


def _simplify(v):
    if isinstance(v, QuadIrr) and v.is_rational:
        return v.to_fraction()
    return v


def decode(p, delta, window=None, precision=1e-12):
    """The torus point ``P^-1 * delta``.

    Raises :class:`NotAdmissible` when a coordinate leaves ``[0, 1)``.  For
    periodic words with no ``window`` the result is periodic.
    """
    pre = preimage(p, delta, window, precision)
    out = []
    for n, v in enumerate(pre.values, pre.start_index):
        if pre.error == 0 and _is_exact(v):
            if not 0 <= v < 1:
                raise NotAdmissible(f"coordinate {v} at index {n} is outside [0, 1)")
            out.append(v)
        else:
            v = float(v)
            err = pre.error + FLOAT_TOL
            if v < -err or v >= 1 + err:
                raise NotAdmissible(f"coordinate {v} at index {n} is outside [0, 1)")
            out.append(v if 0 <= v < 1 else 0.0)
    return TorusSeq(pre.start_index, tuple(out), pre.periodic)


# -- admissibility -----------------------------------------------------------

def _combine(tails, side, s_star):
    """Rewrite ``side`` tails as ``[(ratio, coeffs)]`` in ``t = |n - s_star|``.

    Only valid for indices beyond every tail start.  Uses exact data when all
    tails carry it.
    """
    exact = all(t.is_exact for t in tails)
    terms = {}
    for t in tails:
        if t.side != side:
            continue
        ratio = t.exact_ratio if exact else t.ratio
        coeffs = list(t.exact_coeffs) if exact else list(t.coeffs)
        d = (s_star - t.start) if side == "causal" else (t.start - s_star)
        sh = _poly_shift(coeffs, d)
        sc = ratio ** d
        new = [c * sc for c in sh]
        key = ratio
        if key in terms:
            old = terms[key]
            n = max(len(old), len(new))
            old = old + [0] * (n - len(old))
            new = new + [0] * (n - len(new))
            terms[key] = [a + b for a, b in zip(old, new)]
        else:
            terms[key] = new
    return [(r, c) for r, c in terms.items()], exact


def _far_nonneg(terms, exact, tol):
    """Decide ``sum_j q_j(t) r_j**t >= 0`` for every ``t >= 0``.

    Returns ``(True, T)`` when the inequality is certified for ``t >= T``
    (smaller ``t`` must be checked directly), ``(False, None)`` when some
    ``t`` violates it, ``(None, None)`` when undecidable.
    """
    def is_zero(c):
        return c == 0 if exact else abs(c) <= tol

    terms = [(r, [c for c in cs]) for r, cs in terms if not all(is_zero(c) for c in cs)]
    if not terms:
        return True, 0
    mods = [abs(complex(r)) for r, _ in terms]
    top = max(mods)
    group = [tm for tm, m in zip(terms, mods) if m >= top * (1 - 1e-12)]
    rest = [tm for tm, m in zip(terms, mods) if m < top * (1 - 1e-12)]

    def real_pos(r):
        if exact:
            return r > 0
        return abs(complex(r).imag) <= tol and complex(r).real > 0

    def real_neg(r):
        if exact:
            return r < 0
        return abs(complex(r).imag) <= tol and complex(r).real < 0

    pos = [tm for tm in group if real_pos(tm[0])]
    if not pos:
        # dominant part oscillates with zero mean: negative values recur
        return False, None
    if len(group) == 2 and len(pos) == 1 and real_neg([tm for tm in group if tm not in pos][0][0]):
        # ratios r and -r: split by parity of t
        results = []
        for e in (0, 1):
            sub = [(r * r, [c * r ** e for c in cs]) for r, cs in terms]
            ok, T = _far_nonneg(_merge(sub, exact), exact, tol)
            if ok is not True:
                return ok, None
            results.append(T)
        return True, 2 * max(results) + 1
    if len(group) != 1:
        return None, None
    r, cs = group[0]
    if len(cs) > 1 and not all(is_zero(c) for c in cs[1:]):
        return None, None
    c = cs[0]
    if not exact:
        c = complex(c).real
        r = complex(r).real
    if c < 0:
        return False, None
    if not rest:
        return True, 0
    if any(len(q) > 1 and not all(is_zero(x) for x in q[1:]) for _, q in rest):
        return None, None
    rest_mod = max(abs(complex(rr)) for rr, _ in rest)
    rest_amp = sum(abs(complex(q[0])) for _, q in rest)
    # c r^t >= rest_amp * rest_mod^t  <=>  t >= log(rest_amp / c) / log(r / rest_mod)
    cf, rf = float(c), float(r)
    if cf <= 0:
        return None, None
    T = max(0, int(np.ceil(log(max(rest_amp, 1e-300) / cf) / log(rf / rest_mod))) + 1)
    if exact and all(isinstance(rr, QuadIrr) or isinstance(rr, Fraction) for rr, _ in rest):
        bound = sum(abs(q[0]) * abs(rr) ** T for rr, q in rest)
        while not c * r ** T > bound:
            T += 1
            bound = sum(abs(q[0]) * abs(rr) ** T for rr, q in rest)
    return True, T


def _merge(terms, exact):
    out = {}
    for r, cs in terms:
        if r in out:
            old = out[r]
            n = max(len(old), len(cs))
            out[r] = [a + b for a, b in zip(old + [0] * (n - len(old)), cs + [0] * (n - len(cs)))]
        else:
            out[r] = list(cs)
    return list(out.items())


def is_admissible(p, delta, precision=1e-12):
    """Whether ``P^-1 * delta`` lies in ``[0, 1)`` at every index."""
    hyp = is_hyperbolic(p)
    if not hyp.hyperbolic:
        raise NotHyperbolic(f"{p} is not hyperbolic")
    if any(a not in alphabet(p) for a in delta.letters):
        return Verdict.NO
    if delta.periodic:
        pre = preimage(p, delta, precision=precision)
        return Verdict.YES if all(0 <= v < 1 for v in pre.values) else Verdict.NO
    if not any(delta.letters):
        return Verdict.YES
    x = convolve(delta.as_stream(), inverse(p, precision))
    if isinstance(x, FiniteSupport):
        return Verdict.YES if all(0 <= v < 1 for _, v in x.items()) else Verdict.NO
    exact = x.is_exact
    lo, hi = x.core_span()
    tol = 1e3 * precision

    def value(n):
        return x.exact_entry(n) if exact else x.entry(n)

    # far regions: right side holds only causal tails, left only anticausal
    checks = []
    for side, edge in (("causal", hi + 1), ("anticausal", lo - 1)):
        terms, ex = _combine(x.tails, side, edge)
        ok, T = _far_nonneg(terms, ex, tol)
        if ok is False:
            return Verdict.NO
        if ok is None:
            return Verdict.BOUNDARY
        checks.append((side, edge, T))
    # explicit range: the core plus the uncertified stretch of each far side
    n_lo, n_hi = lo, hi
    for side, edge, T in checks:
        if side == "causal":
            n_hi = edge + T
        else:
            n_lo = edge - T
    # upper bound 1: beyond a point the sup bound is below 1
    while x.sup_above(n_hi) >= 1:
        n_hi += 8
    while x.sup_below(n_lo) >= 1:
        n_lo -= 8
    if exact:
        for n in range(n_lo, n_hi + 1):
            v = value(n)
            if not 0 <= v < 1:
                return Verdict.NO
        return Verdict.YES
    w = window_of(x, n_lo, n_hi, precision)
    err = w.error + precision
    verdict = Verdict.YES
    for v in np.real(w.values):
        if v < -err or v >= 1 + err:
            return Verdict.NO
        if v < err or v > 1 - err:
            # exact zeros are fine; anything else within error is undecidable
            verdict = Verdict.BOUNDARY
    return verdict


# -- entropy -----------------------------------------------------------------

def entropy_exact(p):
    """Sum of ``log|lambda|`` over companion eigenvalues with ``|lambda| > 1``.

    The eigenvalues are reciprocals of the roots of ``P``.  When the constant
    term is not ``+-1`` but the top coefficient is, the time-reversed
    polynomial (same entropy) is used.
    """
    s = p.normalized()
    if abs(s[0]) != 1:
        if abs(s.leading) == 1:
            s = s.reversed().normalized()
        else:
            raise UnsupportedConstantTerm(f"neither end coefficient of {s} is +-1")
    total = 0.0
    for r in find_roots(s).roots:
        m = abs(r.value)
        if m < 1 - r.error_radius:
            total -= r.multiplicity * log(m)
    return total


@dataclass(frozen=True)
class EntropyEstimate:
    rows: tuple  # (n, count, (1/n) log count)
    backward_depth: int
    grid: int

    @property
    def estimates(self):
        return self.rows


def default_threads():
    env = os.environ.get("STREAMZEROS_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def _words_block(coeffs, block, modulus, word_len, k_lo, base):
    """Integer codes of the first ``word_len`` letters for a block of seeds."""
    k = len(coeffs) - 1
    cols = [block[:, i] for i in range(k)]
    codes = np.zeros(block.shape[0], dtype=np.int64)
    for _ in range(word_len):
        s = sum(int(coeffs[i]) * cols[k - i] for i in range(1, k + 1))
        nxt = (-s) % modulus
        delta = (nxt + s) // modulus
        codes = codes * base + (delta - k_lo)
        cols = cols[1:] + [nxt]
    return np.unique(codes)


def _backward_seeds(coeffs, seeds, modulus, depth):
    """All ``depth``-step backward extensions; returns their first k coordinates."""
    k = len(coeffs) - 1
    ak = int(coeffs[k])
    m = abs(ak)
    cur = seeds
    for _ in range(depth):
        # a_k x_{-1} == -(x_{k-1} + a_1 x_{k-2} + ... + a_{k-1} x_0) mod 1
        r = sum(int(coeffs[i]) * cur[:, k - 1 - i] for i in range(k))
        r = (-r) % modulus
        base = r if ak > 0 else (-r) % modulus
        outs = []
        for j in range(m):
            # x = (base + j * modulus) / m on the finer grid modulus * m
            x = base + j * modulus
            nxt = np.empty_like(cur)
            nxt[:, 0] = x
            nxt[:, 1:] = cur[:, :-1] * m
            outs.append(nxt)
        cur = np.concatenate(outs)
        modulus *= m
    return cur, modulus


def entropy_estimate(p, word_len=10, grid=1024, backward_depth=None, threads=None,
                     budget=1 << 23):
    """Word counts of the coding over orbits seeded on ``(i/grid, j/grid, ...)``.

    For each ``n <= word_len`` reports ``(n, count, log(count) / n)``.  When
    ``|a_k| > 1`` the seeds are also extended backward through every residue
    branch, ``backward_depth`` steps (chosen from ``budget`` by default).
    The result does not depend on ``threads``.
    """
    if grid < 2:
        raise ValueError("grid must be at least 2")
    if word_len < 1:
        raise ValueError("word_len must be positive")
    coeffs = form3(p)
    k = len(coeffs) - 1
    if k == 0:
        return EntropyEstimate(tuple((n, 1, 0.0) for n in range(1, word_len + 1)), 0, grid)
    m = abs(coeffs[k])
    n_seeds = grid ** k
    if backward_depth is None:
        backward_depth = 0
        if m > 1:
            while n_seeds * m ** (backward_depth + 1) <= budget and backward_depth < word_len:
                backward_depth += 1
    alpha = alphabet(LaurentPoly.from_dense(coeffs))
    base = len(alpha)
    modulus_final = grid * m ** backward_depth
    if modulus_final * sum(abs(c) for c in coeffs) >= 2 ** 62:
        raise ValueError("grid too fine for 64-bit arithmetic")
    if base ** word_len >= 2 ** 62:
        raise ValueError("word length too large for integer word codes")
    threads = threads or default_threads()
    # seed numerators, split into blocks along the first coordinate
    first = np.arange(grid, dtype=np.int64)
    blocks = np.array_split(first, max(1, min(threads * 4, grid)))

    def work(block_first):
        mesh = np.meshgrid(block_first, *([np.arange(grid, dtype=np.int64)] * (k - 1)), indexing="ij")
        seeds = np.stack([g.ravel() for g in mesh], axis=1)
        modulus = grid
        found = [_words_block(coeffs, seeds, modulus, word_len, alpha.k_star, base)]
        for _ in range(backward_depth):
            seeds, modulus = _backward_seeds(coeffs, seeds, modulus, 1)
            found.append(_words_block(coeffs, seeds, modulus, word_len, alpha.k_star, base))
        return np.unique(np.concatenate(found))

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(work, blocks))
    else:
        parts = [work(b) for b in blocks]
    codes = np.unique(np.concatenate(parts))
    rows = []
    for n in range(1, word_len + 1):
        count = int(np.unique(codes // base ** (word_len - n)).size)
        rows.append((n, count, log(count) / n))
    return EntropyEstimate(tuple(rows), backward_depth, grid)
