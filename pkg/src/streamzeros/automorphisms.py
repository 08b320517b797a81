"""Companion matrices, strong automorphisms and their classification for k = 2.

Strong automorphisms of Omega_P act on consecutive blocks through unimodular
integer matrices commuting with the companion matrix.  For quadratic ``P``
they are parametrised by the units of a real quadratic order, which is where
continued fractions and the Pell equation ``w**2 - D v**2 = +-4`` come in.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .dynamics import TorusSeq, form3, is_member
from .errors import (InconsistentWindow, NegativeDiscriminant, RationalInput,
                     RepeatedRoots, SquareD, UnsupportedDegree)
from .inverse import find_roots
from .poly import int_det
from .quadratic import QuadIrr


# -- integer matrices --------------------------------------------------------

@dataclass(frozen=True)
class IntMatrix:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(a) for a in r) for r in self.rows)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValueError("IntMatrix must be square and nonempty")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, k):
        return cls(tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))

    @property
    def size(self):
        return len(self.rows)

    # named entries of the 2x2 case: (p, p'; q, q')
    @property
    def p(self):
        return self.rows[0][0]

    @property
    def pp(self):
        return self.rows[0][1]

    @property
    def q(self):
        return self.rows[1][0]

    @property
    def qq(self):
        return self.rows[1][1]

    def det(self):
        return int_det([list(r) for r in self.rows])

    def trace(self):
        return sum(self.rows[i][i] for i in range(self.size))

    def __matmul__(self, other):
        k = self.size
        cols = list(zip(*other.rows))
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))

    def __neg__(self):
        return IntMatrix(tuple(tuple(-a for a in r) for r in self.rows))

    def inverse(self):
        """Inverse of a unimodular matrix (exact)."""
        d = self.det()
        if abs(d) != 1:
            raise ValueError(f"determinant {d} is not +-1")
        k = self.size
        aug = [[Fraction(a) for a in r] + [Fraction(int(i == j)) for j in range(k)]
               for i, r in enumerate(self.rows)]
        for c in range(k):
            piv = next(r for r in range(c, k) if aug[r][c] != 0)
            aug[c], aug[piv] = aug[piv], aug[c]
            f = aug[c][c]
            aug[c] = [a / f for a in aug[c]]
            for r in range(k):
                if r != c and aug[r][c]:
                    g = aug[r][c]
                    aug[r] = [a - g * b for a, b in zip(aug[r], aug[c])]
        return IntMatrix(tuple(tuple(int(a) for a in r[k:]) for r in aug))

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = IntMatrix.identity(self.size)
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def apply(self, vec):
        return tuple(sum(a * v for a, v in zip(r, vec)) for r in self.rows)

    def tolist(self):
        return [list(r) for r in self.rows]

    def __str__(self):
        return "(" + "; ".join(", ".join(str(a) for a in r) for r in self.rows) + ")"


Mat2 = IntMatrix


def companion(p):
    """``M_P`` for ``P = 1 + a_1 z + ... + a_k z**k`` (global sign normalised).

    Ones on the superdiagonal; last row ``(-a_k, ..., -a_1)``.
    """
    coeffs = form3(p)
    k = len(coeffs) - 1
    if k < 1:
        raise UnsupportedDegree("companion matrix needs degree at least 1")
    rows = [[int(j == i + 1) for j in range(k)] for i in range(k - 1)]
    rows.append([-coeffs[k - j] for j in range(k)])
    return IntMatrix(tuple(tuple(r) for r in rows))


def is_saut(b, p):
    """``det B = +-1`` and ``B M_P == M_P B``."""
    m = companion(p)
    if b.size != m.size:
        return False
    return abs(b.det()) == 1 and b @ m == m @ b


def block_images(b, p, n):
    """Integer matrix giving ``(y_n, ..., y_{n+k-1})`` from ``(x_0, ..., x_{k-1})``."""
    return b @ companion(p) ** n


def apply_automorphism(b, x, p=None):
    """Image orbit: each block ``(y_n, ..., y_{n+k-1}) = B (x_n, ..., x_{n+k-1})`` mod 1."""
    k = b.size
    if p is not None:
        if not is_saut(b, p):
            raise ValueError(f"{b} is not a strong automorphism of {p}")
        if not is_member(p, x):
            raise InconsistentWindow("x does not satisfy the recursion of P")
    if len(x) < k and not x.periodic:
        raise InconsistentWindow(f"window shorter than the block length {k}")
    out = {}
    last = x.end_index if x.periodic else x.end_index - k + 1
    for n in range(x.start_index, last + 1):
        block = b.apply([x.entry(n + i) for i in range(k)])
        for i, v in enumerate(block):
            idx = n + i
            if x.periodic:
                idx = x.start_index + (idx - x.start_index) % len(x)
            v = v % 1
            if idx in out and out[idx] != v:
                raise InconsistentWindow(f"overlapping blocks disagree at index {idx}")
            out[idx] = v
    return TorusSeq(x.start_index, tuple(out[n] for n in x.indices()), x.periodic)


# -- eigendata ---------------------------------------------------------------

def _quadratic_roots(a1, a2):
    """``(theta_1, theta_2)`` of ``1 + a1 z + a2 z**2``; ``theta_1`` is the chosen root."""
    d = a1 * a1 - 4 * a2
    sq = QuadIrr.sqrt(d)
    if a2 > 0:
        t1 = (QuadIrr(-a1) + sq) / (2 * a2)
        t2 = (QuadIrr(-a1) - sq) / (2 * a2)
    else:
        t1 = (QuadIrr(-a1) - sq) / (2 * a2)
        t2 = (QuadIrr(-a1) + sq) / (2 * a2)
    return t1, t2


def saut_eigendata(b, p):
    """Eigenvalues ``lambda_i`` of ``B`` on the eigenvectors ``(theta_i**k, ..., theta_i)``.

    Exact quadratic irrationals for ``k = 2`` with real roots; complex floats
    otherwise.  Returns ``[(theta_i, lambda_i)]``.
    """
    coeffs = form3(p)
    k = len(coeffs) - 1
    if not is_saut(b, p):
        raise ValueError(f"{b} is not a strong automorphism of {p}")
    if k == 2:
        a1, a2 = coeffs[1], coeffs[2]
        d = a1 * a1 - 4 * a2
        if d == 0:
            raise RepeatedRoots(f"{p} has a double root")
        if d > 0:
            out = []
            for t in _quadratic_roots(a1, a2):
                out.append((t, b.p + b.pp / t))
            prod = out[0][1] * out[1][1]
            if prod != b.det():
                raise ArithmeticError("eigenvalue product differs from det B")
            return out
    roots = find_roots(p)
    if any(r.multiplicity > 1 for r in roots.roots):
        raise RepeatedRoots(f"{p} has repeated roots")
    out = []
    for r in roots.roots:
        t = r.value
        vec = [t ** (k - j) for j in range(k)]
        lam = sum(b.rows[0][j] * vec[j] for j in range(k)) / vec[0]
        out.append((t, lam))
    prod = np.prod([lam for _, lam in out])
    if abs(prod - b.det()) > 1e-6:
        raise ArithmeticError("eigenvalue product differs from det B")
    return out


# -- continued fractions -----------------------------------------------------

@dataclass(frozen=True)
class ContinuedFraction:
    preperiod: tuple
    period: tuple = ()

    def __str__(self):
        head = list(self.preperiod)
        if not head:
            return "[;(" + ",".join(map(str, self.period)) + ")]"
        s = f"[{head[0]}"
        rest = [str(a) for a in head[1:]]
        if self.period:
            rest.append("(" + ",".join(map(str, self.period)) + ")")
        if rest:
            s += ";" + ",".join(rest)
        return s + "]"

    def terms(self, n_periods=1):
        return list(self.preperiod) + list(self.period) * n_periods

    def value(self, n_periods=6):
        """Convergent after ``n_periods`` repetitions of the period (exact)."""
        terms = self.terms(n_periods)
        v = Fraction(terms[-1])
        for a in reversed(terms[:-1]):
            v = a + 1 / v
        return v


def cf_expand(theta):
    """Exact continued fraction of a rational or real quadratic irrational.

    Works on states ``(P + sqrt(d)) / Q`` with ``Q | d - P**2``; the period is
    found when a state repeats.
    """
    if isinstance(theta, QuadIrr) and theta.is_rational:
        theta = theta.to_fraction()
    if isinstance(theta, (int, Fraction)):
        x = Fraction(theta)
        terms = []
        while True:
            a = x.numerator // x.denominator
            terms.append(a)
            x -= a
            if x == 0:
                return ContinuedFraction(tuple(terms), ())
            x = 1 / x
    a, b, c = theta.abc
    s = 1 if b > 0 else -1
    P, d, Q = s * a, b * b * theta.D, s * c
    if (d - P * P) % Q:
        P, d, Q = P * abs(Q), d * Q * Q, Q * abs(Q)
    r = isqrt(d)
    seen = {}
    terms = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(terms)
        if Q > 0:
            q = (P + r) // Q
        else:
            q = -((P + r) // -Q) - 1
        terms.append(q)
        P = q * Q - P
        Q = (d - P * P) // Q
    j = seen[(P, Q)]
    return ContinuedFraction(tuple(terms[:j]), tuple(terms[j:]))


def _convergents(terms):
    """Last two convergents ``(h_{n-1}, k_{n-1}), (h_{n-2}, k_{n-2})`` of ``terms``.

    Empty ``terms`` give ``1/0`` and ``0/1``; one term gives ``c_0/1`` and ``1/0``.
    """
    h1, k1, h2, k2 = 1, 0, 0, 1
    for a in terms:
        h1, h2 = a * h1 + h2, h1
        k1, k2 = a * k1 + k2, k1
    return (h1, k1), (h2, k2)


@dataclass(frozen=True)
class CFMatrices:
    C: int
    G: int
    Cp: int
    Gp: int
    E: int
    F: int
    Ep: int
    Fp: int

    @property
    def pre_matrix(self):
        return IntMatrix(((self.C, self.Cp), (self.G, self.Gp)))

    @property
    def period_matrix(self):
        return IntMatrix(((self.E, self.Ep), (self.F, self.Fp)))

    def saut_element(self, n=1):
        m = self.pre_matrix
        return m @ self.period_matrix ** n @ m.inverse()


def cf_matrices(cf):
    """Convergent data ``C/G, C'/G'`` (preperiod) and ``E/F, E'/F'`` (period)."""
    if not cf.period:
        raise RationalInput("a rational number has no period")
    (C, G), (Cp, Gp) = _convergents(cf.preperiod)
    (E, F), (Ep, Fp) = _convergents(cf.period)
    return CFMatrices(C, G, Cp, Gp, E, F, Ep, Fp)


# -- Pell --------------------------------------------------------------------

@dataclass(frozen=True)
class PellSolution:
    w: int
    v: int
    sign: int
    D: int = 0

    def __post_init__(self):
        if self.D and self.w * self.w - self.D * self.v * self.v != self.sign:
            raise ArithmeticError("not a Pell solution")


BRUTE_LIMIT = 100_000


def _pell_at(d, v):
    """Smallest ``w > 0`` with ``w**2 - d v**2 = +-4``, or ``None``."""
    best = None
    for sign in (-4, 4):
        t = d * v * v + sign
        if t > 0:
            w = isqrt(t)
            if w * w == t and (best is None or w < best[0]):
                best = (w, sign)
    return best


def pell_solve(d):
    """Fundamental solution of ``w**2 - D v**2 = +-4`` (least ``v``, then least ``w``).

    Small ``v`` are found (and certified minimal) by direct search; beyond
    that the convergents of ``sqrt(D)`` are scanned, which contain every
    solution in lowest terms once ``D > 16``.
    """
    if d <= 0:
        raise ValueError("D must be positive")
    if isqrt(d) ** 2 == d:
        raise SquareD(f"{d} is a perfect square")
    for v in range(1, BRUTE_LIMIT + 1):
        hit = _pell_at(d, v)
        if hit:
            return PellSolution(hit[0], v, hit[1], d)
    cf = cf_expand(QuadIrr.sqrt(d))
    h1, k1, h2, k2 = 1, 0, 0, 1
    found = []
    i = 0
    while True:
        a = cf.preperiod[i] if i < len(cf.preperiod) else cf.period[(i - len(cf.preperiod)) % len(cf.period)]
        h1, h2 = a * h1 + h2, h1
        k1, k2 = a * k1 + k2, k1
        i += 1
        n = h1 * h1 - d * k1 * k1
        if n in (4, -4):
            found.append((k1, h1, n))
        elif n in (1, -1):
            found.append((2 * k1, 2 * h1, 4 * n))
        if found and k1 > 2 * min(f[0] for f in found):
            break
    v, w, sign = min(found)
    return PellSolution(w, v, sign, d)


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class SautClass:
    kind: str  # "infinite_cyclic", "cyclic_order2" or "trivial"
    generator: IntMatrix = None


def canonical_generator(g):
    """Representative of ``{+-G, +-G^-1}`` with ``p' > 0``, then ``trace >= 0``."""
    cands = [g, -g, g.inverse(), -g.inverse()]
    best = None
    for c in cands:
        key = (c.pp > 0, c.trace() >= 0, c.rows)
        if best is None or key > best[0]:
            best = (key, c)
    return best[1]


def _quadratic_params(p):
    coeffs = form3(p)
    if len(coeffs) != 3:
        raise UnsupportedDegree(f"Saut classification needs k = 2, got k = {len(coeffs) - 1}")
    a1, a2 = coeffs[1], coeffs[2]
    return a1, a2, a1 * a1 - 4 * a2


def saut_from_pell(p, sol):
    """Saut matrix ``(p, p'; -a_2 p', p - a_1 p')`` from a Pell solution: ``p = (w + a_1 v) / 2``, ``p' = v``."""
    a1, a2, _ = _quadratic_params(p)
    pp = sol.v
    pv = (sol.w + a1 * pp) // 2
    return IntMatrix(((pv, pp), (-a2 * pp, pv - a1 * pp)))


def saut_group(p):
    """``Saut_P / {+-I}`` for quadratic ``P`` in normal form."""
    a1, a2, d = _quadratic_params(p)
    if d < 0:
        raise NegativeDiscriminant(f"discriminant {d} < 0")
    r = isqrt(d)
    if d == 0:
        c = a1 // 2
        g = IntMatrix(((1 + c, 1), (-c * c, 1 - c)))
        return SautClass("infinite_cyclic", canonical_generator(g))
    if r * r == d:
        if d == 4:
            a = a1 // 2
            return SautClass("cyclic_order2", IntMatrix(((a, 1), (-a * a + 1, -a))))
        return SautClass("trivial")
    theta, _ = _quadratic_roots(a1, a2)
    g = cf_matrices(cf_expand(theta)).saut_element(1)
    if not is_saut(g, p):
        raise ArithmeticError(f"continued-fraction matrix {g} is not in Saut_P")
    return SautClass("infinite_cyclic", canonical_generator(g))


def pell_of_generator(g, p):
    """``(|2p - a_1 p'|, |p'|, sign)`` with ``(2p - a_1 p')**2 - D p'**2 = sign``."""
    a1, _, d = _quadratic_params(p)
    w = 2 * g.p - a1 * g.pp
    return abs(w), abs(g.pp), w * w - d * g.pp * g.pp


def saut_search(p, bound=50):
    """All Saut elements of the form ``(p, p'; -a_2 p', p - a_1 p')`` with ``|p|, |p'| <= bound`` (brute force)."""
    a1, a2, _ = _quadratic_params(p)
    found = []
    for pp in range(-bound, bound + 1):
        for pv in range(-bound, bound + 1):
            b = IntMatrix(((pv, pp), (-a2 * pp, pv - a1 * pp)))
            if is_saut(b, p):
                found.append(b)
    return found


def is_minimal_generator(g, p):
    """No Saut element other than ``+-I`` has ``0 < |p'| < |p'_G|``."""
    a1, _, d = _quadratic_params(p)
    for pp in range(1, abs(g.pp)):
        if _pell_at(d, pp):
            return False
    return True
