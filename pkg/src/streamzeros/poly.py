"""Integer Laurent polynomials, GCDs, the resultant matrix and Bezout cofactors."""

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
import re

from .errors import NotCoprime, ParseError


class LaurentPoly:
    """Integer polynomial in ``z`` and ``z**-1``.

    ``coeffs`` maps exponent to a nonzero integer coefficient.  The zero
    polynomial is representable (it shows up as a difference), but the public
    operations of the package expect nontrivial input.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        items = {}
        for e, a in dict(coeffs or {}).items():
            if isinstance(a, Fraction):
                if a.denominator != 1:
                    raise ValueError(f"non-integer coefficient {a}")
                a = a.numerator
            if int(a) != a:
                raise ValueError(f"non-integer coefficient {a}")
            if a:
                items[int(e)] = int(a)
        self._c = dict(sorted(items.items()))

    @classmethod
    def from_dense(cls, coeffs, low=0):
        return cls({low + i: a for i, a in enumerate(coeffs)})

    @classmethod
    def monomial(cls, e, a=1):
        return cls({e: a})

    # -- derived data --------------------------------------------------------
    @property
    def coeffs(self):
        return dict(self._c)

    @property
    def support(self):
        return tuple(self._c)

    @property
    def is_zero(self):
        return not self._c

    @property
    def low(self):
        """Lowest exponent ``h``."""
        return next(iter(self._c))

    @property
    def high(self):
        """Highest exponent ``n``."""
        return next(reversed(self._c))

    @property
    def degree(self):
        """Width ``n - h`` of the support."""
        return self.high - self.low

    @property
    def content(self):
        return reduce(gcd, (abs(a) for a in self._c.values()), 0)

    @property
    def is_primitive(self):
        return self.content == 1

    @property
    def leading(self):
        return self._c[self.high]

    @property
    def trailing(self):
        return self._c[self.low]

    def __getitem__(self, e):
        return self._c.get(e, 0)

    def items(self):
        return self._c.items()

    def dense(self):
        """Coefficients of ``z**-h * P`` in ascending order."""
        h = self.low
        out = [0] * (self.degree + 1)
        for e, a in self._c.items():
            out[e - h] = a
        return out

    def normalized(self):
        """``z**-h * P``: lowest exponent shifted to zero."""
        return self.shift(-self.low)

    def reversed(self):
        """``P(1/z)``; convolution by it runs time backwards."""
        return LaurentPoly({-e: a for e, a in self._c.items()})

    # -- arithmetic ----------------------------------------------------------
    def shift(self, d):
        return LaurentPoly({e + d: a for e, a in self._c.items()})

    def __add__(self, other):
        other = _as_poly(other)
        out = dict(self._c)
        for e, a in other._c.items():
            out[e] = out.get(e, 0) + a
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        out = {}
        for e, a in self._c.items():
            for f, b in other._c.items():
                out[e + f] = out.get(e + f, 0) + a * b
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        return reduce(lambda acc, _: acc * self, range(n), LaurentPoly({0: 1}))

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(tuple(self._c.items()))

    def __call__(self, z):
        return sum(a * z ** e for e, a in self._c.items())

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    def to_json(self):
        return {str(e): a for e, a in self._c.items()}

    @classmethod
    def from_json(cls, data):
        return cls({int(e): int(a) for e, a in data.items()})


def _as_poly(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly({0: x})
    raise TypeError(f"cannot convert {type(x).__name__} to LaurentPoly")


# -- text format -------------------------------------------------------------

_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*(\*?\s*z(?:\s*\^\s*(\(\s*-?\s*\d+\s*\)|-?\s*\d+))?)?\s*")


def parse_poly(text):
    """Parse ``"z^2-3z+1"``-style text into a :class:`LaurentPoly`.

    Terms are signed integer multiples of ``z^e`` with any integer ``e``;
    ``*`` between coefficient and ``z`` is optional, and ``z^(-1)`` is accepted.
    """
    pos = 0
    coeffs = {}
    first = True
    src = text.strip()
    if not src:
        raise ParseError("empty polynomial", text, 0)
    while pos < len(src):
        m = _TERM.match(src, pos)
        if m is None or m.end() == pos:
            raise ParseError("malformed term", text, pos)
        sign, num, zpart, exp = m.groups()
        if sign is None and not first:
            raise ParseError("missing operator", text, pos)
        if num is None and zpart is None:
            raise ParseError("expected coefficient or z", text, m.start(2) if sign else pos)
        a = int(num) if num is not None else 1
        if sign == "-":
            a = -a
        if zpart is None:
            e = 0
        elif exp is None:
            e = 1
        else:
            e = int(exp.strip("() ").replace(" ", ""))
        coeffs[e] = coeffs.get(e, 0) + a
        first = False
        pos = m.end()
    p = LaurentPoly(coeffs)
    if p.is_zero:
        raise ParseError("polynomial is identically zero", text, 0)
    return p


def format_poly(p):
    """Canonical text form (descending exponents), inverse of :func:`parse_poly`."""
    if p.is_zero:
        return "0"
    parts = []
    for e, a in sorted(p.items(), reverse=True):
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if e == 0:
            body = str(mag)
        else:
            zt = "z" if e == 1 else f"z^{e}"
            body = zt if mag == 1 else f"{mag}{zt}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += sign + body
    return out


# -- dense rational helpers --------------------------------------------------

def _trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _divmod_q(num, den):
    """Long division of ascending Fraction lists."""
    num = [Fraction(x) for x in num]
    den = _trim([Fraction(x) for x in den])
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    r = num[:]
    lead = den[-1]
    for i in range(len(num) - len(den), -1, -1):
        f = r[i + len(den) - 1] / lead
        q[i] = f
        if f:
            for j, d in enumerate(den):
                r[i + j] -= f * d
    return _trim(q), _trim(r[:len(den) - 1])


def _gcd_q(a, b):
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    while b:
        _, r = _divmod_q(a, b)
        a, b = b, r
    return a


def _derivative(c):
    return [i * c[i] for i in range(1, len(c))]


def _primitive_dense(c):
    """Clear denominators and content; positive leading coefficient."""
    c = _trim([Fraction(x) for x in c])
    if not c:
        return []
    den = reduce(lambda x, y: x * y // gcd(x, y), (x.denominator for x in c), 1)
    ints = [int(x * den) for x in c]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    ints = [x // g for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    return ints


def primitive_part(p):
    """Divide by the content; make the highest-exponent coefficient positive."""
    g = p.content
    s = -1 if p.leading < 0 else 1
    return LaurentPoly({e: s * a // g for e, a in p.items()})


def poly_mul(p, q):
    return p * q


def poly_gcd(p, q):
    """GCD in Q[z, 1/z], as a primitive ordinary polynomial (lowest exponent 0)."""
    g = _gcd_q(p.dense(), q.dense())
    return LaurentPoly.from_dense(_primitive_dense(g))


def poly_divides(p, q):
    """True iff ``p`` divides ``q`` in Q[z, 1/z]."""
    _, r = _divmod_q(q.dense(), p.dense())
    return not r


def squarefree_decomposition(p):
    """Yun's algorithm on ``z**-h * P`` over Q.

    Returns ``[(S_1, 1), (S_2, 2), ...]`` with primitive squarefree, pairwise
    coprime ``S_m`` of positive degree such that ``z**-h P`` equals
    ``lc * prod(S_m**m)`` up to a rational constant.
    """
    f = [Fraction(x) for x in p.dense()]
    if len(f) <= 1:
        return []
    out = []
    df = _derivative(f)
    a = _gcd_q(f, df)
    b, _ = _divmod_q(f, a)
    c, _ = _divmod_q(df, a)
    m = 1
    while len(_trim(b[:])) > 1:
        d = [ci - bi for ci, bi in zip(_pad(c, len(b)), _pad(_derivative(b), len(b)))]
        d = _trim(d)
        g = _gcd_q(b, d) if d else b
        if len(g) > 1:
            out.append((LaurentPoly.from_dense(_primitive_dense(g)), m))
        b, _ = _divmod_q(b, g)
        c, _ = _divmod_q(d, g) if d else ([], [])
        m += 1
    return out


def _pad(c, n):
    return list(c) + [Fraction(0)] * (n - len(c))


# -- resultant ---------------------------------------------------------------

@dataclass(frozen=True)
class ResultantInfo:
    matrix: tuple
    delta: int
    shift_p: int
    shift_q: int


def int_det(rows):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant_matrix(p, q):
    a, b = p.dense(), q.dense()
    n, m = len(a) - 1, len(b) - 1
    size = n + m
    rows = []
    for i in range(m):
        rows.append(tuple([0] * i + a + [0] * (size - n - 1 - i)))
    for i in range(n):
        rows.append(tuple([0] * i + b + [0] * (size - m - 1 - i)))
    return tuple(rows)


def resultant(p, q):
    """Resultant matrix of ``z**-h P`` and ``z**-h' Q`` and its determinant."""
    mat = resultant_matrix(p, q)
    return ResultantInfo(mat, int_det(mat), -p.low, -q.low)


def _egcd(a, b):
    """``(s, t, g)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        k = a // b
        a, b = b, a - k * b
        s0, s1 = s1, s0 - k * s1
        t0, t1 = t1, t0 - k * t1
    if a < 0:
        return -s0, -t0, -a
    return s0, t0, a


def _solve_q(rows, rhs):
    """Solve a square linear system exactly over Q (Gauss-Jordan)."""
    n = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(v)] for r, v in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def bezout(p, q):
    """Integer ``A, B`` with ``A*P + B*Q == delta`` (the resultant).

    Cofactors of the shifted polynomials have ``deg A < deg Q`` and
    ``deg B < deg P``; the returned ``A, B`` absorb the monomial shifts so the
    identity holds for the Laurent inputs as given.
    """
    info = resultant(p, q)
    delta = info.delta
    if delta == 0:
        raise NotCoprime(f"{p} and {q} have a common factor")
    n, m = p.degree, q.degree
    size = n + m
    if size == 0:
        # two monomials: empty matrix, delta = 1; needs gcd of the coefficients to be 1
        s, t, g = _egcd(p.trailing, q.trailing)
        if g != 1:
            raise NotCoprime("constant inputs have no integer Bezout identity")
        return LaurentPoly({-p.low: s}), LaurentPoly({-q.low: t}), delta
    mt = [[info.matrix[r][c] for r in range(size)] for c in range(size)]
    rhs = [delta] + [0] * (size - 1)
    sol = _solve_q(mt, rhs)
    if any(x.denominator != 1 for x in sol):
        raise AssertionError("non-integral Bezout cofactor")
    alpha = [int(x) for x in sol[:m]]
    beta = [int(x) for x in sol[m:]]
    A = LaurentPoly.from_dense(alpha, low=-p.low)
    B = LaurentPoly.from_dense(beta, low=-q.low)
    if A * p + B * q != LaurentPoly({0: delta}):
        raise AssertionError("Bezout identity check failed")
    return A, B, delta
