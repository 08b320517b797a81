"""Exact arithmetic in real quadratic fields Q(sqrt(D)).

A :class:`QuadIrr` stores ``x + y*sqrt(D)`` with rational ``x, y`` and a
squarefree radicand ``D >= 2`` (or ``D = 0`` for plain rationals).  The public
view is the reduced triple form ``(a + b*sqrt(D)) / c`` with ``c > 0``.
"""

from fractions import Fraction
from math import gcd, isqrt
import re

from .errors import ParseError


def squarefree_split(n):
    """Return ``(s, f)`` with ``n = f**2 * s`` and ``s`` squarefree."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 0
    s, f = 1, 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            f *= p
        if n % p == 0:
            n //= p
            s *= p
        p += 1
    return s * n, f


def _to_fraction(v):
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    raise TypeError(f"cannot use {type(v).__name__} in exact arithmetic")


class QuadIrr:
    __slots__ = ("_x", "_y", "_d")

    def __init__(self, a=0, b=0, c=1, D=0):
        a, b, c = _to_fraction(a), _to_fraction(b), _to_fraction(c)
        if c == 0:
            raise ZeroDivisionError("zero denominator")
        if D < 0:
            raise ValueError("only real quadratic fields are supported")
        s, f = squarefree_split(D)
        x = a / c
        y = b * f / c
        if s == 1:
            x, y, s = x + y, Fraction(0), 0
        if y == 0:
            s = 0
        self._x, self._y, self._d = x, y, s

    @classmethod
    def _raw(cls, x, y, d):
        obj = cls.__new__(cls)
        if y == 0:
            d = 0
        obj._x, obj._y, obj._d = x, y, d
        return obj

    @classmethod
    def sqrt(cls, n):
        return cls(0, 1, 1, n)

    # -- views ---------------------------------------------------------------
    @property
    def D(self):
        return self._d

    @property
    def rational_part(self):
        return self._x

    @property
    def irrational_part(self):
        return self._y

    @property
    def abc(self):
        """Reduced ``(a, b, c)`` with value ``(a + b*sqrt(D)) / c`` and ``c > 0``."""
        c = self._x.denominator * self._y.denominator // gcd(self._x.denominator, self._y.denominator)
        return int(self._x * c), int(self._y * c), c

    @property
    def is_rational(self):
        return self._y == 0

    def to_fraction(self):
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self._x

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, QuadIrr):
            if self._d and other._d and self._d != other._d:
                raise ValueError(f"mixing Q(sqrt({self._d})) and Q(sqrt({other._d}))")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadIrr._raw(Fraction(other), Fraction(0), 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadIrr._raw(self._x + o._x, self._y + o._y, self._d or o._d)

    __radd__ = __add__

    def __neg__(self):
        return QuadIrr._raw(-self._x, -self._y, self._d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self._d or o._d
        x = self._x * o._x + self._y * o._y * d
        y = self._x * o._y + self._y * o._x
        return QuadIrr._raw(x, y, d)

    __rmul__ = __mul__

    def conjugate(self):
        return QuadIrr._raw(self._x, -self._y, self._d)

    def norm(self):
        return self._x * self._x - self._d * self._y * self._y

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        c = self.conjugate()
        return QuadIrr._raw(c._x / n, c._y / n, self._d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadIrr._raw(Fraction(1), Fraction(0), 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- order ---------------------------------------------------------------
    def sign(self):
        sx = (self._x > 0) - (self._x < 0)
        sy = (self._y > 0) - (self._y < 0)
        if sy == 0 or sx == sy:
            return sx if sx else sy
        if sx == 0:
            return sy
        # opposite signs: compare x^2 with D y^2
        lhs = self._x * self._x
        rhs = self._d * self._y * self._y
        return sx if lhs > rhs else sy

    def _cmp(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign()

    def __eq__(self, other):
        if isinstance(other, float):
            return False
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._x == o._x and self._y == o._y and (self._y == 0 or self._d == o._d)

    def __hash__(self):
        if self._y == 0:
            return hash(self._x)
        return hash((self._x, self._y, self._d))

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __bool__(self):
        return self._x != 0 or self._y != 0

    def floor(self):
        a, b, c = self.abc
        if b == 0:
            return a // c
        n = b * b * self._d
        r = isqrt(n)
        t = a + r if b > 0 else a - r - 1
        return t // c

    def __float__(self):
        return float(self._x) + float(self._y) * self._d ** 0.5

    def __complex__(self):
        return complex(float(self))

    def __repr__(self):
        return f"QuadIrr({self})"

    def __str__(self):
        a, b, c = self.abc
        if b == 0:
            return str(Fraction(a, c))
        rad = f"sqrt({self._d})"
        if b == 1:
            irr = rad
        elif b == -1:
            irr = f"-{rad}"
        else:
            irr = f"{b}*{rad}"
        if a == 0:
            num = irr
        else:
            num = f"{a}+{irr}" if b > 0 else f"{a}{irr}"
        if c == 1:
            return num
        if a == 0:
            return f"{num}/{c}"
        return f"({num})/{c}"


_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt|√)|(.))")


def parse_quadirr(text):
    """Parse an arithmetic expression over integers and square roots.

    Accepts ``+ - * / ( )``, integer literals and ``sqrt(n)``/``sqrtn``/``√n``,
    e.g. ``"(3+sqrt(5))/2"`` or ``"1/sqrt(3)"``.
    """
    tokens = []
    pos = 0
    for m in _TOKEN.finditer(text):
        if m.end() == m.start():
            break
        if m.group(1):
            tokens.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2):
            tokens.append(("sqrt", None, m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/()":
                raise ParseError(f"unexpected character {ch!r}", text, m.start(3))
            tokens.append((ch, None, m.start(3)))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError("trailing input", text, pos)
    tokens.append(("end", None, len(text)))
    i = 0

    def peek():
        return tokens[i]

    def take(kind):
        nonlocal i
        tok = tokens[i]
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}", text, tok[2])
        i += 1
        return tok

    def expr():
        nonlocal i
        value = term()
        while peek()[0] in "+-":
            op = tokens[i][0]
            i += 1
            rhs = term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term():
        nonlocal i
        value = unary()
        while peek()[0] in "*/":
            op = tokens[i][0]
            i += 1
            rhs = unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary():
        nonlocal i
        if peek()[0] == "-":
            i += 1
            return -unary()
        if peek()[0] == "+":
            i += 1
            return unary()
        return atom()

    def atom():
        nonlocal i
        kind, val, where = peek()
        if kind == "num":
            i += 1
            return QuadIrr(val)
        if kind == "sqrt":
            i += 1
            if peek()[0] == "(":
                i += 1
                n = take("num")[1]
                take(")")
            else:
                n = take("num")[1]
            return QuadIrr.sqrt(n)
        if kind == "(":
            i += 1
            value = expr()
            take(")")
            return value
        raise ParseError("unexpected token", text, where)

    result = expr()
    take("end")
    return result
