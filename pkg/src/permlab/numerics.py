"""Exact real numbers: rationals and quadratic surds with total comparison.

Rationals are plain :class:`fractions.Fraction` (or ``int``).  Surds are
``(a + b*sqrt(d)) / c`` over a fixed square-free ``d``; every sign test is
reduced to integer comparisons, so no comparison is ever approximate.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, isqrt
from typing import Union

from .errors import UnsupportedFieldError

__all__ = [
    "QuadraticSurd",
    "ExactReal",
    "compare",
    "floor_surd",
    "floor_exact",
    "sqrt",
    "format_exact",
    "parse_exact",
]


def _is_square_free(d):
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _sign_ab(a, b, d):
    """Sign of a + b*sqrt(d) for integers a, b."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if (a > 0) == (b > 0):
        return 1 if a > 0 else -1
    # opposite signs: the larger magnitude wins
    lhs, rhs = a * a, d * b * b
    if a > 0:
        return (lhs > rhs) - (lhs < rhs)
    return (rhs > lhs) - (rhs < lhs)


class QuadraticSurd:
    """The number ``(a + b*sqrt(d)) / c`` in canonical form.

    ``c > 0``, ``gcd(a, b, c) == 1`` and ``d`` square-free, so two surds over
    the same field are equal exactly when their fields are equal.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int, d: int, c: int = 1):
        if c == 0:
            raise ZeroDivisionError("surd denominator is zero")
        if not _is_square_free(d):
            raise ValueError(f"d={d} is not a square-free integer >= 2")
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(gcd(a, b), c)
        if g > 1:
            a, b, c = a // g, b // g, c // g
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticSurd is immutable")

    @classmethod
    def from_rational(cls, x, d: int) -> QuadraticSurd:
        x = Fraction(x)
        return cls(x.numerator, 0, d, x.denominator)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _coerce(self, other):
        if isinstance(other, QuadraticSurd):
            if other.d != self.d:
                raise UnsupportedFieldError(
                    f"cannot combine surds over sqrt({self.d}) and sqrt({other.d})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd.from_rational(other, self.d)
        return NotImplemented

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.d, self.c)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadraticSurd(
            self.a * o.c + o.a * self.c, self.b * o.c + o.b * self.c, self.d, self.c * o.c
        )

    __radd__ = __add__

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
        a = self.a * o.a + self.d * self.b * o.b
        b = self.a * o.b + self.b * o.a
        return QuadraticSurd(a, b, self.d, self.c * o.c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return QuadraticSurd(
                self.a * other.denominator, self.b * other.denominator,
                self.d, self.c * other.numerator,
            )
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # multiply by the conjugate of the divisor
        conj = QuadraticSurd(o.a, -o.b, o.d, 1)
        norm = o.a * o.a - o.d * o.b * o.b
        num = self * conj
        return QuadraticSurd(num.a * o.c, num.b * o.c, self.d, num.c * norm)

    def sign(self) -> int:
        return _sign_ab(self.a, self.b, self.d)

    def __eq__(self, other):
        if isinstance(other, QuadraticSurd):
            return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and Fraction(self.a, self.c) == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.d))

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __float__(self):
        return (self.a + self.b * self.d ** 0.5) / self.c

    def __repr__(self):
        return f"QuadraticSurd({self.a}, {self.b}, d={self.d}, c={self.c})"

    def __str__(self):
        return format_exact(self)


ExactReal = Union[int, Fraction, QuadraticSurd]


def compare(u: ExactReal, v: ExactReal) -> int:
    """Return -1, 0 or 1 as ``u`` is below, equal to or above ``v``.

    Mixing surds over different fields raises UnsupportedFieldError.
    """
    if isinstance(u, QuadraticSurd) or isinstance(v, QuadraticSurd):
        if isinstance(u, QuadraticSurd) and isinstance(v, QuadraticSurd):
            if u.d != v.d:
                raise UnsupportedFieldError(
                    f"cannot compare surds over sqrt({u.d}) and sqrt({v.d})"
                )
            # sign of (ua*vc - va*uc) + (ub*vc - vb*uc) sqrt(d); denominators are positive
            return _sign_ab(u.a * v.c - v.a * u.c, u.b * v.c - v.b * u.c, u.d)
        if isinstance(u, QuadraticSurd):
            v = Fraction(v)
            return _sign_ab(u.a * v.denominator - v.numerator * u.c,
                            u.b * v.denominator, u.d)
        u = Fraction(u)
        return -_sign_ab(v.a * u.denominator - u.numerator * v.c,
                         v.b * u.denominator, v.d)
    return (u > v) - (u < v)


def floor_surd(u: QuadraticSurd) -> int:
    # floor(b*sqrt(d)) exactly; b*sqrt(d) is never an integer unless b == 0
    if u.b == 0:
        return u.a // u.c
    r = isqrt(u.b * u.b * u.d)
    f = r if u.b > 0 else -r - 1
    return (u.a + f) // u.c


def floor_exact(x: ExactReal) -> int:
    if isinstance(x, QuadraticSurd):
        return floor_surd(x)
    return Fraction(x).__floor__()


def sqrt(d: int) -> QuadraticSurd:
    return QuadraticSurd(0, 1, d)


def rationally_independent(x: ExactReal, y: ExactReal) -> bool:
    """True when x/y is irrational (both nonzero)."""
    if isinstance(x, QuadraticSurd) and isinstance(y, QuadraticSurd) and x.d != y.d:
        raise UnsupportedFieldError(
            f"cannot relate surds over sqrt({x.d}) and sqrt({y.d})"
        )
    def parts(z):
        if isinstance(z, QuadraticSurd):
            return z.a, z.b
        z = Fraction(z)
        return z.numerator, 0
    a1, b1 = parts(x)
    a2, b2 = parts(y)
    return a1 * b2 - a2 * b1 != 0


def format_exact(x: ExactReal) -> str:
    if isinstance(x, QuadraticSurd):
        sign = "+" if x.b >= 0 else "-"
        return f"({x.a}{sign}{abs(x.b)}√{x.d})/{x.c}"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


_SURD_RE = re.compile(
    r"""^\(\s*(?P<a>[+-]?\d+)\s*(?P<sign>[+-])\s*(?P<b>\d+)?\s*\*?\s*
        (?:√|sqrt)\s*\(?\s*(?P<d>\d+)\s*\)?\s*\)\s*(?:/\s*(?P<c>\d+))?$""",
    re.VERBOSE,
)
_BARE_SQRT_RE = re.compile(r"^(?P<neg>-)?(?P<b>\d+)?\s*\*?\s*(?:√|sqrt)\s*\(?\s*(?P<d>\d+)\s*\)?$")


def parse_exact(text: str) -> ExactReal:
    """Parse ``"3/4"``, ``"-2"``, ``"sqrt2"``, ``"2√3"`` or ``"(a+b√d)/c"``."""
    s = text.strip()
    m = _SURD_RE.match(s)
    if m:
        b = int(m["b"] or 1)
        if m["sign"] == "-":
            b = -b
        return QuadraticSurd(int(m["a"]), b, int(m["d"]), int(m["c"] or 1))
    m = _BARE_SQRT_RE.match(s)
    if m:
        b = int(m["b"] or 1)
        return QuadraticSurd(0, -b if m["neg"] else b, int(m["d"]))
    try:
        return Fraction(s)
    except ValueError:
        raise ValueError(f"not an exact real: {text!r}") from None
