"""Exact scalars in a real quadratic field Q(sqrt(d)).

Rational values stay in the standard numeric tower (``int`` and
``Fraction``); :class:`QuadraticScalar` carries values with a nonzero
irrational part and interoperates with both.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import ArithmeticDomainError, ValidationError

Exact = Union[int, Fraction, "QuadraticScalar"]


def _squarefree_split(d: int) -> tuple[int, int]:
    """Return (k, r) with d = k*k*r and r square-free."""
    k, r = 1, d
    p = 2
    while p * p <= r:
        while r % (p * p) == 0:
            r //= p * p
            k *= p
        p += 1
    return k, r


class QuadraticScalar:
    """The number (a + b*sqrt(d)) / q with integer a, b and q > 0.

    The stored form is canonical: d is square-free, gcd(a, b, q) = 1, and
    b = 0 forces d = 1, so two scalars are equal iff their fields match.

    >>> QuadraticScalar(2, 1, 4, 3) * QuadraticScalar(2, -1, 4, 3)
    QuadraticScalar(1, 0, 16, 1)
    """

    __slots__ = ("a", "b", "q", "d")

    def __init__(self, a: int, b: int = 0, q: int = 1, d: int = 1) -> None:
        if q == 0:
            raise ZeroDivisionError("QuadraticScalar denominator is zero")
        if d <= 0:
            raise ValidationError(f"radicand must be positive, got {d}")
        if d != 1:
            k, d = _squarefree_split(d)
            b *= k
            if d == 1:
                a, b = a + b, 0
        if b == 0:
            d = 1
        if q < 0:
            a, b, q = -a, -b, -q
        g = math.gcd(math.gcd(a, b), q)
        if g > 1:
            a, b, q = a // g, b // g, q // g
        self.a, self.b, self.q, self.d = a, b, q, d

    @classmethod
    def from_rational(cls, x: Rational | int) -> QuadraticScalar:
        x = Fraction(x)
        return cls(x.numerator, 0, x.denominator, 1)

    # -- coercion -----------------------------------------------------------

    def _common(self, other: object) -> tuple[int, int, int, int] | None:
        if isinstance(other, QuadraticScalar):
            if self.d != 1 and other.d != 1 and self.d != other.d:
                raise ArithmeticDomainError(
                    f"mixed radicands sqrt({self.d}) and sqrt({other.d})")
            return other.a, other.b, other.q, max(self.d, other.d)
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return f.numerator, 0, f.denominator, self.d
        return None

    def simplify(self) -> Exact:
        """Drop to ``int`` or ``Fraction`` when the irrational part is zero."""
        if self.b:
            return self
        if self.q == 1:
            return self.a
        return Fraction(self.a, self.q)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, float):
            return float(self) + other
        o = self._common(other)
        if o is None:
            return NotImplemented
        a2, b2, q2, d = o
        return QuadraticScalar(self.a * q2 + a2 * self.q,
                               self.b * q2 + b2 * self.q, self.q * q2, d)

    __radd__ = __add__

    def __neg__(self) -> QuadraticScalar:
        return QuadraticScalar(-self.a, -self.b, self.q, self.d)

    def __pos__(self) -> QuadraticScalar:
        return self

    def __sub__(self, other):
        if isinstance(other, float):
            return float(self) - other
        o = self._common(other)
        if o is None:
            return NotImplemented
        a2, b2, q2, d = o
        return QuadraticScalar(self.a * q2 - a2 * self.q,
                               self.b * q2 - b2 * self.q, self.q * q2, d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, float):
            return float(self) * other
        o = self._common(other)
        if o is None:
            return NotImplemented
        a2, b2, q2, d = o
        return QuadraticScalar(self.a * a2 + self.b * b2 * d,
                               self.a * b2 + a2 * self.b, self.q * q2, d)

    __rmul__ = __mul__

    def conjugate(self) -> QuadraticScalar:
        return QuadraticScalar(self.a, -self.b, self.q, self.d)

    def norm(self) -> Fraction:
        """Field norm, the product with the Galois conjugate."""
        return Fraction(self.a * self.a - self.b * self.b * self.d,
                        self.q * self.q)

    def inverse(self) -> QuadraticScalar:
        n = self.a * self.a - self.b * self.b * self.d
        if n == 0:
            raise ZeroDivisionError("inverse of zero QuadraticScalar")
        return QuadraticScalar(self.a * self.q, -self.b * self.q, n, self.d)

    def __truediv__(self, other):
        if isinstance(other, float):
            return float(self) / other
        if isinstance(other, (int, Fraction)):
            other = QuadraticScalar.from_rational(other)
        if not isinstance(other, QuadraticScalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, float):
            return other / float(self)
        if isinstance(other, (int, Fraction)):
            return QuadraticScalar.from_rational(other) * self.inverse()
        return NotImplemented

    def __pow__(self, n: int) -> QuadraticScalar:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadraticScalar(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- order and equality -------------------------------------------------

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        sa, sb = (a > 0) - (a < 0), (b > 0) - (b < 0)
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger magnitude wins; a^2 != b^2 d for square-free d > 1
        return sa if a * a > b * b * self.d else sb

    def _cmp(self, other) -> int | None:
        if isinstance(other, float):
            x = float(self)
            return (x > other) - (x < other)
        try:
            diff = self - other
        except TypeError:
            return None
        if diff is NotImplemented:
            return None
        return diff.sign()

    def __eq__(self, other) -> bool:
        if isinstance(other, QuadraticScalar):
            return (self.a, self.b, self.q, self.d) == (other.a, other.b, other.q, other.d)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and Fraction(self.a, self.q) == other
        if isinstance(other, float):
            return float(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(Fraction(self.a, self.q))
        return hash((self.a, self.b, self.q, self.d))

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __float__(self) -> float:
        return (self.a + self.b * math.sqrt(self.d)) / self.q

    def __repr__(self) -> str:
        return f"QuadraticScalar({self.a}, {self.b}, {self.q}, {self.d})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a) if self.q == 1 else f"{self.a}/{self.q}"
        op = "+" if self.b > 0 else "-"
        body = f"{self.a}{op}{abs(self.b)}*sqrt({self.d})"
        return f"({body})" if self.q == 1 else f"({body})/{self.q}"


def exact(x) -> Exact:
    """Normalize an exact value to its simplest representation."""
    if isinstance(x, bool):
        raise ValidationError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, QuadraticScalar):
        return x.simplify()
    if isinstance(x, Rational):
        return exact(Fraction(x))
    raise ValidationError(f"not an exact scalar: {x!r}")


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, QuadraticScalar)) and not isinstance(x, bool)


def radicand(x) -> int:
    return x.d if isinstance(x, QuadraticScalar) else 1


def sign(x) -> int:
    if isinstance(x, QuadraticScalar):
        return x.sign()
    return (x > 0) - (x < 0)


_RATIONAL = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")
_SURD = re.compile(r"^([+-]?\d+)?(?:([+-])(\d+)?|([+-]?)(\d+)?)\*?sqrt\((\d+)\)$")


def parse_scalar(text: str) -> Exact:
    """Parse ``a``, ``a/q`` or ``(a+b*sqrt(d))/q`` into an exact scalar.

    >>> parse_scalar("(2+1*sqrt(3))/4")
    QuadraticScalar(2, 1, 4, 3)
    >>> parse_scalar("-3/6")
    Fraction(-1, 2)
    """
    s = "".join(text.split())
    m = _RATIONAL.match(s)
    if m:
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ValidationError(f"zero denominator in {text!r}")
        return exact(Fraction(int(m.group(1)), den))
    q = 1
    head, slash, tail = s.rpartition("/")
    if slash and tail.isdigit() and ")" not in tail:
        q, s = int(tail), head
    grouped = s.startswith("(") and s.endswith(")")
    if grouped:
        s = s[1:-1]
    m = _SURD.match(s)
    if not m:
        raise ValidationError(f"malformed scalar {text!r}")
    a_txt, sign_after_a, b_after_a, sign_alone, b_alone, d_txt = m.groups()
    if slash and not grouped and sign_after_a is not None:
        raise ValidationError(f"ambiguous scalar {text!r}; write (a+b*sqrt(d))/q")
    if a_txt is not None and sign_after_a is None:
        # "3sqrt(2)" style: the digits belong to b, not a
        a, b = 0, int(a_txt)
    else:
        a = int(a_txt or 0)
        sgn = sign_after_a if sign_after_a is not None else sign_alone
        b = int((b_after_a if sign_after_a is not None else b_alone) or 1)
        if sgn == "-":
            b = -b
    d = int(d_txt)
    if q == 0:
        raise ValidationError(f"zero denominator in {text!r}")
    if d == 0:
        raise ValidationError(f"zero radicand in {text!r}")
    return exact(QuadraticScalar(a, b, q, d))
