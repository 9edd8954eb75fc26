"""Exact arithmetic in Q and in real quadratic fields Q(sqrt d).

Every value is stored as an integer triple ``(a, b, c)`` meaning
``(a + b*sqrt(d)) / c`` with ``c > 0`` and ``gcd(a, b, c) == 1``.  The
representation is canonical, so equality and hashing are structural.
Signs, floors and decimal expansions are decided with integer
arithmetic only.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from numbers import Rational as _RationalABC
from typing import Union

__all__ = [
    "FieldSpec",
    "FieldValue",
    "Infinity",
    "INFINITY",
    "ProjPoint",
    "FieldMismatch",
    "ParseError",
    "RATIONAL",
    "sign",
    "floor",
    "approx",
    "parse",
    "parse_point",
    "format_point",
    "as_value",
]


class FieldMismatch(ValueError):
    """Operands live in different quadratic fields."""


class ParseError(ValueError):
    """Text does not follow the value grammar."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


def _is_squarefree(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Q when ``d`` is None, otherwise Q(sqrt d) with d square-free, d >= 2."""

    d: int | None = None

    def __post_init__(self):
        if self.d is not None and not _is_squarefree(self.d):
            raise ValueError(f"d must be a square-free integer >= 2, got {self.d}")

    @property
    def kind(self) -> str:
        return "rational" if self.d is None else "quadratic"

    @property
    def is_rational(self) -> bool:
        return self.d is None

    @classmethod
    def quadratic(cls, d: int) -> FieldSpec:
        return cls(int(d))

    def __str__(self) -> str:
        return "Q" if self.d is None else f"Q(rt{self.d})"


RATIONAL = FieldSpec()


def _join(s1: FieldSpec, s2: FieldSpec) -> FieldSpec:
    if s1 == s2 or s2.d is None:
        return s1
    if s1.d is None:
        return s2
    raise FieldMismatch(f"cannot combine values of {s1} and {s2}")


class FieldValue:
    """An exact element ``(a + b*sqrt(d)) / c`` of Q or Q(sqrt d)."""

    __slots__ = ("a", "b", "c", "spec")

    def __init__(self, a: int = 0, b: int = 0, c: int = 1, spec: FieldSpec = RATIONAL):
        if c == 0:
            raise ZeroDivisionError("zero denominator")
        if b and spec.d is None:
            raise FieldMismatch("a sqrt term requires a quadratic field")
        if c < 0:
            a, b, c = -a, -b, -c
        g = gcd(a, b, c)
        if g > 1:
            a, b, c = a // g, b // g, c // g
        self.a = a
        self.b = b
        self.c = c
        self.spec = spec

    @classmethod
    def _raw(cls, a: int, b: int, c: int, spec: FieldSpec) -> FieldValue:
        # caller guarantees canonical form
        obj = object.__new__(cls)
        obj.a = a
        obj.b = b
        obj.c = c
        obj.spec = spec
        return obj

    @classmethod
    def from_fraction(cls, q, spec: FieldSpec = RATIONAL) -> FieldValue:
        q = Fraction(q)
        return cls._raw(q.numerator, 0, q.denominator, spec)

    def in_field(self, spec: FieldSpec) -> FieldValue:
        """Return this value viewed as an element of ``spec``."""
        if spec == self.spec:
            return self
        _join(spec, self.spec)
        if self.b and spec != self.spec:
            raise FieldMismatch(f"{self} is not an element of {spec}")
        return FieldValue._raw(self.a, self.b, self.c, spec)

    # --- predicates -------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    @property
    def is_integer(self) -> bool:
        return self.b == 0 and self.c == 1

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.a, self.c)

    def sign(self) -> int:
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0 or sa == sb:
            return sa or sb
        if sa == 0:
            return sb
        # opposite signs: the larger magnitude wins; a^2 == b^2 d is impossible
        return sa if a * a > b * b * self.spec.d else sb

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    # --- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> FieldValue | None:
        if isinstance(other, FieldValue):
            return other
        if isinstance(other, int):
            return FieldValue._raw(other, 0, 1, self.spec)
        if isinstance(other, _RationalABC):
            return FieldValue._raw(other.numerator, 0, other.denominator, self.spec)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        spec = _join(self.spec, o.spec)
        if self.c == o.c:
            return FieldValue(self.a + o.a, self.b + o.b, self.c, spec)
        return FieldValue(self.a * o.c + o.a * self.c, self.b * o.c + o.b * self.c, self.c * o.c, spec)

    __radd__ = __add__

    def __neg__(self) -> FieldValue:
        return FieldValue._raw(-self.a, -self.b, self.c, self.spec)

    def __pos__(self) -> FieldValue:
        return self

    def __abs__(self) -> FieldValue:
        return -self if self.sign() < 0 else self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        spec = _join(self.spec, o.spec)
        if not self.b and not o.b:
            return FieldValue(self.a * o.a, 0, self.c * o.c, spec)
        a = self.a * o.a + self.b * o.b * spec.d
        b = self.a * o.b + self.b * o.a
        return FieldValue(a, b, self.c * o.c, spec)

    __rmul__ = __mul__

    def inverse(self) -> FieldValue:
        if not self:
            raise ZeroDivisionError("inverse of zero")
        a, b, c = self.a, self.b, self.c
        if not b:
            return FieldValue(c, 0, a, self.spec)
        n = a * a - b * b * self.spec.d
        return FieldValue(c * a, -c * b, n, self.spec)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> FieldValue:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = FieldValue._raw(1, 0, 1, self.spec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> FieldValue:
        return FieldValue._raw(self.a, -self.b, self.c, self.spec)

    def norm(self) -> Fraction:
        d = self.spec.d or 0
        return Fraction(self.a * self.a - self.b * self.b * d, self.c * self.c)

    # --- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.a != o.a or self.b != o.b or self.c != o.c:
            return False
        return not self.b or self.spec == o.spec

    def __hash__(self) -> int:
        if not self.b:
            return hash(Fraction(self.a, self.c))
        return hash((self.a, self.b, self.c, self.spec.d))

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is None:
            raise TypeError(f"cannot compare FieldValue with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    # --- conversion -------------------------------------------------------

    def __floor__(self) -> int:
        return floor(self)

    def __float__(self) -> float:
        # display/debug only; never used for decisions
        d = self.spec.d or 0
        return (self.a + self.b * d**0.5) / self.c

    def __str__(self) -> str:
        a, b, c = self.a, self.b, self.c
        if not b:
            return str(a) if c == 1 else f"{a}/{c}"
        op = "+" if b > 0 else "-"
        return f"({a}{op}{abs(b)}*rt{self.spec.d})/{c}"

    def __repr__(self) -> str:
        return f"FieldValue({self})"


class Infinity:
    """The point at infinity of the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("Infinity")

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "inf"

    def __reduce__(self):
        return (Infinity, ())


INFINITY = Infinity()

ProjPoint = Union[FieldValue, Infinity]


def as_value(x, spec: FieldSpec = RATIONAL) -> FieldValue:
    """Coerce an int, Fraction or FieldValue into ``spec``."""
    if isinstance(x, FieldValue):
        return x.in_field(spec)
    if isinstance(x, str):
        return parse(x, spec)
    return FieldValue.from_fraction(Fraction(x), spec)


def sign(x: FieldValue) -> int:
    """Exact sign of ``x`` in {-1, 0, 1}."""
    return x.sign()


def floor(x: FieldValue) -> int:
    """Greatest integer ``n`` with ``n <= x``."""
    a, b, c = x.a, x.b, x.c
    if not b:
        return a // c
    r = isqrt(b * b * x.spec.d)
    # |b| sqrt(d) lies strictly between r and r + 1
    n = (a + r) // c if b > 0 else (a - r - 1) // c
    while (x - n).sign() < 0:
        n -= 1
    while (x - (n + 1)).sign() >= 0:
        n += 1
    return n


def approx(x: FieldValue, digits: int) -> str:
    """Decimal expansion of ``x`` rounded half-even to ``digits`` places."""
    if digits < 0 or digits > 1000:
        raise ValueError("digits must lie in [0, 1000]")
    scaled = x * (10**digits)
    n = floor(scaled)
    s = (scaled - n - Fraction(1, 2)).sign()
    if s > 0 or (s == 0 and n % 2):
        n += 1
    neg = n < 0
    text = str(abs(n)).rjust(digits + 1, "0")
    if digits:
        text = text[:-digits] + "." + text[-digits:]
    return ("-" if neg else "") + text


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<rt>rt)|(?P<op>[-+*/()−]))")


class _Parser:
    def __init__(self, text: str, spec: FieldSpec):
        self.text = text
        self.spec = spec
        self.pos = 0

    def error(self, message: str):
        raise ParseError(message, self.text, self.pos)

    def peek(self) -> str | None:
        i = self.pos
        while i < len(self.text) and self.text[i].isspace():
            i += 1
        if i >= len(self.text):
            return None
        ch = self.text[i]
        return "-" if ch == "−" else ch

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        while self.text[self.pos].isspace():
            self.pos += 1
        self.pos += 1

    def integer(self, signed: bool = True) -> int:
        negative = False
        if signed and self.peek() in ("-", "+"):
            negative = self.peek() == "-"
            self.take(self.peek())
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        m = re.match(r"\d+", self.text[self.pos:])
        if not m:
            self.error("expected integer")
        self.pos += m.end()
        value = int(m.group())
        return -value if negative else value

    def posint(self) -> int:
        start = self.pos
        n = self.integer(signed=False)
        if n == 0:
            self.pos = start
            raise ZeroDivisionError(f"zero denominator in {self.text!r}")
        return n

    def value(self) -> FieldValue:
        if self.peek() == "(":
            self.take("(")
            a = self.integer()
            op = self.peek()
            if op not in ("+", "-"):
                self.error("expected '+' or '-'")
            self.take(op)
            b = self.integer(signed=False)
            self.take("*")
            if self.text[self.pos:].lstrip()[:2] != "rt":
                self.error("expected 'rt'")
            while self.text[self.pos].isspace():
                self.pos += 1
            self.pos += 2
            start = self.pos
            d = self.posint()
            if self.spec.d is None:
                self.pos = start
                raise FieldMismatch(f"sqrt term rt{d} supplied for a rational field in {self.text!r}")
            if d != self.spec.d:
                self.pos = start
                raise FieldMismatch(f"rt{d} does not belong to {self.spec}")
            self.take(")")
            self.take("/")
            c = self.posint()
            return FieldValue(a, b if op == "+" else -b, c, self.spec)
        a = self.integer()
        c = 1
        if self.peek() == "/":
            self.take("/")
            c = self.posint()
        return FieldValue(a, 0, c, self.spec)

    def parse(self) -> FieldValue:
        v = self.value()
        if self.peek() is not None:
            self.error("unexpected trailing input")
        return v


def parse(text: str, spec: FieldSpec = RATIONAL) -> FieldValue:
    """Parse ``3/5``, ``-7`` or ``(1+1*rt13)/2`` into a canonical value."""
    return _Parser(text, spec).parse()


def parse_point(text: str, spec: FieldSpec = RATIONAL) -> ProjPoint:
    if text.strip().lower() in ("inf", "infinity", "∞"):
        return INFINITY
    return parse(text, spec)


def format_point(p: ProjPoint) -> str:
    return str(p)
