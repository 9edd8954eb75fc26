"""Classical Dedekind sums, used as an independent oracle for the modular case."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import mpmath

from .exactfield import FieldValue, as_value

__all__ = [
    "NotCoprime",
    "CoprimePair",
    "sawtooth",
    "dedekind_sum",
    "classical_symbol",
    "cotangent_sum",
    "cotangent_check",
    "reciprocity_rhs",
]


class NotCoprime(ValueError):
    pass


@dataclass(frozen=True)
class CoprimePair:
    a: int
    b: int

    def __post_init__(self):
        if self.b == 0:
            raise ZeroDivisionError("modulus must be nonzero")
        if gcd(self.a, self.b) != 1:
            raise NotCoprime(f"gcd({self.a}, {self.b}) != 1")


def _saw(x: Fraction) -> Fraction:
    if x.denominator == 1:
        return Fraction(0)
    return x - (x.numerator // x.denominator) - Fraction(1, 2)


def sawtooth(x) -> FieldValue:
    """((x)) = x - floor(x) - 1/2, and 0 at integers."""
    return as_value(_saw(as_value(x).to_fraction()))


def _pair(p: CoprimePair | tuple[int, int]) -> CoprimePair:
    return p if isinstance(p, CoprimePair) else CoprimePair(*p)


def _dedekind_sum(a: int, b: int) -> Fraction:
    # ((k/m)) = (2k - m) / 2m for 0 < k < m, and s(a, b) = s(a, |b|)
    m = abs(b)
    total = 0
    for k in range(1, m):
        total += (2 * k - m) * (2 * (k * a % m) - m)
    return Fraction(total, 4 * m * m)


def dedekind_sum(p: CoprimePair | tuple[int, int]) -> FieldValue:
    """s(a, b) as the sawtooth sum over k = 1 .. |b| - 1."""
    p = _pair(p)
    return as_value(_dedekind_sum(p.a, p.b))


def classical_symbol(a: int, c: int) -> FieldValue:
    """12 sign(c) s(a, c)."""
    if c == 0:
        raise ZeroDivisionError("c must be nonzero")
    if gcd(a, c) != 1:
        raise NotCoprime(f"gcd({a}, {c}) != 1")
    sgn = 1 if c > 0 else -1
    return as_value(12 * sgn * _dedekind_sum(a, c))


def reciprocity_rhs(a: int, b: int) -> Fraction:
    """-1/4 + (a/b + b/a + 1/(ab)) / 12, the value of s(a, b) + s(b, a) for a, b > 0."""
    return Fraction(-1, 4) + (Fraction(a, b) + Fraction(b, a) + Fraction(1, a * b)) / 12


def cotangent_sum(p: CoprimePair | tuple[int, int], dps: int = 40) -> mpmath.mpf:
    """(1 / 4|b|) * sum over k of cot(pi k / b) cot(pi k a / b)."""
    p = _pair(p)
    m = abs(p.b)
    # cot(pi k / b) cot(pi k a / b) is unchanged when b is replaced by |b|
    table = _cot_table(m, dps)
    with mpmath.workdps(dps):
        total = mpmath.fsum(table[k] * table[k * p.a % m] for k in range(1, m))
        return total / (4 * m)


@lru_cache(maxsize=512)
def _cot_table(m: int, dps: int) -> tuple:
    with mpmath.workdps(dps):
        return (None,) + tuple(mpmath.cot(mpmath.pi * k / m) for k in range(1, m))


def cotangent_check(p: CoprimePair | tuple[int, int], tol=1e-9) -> bool:
    p = _pair(p)
    if abs(p.b) < 2:
        raise ValueError("cotangent formula needs |b| >= 2")
    exact = _dedekind_sum(p.a, p.b)
    with mpmath.workdps(40):
        diff = cotangent_sum(p) - mpmath.mpf(exact.numerator) / exact.denominator
        return bool(abs(diff) < mpmath.mpf(tol))
