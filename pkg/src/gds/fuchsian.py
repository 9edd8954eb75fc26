"""The once-punctured-torus groups Delta(u^2, 2t) and their words.

Group elements are carried as words in the letters g1, g2 (and their
inverses) and the hyperelliptic involution tau.  Matrices are projective
representatives with entries in the parameter field K, so the square-root
scalings of the real SL(2) matrices never appear.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd
from typing import Iterable, Sequence

from .exactfield import (
    INFINITY,
    RATIONAL,
    FieldMismatch,
    FieldSpec,
    FieldValue,
    ProjPoint,
    as_value,
)

__all__ = [
    "ConstraintViolation",
    "GroupParams",
    "ProjMatrix",
    "Letter",
    "Word",
    "Generators",
    "make_params",
    "generators",
    "mobius_apply",
    "word_to_matrix",
    "free_reduce",
    "parabolic_word",
]


class ConstraintViolation(ValueError):
    """Parameters do not satisfy u^2 > 0 and t > u^2 + 1."""


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class ProjMatrix:
    """A 2x2 matrix over K taken up to nonzero scalars.

    The stored representative is canonical: the first nonzero entry in the
    order (m21, m11, m12, m22) is a positive rational integer, every entry
    has integer coordinates, and the coordinates have no common factor.
    """

    __slots__ = ("m11", "m12", "m21", "m22", "spec")

    def __init__(self, m11, m12, m21, m22, spec: FieldSpec | None = None):
        entries = [m11, m12, m21, m22]
        if spec is None:
            spec = RATIONAL
            for e in entries:
                if isinstance(e, FieldValue) and e.spec.d is not None:
                    spec = e.spec
                    break
        m11, m12, m21, m22 = (as_value(e, spec) for e in entries)
        if not (m11 * m22 - m12 * m21):
            raise ZeroDivisionError("singular matrix")
        self.spec = spec
        self.m11, self.m12, self.m21, self.m22 = _canonical(m11, m12, m21, m22, spec)

    @classmethod
    def _from_canonical(cls, m11, m12, m21, m22, spec) -> ProjMatrix:
        obj = object.__new__(cls)
        obj.m11, obj.m12, obj.m21, obj.m22 = m11, m12, m21, m22
        obj.spec = spec
        return obj

    @classmethod
    def identity(cls, spec: FieldSpec = RATIONAL) -> ProjMatrix:
        return cls(1, 0, 0, 1, spec)

    @property
    def entries(self) -> tuple[FieldValue, FieldValue, FieldValue, FieldValue]:
        return (self.m11, self.m12, self.m21, self.m22)

    def rows(self) -> list[list[str]]:
        return [[str(self.m11), str(self.m12)], [str(self.m21), str(self.m22)]]

    def det(self) -> FieldValue:
        """Determinant of the canonical representative."""
        return self.m11 * self.m22 - self.m12 * self.m21

    def __mul__(self, other: ProjMatrix) -> ProjMatrix:
        if not isinstance(other, ProjMatrix):
            return NotImplemented
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        spec = self.spec if self.spec.d is not None else other.spec
        return ProjMatrix._build(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h, spec)

    @classmethod
    def _build(cls, m11, m12, m21, m22, spec) -> ProjMatrix:
        return cls._from_canonical(*_canonical(m11, m12, m21, m22, spec), spec)

    def inverse(self) -> ProjMatrix:
        # the adjugate is a scalar multiple of the inverse
        return ProjMatrix._build(self.m22, -self.m12, -self.m21, self.m11, self.spec)

    def __pow__(self, k: int) -> ProjMatrix:
        base = self if k >= 0 else self.inverse()
        result = ProjMatrix.identity(self.spec)
        k = abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def apply(self, p: ProjPoint) -> ProjPoint:
        return mobius_apply(self, p)

    def fixes_infinity(self) -> bool:
        return not self.m21

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"ProjMatrix([[{self.m11}, {self.m12}], [{self.m21}, {self.m22}]])"


def _canonical(m11, m12, m21, m22, spec):
    entries = [m11, m12, m21, m22]
    pivot = next(e for e in (m21, m11, m12, m22) if e)
    if pivot.b:
        # multiply by the conjugate so the pivot becomes rational
        conj = pivot.conjugate()
        entries = [e * conj for e in entries]
        pivot = pivot * conj
    if pivot.sign() < 0:
        entries = [-e for e in entries]
    den = reduce(_lcm, (e.c for e in entries), 1)
    coords = []
    for e in entries:
        k = den // e.c
        coords.append((e.a * k, e.b * k))
    g = gcd(*(x for pair in coords for x in pair))
    return tuple(FieldValue._raw(a // g, b // g, 1, spec) for a, b in coords)


def mobius_apply(m: ProjMatrix, p: ProjPoint) -> ProjPoint:
    """Fractional linear action of ``m`` on the projective line over K."""
    if p is INFINITY:
        if not m.m21:
            return INFINITY
        return m.m11 / m.m21
    den = m.m21 * p + m.m22
    if not den:
        return INFINITY
    return (m.m11 * p + m.m12) / den


class Letter(enum.Enum):
    G1 = "a"
    G1inv = "A"
    G2 = "b"
    G2inv = "B"
    Tau = "s"

    @property
    def inverse(self) -> Letter:
        return _INVERSE[self]

    @property
    def token(self) -> str:
        return self.value


_INVERSE = {
    Letter.G1: Letter.G1inv,
    Letter.G1inv: Letter.G1,
    Letter.G2: Letter.G2inv,
    Letter.G2inv: Letter.G2,
    Letter.Tau: Letter.Tau,
}


def free_reduce(letters: Iterable[Letter]) -> Word:
    """Cancel adjacent inverse pairs (including tau tau) until none remain."""
    out: list[Letter] = []
    for x in letters:
        if out and out[-1] is _INVERSE[x]:
            out.pop()
        else:
            out.append(x)
    return Word._from_reduced(tuple(out))


class Word:
    """A freely reduced word over g1^{+-1}, g2^{+-1} and tau."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] | str = ()):
        if isinstance(letters, str):
            letters = Word.parse(letters).letters
        letters = (x if isinstance(x, Letter) else Letter(x) for x in letters)
        self.letters: tuple[Letter, ...] = free_reduce(letters).letters

    @classmethod
    def _from_reduced(cls, letters: tuple[Letter, ...]) -> Word:
        obj = object.__new__(cls)
        obj.letters = letters
        return obj

    @classmethod
    def parse(cls, text: str) -> Word:
        text = text.strip()
        if text in ("", "e"):
            return cls._from_reduced(())
        try:
            return free_reduce(Letter(ch) for ch in text)
        except ValueError:
            bad = next(ch for ch in text if ch not in "aAbBs")
            raise ValueError(f"unknown letter {bad!r} in word {text!r}") from None

    @property
    def in_delta(self) -> bool:
        # Delta is the kernel of the parity-of-tau map onto Z/2
        return self.letters.count(Letter.Tau) % 2 == 0

    def inverse(self) -> Word:
        return Word._from_reduced(tuple(x.inverse for x in reversed(self.letters)))

    def __add__(self, other: Word) -> Word:
        if not isinstance(other, Word):
            return NotImplemented
        return free_reduce(self.letters + other.letters)

    def __mul__(self, k: int) -> Word:
        if k < 0:
            return self.inverse() * (-k)
        return free_reduce(self.letters * k)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Word._from_reduced(self.letters[i])
        return self.letters[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __str__(self) -> str:
        return "".join(x.value for x in self.letters) or "e"

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


@dataclass(frozen=True)
class GroupParams:
    """Parameters (u^2, t) of Delta(u^2, 2t) over the field ``spec``."""

    u2: FieldValue
    t: FieldValue
    spec: FieldSpec

    @property
    def two_t(self) -> FieldValue:
        return self.t * 2

    def __str__(self) -> str:
        return f"Delta({self.u2}, {self.two_t})"


@dataclass(frozen=True)
class Generators:
    g1: ProjMatrix
    g2: ProjMatrix
    tau: ProjMatrix
    T: ProjMatrix
    P: ProjMatrix

    def letter(self, x: Letter) -> ProjMatrix:
        return self._table[x]

    @property
    def _table(self) -> dict[Letter, ProjMatrix]:
        return {
            Letter.G1: self.g1,
            Letter.G1inv: self.g1.inverse(),
            Letter.G2: self.g2,
            Letter.G2inv: self.g2.inverse(),
            Letter.Tau: self.tau,
        }


def parabolic_word() -> Word:
    """The commutator g1 g2^-1 g1^-1 g2, which generates stab(infinity) in Delta."""
    return Word("aBAb")


def _field_of(*values) -> FieldSpec:
    spec = RATIONAL
    for v in values:
        if isinstance(v, FieldValue) and v.spec.d is not None:
            if spec.d is not None and spec != v.spec:
                raise FieldMismatch(f"parameters lie in different fields: {spec} and {v.spec}")
            spec = v.spec
    return spec


def make_params(u2, two_t, spec: FieldSpec | None = None) -> GroupParams:
    """Validate (u^2, 2t) and return the group parameters with t = 2t / 2."""
    if spec is None:
        spec = _field_of(u2, two_t)
    u2 = as_value(u2, spec)
    t = as_value(two_t, spec) / 2
    if u2.sign() <= 0:
        raise ConstraintViolation(f"u^2 must be positive, got {u2}")
    if (t - u2 - 1).sign() <= 0:
        raise ConstraintViolation(f"need t > u^2 + 1, got t = {t}, u^2 = {u2}")
    params = GroupParams(u2, t, spec)
    gens = generators(params)
    if word_to_matrix(params, parabolic_word()) != gens.P:
        raise ConstraintViolation("commutator of the generators is not the parabolic [[1, 2t], [0, 1]]")
    return params


@lru_cache(maxsize=64)
def generators(p: GroupParams) -> Generators:
    """Projective representatives of g1, g2, tau, T and P = T^2."""
    u2, t, spec = p.u2, p.t, p.spec
    return Generators(
        g1=ProjMatrix(t - 1, u2, 1, 1, spec),
        g2=ProjMatrix(u2, u2, 1, t - u2, spec),
        tau=ProjMatrix(0, u2, -1, 0, spec),
        T=ProjMatrix(1, t, 0, 1, spec),
        P=ProjMatrix(1, t * 2, 0, 1, spec),
    )


@lru_cache(maxsize=64)
def letter_matrices(p: GroupParams) -> dict[Letter, ProjMatrix]:
    return generators(p)._table


def word_to_matrix(p: GroupParams, w: Word | Sequence[Letter]) -> ProjMatrix:
    """Left-to-right product of the letter matrices; the empty word gives I."""
    table = letter_matrices(p)
    m = ProjMatrix.identity(p.spec)
    for x in w:
        m = m * table[x]
    return m
