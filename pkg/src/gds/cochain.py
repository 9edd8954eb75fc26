"""The area cocycle, the Rademacher-type cochain phi, chi and S = phi - chi."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .exactfield import INFINITY, FieldValue, ProjPoint
from .fuchsian import (
    GroupParams,
    Letter,
    ProjMatrix,
    Word,
    letter_matrices,
    mobius_apply,
    word_to_matrix,
)

__all__ = [
    "StabilizerError",
    "CochainContext",
    "make_context",
    "epsilon",
    "phi",
    "chi",
    "symbol_of_word",
    "point_sign",
]


class StabilizerError(ValueError):
    """The element fixes infinity, so chi (and S) is undefined."""


@dataclass(frozen=True)
class CochainContext:
    params: GroupParams
    lam: FieldValue
    base_phi: dict[Letter, FieldValue] = field(hash=False, compare=False)

    @property
    def t(self) -> FieldValue:
        return self.params.t


def make_context(params: GroupParams) -> CochainContext:
    t = params.t
    zero = t - t
    base = {
        Letter.G1: t,
        Letter.G1inv: -t,
        Letter.G2: t,
        Letter.G2inv: -t,
        Letter.Tau: zero,
    }
    return CochainContext(params, -t, base)


def point_sign(x: ProjPoint, y: ProjPoint) -> int:
    """sign(y - x), taken as 0 when either point is infinite."""
    if x is INFINITY or y is INFINITY:
        return 0
    return (y - x).sign()


def epsilon(ctx: CochainContext, a: Word, b: Word) -> int:
    """Area cocycle: sign(AB inf - A inf), zero if either point is infinite."""
    ma = word_to_matrix(ctx.params, a)
    mab = ma * word_to_matrix(ctx.params, b)
    return point_sign(mobius_apply(ma, INFINITY), mobius_apply(mab, INFINITY))


def phi(ctx: CochainContext, w: Word | Sequence[Letter]) -> FieldValue:
    """Evaluate phi by peeling letters off the front of ``w``.

    Uses phi(xR) = phi(x) + phi(R) + t * sign(xR inf - x inf), walking the
    word from the right so each suffix matrix is formed once.  ``w`` may
    also be an unreduced letter sequence; the value only depends on the
    group element.
    """
    letters = w.letters if isinstance(w, Word) else tuple(w)
    table = letter_matrices(ctx.params)
    t = ctx.params.t
    total = t - t
    suffix = ProjMatrix.identity(ctx.params.spec)
    count = 0
    for x in reversed(letters):
        mx = table[x]
        suffix = mx * suffix
        total = total + ctx.base_phi[x]
        count += point_sign(mobius_apply(mx, INFINITY), mobius_apply(suffix, INFINITY))
    return total + t * count


def chi(m: ProjMatrix) -> FieldValue:
    """(m11 + m22) / m21; defined off the stabiliser of infinity."""
    if not m.m21:
        raise StabilizerError(f"{m!r} fixes infinity")
    return (m.m11 + m.m22) / m.m21


def symbol_of_word(ctx: CochainContext, w: Word) -> FieldValue:
    m = word_to_matrix(ctx.params, w)
    if not m.m21:
        raise StabilizerError(f"word {w} fixes infinity")
    return phi(ctx, w) - chi(m)
