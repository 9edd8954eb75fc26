"""Cusp reduction: find a word W in Delta with W(inf) = kappa.

Progress is measured by the size of the horoball at the current cusp.  If
``kappa = M(inf)`` and ``g = [[a, b], [c, d]]``, the cusp ``g(kappa)`` has the
witness ``gM`` whose normalised lower-left entry is that of ``M`` times
``|c kappa + d| / sqrt(det g)``.  A move therefore makes progress exactly
when ``(c kappa + d)^2 < det g``, that is when kappa lies inside the
isometric circle of g.  In the modular case this is continued-fraction
descent on the denominator.  The quantity is exact in K and unaffected by
the parabolic translations, and for a discrete group it cannot decrease
forever, so a descent that always finds a move ends at infinity.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cochain import make_context, symbol_of_word
from .exactfield import INFINITY, FieldValue, ProjPoint, floor
from .fuchsian import (
    GroupParams,
    Letter,
    ProjMatrix,
    Word,
    generators,
    letter_matrices,
    mobius_apply,
    parabolic_word,
    word_to_matrix,
)

__all__ = [
    "NotReduced",
    "ReductionConfig",
    "ReductionResult",
    "TraceStep",
    "height",
    "reduce_cusp",
    "dedekind_symbol",
]

_DELTA_LETTERS = (Letter.G1inv, Letter.G2inv, Letter.G1, Letter.G2)


class NotReduced(RuntimeError):
    """The descent stalled or ran out of steps.

    This is inconclusive: either kappa is not a cusp of the group, or the
    search was not deep enough.  The two cases are not distinguished.
    """

    def __init__(self, steps: int, last_cusp: ProjPoint, reason: str = "", trace=None):
        self.steps = steps
        self.last_cusp = last_cusp
        self.reason = reason
        self.trace = tuple(trace or ())
        msg = f"cusp reduction stopped after {steps} steps at {last_cusp}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


@dataclass(frozen=True)
class ReductionConfig:
    max_steps: int = 10_000
    fallback_depth: int = 8
    trace: bool = False

    def __post_init__(self):
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")
        if self.fallback_depth < 0:
            raise ValueError("fallback_depth must be non-negative")


@dataclass(frozen=True)
class TraceStep:
    index: int
    move: Word
    cusp: ProjPoint
    height: int

    def __str__(self) -> str:
        return f"step {self.index}: move={self.move} cusp={self.cusp} height={self.height}"


@dataclass(frozen=True)
class ReductionResult:
    word: Word
    matrix: ProjMatrix
    steps: int
    trace: Optional[tuple[TraceStep, ...]] = None


def height(kappa: ProjPoint) -> int:
    """Denominator height: 0 at infinity, |q| for p/q, max(|a|, |b|, c) otherwise."""
    if kappa is INFINITY:
        return 0
    if not kappa.b:
        return kappa.c
    return max(abs(kappa.a), abs(kappa.b), kappa.c)


def _shrink(m: ProjMatrix, kappa: FieldValue) -> FieldValue:
    # horoball scale factor of the move m at kappa; < 1 means progress
    v = m.m21 * kappa + m.m22
    return v * v / m.det()


def _candidates(p: GroupParams) -> list[tuple[Word, ProjMatrix]]:
    table = letter_matrices(p)
    pw = parabolic_word()
    P = generators(p).P
    out = []
    for j in (0, -1, 1):
        shift = pw * j
        shift_m = P**j
        for x in _DELTA_LETTERS:
            out.append((Word((x,)) + shift, table[x] * shift_m))
    return out


def _search(p: GroupParams, kappa: FieldValue, depth: int) -> tuple[Word, ProjPoint] | None:
    """Breadth-first search for a Delta-word whose horoball factor at kappa is < 1."""
    table = letter_matrices(p)
    frontier: list[tuple[tuple[Letter, ...], ProjPoint, FieldValue]] = [((), kappa, kappa - kappa + 1)]
    for _ in range(depth):
        nxt = []
        for letters, point, scale in frontier:
            for x in _DELTA_LETTERS:
                if letters and letters[0] is x.inverse:
                    continue
                m = table[x]
                image = mobius_apply(m, point)
                word = (x,) + letters
                if image is INFINITY:
                    return Word(word), image
                s = scale * _shrink(m, point)
                if s < 1:
                    return Word(word), image
                nxt.append((word, image, s))
        frontier = nxt
    return None


def reduce_cusp(p: GroupParams, kappa: ProjPoint, cfg: ReductionConfig | None = None) -> ReductionResult:
    """Find a witness word in g1, g2 carrying infinity to ``kappa``.

    Each step translates the cusp by a power of P into the window
    [-1, 2t - 1), then applies the first single-letter move (possibly composed
    with P or P^-1) that shrinks the horoball factor.  If no such move
    helps, a breadth-first search over words up to ``cfg.fallback_depth``
    letters looks for any move that does.
    """
    cfg = cfg or ReductionConfig()
    spec = p.spec
    if kappa is INFINITY:
        return ReductionResult(Word(), ProjMatrix.identity(spec), 0, () if cfg.trace else None)
    kappa = kappa.in_field(spec)
    two_t = p.t * 2
    pw = parabolic_word()
    candidates = _candidates(p)
    trace: list[TraceStep] | None = [] if cfg.trace else None

    acc: list[Word] = []
    current: ProjPoint = kappa
    steps = 0
    seen: set[FieldValue] = set()
    while current is not INFINITY:
        if steps >= cfg.max_steps:
            raise NotReduced(steps, current, "step limit reached", trace)
        n = floor((current + 1) / two_t)
        shifted = current - two_t * n
        if shifted in seen:
            # a strictly shrinking loop can never reach infinity
            raise NotReduced(steps, current, "descent revisited a cusp", trace)
        seen.add(shifted)
        hit = None
        for word, m in candidates:
            image = mobius_apply(m, shifted)
            if image is INFINITY or _shrink(m, shifted) < 1:
                hit = (word, image)
                break
        if hit is not None:
            move, image = hit
        else:
            found = _search(p, shifted, cfg.fallback_depth)
            if found is None:
                raise NotReduced(steps, current, "no descending move found", trace)
            move, image = found
        move = move + pw * (-n)
        acc.append(move.inverse())
        current = image
        steps += 1
        if trace is not None:
            trace.append(TraceStep(steps, move, current, height(current)))

    word = Word(tuple(x for w in acc for x in w))
    matrix = word_to_matrix(p, word)
    if mobius_apply(matrix, INFINITY) != kappa:
        raise AssertionError(f"witness {word} does not carry infinity to {kappa}")
    return ReductionResult(word, matrix, steps, tuple(trace) if trace is not None else None)


def dedekind_symbol(p: GroupParams, kappa: ProjPoint, cfg: ReductionConfig | None = None) -> ProjPoint:
    """Generalized Dedekind symbol S(kappa); infinity maps to infinity."""
    if kappa is INFINITY:
        return INFINITY
    result = reduce_cusp(p, kappa, cfg)
    return symbol_of_word(make_context(p), result.word)
