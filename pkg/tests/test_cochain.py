import random
from fractions import Fraction

import pytest

from gds.classical import dedekind_sum
from gds.cochain import StabilizerError, chi, epsilon, make_context, phi, symbol_of_word
from gds.exactfield import FieldValue
from gds.fuchsian import Letter, ProjMatrix, Word, generators, parabolic_word, word_to_matrix

from .helpers import DELTA_LETTERS, GROUPS, random_raw, random_word

G1, G1inv, G2, G2inv, Tau = Letter.G1, Letter.G1inv, Letter.G2, Letter.G2inv, Letter.Tau
MODULAR = GROUPS["modular"]


def test_context_base_values():
    ctx = make_context(MODULAR)
    assert ctx.lam == -3
    for x in Letter:
        assert ctx.base_phi[x.inverse] == -ctx.base_phi[x]


def test_epsilon_examples():
    for p in GROUPS.values():
        ctx = make_context(p)
        assert epsilon(ctx, Word("aBs"), Word("ab")) == 0
        assert epsilon(ctx, Word("b"), Word("A")) == -1
    # g1 inf = 2 and g1 g2 inf = g1(1) = 3/2 by hand
    g1 = lambda x: (2 * x + 1) / (x + 1)
    assert g1(Fraction(1)) == Fraction(3, 2)
    assert epsilon(make_context(MODULAR), Word("a"), Word("b")) == -1


@pytest.mark.parametrize("name", list(GROUPS))
def test_phi_examples(name):
    p = GROUPS[name]
    ctx = make_context(p)
    t = p.t
    assert phi(ctx, Word()) == 0
    assert phi(ctx, Word("a")) == t
    assert phi(ctx, Word("b")) == t
    assert phi(ctx, Word("aBs")) == t
    assert phi(ctx, Word("aB")) == t
    assert phi(ctx, Word("bA")) == -t
    assert phi(ctx, Word("s")) == 0


def test_chi_examples():
    g = generators(MODULAR)
    assert chi(g.g1) == 3
    assert chi(ProjMatrix(1, 2, 2, 5)) == 3
    assert chi(g.g1 * g.T) == 6
    for p in GROUPS.values():
        g = generators(p)
        assert chi(g.g1) == p.t
        assert chi(g.g1 * g.T) == 2 * p.t
    with pytest.raises(StabilizerError):
        chi(g.P)


def test_symbol_of_word_examples():
    for p in GROUPS.values():
        ctx = make_context(p)
        assert symbol_of_word(ctx, Word("b")) == 0
        assert symbol_of_word(ctx, Word("bA")) == 0
        with pytest.raises(StabilizerError):
            symbol_of_word(ctx, parabolic_word())
    ctx = make_context(MODULAR)
    assert symbol_of_word(ctx, Word("ba")) == Fraction(3, 2)
    assert -12 * dedekind_sum((3, 4)) == Fraction(3, 2)


def _rademacher(m: ProjMatrix) -> Fraction:
    # classical Rademacher Phi on PSL(2, Z): b/d on stab(inf), else (a+d)/c - 12 sign(c) s(d, c)
    a, b, c, d = (int(e.a) for e in m.entries)
    assert a * d - b * c == 1
    if c == 0:
        return Fraction(b, d)
    sgn = 1 if c > 0 else -1
    return Fraction(a + d, c) - 12 * sgn * dedekind_sum((d, c)).to_fraction()


def test_phi_matches_rademacher_phi_in_modular_case():
    ctx = make_context(MODULAR)
    rng = random.Random(4)
    for _ in range(300):
        w = random_word(rng, 10)
        assert phi(ctx, w) == _rademacher(word_to_matrix(MODULAR, w))


@pytest.mark.parametrize("name", list(GROUPS))
def test_cocycle_identity(name):
    ctx = make_context(GROUPS[name])
    rng = random.Random(21)
    for _ in range(150):
        a, b, c = random_word(rng), random_word(rng), random_word(rng)
        assert epsilon(ctx, b, c) - epsilon(ctx, a + b, c) + epsilon(ctx, a, b + c) - epsilon(ctx, a, b) == 0


@pytest.mark.parametrize("name", list(GROUPS))
def test_defining_relation(name):
    p = GROUPS[name]
    ctx = make_context(p)
    rng = random.Random(22)
    for _ in range(150):
        a, b = random_word(rng), random_word(rng)
        assert phi(ctx, a + b) - phi(ctx, a) - phi(ctx, b) == p.t * epsilon(ctx, a, b)


@pytest.mark.parametrize("name", list(GROUPS))
def test_inverse_rule(name):
    ctx = make_context(GROUPS[name])
    rng = random.Random(23)
    for _ in range(100):
        w = random_word(rng)
        assert phi(ctx, w.inverse()) == -phi(ctx, w)


@pytest.mark.parametrize("name", list(GROUPS))
def test_involutions_have_zero_phi(name):
    ctx = make_context(GROUPS[name])
    involutions = [Word("s"), Word("as"), Word("sb")]
    for xi in involutions:
        assert phi(ctx, xi) == 0
    rng = random.Random(24)
    for _ in range(20):
        w = random_word(rng, 8)
        xi = rng.choice(involutions)
        assert phi(ctx, w + xi + w.inverse()) == 0


@pytest.mark.parametrize("name", list(GROUPS))
def test_phi_homomorphic_on_parabolics(name):
    p = GROUPS[name]
    ctx = make_context(p)
    T = Word("aBs")
    for k in range(-10, 11):
        assert phi(ctx, T * k) == p.t * k
    assert phi(ctx, parabolic_word()) == 2 * p.t


@pytest.mark.parametrize("name", list(GROUPS))
def test_phi_independent_of_cancelling_insertions(name):
    ctx = make_context(GROUPS[name])
    rng = random.Random(25)
    letters = list(Letter)
    for _ in range(60):
        raw = random_raw(rng)
        base = phi(ctx, Word(raw))
        padded = list(raw)
        for _ in range(rng.randint(1, 3)):
            x = rng.choice(letters)
            i = rng.randint(0, len(padded))
            padded[i:i] = [x, x.inverse]
        assert phi(ctx, padded) == base


@pytest.mark.parametrize("name", list(GROUPS))
def test_symbol_invariant_under_right_parabolics(name):
    p = GROUPS[name]
    ctx = make_context(p)
    rng = random.Random(26)
    P = parabolic_word()
    T = Word("aBs")
    done = 0
    while done < 40:
        w = random_word(rng, 10, DELTA_LETTERS)
        if word_to_matrix(p, w).fixes_infinity():
            continue
        k = rng.randint(-5, 5)
        s = symbol_of_word(ctx, w)
        assert symbol_of_word(ctx, w + P * k) == s
        assert phi(ctx, w + T * k) == phi(ctx, w) + p.t * k
        done += 1


def test_phi_values_lie_in_the_field():
    p = GROUPS["quadratic"]
    ctx = make_context(p)
    v = phi(ctx, Word("abAB"))
    assert isinstance(v, FieldValue) and v.spec == p.spec
