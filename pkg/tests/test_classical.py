import random
from fractions import Fraction
from math import gcd

import pytest

from gds.classical import (
    CoprimePair,
    NotCoprime,
    classical_symbol,
    cotangent_check,
    cotangent_sum,
    dedekind_sum,
    reciprocity_rhs,
    sawtooth,
)


def _saw(x: Fraction) -> Fraction:
    if x.denominator == 1:
        return Fraction(0)
    return x - (x.numerator // x.denominator) - Fraction(1, 2)


def _brute(a, b):
    # direct transcription of the sum on Fractions
    return sum((_saw(Fraction(k, b)) * _saw(Fraction(k * a, b)) for k in range(1, abs(b))), Fraction(0))


def test_sawtooth_examples():
    assert sawtooth(Fraction(1, 2)) == 0
    assert sawtooth(Fraction(1, 3)) == Fraction(-1, 6)
    assert sawtooth(0) == 0
    assert sawtooth(Fraction(-1, 3)) == Fraction(1, 6)
    assert sawtooth(Fraction(7, 4)) == Fraction(1, 4)


def test_dedekind_sum_examples():
    assert dedekind_sum((0, 1)) == 0
    assert dedekind_sum((1, 2)) == 0
    assert dedekind_sum((1, 3)) == Fraction(1, 18)
    assert dedekind_sum((3, 4)) == Fraction(-1, 8)


def test_dedekind_sum_matches_fraction_sum():
    for b in list(range(1, 40)) + [-7, -12]:
        for a in range(-b if b > 0 else b, abs(b) * 2):
            if gcd(a, b) == 1:
                assert dedekind_sum((a, b)) == _brute(a, b), (a, b)


def test_not_coprime():
    with pytest.raises(NotCoprime):
        dedekind_sum((2, 4))
    with pytest.raises(NotCoprime):
        classical_symbol(3, 9)
    with pytest.raises(ZeroDivisionError):
        classical_symbol(1, 0)
    with pytest.raises(NotCoprime):
        CoprimePair(6, 4)


def test_classical_symbol_examples():
    assert classical_symbol(0, 1) == 0
    assert classical_symbol(1, 3) == Fraction(2, 3)
    assert classical_symbol(3, 4) == Fraction(-3, 2)
    assert classical_symbol(3, -4) == Fraction(3, 2)


def test_reciprocity():
    rng = random.Random(41)
    n = 0
    while n < 100:
        b = rng.randint(2, 500)
        a = rng.randint(1, b - 1)
        if gcd(a, b) != 1:
            continue
        assert dedekind_sum((a, b)) + dedekind_sum((b, a)) == reciprocity_rhs(a, b)
        n += 1


def test_periodicity_and_oddness():
    for b in range(2, 60):
        for a in range(1, b):
            if gcd(a, b) == 1:
                assert dedekind_sum((a + b, b)) == dedekind_sum((a, b))
                assert dedekind_sum((-a, b)) == -dedekind_sum((a, b))


def test_cotangent_examples():
    assert cotangent_check((1, 3), 1e-9)
    assert cotangent_check((3, 4), 1e-9)
    assert cotangent_check((1, 2), 1e-9)
    assert abs(float(cotangent_sum((1, 3))) - 1 / 18) < 1e-12
    with pytest.raises(ValueError):
        cotangent_check((0, 1))


def test_cotangent_formula_small_moduli():
    for b in range(2, 60):
        for a in range(-b, b):
            if gcd(a, b) == 1:
                assert cotangent_check((a, b), 1e-9)
