import random

from gds.exactfield import FieldSpec, parse
from gds.fuchsian import Letter, Word, make_params

Q13 = FieldSpec(13)

GROUPS = {
    "modular": make_params(1, 6),
    "pseudomodular": make_params(parse("3/5"), 4),
    "quadratic": make_params(1, parse("(2+2*rt13)/2", Q13), Q13),
}

ALL_LETTERS = tuple(Letter)
DELTA_LETTERS = (Letter.G1, Letter.G1inv, Letter.G2, Letter.G2inv)


def random_word(rng: random.Random, max_len: int = 12, letters=ALL_LETTERS) -> Word:
    return Word(rng.choice(letters) for _ in range(rng.randint(0, max_len)))


def random_raw(rng: random.Random, max_len: int = 12, letters=ALL_LETTERS) -> list:
    return [rng.choice(letters) for _ in range(rng.randint(0, max_len))]
