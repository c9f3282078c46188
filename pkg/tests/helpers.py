"""Shared constructors for the test suite: seeded random elements, words,
and exhaustive element lists."""

from __future__ import annotations

import random
from functools import lru_cache

from uteq import (
    GroupElement,
    Word,
    enumerate_group,
)
from uteq.nil_algebra import AlgebraElement
from uteq.words import ConstLetter, XLetter


def rand_algebra(rng: random.Random, p: int, m: int, min_level: int = 1) -> AlgebraElement:
    entries = {
        (a, b): rng.randrange(p)
        for a in range(1, m + 1)
        for b in range(a + 1, m + 1)
        if b - a >= min_level
    }
    return AlgebraElement.from_entries(p, m, entries)


def rand_algebra_at_level(rng: random.Random, p: int, m: int, level: int) -> AlgebraElement:
    """Random element whose filtration level is exactly `level`."""
    while True:
        u = rand_algebra(rng, p, m, min_level=level)
        if u.filtration_level() == level:
            return u


def rand_group(rng: random.Random, p: int, m: int, min_level: int = 1) -> GroupElement:
    return GroupElement(rand_algebra(rng, p, m, min_level=min_level))


@lru_cache(maxsize=None)
def all_group_elements(p: int, m: int) -> tuple[GroupElement, ...]:
    return tuple(enumerate_group(p, m))


def rand_word(rng: random.Random, p: int, n: int, max_letters: int = 6,
              const_names: int = 2) -> Word:
    """Random word of at most max_letters letters over random coefficients."""
    coeffs = {f"g{i}": rand_group(rng, p, n) for i in range(1, const_names + 1)}
    names = sorted(coeffs)
    length = rng.randint(1, max_letters)
    letters = []
    for _ in range(length):
        if rng.random() < 0.5:
            letters.append(XLetter(rng.choice((-1, 1))))
        else:
            letters.append(ConstLetter(rng.choice(names)))
    return Word(letters, coeffs, p=p, n=n)


def word_with_exponent(rng: random.Random, p: int, n: int, eps: int,
                       n_consts: int = 2, extra_pairs: int = 0) -> Word:
    """Random word whose exponent is exactly eps: |eps| letters of the right
    sign plus extra_pairs cancelling pairs, shuffled with constants."""
    coeffs = {f"g{i}": rand_group(rng, p, n) for i in range(1, n_consts + 1)}
    sign = 1 if eps >= 0 else -1
    letters: list = [XLetter(sign)] * abs(eps)
    letters += [XLetter(1), XLetter(-1)] * extra_pairs
    letters += [ConstLetter(name) for name in sorted(coeffs)]
    rng.shuffle(letters)
    return Word(letters, coeffs, p=p, n=n)
