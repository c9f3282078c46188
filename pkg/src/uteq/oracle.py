"""Brute-force ground truth: exhaustive or seeded-random root search in
small unitriangular groups."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .nil_algebra import AlgebraElement
from .ut_group import GroupElement
from .words import Word, evaluate_word

__all__ = [
    "CapExceededError",
    "SearchSpec",
    "group_order",
    "enumerate_group",
    "brute_solve",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 2 ** 20

EXHAUSTIVE = "exhaustive"
RANDOM = "random"


class CapExceededError(RuntimeError):
    pass


@dataclass(frozen=True)
class SearchSpec:
    """What to search: the word, the ambient group UT_m(F_p), and how."""

    p: int
    m: int
    word: Word
    mode: str = EXHAUSTIVE
    lift: object | None = None
    seed: int = 0
    trials: int = 10000
    cap: int = DEFAULT_CAP


def group_order(p: int, m: int) -> int:
    return p ** (m * (m - 1) // 2)


def _positions(m: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(1, m + 1) for b in range(a + 1, m + 1)]


def enumerate_group(p: int, m: int, cap: int = DEFAULT_CAP):
    """Yield every element of UT_m(F_p) exactly once, ordered
    lexicographically by the row-major coefficient vector (the identity
    comes first)."""
    if group_order(p, m) > cap:
        raise CapExceededError(
            f"UT_{m}(F_{p}) has {group_order(p, m)} elements, above the cap {cap}"
        )
    positions = _positions(m)
    for vector in itertools.product(range(p), repeat=len(positions)):
        entries = {pos: c for pos, c in zip(positions, vector) if c}
        yield GroupElement(AlgebraElement.from_entries(p, m, entries))


def brute_solve(spec: SearchSpec) -> GroupElement | None:
    """First element, in enumeration order, at which the word evaluates to
    the identity; None when the search space holds no root."""
    word = spec.word
    if spec.lift is not None:
        word = word.lifted(spec.lift)
    if word.n != spec.m or word.p != spec.p:
        raise ValueError(
            f"word coefficients live in UT_{word.n}(F_{word.p}), "
            f"search space is UT_{spec.m}(F_{spec.p})"
        )
    if spec.mode == EXHAUSTIVE:
        candidates = enumerate_group(spec.p, spec.m, cap=spec.cap)
    elif spec.mode == RANDOM:
        candidates = _random_candidates(spec)
    else:
        raise ValueError(f"unknown search mode {spec.mode!r}")
    for x in candidates:
        if evaluate_word(word, x).is_identity():
            return x
    return None


def _random_candidates(spec: SearchSpec):
    rng = random.Random(spec.seed)
    positions = _positions(spec.m)
    for _ in range(spec.trials):
        entries = {pos: rng.randrange(spec.p) for pos in positions}
        yield GroupElement(AlgebraElement.from_entries(spec.p, spec.m, entries))
