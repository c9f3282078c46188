"""Block-refinement homomorphisms UT_n(F_p) -> UT_m(F_p), m = (n-1)q + 1.

Each generator transvection of the source maps to a product of commuting
transvections of the refined group.  The "phi" variant keeps t_{1,2} as a
single transvection and replicates t_{i,i+1} (i >= 2) across the previous
gap's refinement positions; the "psi" variant is the mirror image, keeping
t_{n-1,n} single and replicating downwards.  Every element of the target
then has a q-th root, which is what the equation solver exploits.

Arbitrary source elements are pushed through by factoring them into
generator transvections first; the factorization is deterministic, and
the two variants are pinned down by fixture tests on concrete images.
"""

from __future__ import annotations

from dataclasses import dataclass

from .modarith import is_prime, power_exponent
from .nil_algebra import AlgebraElement, PositionSet
from .ut_group import GroupElement

__all__ = [
    "PHI",
    "PSI",
    "EmbeddingDescriptor",
    "build_embedding",
    "decompose_to_generators",
]

PHI = "phi"
PSI = "psi"


@dataclass(frozen=True)
class EmbeddingDescriptor:
    """A fully materialized embedding: one image per source generator
    t_{i,i+1}, indexed by i - 1."""

    kind: str
    n: int
    p: int
    q: int
    positions: PositionSet
    generator_images: tuple[GroupElement, ...]

    @property
    def m(self) -> int:
        return self.positions.m

    def apply(self, g: GroupElement) -> GroupElement:
        """Image of an arbitrary source element, via generator
        decomposition followed by multiplying the generator images."""
        if g.p != self.p or g.m != self.n:
            raise ValueError(
                f"element of UT_{g.m}(F_{g.p}) does not match embedding "
                f"source UT_{self.n}(F_{self.p})"
            )
        image = GroupElement.identity(self.p, self.m)
        for i, c in decompose_to_generators(g):
            image = image * self.generator_images[i - 1] ** c
        return image


def build_embedding(kind: str, n: int, p: int, q: int) -> EmbeddingDescriptor:
    """Materialize the descriptor; q must be a power of p (q = 1 gives the
    identity embedding with m = n)."""
    if kind not in (PHI, PSI):
        raise ValueError(f"unknown embedding kind {kind!r}")
    if n < 2:
        raise ValueError("source size must be >= 2")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if power_exponent(q, p) is None:
        raise ValueError(f"resolution {q} is not a power of {p}")
    pos = PositionSet(n, q)
    m = pos.m
    images = []
    for i in range(1, n):
        entries = {(pos.label(i), pos.label(i + 1)): 1}
        if kind == PHI and i >= 2:
            for j in range(1, q):
                entries[(pos.alpha(i - 1, j), pos.alpha(i, j))] = 1
        if kind == PSI and i <= n - 2:
            for j in range(1, q):
                entries[(pos.alpha(i, j), pos.alpha(i + 1, j))] = 1
        images.append(GroupElement(AlgebraElement.from_entries(p, m, entries)))
    return EmbeddingDescriptor(kind, n, p, q, pos, tuple(images))


def decompose_to_generators(g: GroupElement) -> list[tuple[int, int]]:
    """Factor g into generator transvections: multiplying t_{i,i+1}(c) over
    the returned (i, c) pairs, in order, reproduces g exactly.

    Elimination runs superdiagonal by superdiagonal, left to right within
    each; a transvection t_{i,j} with j > i + 1 is expanded through the
    exact relation [t_{i,i+1}(c), t_{i+1,j}(1)] = t_{i,j}(c).
    """
    n, p = g.m, g.p
    pairs: list[tuple[int, int]] = []
    remainder = g
    for d in range(1, n):
        for i in range(1, n - d + 1):
            j = i + d
            c = remainder.u.coeff(i, j)
            if c == 0:
                continue
            _expand_transvection(i, j, c, p, pairs)
            remainder = GroupElement.transvection(p, n, i, j, -c) * remainder
    if not remainder.is_identity():
        raise AssertionError("elimination failed to reach the identity")
    return pairs


def _expand_transvection(i: int, j: int, c: int, p: int, out: list[tuple[int, int]]) -> None:
    c %= p
    if c == 0:
        return
    if j == i + 1:
        out.append((i, c))
        return
    # t_{i,j}(c) = a^-1 b^-1 a b with a = t_{i,i+1}(c), b = t_{i+1,j}(1)
    out.append((i, (-c) % p))
    _expand_transvection(i + 1, j, -1, p, out)
    out.append((i, c))
    _expand_transvection(i + 1, j, 1, p, out)
