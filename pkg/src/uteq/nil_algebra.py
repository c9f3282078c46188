"""Arithmetic in the nil (strictly upper triangular) algebra over F_p.

Elements are coefficient tables u[a, b] for linear indices 1 <= a < b <= m
over the prime field F_p.  The support of an element is read as a weighted
DAG on the vertices 1..m, which turns powers into path sums: the (a, b)
coefficient of u^L is the total weight of all a->b paths with exactly L
edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["PositionSet", "AlgebraElement", "SupportPath"]

_PRIMES_SEEN: set[int] = set()


def _check_prime(p: int) -> None:
    if p in _PRIMES_SEEN:
        return
    if p < 2 or any(p % d == 0 for d in range(2, int(math.isqrt(p)) + 1)):
        raise ValueError(f"modulus must be prime, got {p}")
    _PRIMES_SEEN.add(p)


@dataclass(frozen=True)
class PositionSet:
    """Block-refined index set: n integer labels with q - 1 extra positions
    inserted into each of the n - 1 gaps, numbered linearly 1..m where
    m = (n-1)q + 1.

    Label i sits at linear index (i-1)q + 1; the j-th refinement of the gap
    between labels i and i+1 sits at (i-1)q + 1 + j.  For q = 1 the set is
    plainly {1..n}.
    """

    n: int
    q: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("need at least two labels")
        if self.q < 1:
            raise ValueError("resolution must be >= 1")

    @property
    def m(self) -> int:
        return (self.n - 1) * self.q + 1

    def label(self, i: int) -> int:
        """Linear index of integer label i."""
        if not 1 <= i <= self.n:
            raise ValueError(f"label {i} out of range 1..{self.n}")
        return (i - 1) * self.q + 1

    def alpha(self, i: int, j: int) -> int:
        """Linear index of the j-th refinement position inside gap i."""
        if not 1 <= i <= self.n - 1:
            raise ValueError(f"gap {i} out of range 1..{self.n - 1}")
        if not 1 <= j <= self.q - 1:
            raise ValueError(f"offset {j} out of range 1..{self.q - 1}")
        return (i - 1) * self.q + 1 + j

    def block_of(self, k: int) -> tuple[int, int]:
        """Inverse of label/alpha: (i, 0) at label i, otherwise (i, j)."""
        if not 1 <= k <= self.m:
            raise ValueError(f"index {k} out of range 1..{self.m}")
        i, j = divmod(k - 1, self.q)
        return i + 1, j

    def is_label(self, k: int) -> bool:
        return (k - 1) % self.q == 0

    def describe(self, k: int) -> str:
        i, j = self.block_of(k)
        return str(i) if j == 0 else f"a({i},{j})"


@dataclass(frozen=True)
class SupportPath:
    """A path in the support graph: strictly increasing vertices plus the
    product of the traversed edge weights."""

    vertices: tuple[int, ...]
    weight: int

    @property
    def length(self) -> int:
        return len(self.vertices) - 1


class AlgebraElement:
    """Strictly upper triangular coefficient table over F_p.

    Instances are immutable; every operation returns a fresh element.
    Positions are 1-based, matching the linear indices of PositionSet.
    """

    __slots__ = ("p", "m", "_t")

    def __init__(self, p: int, m: int, table: np.ndarray | None = None):
        _check_prime(p)
        if m < 1:
            raise ValueError("size must be positive")
        if table is None:
            table = np.zeros((m, m), dtype=np.int64)
        table.setflags(write=False)
        self.p = p
        self.m = m
        self._t = table

    # construction ---------------------------------------------------

    @classmethod
    def zero(cls, p: int, m: int) -> "AlgebraElement":
        return cls(p, m)

    @classmethod
    def unit(cls, p: int, m: int, a: int, b: int, c: int = 1) -> "AlgebraElement":
        """The matrix unit c * e_{a,b}."""
        cls._check_pos(m, a, b)
        t = np.zeros((m, m), dtype=np.int64)
        t[a - 1, b - 1] = c % p
        return cls(p, m, t)

    @classmethod
    def from_entries(cls, p: int, m: int, entries) -> "AlgebraElement":
        t = np.zeros((m, m), dtype=np.int64)
        for (a, b), c in dict(entries).items():
            cls._check_pos(m, a, b)
            t[a - 1, b - 1] = c % p
        return cls(p, m, t)

    @classmethod
    def from_array(cls, p: int, array) -> "AlgebraElement":
        arr = np.array(array, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("expected a square table")
        if np.any(np.tril(arr) != 0):
            raise ValueError("table must be strictly upper triangular")
        if np.any(arr < 0) or np.any(arr >= p):
            raise ValueError(f"coefficients must be residues 0..{p - 1}")
        return cls(p, arr.shape[0], arr)

    @staticmethod
    def _check_pos(m: int, a: int, b: int) -> None:
        if not (1 <= a < b <= m):
            raise ValueError(f"position ({a},{b}) is not strictly upper in size {m}")

    # access ----------------------------------------------------------

    @property
    def table(self) -> np.ndarray:
        """Read-only view of the 0-based coefficient array."""
        return self._t

    def coeff(self, a: int, b: int) -> int:
        self._check_pos(self.m, a, b)
        return int(self._t[a - 1, b - 1])

    def support(self) -> list[tuple[int, int]]:
        rows, cols = np.nonzero(self._t)
        return sorted((int(a) + 1, int(b) + 1) for a, b in zip(rows, cols))

    def superdiagonal(self, d: int) -> list[int]:
        if not 1 <= d <= self.m - 1:
            raise ValueError(f"superdiagonal {d} out of range 1..{self.m - 1}")
        return [int(v) for v in np.diagonal(self._t, d)]

    def is_zero(self) -> bool:
        return not np.any(self._t)

    # arithmetic ------------------------------------------------------

    def _check_compatible(self, other: "AlgebraElement") -> None:
        if self.p != other.p or self.m != other.m:
            raise ValueError(
                f"incompatible elements: F_{self.p} size {self.m} "
                f"vs F_{other.p} size {other.m}"
            )

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check_compatible(other)
        return AlgebraElement(self.p, self.m, (self._t + other._t) % self.p)

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check_compatible(other)
        return AlgebraElement(self.p, self.m, (self._t - other._t) % self.p)

    def __neg__(self):
        return AlgebraElement(self.p, self.m, (-self._t) % self.p)

    def scale(self, c: int) -> "AlgebraElement":
        return AlgebraElement(self.p, self.m, (self._t * (c % self.p)) % self.p)

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._check_compatible(other)
        return AlgebraElement(self.p, self.m, (self._t @ other._t) % self.p)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.p == other.p and self.m == other.m and np.array_equal(self._t, other._t)

    def __hash__(self):
        return hash((self.p, self.m, self._t.tobytes()))

    def __repr__(self):
        entries = ", ".join(f"({a},{b}):{self.coeff(a, b)}" for a, b in self.support())
        return f"AlgebraElement(p={self.p}, m={self.m}, {{{entries}}})"

    # filtration and paths --------------------------------------------

    def filtration_level(self) -> int | float:
        """Largest i such that the element is a sum of i-fold products,
        i.e. the index of the first nonzero superdiagonal; infinity for
        the zero element."""
        for d in range(1, self.m):
            if np.any(np.diagonal(self._t, d)):
                return d
        return math.inf

    def max_path_length(self) -> int:
        """Longest path (edge count) in the support graph."""
        best = [0] * (self.m + 2)
        for a in range(self.m, 0, -1):
            longest = 0
            row = self._t[a - 1]
            for b in range(a + 1, self.m + 1):
                if row[b - 1]:
                    cand = 1 + best[b]
                    if cand > longest:
                        longest = cand
            best[a] = longest
        return max(best)

    def paths_ending_at(self, beta: int, length: int) -> list[SupportPath]:
        """All support-graph paths with exactly `length` edges ending at
        `beta`, in lexicographic vertex order.

        The backward search memoizes per-vertex path counts so dead
        branches are pruned; graphs whose chains fall short of `length`
        cost almost nothing.
        """
        if not 1 <= beta <= self.m:
            raise ValueError(f"vertex {beta} out of range 1..{self.m}")
        if length < 1:
            raise ValueError("length must be >= 1")
        preds: list[list[int]] = [[] for _ in range(self.m + 1)]
        for a in range(1, self.m + 1):
            row = self._t[a - 1]
            for b in range(a + 1, self.m + 1):
                if row[b - 1]:
                    preds[b].append(a)

        counts: dict[tuple[int, int], int] = {}

        def n_paths(v: int, k: int) -> int:
            if k == 0:
                return 1
            key = (v, k)
            got = counts.get(key)
            if got is None:
                got = sum(n_paths(u, k - 1) for u in preds[v])
                counts[key] = got
            return got

        found: list[tuple[int, ...]] = []

        def grow(v: int, k: int, suffix: tuple[int, ...]) -> None:
            if k == 0:
                found.append(suffix)
                return
            for u in preds[v]:
                if n_paths(u, k - 1):
                    grow(u, k - 1, (u,) + suffix)

        grow(beta, length, (beta,))
        found.sort()
        out = []
        for verts in found:
            w = 1
            for a, b in zip(verts, verts[1:]):
                w = (w * int(self._t[a - 1, b - 1])) % self.p
            out.append(SupportPath(verts, w))
        return out

    def power(self, exponent: int) -> "AlgebraElement":
        """Iterated product of the element with itself (exponent >= 1)."""
        if exponent < 1:
            raise ValueError("exponent must be >= 1")
        acc = self
        for _ in range(exponent - 1):
            acc = acc * self
        return acc

    def power_via_paths(self, exponent: int) -> "AlgebraElement":
        """Same value as power(), assembled from path weights: the (a, b)
        coefficient is the summed weight of all a->b paths with exactly
        `exponent` edges."""
        if exponent < 1:
            raise ValueError("exponent must be >= 1")
        t = np.zeros((self.m, self.m), dtype=np.int64)
        for beta in range(2, self.m + 1):
            for path in self.paths_ending_at(beta, exponent):
                a = path.vertices[0]
                t[a - 1, beta - 1] = (t[a - 1, beta - 1] + path.weight) % self.p
        return AlgebraElement(self.p, self.m, t)
