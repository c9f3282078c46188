"""The group of unitriangular elements 1 + u over the nil algebra.

Multiplication follows (1+u)(1+v) = 1 + (u+v+uv) and inversion is the
alternating geometric series, so everything stays exact over F_p.  The
group is isomorphic to UT_m(F_p) and its lower central series is cut out
by the algebra filtration.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .nil_algebra import AlgebraElement

__all__ = ["GroupElement", "commutator"]


class GroupElement:
    """An element 1 + u of the unitriangular group; `u` is the algebra part.

    The inverse is cached on first use since commutator-heavy callers keep
    asking for it.
    """

    __slots__ = ("u", "_inv")

    def __init__(self, u: AlgebraElement):
        self.u = u
        self._inv: GroupElement | None = None

    @property
    def p(self) -> int:
        return self.u.p

    @property
    def m(self) -> int:
        return self.u.m

    @classmethod
    def identity(cls, p: int, m: int) -> "GroupElement":
        return cls(AlgebraElement.zero(p, m))

    @classmethod
    def transvection(cls, p: int, m: int, a: int, b: int, c: int = 1) -> "GroupElement":
        """t_{a,b}(c) = 1 + c e_{a,b}."""
        return cls(AlgebraElement.unit(p, m, a, b, c))

    def is_identity(self) -> bool:
        return self.u.is_zero()

    # group operations -------------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        u, v = self.u, other.u
        return GroupElement(u + v + u * v)

    def inv(self) -> "GroupElement":
        if self._inv is None:
            neg = -self.u
            acc = neg
            term = neg
            for _ in range(2, self.m):
                term = term * neg
                if term.is_zero():
                    break
                acc = acc + term
            out = GroupElement(acc)
            out._inv = self
            self._inv = out
        return self._inv

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return GroupElement.identity(self.p, self.m)
        base = self
        if k < 0:
            base = self.inv()
            k = -k
        out = None
        while k:
            if k & 1:
                out = base if out is None else out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def pow_p_power(self, s: int) -> "GroupElement":
        """The p^s-th power through the path-sum shortcut
        (1+u)^(p^s) = 1 + u^(p^s)."""
        if s < 1:
            raise ValueError("s must be >= 1")
        return GroupElement(self.u.power_via_paths(self.p ** s))

    def central_series_level(self) -> int | float:
        """Depth of the element in the lower central series; infinity for
        the identity."""
        return self.u.filtration_level()

    # matrix / text interchange -----------------------------------------

    def to_matrix(self) -> np.ndarray:
        return np.eye(self.m, dtype=np.int64) + self.u.table

    @classmethod
    def from_matrix(cls, p: int, matrix) -> "GroupElement":
        arr = np.array(matrix, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("expected a square matrix")
        m = arr.shape[0]
        if np.any(np.diagonal(arr) != 1):
            raise ValueError("unit diagonal required")
        if np.any(np.tril(arr, -1) != 0):
            raise ValueError("entries below the diagonal must be zero")
        if np.any(arr < 0) or np.any(arr >= p):
            raise ValueError(f"entries must be residues 0..{p - 1}")
        return cls(AlgebraElement(p, m, np.triu(arr, 1)))

    def to_text(self) -> str:
        """Shared matrix text format: m rows of m space-separated residues."""
        return "\n".join(
            " ".join(str(int(v)) for v in row) for row in self.to_matrix()
        )

    @classmethod
    def from_text(cls, p: int, text: str) -> "GroupElement":
        rows = []
        for line in text.strip().splitlines():
            line = line.strip()
            if not line:
                continue
            try:
                rows.append([int(tok) for tok in line.split()])
            except ValueError as exc:
                raise ValueError(f"bad matrix row {line!r}") from exc
        if not rows:
            raise ValueError("empty matrix text")
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix text must be square")
        return cls.from_matrix(p, rows)

    # plumbing ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.u == other.u

    def __hash__(self):
        return hash((1, self.u))

    def __repr__(self):
        entries = ", ".join(
            f"({a},{b}):{self.u.coeff(a, b)}" for a, b in self.u.support()
        )
        return f"GroupElement(p={self.p}, m={self.m}, 1+{{{entries}}})"


def commutator(elements: Sequence[GroupElement] | Iterable[GroupElement]) -> GroupElement:
    """Left-normed commutator [a, b, c, ...] = [[a, b], c]... where
    [a, b] = a^-1 b^-1 a b."""
    items = list(elements)
    if len(items) < 2:
        raise ValueError("commutator needs at least two elements")
    acc = items[0]
    for h in items[1:]:
        acc = acc.inv() * h.inv() * acc * h
    return acc
