"""Small GF(2) linear algebra on int bitsets.

A vector is an int whose bit ``i`` is the coordinate at index ``i``.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class Basis:
    """Incremental echelon basis keyed by leading bit."""

    def __init__(self, vectors: Iterable[int] = ()):
        self.pivots: dict[int, int] = {}
        for v in vectors:
            self.add(v)

    def reduce(self, v: int) -> int:
        while v:
            top = v.bit_length() - 1
            p = self.pivots.get(top)
            if p is None:
                return v
            v ^= p
        return 0

    def add(self, v: int) -> bool:
        """Insert ``v``; returns False when it was already in the span."""
        v = self.reduce(v)
        if not v:
            return False
        self.pivots[v.bit_length() - 1] = v
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def __len__(self) -> int:
        return len(self.pivots)


def rank(vectors: Iterable[int]) -> int:
    return len(Basis(vectors))


def in_span(v: int, vectors: Iterable[int]) -> bool:
    return Basis(vectors).contains(v)


def nullspace(columns: Sequence[int]) -> list[int]:
    """Kernel of the linear map sending unit vector ``e_j`` to ``columns[j]``.

    Returned vectors are bitsets over column indices.
    """
    # track combinations alongside the reduced images
    pivots: dict[int, tuple[int, int]] = {}
    kernel = []
    for j, col in enumerate(columns):
        img, combo = col, 1 << j
        while img:
            top = img.bit_length() - 1
            hit = pivots.get(top)
            if hit is None:
                break
            img ^= hit[0]
            combo ^= hit[1]
        if img:
            pivots[img.bit_length() - 1] = (img, combo)
        else:
            kernel.append(combo)
    return kernel


def solve_homogeneous(equations: Sequence[int], nvars: int) -> list[int]:
    """Basis of the solution space of ``<eq, x> = 0`` for every equation."""
    cols = []
    for j in range(nvars):
        c = 0
        for i, eq in enumerate(equations):
            if eq >> j & 1:
                c |= 1 << i
        cols.append(c)
    return nullspace(cols)


def bits(v: int) -> list[int]:
    out = []
    while v:
        low = v & -v
        out.append(low.bit_length() - 1)
        v ^= low
    return out
