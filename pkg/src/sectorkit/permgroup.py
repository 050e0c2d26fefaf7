"""Combinatorics and representation theory of the symmetric group S_N.

Partitions label the irreducible representations, standard Young tableaux
index their bases, and the unitary matrices themselves are built in
Young's orthogonal form. Everything here is exact combinatorics plus
small dense numpy matrices; degrees beyond N ~ 8 are out of scope.

Conventions used throughout the package:

* permutations are stored in one-line form with 1-based images,
  ``pi(i) = images[i-1]``;
* composition is ``(pi * sigma)(i) = pi(sigma(i))``;
* a permutation acts on tensor slots by moving the content of slot ``i``
  to slot ``pi(i)`` (see :mod:`sectorkit.tensor_rep`).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class Permutation:
    """Element of S_N in one-line notation, ``pi(i) = images[i-1]``."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(i) for i in self.images))
        n = len(self.images)
        if n == 0 or sorted(self.images) != list(range(1, n + 1)):
            raise DomainError(f"not a bijection of 1..{n}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise DomainError("cannot compose permutations of different degree")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images, start=1))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles, each starting at its smallest element."""
        seen = [False] * self.degree
        out = []
        for start in range(1, self.degree + 1):
            if seen[start - 1]:
                continue
            cyc = []
            i = start
            while not seen[i - 1]:
                seen[i - 1] = True
                cyc.append(i)
                i = self(i)
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths in non-increasing order; labels the conjugacy class."""
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def sign(self) -> int:
        return -1 if (self.degree - len(self.cycles())) % 2 else 1

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        if not (1 <= i <= n and 1 <= j <= n and i != j):
            raise DomainError(f"invalid transposition ({i} {j}) in S_{n}")
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, n: int, *cycles: tuple[int, ...]) -> "Permutation":
        images = list(range(1, n + 1))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a - 1] = b
        return cls(tuple(images))

    def adjacent_word(self) -> tuple[int, ...]:
        """Write pi as a product of adjacent transpositions s_k = (k, k+1).

        Returns indices (k_1, ..., k_r) with pi = s_{k_1} * ... * s_{k_r};
        bubble-sorting the one-line word records the factors.
        """
        word = list(self.images)
        swaps = []
        changed = True
        while changed:
            changed = False
            for k in range(len(word) - 1):
                if word[k] > word[k + 1]:
                    word[k], word[k + 1] = word[k + 1], word[k]
                    swaps.append(k + 1)
                    changed = True
        # pi * s_{j_1} * ... * s_{j_r} = e, so pi = s_{j_r} * ... * s_{j_1}
        return tuple(reversed(swaps))


def symmetric_group(n: int) -> list[Permutation]:
    """All of S_n in lexicographic one-line order (n! elements)."""
    if n < 1:
        raise DomainError("degree must be >= 1")
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


@dataclass(frozen=True)
class Partition:
    """Non-increasing positive parts; labels an irreducible of S_total."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(int(p) for p in self.parts))
        if not self.parts:
            raise DomainError("empty partition")
        if any(p <= 0 for p in self.parts):
            raise DomainError(f"parts must be positive: {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise DomainError(f"parts must be non-increasing: {self.parts}")

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def hooks(self) -> list[list[int]]:
        """Hook length of every cell, rows as in the frame."""
        conj = self.conjugate().parts
        return [
            [(row - (j + 1)) + (conj[j] - (i + 1)) + 1 for j in range(row)]
            for i, row in enumerate(self.parts)
        ]


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n in reverse-lexicographic order, (n,) first."""
    if n < 1:
        raise DomainError(f"no partitions of {n}")

    def gen(rest: int, max_part: int):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, max_part), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return [Partition(p) for p in gen(n, n)]


@dataclass(frozen=True)
class StandardTableau:
    """Filling of a frame with 1..N, increasing along rows and down columns."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(int(v) for v in r) for r in self.rows))
        shape = self.shape  # validates the frame
        n = shape.total
        entries = [v for row in self.rows for v in row]
        if sorted(entries) != list(range(1, n + 1)):
            raise DomainError(f"entries must be exactly 1..{n}: {self.rows}")
        for row in self.rows:
            if any(a >= b for a, b in zip(row, row[1:])):
                raise DomainError(f"rows must increase left to right: {self.rows}")
        for i in range(1, len(self.rows)):
            for j in range(len(self.rows[i])):
                if self.rows[i - 1][j] >= self.rows[i][j]:
                    raise DomainError(f"columns must increase top to bottom: {self.rows}")

    @property
    def shape(self) -> Partition:
        return Partition(tuple(len(r) for r in self.rows))

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def position(self, value: int) -> tuple[int, int]:
        """(row, col), 0-based, of an entry."""
        for i, row in enumerate(self.rows):
            for j, v in enumerate(row):
                if v == value:
                    return i, j
        raise DomainError(f"{value} not in tableau")

    def content_distance(self, k: int) -> int:
        """Axial distance content(k+1) - content(k), content = col - row."""
        ri, ci = self.position(k)
        rj, cj = self.position(k + 1)
        return (cj - rj) - (ci - ri)

    def swap(self, k: int) -> "StandardTableau | None":
        """Exchange entries k and k+1; None if the result is not standard."""
        rows = [list(r) for r in self.rows]
        (ri, ci), (rj, cj) = self.position(k), self.position(k + 1)
        rows[ri][ci], rows[rj][cj] = k + 1, k
        try:
            return StandardTableau(tuple(tuple(r) for r in rows))
        except DomainError:
            return None

    def relabel(self, pi: Permutation) -> tuple[tuple[int, ...], ...]:
        """Apply pi to every entry; the result need not be standard."""
        return tuple(tuple(pi(v) for v in row) for row in self.rows)


def standard_tableaux(shape: Partition) -> list[StandardTableau]:
    """All standard tableaux of the given shape, in a fixed generation order.

    Values 1..N are placed in increasing order; value v may extend any row
    that is still shorter than the row above it (and than its target length).
    """
    n = shape.total
    results: list[StandardTableau] = []

    def place(v: int, rows: list[list[int]]):
        if v > n:
            results.append(StandardTableau(tuple(tuple(r) for r in rows)))
            return
        for i, target in enumerate(shape.parts):
            if len(rows[i]) < target and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(v)
                place(v + 1, rows)
                rows[i].pop()

    place(1, [[] for _ in shape.parts])
    return results


def hook_dimension(shape: Partition) -> int:
    """Dimension of the irreducible labeled by the shape (hook-length formula)."""
    hook_product = reduce(lambda a, b: a * b, (h for row in shape.hooks() for h in row), 1)
    return math.factorial(shape.total) // hook_product


def row_col_groups(tableau: StandardTableau) -> tuple[list[Permutation], list[Permutation]]:
    """(Row(T), Col(T)): permutations preserving each row / each column setwise."""
    n = tableau.size
    cols = [
        tuple(tableau.rows[i][j] for i in range(len(tableau.rows)) if j < len(tableau.rows[i]))
        for j in range(len(tableau.rows[0]))
    ]

    def subgroup(blocks):
        members = []
        for images_per_block in itertools.product(
            *(itertools.permutations(block) for block in blocks)
        ):
            images = list(range(1, n + 1))
            for block, permuted in zip(blocks, images_per_block):
                for src, dst in zip(block, permuted):
                    images[src - 1] = dst
            members.append(Permutation(tuple(images)))
        return members

    return subgroup([tuple(r) for r in tableau.rows]), subgroup(cols)


class IrrepMatrices:
    """Unitary irreducible representation of S_N in Young's orthogonal form.

    The basis is the list of standard tableaux of the shape; matrices for
    adjacent transpositions follow the axial-distance rule and arbitrary
    elements are products along an adjacent-transposition word. All
    entries are real, every matrix is orthogonal.
    """

    def __init__(self, shape: Partition):
        self.shape = shape
        self.tableaux = standard_tableaux(shape)
        self.dimension = len(self.tableaux)
        self._n = shape.total
        self._index = {t.rows: i for i, t in enumerate(self.tableaux)}
        self._adjacent = [self._adjacent_matrix(k) for k in range(1, self._n)]
        self._cache: dict[tuple[int, ...], np.ndarray] = {}

    def _adjacent_matrix(self, k: int) -> np.ndarray:
        d = self.dimension
        mat = np.zeros((d, d))
        for i, tab in enumerate(self.tableaux):
            dist = tab.content_distance(k)
            mat[i, i] = 1.0 / dist
            swapped = tab.swap(k)
            if swapped is not None:
                j = self._index[swapped.rows]
                mat[j, i] = math.sqrt(1.0 - 1.0 / dist**2)
        return mat

    def matrix(self, pi: Permutation) -> np.ndarray:
        """Representing matrix of pi (complex dtype for uniformity)."""
        if pi.degree != self._n:
            raise DomainError(f"degree mismatch: {pi.degree} vs {self._n}")
        key = pi.images
        if key not in self._cache:
            mat = np.eye(self.dimension)
            for k in pi.adjacent_word():
                mat = mat @ self._adjacent[k - 1]
            self._cache[key] = mat.astype(complex)
        return self._cache[key]


def irrep(shape: Partition) -> IrrepMatrices:
    """The unitary irreducible representation of S_N labeled by the shape."""
    return IrrepMatrices(shape)


def character(shape: Partition, pi: Permutation, rep: IrrepMatrices | None = None) -> float:
    """Trace of the representing matrix; constant on conjugacy classes."""
    rep = rep if rep is not None else irrep(shape)
    return float(np.trace(rep.matrix(pi)).real)
