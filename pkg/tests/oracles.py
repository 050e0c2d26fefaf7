"""Independent brute-force oracles used to freeze expected test values.

Everything here deliberately avoids the library's own code paths:
partition and tableau counts come from exhaustive enumeration, sector
multiplicities from the classical product formula over cells, commutants
from dense null spaces.
"""

import itertools
from fractions import Fraction

import numpy as np


def bruteforce_partitions(n: int) -> list[tuple[int, ...]]:
    """All non-increasing positive compositions of n, reverse-lex order."""
    out = []

    def rec(rest, max_part, prefix):
        if rest == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(rest, max_part), 0, -1):
            rec(rest - part, part, prefix + [part])

    rec(n, n, [])
    return out


def bruteforce_standard_tableau_count(shape: tuple[int, ...]) -> int:
    """Count standard fillings by filtering all N! assignments."""
    n = sum(shape)
    cells = [(i, j) for i, row_len in enumerate(shape) for j in range(row_len)]
    count = 0
    for perm in itertools.permutations(range(1, n + 1)):
        grid = {}
        for cell, value in zip(cells, perm):
            grid[cell] = value
        ok = True
        for (i, j), value in grid.items():
            if j + 1 < shape[i] and grid[(i, j + 1)] <= value:
                ok = False
                break
            if i + 1 < len(shape) and shape[i + 1] > j and grid[(i + 1, j)] <= value:
                ok = False
                break
        count += ok
    return count


def hook_lengths(shape: tuple[int, ...]) -> list[list[int]]:
    conj = [sum(1 for p in shape if p > j) for j in range(shape[0])]
    return [
        [(row - j - 1) + (conj[j] - i - 1) + 1 for j in range(row)]
        for i, row in enumerate(shape)
    ]


def weyl_multiplicity(shape: tuple[int, ...], m: int) -> int:
    """Multiplicity of the sector: product over cells (m + j - i) / hook."""
    value = Fraction(1)
    for i, row in enumerate(shape):
        hooks = hook_lengths(shape)[i]
        for j in range(row):
            value *= Fraction(m + j - i, hooks[j])
    assert value.denominator == 1
    return int(value)


def preserving_permutations(n: int, blocks: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """One-line images (1-based) of permutations preserving each block setwise."""
    out = []
    for images in itertools.permutations(range(1, n + 1)):
        ok = True
        for block in blocks:
            if {images[b - 1] for b in block} != set(block):
                ok = False
                break
        if ok:
            out.append(images)
    return out


def dense_commutant_dimension(ops: list[np.ndarray]) -> int:
    """Null-space dimension of the stacked commutator system, dense SVD."""
    d = ops[0].shape[0]
    eye = np.eye(d)
    blocks = [np.kron(a, eye) - np.kron(eye, a.T) for a in ops]
    s = np.linalg.svd(np.vstack(blocks), compute_uv=False)
    rank = int(np.sum(s > 1e-8 * max(1.0, s[0])))
    return d * d - rank


def symmetric_basis_count(m: int) -> int:
    """Dimension of the symmetric subspace of C^m x C^m by enumeration."""
    return sum(1 for i in range(m) for j in range(m) if i <= j)


def antisymmetric_basis_count(m: int) -> int:
    return sum(1 for i in range(m) for j in range(m) if i < j)
