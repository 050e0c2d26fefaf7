"""Permutation action on (C^m)^{tensor N} and its sector decomposition.

The natural unitary action moves the content of slot i to slot pi(i);
with flat indices taking slot 1 as most significant this makes
U(pi) U(sigma) = U(pi sigma) for the composition (pi sigma)(i) =
pi(sigma(i)). Young symmetrizers, central (isotypic) projectors and an
exact orbit basis of the commutant algebra are all materialized as dense
matrices, guarded by a configurable dimension cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ConsistencyError, DomainError, ResourceLimitError
from .permgroup import (
    Partition,
    Permutation,
    StandardTableau,
    character,
    enumerate_partitions,
    hook_dimension,
    irrep,
    row_col_groups,
    symmetric_group,
)

# Cap on the tensor-space dimension m**N: a dense operator then holds at
# most ~1e6 complex entries.
DEFAULT_DIM_CAP = 1024


@dataclass(frozen=True)
class TensorSpace:
    """Index bookkeeping for (C^m)^{tensor N}, slot 1 most significant."""

    m: int
    N: int

    def __post_init__(self):
        if self.m < 1 or self.N < 1:
            raise DomainError(f"need m >= 1 and N >= 1, got m={self.m}, N={self.N}")

    @property
    def dimension(self) -> int:
        return self.m**self.N

    def digits(self) -> np.ndarray:
        """Array D with D[i, k] = digit of flat index i at slot k+1 (0-based)."""
        idx = np.arange(self.dimension)
        return np.stack(
            [(idx // self.m ** (self.N - 1 - k)) % self.m for k in range(self.N)], axis=1
        )


def _check_cap(dim: int, dim_cap: int | None) -> None:
    cap = DEFAULT_DIM_CAP if dim_cap is None else dim_cap
    if dim > cap:
        raise ResourceLimitError(f"tensor dimension {dim} exceeds cap {cap}")


def _index_map(pi: Permutation, m: int) -> np.ndarray:
    """Flat-index permutation of the slot action: map[i] = image of basis i."""
    space = TensorSpace(m, pi.degree)
    digits = space.digits()
    weights = np.array([m ** (space.N - pi(k + 1)) for k in range(space.N)])
    return digits @ weights


def permutation_operator(pi: Permutation, m: int, dim_cap: int | None = None) -> np.ndarray:
    """Unitary 0/1 matrix of the slot action of pi on (C^m)^{tensor N}."""
    dim = m**pi.degree
    _check_cap(dim, dim_cap)
    mapped = _index_map(pi, m)
    u = np.zeros((dim, dim), dtype=complex)
    u[mapped, np.arange(dim)] = 1.0
    return u


def symmetrizer(N: int, m: int, dim_cap: int | None = None) -> np.ndarray:
    """Orthogonal projector onto the fully symmetric subspace."""
    dim = m**N
    _check_cap(dim, dim_cap)
    acc = np.zeros((dim, dim), dtype=complex)
    for pi in symmetric_group(N):
        acc += permutation_operator(pi, m, dim_cap)
    return acc / math.factorial(N)


def antisymmetrizer(N: int, m: int, dim_cap: int | None = None) -> np.ndarray:
    """Orthogonal projector onto the fully antisymmetric subspace."""
    dim = m**N
    _check_cap(dim, dim_cap)
    acc = np.zeros((dim, dim), dtype=complex)
    for pi in symmetric_group(N):
        acc += pi.sign() * permutation_operator(pi, m, dim_cap)
    return acc / math.factorial(N)


def young_projector(
    tableau: StandardTableau, m: int, dim_cap: int | None = None
) -> np.ndarray:
    """Young symmetrizer of a standard tableau, acting on (C^m)^{tensor N}.

    (N_lambda / N!) * (signed column sum) @ (row sum). Idempotent; for
    mixed tableaux generally not Hermitian, so its image is cut out
    obliquely (use :func:`hermitian_range_projector` for the orthogonal
    projector onto the same image).
    """
    shape = tableau.shape
    n = tableau.size
    dim = m**n
    _check_cap(dim, dim_cap)
    rows, cols = row_col_groups(tableau)
    row_sum = np.zeros((dim, dim), dtype=complex)
    for pi in rows:
        row_sum += permutation_operator(pi, m, dim_cap)
    col_sum = np.zeros((dim, dim), dtype=complex)
    for pi in cols:
        col_sum += pi.sign() * permutation_operator(pi, m, dim_cap)
    return (hook_dimension(shape) / math.factorial(n)) * (col_sum @ row_sum)


def hermitian_range_projector(p: np.ndarray) -> np.ndarray:
    """Orthogonal projector onto range(p), by rank-revealing decomposition."""
    q = linalg.orthonormal_range(p)
    return q @ linalg.dagger(q)


def central_projector(shape: Partition, m: int, dim_cap: int | None = None) -> np.ndarray:
    """Isotypic (central) projector z_lambda = (N_l/N!) sum chi(pi^-1) U(pi)."""
    n = shape.total
    dim = m**n
    _check_cap(dim, dim_cap)
    rep = irrep(shape)
    acc = np.zeros((dim, dim), dtype=complex)
    for pi in symmetric_group(n):
        acc += character(shape, pi.inverse(), rep) * permutation_operator(pi, m, dim_cap)
    return (rep.dimension / math.factorial(n)) * acc


def _generators(N: int) -> list[Permutation]:
    if N == 1:
        return []
    gens = [Permutation.transposition(N, 1, 2)]
    if N > 2:
        gens.append(Permutation.from_cycles(N, tuple(range(1, N + 1))))
    return gens


def _entry_orbits(m: int, N: int) -> list[np.ndarray]:
    """Orbits of simultaneous slot permutation on index pairs (row, col).

    Connected components under the generator maps; equivalently the
    supports of the matrix units of (C^m)^{tensor N} averaged over S_N.
    """
    dim = m**N
    maps = [_index_map(g, m) for g in _generators(N)]
    npairs = dim * dim
    label = np.full(npairs, -1, dtype=np.int64)
    orbits: list[list[int]] = []
    for start in range(npairs):
        if label[start] >= 0:
            continue
        members = [start]
        label[start] = len(orbits)
        stack = [start]
        while stack:
            pair = stack.pop()
            a, b = divmod(pair, dim)
            for mp in maps:
                image = int(mp[a]) * dim + int(mp[b])
                if label[image] < 0:
                    label[image] = len(orbits)
                    members.append(image)
                    stack.append(image)
        orbits.append(members)
    return [np.array(sorted(o)) for o in orbits]


def commutant_basis(m: int, N: int, dim_cap: int | None = None) -> list[np.ndarray]:
    """Orthonormal (Hilbert-Schmidt) basis of {A : [A, U(pi)] = 0 for all pi}.

    Matrix units averaged over the group have disjoint supports given by
    the entry orbits, so the normalized orbit indicators are an exact
    orthonormal basis. Ordered by smallest flat entry index.
    """
    dim = m**N
    _check_cap(dim, dim_cap)
    basis = []
    for orbit in _entry_orbits(m, N):
        mat = np.zeros((dim, dim), dtype=complex)
        rows, cols = np.divmod(orbit, dim)
        mat[rows, cols] = 1.0 / math.sqrt(len(orbit))
        basis.append(mat)
    return basis


def commutant_dimension_nullspace(m: int, N: int, dim_cap: int | None = None) -> int:
    """dim of the commutant from the kernel of the generator commutators.

    The linear system [A, U(g)] = 0 over the generators is a difference
    of entry permutations, so its null space is spanned by orbit
    indicators; for small spaces the kernel is extracted by a dense SVD,
    beyond that its dimension is counted exactly through the orbit
    structure of the same system.
    """
    dim = m**N
    _check_cap(dim, dim_cap)
    gens = _generators(N)
    if not gens:
        return dim * dim
    if dim <= 32:
        return linalg.commutant_dimension_of(
            [permutation_operator(g, m, dim_cap) for g in gens]
        )
    return len(_entry_orbits(m, N))


@dataclass(frozen=True)
class SectorRecord:
    partition: tuple[int, ...]
    irrep_dim: int
    multiplicity: int
    rank: int
    idempotence_residual: float

    def to_dict(self) -> dict:
        return {
            "partition": list(self.partition),
            "irrep_dim": self.irrep_dim,
            "multiplicity": self.multiplicity,
            "rank": self.rank,
            "idempotence_residual": self.idempotence_residual,
        }


@dataclass(frozen=True)
class SectorReport:
    """Isotypic decomposition of (C^m)^{tensor N} under the invariant algebra."""

    m: int
    N: int
    sectors: tuple[SectorRecord, ...]
    commutant_dim: int
    residuals: dict

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "N": self.N,
            "sectors": [s.to_dict() for s in self.sectors],
            "commutant_dim": self.commutant_dim,
            "residuals": dict(self.residuals),
        }


def sector_decomposition(m: int, N: int, dim_cap: int | None = None) -> SectorReport:
    """Ranks and multiplicities of every isotypic sector, with checks.

    Multiplicities come from central-projector ranks (rank / irrep dim,
    which must divide exactly); the two counting identities
    sum(N_l * d_l) = m**N and commutant dim = sum(d_l**2) are enforced.
    """
    dim = m**N
    _check_cap(dim, dim_cap)
    projectors = []
    records = []
    for shape in enumerate_partitions(N):
        z = central_projector(shape, m, dim_cap)
        idem = linalg.max_abs(z @ z - z)
        rank = linalg.rank_of_hermitian_idempotent(z)
        n_lam = hook_dimension(shape)
        if rank % n_lam:
            raise ConsistencyError(
                f"rank {rank} of z_{shape.parts} not divisible by irrep dim {n_lam}"
            )
        records.append(
            SectorRecord(
                partition=shape.parts,
                irrep_dim=n_lam,
                multiplicity=rank // n_lam,
                rank=rank,
                idempotence_residual=idem,
            )
        )
        projectors.append(z)

    rank_sum = sum(r.rank for r in records)
    if rank_sum != dim:
        raise ConsistencyError(f"sector ranks sum to {rank_sum}, expected {dim}")

    commutant_dim = len(commutant_basis(m, N, dim_cap))
    sq_sum = sum(r.multiplicity**2 for r in records)
    if commutant_dim != sq_sum:
        raise ConsistencyError(
            f"commutant dim {commutant_dim} != sum of multiplicity squares {sq_sum}"
        )

    total = sum(projectors)
    completeness = linalg.max_abs(total - np.eye(dim))
    orthogonality = 0.0
    for i in range(len(projectors)):
        for j in range(i + 1, len(projectors)):
            orthogonality = max(orthogonality, linalg.max_abs(projectors[i] @ projectors[j]))
    residuals = {
        "central_idempotence_max": max(r.idempotence_residual for r in records),
        "central_completeness": completeness,
        "central_orthogonality_max": orthogonality,
    }
    return SectorReport(
        m=m,
        N=N,
        sectors=tuple(records),
        commutant_dim=commutant_dim,
        residuals=residuals,
    )


# Arrangements (i, j, k) of the four N=3 sector spans and their signs:
# each generator vector is sum of sign * psi_i x psi_j x psi_k.
_SPAN_PATTERNS = {
    "S": [((1, 2, 3), 1), ((2, 1, 3), 1), ((3, 2, 1), 1), ((3, 1, 2), 1), ((1, 3, 2), 1), ((2, 3, 1), 1)],
    "A": [((1, 2, 3), 1), ((2, 1, 3), -1), ((3, 2, 1), -1), ((3, 1, 2), 1), ((1, 3, 2), -1), ((2, 3, 1), 1)],
    "P": [((1, 2, 3), 1), ((2, 1, 3), 1), ((3, 2, 1), -1), ((3, 1, 2), -1)],
    "P'": [((1, 2, 3), 1), ((3, 2, 1), 1), ((2, 1, 3), -1), ((2, 3, 1), -1)],
}


@dataclass(frozen=True)
class SpanCheckReport:
    """Comparison of the four N=3 sector spans with their projector images."""

    m: int
    ranks: dict
    span_vs_projector: dict
    orthogonal_pairs: dict
    skew_pair_overlap: float
    direct_sum_ok: bool
    mapping_permutations: tuple[tuple[int, ...], ...]
    passed: bool

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "ranks": dict(self.ranks),
            "span_vs_projector": dict(self.span_vs_projector),
            "orthogonal_pairs": dict(self.orthogonal_pairs),
            "skew_pair_overlap": self.skew_pair_overlap,
            "direct_sum_ok": self.direct_sum_ok,
            "mapping_permutations": [list(p) for p in self.mapping_permutations],
            "passed": self.passed,
        }


def _span_projectors(m: int, dim_cap: int | None) -> dict[str, np.ndarray]:
    t_s = StandardTableau(((1, 2, 3),))
    t_a = StandardTableau(((1,), (2,), (3,)))
    t_p = StandardTableau(((1, 2), (3,)))
    t_pp = StandardTableau(((1, 3), (2,)))
    return {
        "S": young_projector(t_s, m, dim_cap),
        "A": young_projector(t_a, m, dim_cap),
        "P": young_projector(t_p, m, dim_cap),
        "P'": young_projector(t_pp, m, dim_cap),
    }


def sector_basis_span_check(
    m: int,
    samples: int | None = None,
    seed: int = 0,
    dim_cap: int | None = None,
    tol: float = linalg.RESIDUAL_TOL,
) -> SpanCheckReport:
    """Build the four N=3 sector spans from random product vectors.

    Verifies, for each sector, that the closed span of its signed
    combinations equals the image of the defining Young projector; that
    the sectors form a direct sum of the whole space with every pair
    orthogonal except (P, P') (those two carry the same partition and
    meet at a fixed nonzero angle); and that some slot permutation maps
    the P span onto the P' span and back.
    """
    dim = m**3
    _check_cap(dim, dim_cap)
    rng = np.random.default_rng(seed)
    n_samples = samples if samples is not None else 2 * dim + 8

    vectors: dict[str, list[np.ndarray]] = {k: [] for k in _SPAN_PATTERNS}
    for _ in range(n_samples):
        psi = rng.standard_normal((3, m)) + 1j * rng.standard_normal((3, m))
        for key, pattern in _SPAN_PATTERNS.items():
            acc = np.zeros(dim, dtype=complex)
            for (i, j, k), sign in pattern:
                acc += sign * np.kron(np.kron(psi[i - 1], psi[j - 1]), psi[k - 1])
            vectors[key].append(acc)

    spans = {k: linalg.orthonormal_range(np.stack(v, axis=1)) for k, v in vectors.items()}
    projectors = _span_projectors(m, dim_cap)
    images = {k: linalg.orthonormal_range(p) for k, p in projectors.items()}

    span_vs_projector = {}
    for key in spans:
        qs, qi = spans[key], images[key]
        span_vs_projector[key] = linalg.max_abs(
            qs @ linalg.dagger(qs) - qi @ linalg.dagger(qi)
        )

    ranks = {k: q.shape[1] for k, q in spans.items()}
    orthogonal_pairs = {}
    for a in spans:
        for b in spans:
            if a < b and {a, b} != {"P", "P'"}:
                orthogonal_pairs[f"{a}|{b}"] = linalg.max_abs(
                    linalg.dagger(spans[a]) @ spans[b]
                )
    overlap = linalg.dagger(spans["P"]) @ spans["P'"]
    skew = float(np.linalg.svd(overlap, compute_uv=False)[0]) if overlap.size else 0.0

    stacked = np.concatenate([spans[k] for k in spans], axis=1)
    direct_sum_ok = bool(
        sum(ranks.values()) == dim and np.linalg.matrix_rank(stacked, tol=1e-8) == dim
    )

    mapping = []
    qp, qpp = spans["P"], spans["P'"]
    if qp.shape[1] == 0:
        mapping_ok = True  # nothing to map
    else:
        proj_p = qp @ linalg.dagger(qp)
        proj_pp = qpp @ linalg.dagger(qpp)
        for pi in symmetric_group(3):
            if pi.is_identity():
                continue
            u = permutation_operator(pi, m, dim_cap)
            if linalg.max_abs(u @ proj_p @ linalg.dagger(u) - proj_pp) < tol:
                mapping.append(pi.images)
        mapping_ok = bool(mapping)

    passed = bool(
        max(span_vs_projector.values()) < tol
        and (not orthogonal_pairs or max(orthogonal_pairs.values()) < tol)
        and direct_sum_ok
        and mapping_ok
    )
    return SpanCheckReport(
        m=m,
        ranks=ranks,
        span_vs_projector=span_vs_projector,
        orthogonal_pairs=orthogonal_pairs,
        skew_pair_overlap=skew,
        direct_sum_ok=direct_sum_ok,
        mapping_permutations=tuple(mapping),
        passed=passed,
    )
