"""Dense linear-algebra helpers shared by the sector modules.

Operators are plain complex numpy arrays. Rank decisions follow a fixed
policy: eigenvalue counting at threshold 1e-8 for Hermitian idempotents,
singular values at 1e-8 otherwise; identity-type residuals are measured
in the max-abs entry norm against 1e-10.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError

RANK_TOL = 1e-8
RESIDUAL_TOL = 1e-10


def dagger(a: np.ndarray) -> np.ndarray:
    return a.conj().T


def max_abs(a: np.ndarray) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def nullspace(mat: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the kernel, via SVD.

    The economy SVD of a tall matrix already carries every right singular
    vector; only wide systems need the full decomposition.
    """
    mat = np.asarray(mat, dtype=complex)
    if mat.size == 0:
        return np.eye(mat.shape[1], dtype=complex)
    full = mat.shape[0] < mat.shape[1]
    _, s, vh = np.linalg.svd(mat, full_matrices=full)
    rank = int(np.sum(s > tol * max(1.0, s[0] if s.size else 0.0)))
    return dagger(vh[rank:])


def orthonormal_range(a: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the column space, rank-revealing."""
    a = np.asarray(a, dtype=complex)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    rank = int(np.sum(s > tol * max(1.0, s[0] if s.size else 0.0)))
    return u[:, :rank]


def rank_of_hermitian_idempotent(p: np.ndarray, tol: float = RANK_TOL) -> int:
    """Rank of a Hermitian idempotent by eigenvalue counting."""
    eigs = np.linalg.eigvalsh(p)
    return int(np.sum(eigs > tol))


def hermitian_part_residual(a: np.ndarray) -> float:
    return max_abs(a - dagger(a))


def commutant_basis_of(ops: list[np.ndarray], tol: float = RANK_TOL) -> list[np.ndarray]:
    """Orthonormal (Hilbert-Schmidt) basis of {X : [X, A] = 0 for all A}.

    Stacks the Sylvester systems vec([X, A]) = 0 over the given operators
    and extracts the joint null space. Row-major vec convention:
    vec(AXB) = (A kron B^T) vec(X).
    """
    if not ops:
        raise DomainError("empty operator list")
    d = ops[0].shape[0]
    eye = np.eye(d)
    blocks = [np.kron(a, eye) - np.kron(eye, a.T) for a in ops]
    basis = nullspace(np.vstack(blocks), tol)
    return [basis[:, k].reshape(d, d) for k in range(basis.shape[1])]


def commutant_dimension_of(ops: list[np.ndarray], tol: float = RANK_TOL) -> int:
    return len(commutant_basis_of(ops, tol))


def intertwiner_basis(
    ops1: list[np.ndarray], ops2: list[np.ndarray], tol: float = RANK_TOL
) -> np.ndarray:
    """Basis of {V : V A_k = B_k V}, as columns of vec(V), row-major.

    V maps the carrier of ops1 (dim d1) to the carrier of ops2 (dim d2).
    """
    if not ops1 or len(ops1) != len(ops2):
        raise DomainError("operator lists must be nonempty and aligned")
    d1 = ops1[0].shape[0]
    d2 = ops2[0].shape[0]
    eye1 = np.eye(d1)
    eye2 = np.eye(d2)
    blocks = [np.kron(eye2, a.T) - np.kron(b, eye1) for a, b in zip(ops1, ops2)]
    return nullspace(np.vstack(blocks), tol)


def polar_unitary(a: np.ndarray) -> np.ndarray:
    """Unitary factor of the polar decomposition a = U |a|."""
    u, _, vh = np.linalg.svd(a)
    return u @ vh


def normalize_phase(v: np.ndarray) -> np.ndarray:
    """Fix the global phase so the largest-magnitude entry is real positive."""
    idx = np.unravel_index(np.argmax(np.abs(v)), v.shape)
    pivot = v[idx]
    if abs(pivot) == 0.0:
        return v
    return v * (abs(pivot) / pivot)


def intertwining_residual(
    v: np.ndarray, ops1: list[np.ndarray], ops2: list[np.ndarray]
) -> float:
    return max(max_abs(v @ a - b @ v) for a, b in zip(ops1, ops2))


def unitary_intertwiner(
    ops1: list[np.ndarray],
    ops2: list[np.ndarray],
    tol: float = RANK_TOL,
    rng: np.random.Generator | None = None,
) -> tuple[np.ndarray | None, float, str]:
    """Search for a unitary V with V A_k = B_k V for all k.

    Returns (V, residual, evidence). V is None when no invertible
    intertwiner exists; evidence then states what ruled it out. For
    *-closed irreducible actions the polar factor of any invertible
    solution intertwines exactly, which is what the residual certifies.
    """
    basis = intertwiner_basis(ops1, ops2, tol)
    if basis.shape[1] == 0:
        return None, float("inf"), "intertwiner space is zero"
    d1 = ops1[0].shape[0]
    d2 = ops2[0].shape[0]
    if d1 != d2:
        return None, float("inf"), f"carrier dimensions differ ({d1} vs {d2})"
    rng = rng if rng is not None else np.random.default_rng(0)
    candidates = [basis[:, k].reshape(d2, d1) for k in range(basis.shape[1])]
    for _ in range(4):
        coeffs = rng.standard_normal(basis.shape[1]) + 1j * rng.standard_normal(basis.shape[1])
        candidates.append((basis @ coeffs).reshape(d2, d1))
    best: tuple[np.ndarray, float] | None = None
    for cand in candidates:
        smin = np.linalg.svd(cand, compute_uv=False)[-1]
        if smin <= tol:
            continue
        v = normalize_phase(polar_unitary(cand))
        res = intertwining_residual(v, ops1, ops2)
        if best is None or res < best[1]:
            best = (v, res)
    if best is None:
        return None, float("inf"), "no invertible element in the intertwiner space"
    return best[0], best[1], "unitary intertwiner found"
