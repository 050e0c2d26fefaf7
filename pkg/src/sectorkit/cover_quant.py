"""Finite models of covering-space quantization.

A finite set with a free action of a finite group is the desk-scale
stand-in for a universal cover over its quotient. Group-invariant
kernels on the total set form the observable algebra; for every unitary
irreducible of the deck group the algebra acts irreducibly on the space
of equivariant functions (the constrained realization) and, unitarily
equivalently, on functions over the quotient tensored with the internal
space (the section realization). This module constructs both
realizations, the unitary relating them, and a census verifying the
sector correspondence and its dimension identity.

Measure conventions: kernels act by plain matrix multiplication on
functions over the total set; the inner product on equivariant functions
weights each fiber by 1/|G| so that evaluation along a section is
unitary onto the quotient realization.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import linalg
from .errors import ConsistencyError, DomainError
from .permgroup import Permutation, enumerate_partitions, irrep, symmetric_group


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Finite group presented by its Cayley table.

    cayley[i, j] is the index of the product g_i g_j, composed so that a
    right action satisfies x.(g_i g_j) = (x.g_i).g_j. When the group is a
    symmetric group acting by slot permutation the corresponding
    Permutation objects are attached, which unlocks exact irreducibles.
    """

    cayley: np.ndarray
    labels: tuple[str, ...]
    perms: tuple[Permutation, ...] | None = None

    def __post_init__(self):
        cayley = np.asarray(self.cayley, dtype=np.int64)
        object.__setattr__(self, "cayley", cayley)
        n = cayley.shape[0]
        if cayley.shape != (n, n) or len(self.labels) != n:
            raise DomainError("cayley table and labels are inconsistent")
        ident = [
            i
            for i in range(n)
            if all(cayley[i, j] == j and cayley[j, i] == j for j in range(n))
        ]
        if len(ident) != 1:
            raise DomainError("group must have exactly one identity")
        object.__setattr__(self, "_identity", ident[0])
        inv = np.full(n, -1, dtype=np.int64)
        for i in range(n):
            for j in range(n):
                if cayley[i, j] == ident[0] and cayley[j, i] == ident[0]:
                    inv[i] = j
        if np.any(inv < 0):
            raise DomainError("group element without inverse")
        object.__setattr__(self, "_inverse", inv)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if cayley[cayley[i, j], k] != cayley[i, cayley[j, k]]:
                        raise DomainError("multiplication is not associative")

    @property
    def order(self) -> int:
        return self.cayley.shape[0]

    @property
    def identity(self) -> int:
        return self._identity

    def inverse(self, i: int) -> int:
        return int(self._inverse[i])


@dataclass(frozen=True, eq=False)
class FiniteCover:
    """Free action of a finite group on a finite set, with quotient data.

    action[x, g] is the image of point x under group element g; tau maps
    points to orbit indices; section picks one representative point per
    orbit.
    """

    points: tuple
    group: FiniteGroup
    action: np.ndarray
    tau: np.ndarray
    section: np.ndarray

    def __post_init__(self):
        action = np.asarray(self.action, dtype=np.int64)
        tau = np.asarray(self.tau, dtype=np.int64)
        section = np.asarray(self.section, dtype=np.int64)
        object.__setattr__(self, "action", action)
        object.__setattr__(self, "tau", tau)
        object.__setattr__(self, "section", section)
        npts, ng = action.shape
        if len(self.points) != npts or ng != self.group.order:
            raise DomainError("action table shape mismatch")
        e = self.group.identity
        if not np.array_equal(action[:, e], np.arange(npts)):
            raise DomainError("identity must act trivially")
        for g in range(ng):
            if g != e and np.any(action[:, g] == np.arange(npts)):
                raise DomainError(f"action is not free: element {self.group.labels[g]}")
            for h in range(ng):
                if not np.array_equal(
                    action[action[:, g], h], action[:, self.group.cayley[g, h]]
                ):
                    raise DomainError("action is incompatible with the group law")
        nbase = int(tau.max()) + 1 if npts else 0
        if npts != nbase * ng:
            raise DomainError("|total| must equal |base| * |group|")
        if not np.array_equal(tau[section], np.arange(nbase)):
            raise DomainError("section must pick one point per orbit")
        for x in range(npts):
            if tau[action[x, 0]] != tau[x] or len({int(t) for t in tau[action[x]]}) != 1:
                raise DomainError("tau is not constant on orbits")

    @property
    def total_size(self) -> int:
        return len(self.points)

    @property
    def base_size(self) -> int:
        return len(self.section)

    @property
    def base_points(self) -> tuple:
        """The quotient, represented by the section's points."""
        return tuple(self.points[s] for s in self.section)

    def point_of(self, base_index: int, group_index: int) -> int:
        """Index of section(q) . g."""
        return int(self.action[self.section[base_index], group_index])

    def deck_element(self) -> np.ndarray:
        """h_of[x]: the unique h with section(tau(x)) . h = x."""
        h_of = np.full(self.total_size, -1, dtype=np.int64)
        for q in range(self.base_size):
            for g in range(self.group.order):
                h_of[self.action[self.section[q], g]] = g
        return h_of


def cover_from_action(
    points,
    action_perms,
    group_labels: tuple[str, ...] | None = None,
    perms: tuple[Permutation, ...] | None = None,
    section: np.ndarray | None = None,
) -> FiniteCover:
    """Build a cover from the action permutations of the deck group.

    Every group element is given as the tuple of image indices of the
    points; the list must be closed under composition, contain the
    identity, and act freely.
    """
    points = tuple(points)
    maps = [tuple(int(i) for i in p) for p in action_perms]
    npts = len(points)
    for p in maps:
        if sorted(p) != list(range(npts)):
            raise DomainError(f"not a permutation of the point set: {p}")
    index = {p: i for i, p in enumerate(maps)}
    if len(index) != len(maps):
        raise DomainError("duplicate group elements")
    ng = len(maps)
    cayley = np.zeros((ng, ng), dtype=np.int64)
    for i, pi in enumerate(maps):
        for j, pj in enumerate(maps):
            composed = tuple(pj[x] for x in pi)  # x . (g_i g_j) = (x . g_i) . g_j
            if composed not in index:
                raise DomainError("action maps are not closed under composition")
            cayley[i, j] = index[composed]
    labels = group_labels if group_labels is not None else tuple(str(p) for p in maps)
    group = FiniteGroup(cayley=cayley, labels=tuple(labels), perms=perms)

    action = np.array(maps, dtype=np.int64).T  # action[x, g]
    tau = np.full(npts, -1, dtype=np.int64)
    orbit_reps = []
    for x in range(npts):
        if tau[x] >= 0:
            continue
        orbit = sorted({int(a) for a in action[x]})
        for y in orbit:
            tau[y] = len(orbit_reps)
        orbit_reps.append(min(orbit))
    if section is None:
        section = np.array(orbit_reps, dtype=np.int64)
    return FiniteCover(
        points=points, group=group, action=action, tau=tau, section=np.asarray(section)
    )


def symmetric_cover(q, n_particles: int) -> FiniteCover:
    """Injective tuples over a finite set, with the slot permutation action.

    The total set holds all ordered injective n-tuples of points of the
    base set (removing the extended diagonal is what keeps the action
    free); the quotient is the n-element subsets, the canonical section
    picks the sorted tuple.
    """
    labels = tuple(range(q)) if isinstance(q, int) else tuple(q)
    n = n_particles
    if n < 1:
        raise DomainError("need at least one particle")
    if len(labels) < n:
        raise DomainError(f"need |Q| >= N, got |Q|={len(labels)}, N={n}")
    tuples = list(itertools.permutations(range(len(labels)), n))
    index = {t: i for i, t in enumerate(tuples)}
    perms = tuple(symmetric_group(n))
    action_perms = [
        tuple(index[tuple(t[pi(i) - 1] for i in range(1, n + 1))] for t in tuples)
        for pi in perms
    ]
    points = tuple(tuple(labels[i] for i in t) for t in tuples)
    return cover_from_action(
        points,
        action_perms,
        group_labels=tuple(str(pi.images) for pi in perms),
        perms=perms,
    )


def randomize_section(cover: FiniteCover, seed: int = 0) -> FiniteCover:
    """Same cover with a uniformly random representative per orbit."""
    rng = np.random.default_rng(seed)
    section = np.array(
        [int(rng.choice(cover.action[cover.section[q]])) for q in range(cover.base_size)],
        dtype=np.int64,
    )
    return replace(cover, section=section)


def cover_to_json(cover: FiniteCover) -> dict:
    return {
        "points": [str(p) for p in cover.points],
        "group": [[int(x) for x in cover.action[:, g]] for g in range(cover.group.order)],
        "group_labels": list(cover.group.labels),
        "section": [int(s) for s in cover.section],
    }


def cover_from_json(data) -> FiniteCover:
    """Load a cover from its JSON description (or a path to one)."""
    if isinstance(data, (str, Path)):
        data = json.loads(Path(data).read_text())
    section = data.get("section")
    return cover_from_action(
        tuple(data["points"]),
        [tuple(g) for g in data["group"]],
        group_labels=tuple(data["group_labels"]) if "group_labels" in data else None,
        section=np.asarray(section, dtype=np.int64) if section is not None else None,
    )


def kernel_to_json(kernel: "InvariantKernel") -> dict:
    """Kernel entries as [re, im] pairs, row by row over the point set."""
    return {
        "matrix": [
            [[float(z.real), float(z.imag)] for z in row] for row in kernel.matrix
        ]
    }


def kernel_from_json(cover: FiniteCover, data) -> "InvariantKernel":
    """Load an invariant kernel for a cover (dict or path); validated."""
    if isinstance(data, (str, Path)):
        data = json.loads(Path(data).read_text())
    matrix = np.array(
        [[complex(re, im) for re, im in row] for row in data["matrix"]], dtype=complex
    )
    return InvariantKernel(cover=cover, matrix=matrix)


@dataclass(frozen=True, eq=False)
class GroupRep:
    """Unitary representation of a FiniteGroup, matrices per element."""

    group: FiniteGroup
    matrices: tuple[np.ndarray, ...]
    label: str

    def __post_init__(self):
        mats = tuple(np.asarray(mat, dtype=complex) for mat in self.matrices)
        object.__setattr__(self, "matrices", mats)
        if len(mats) != self.group.order:
            raise DomainError("one matrix per group element required")
        d = mats[0].shape[0]
        eye = np.eye(d)
        for i, mat in enumerate(mats):
            if mat.shape != (d, d):
                raise DomainError("matrices must share one square shape")
            if linalg.max_abs(mat @ linalg.dagger(mat) - eye) > 1e-9:
                raise DomainError(f"matrix {i} is not unitary")
        for i in range(len(mats)):
            for j in range(len(mats)):
                prod = mats[i] @ mats[j]
                if linalg.max_abs(prod - mats[self.group.cayley[i, j]]) > 1e-9:
                    raise DomainError("matrices do not respect the group law")

    @property
    def dimension(self) -> int:
        return self.matrices[0].shape[0]


def _regular_representation(group: FiniteGroup) -> list[np.ndarray]:
    n = group.order
    mats = []
    for g in range(n):
        mat = np.zeros((n, n), dtype=complex)
        mat[group.cayley[g], np.arange(n)] = 1.0
        mats.append(mat)
    return mats


def _regular_irreps(group: FiniteGroup, seed: int) -> list[GroupRep]:
    """All irreducibles by splitting the regular representation.

    A random Hermitian matrix averaged over conjugation lands in the
    commutant; generically its eigenspaces are irreducible invariant
    subspaces, each irreducible appearing (dim) times. Candidates are
    validated (invariance, unitarity, group law, scalar commutant) and
    deduplicated by character; failures retry with a fresh sample.
    """
    n = group.order
    reg = _regular_representation(group)
    for attempt in range(20):
        rng = np.random.default_rng(seed + attempt)
        h = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = h + linalg.dagger(h)
        avg = sum(r @ h @ linalg.dagger(r) for r in reg) / n
        eigvals, eigvecs = np.linalg.eigh(avg)
        clusters: list[list[int]] = [[0]]
        for i in range(1, n):
            if eigvals[i] - eigvals[i - 1] < 1e-6:
                clusters[-1].append(i)
            else:
                clusters.append([i])
        found: list[tuple[np.ndarray, GroupRep]] = []
        ok = True
        for cluster in clusters:
            basis = eigvecs[:, cluster]
            mats = []
            for r in reg:
                rb = r @ basis
                if linalg.max_abs(rb - basis @ (linalg.dagger(basis) @ rb)) > 1e-8:
                    ok = False
                    break
                mats.append(linalg.dagger(basis) @ rb)
            if not ok:
                break
            if linalg.commutant_dimension_of(mats) != 1:
                ok = False
                break
            try:
                rep = GroupRep(group=group, matrices=tuple(mats), label="")
            except DomainError:
                ok = False
                break
            chars = np.array([np.trace(mat) for mat in mats])
            found.append((chars, rep))
        if not ok:
            continue
        distinct: list[tuple[np.ndarray, GroupRep]] = []
        for chars, rep in found:
            if not any(np.allclose(chars, c, atol=1e-6) for c, _ in distinct):
                distinct.append((chars, rep))
        if sum(rep.dimension**2 for _, rep in distinct) != n:
            continue
        distinct.sort(key=lambda item: (item[1].dimension, np.round(item[0].real, 6).tolist()))
        return [
            GroupRep(group=group, matrices=rep.matrices, label=f"chi{i}")
            for i, (_, rep) in enumerate(distinct)
        ]
    raise ConsistencyError("failed to split the regular representation")


def irreps_of(group: FiniteGroup, seed: int = 0) -> list[GroupRep]:
    """All inequivalent unitary irreducibles of the deck group.

    Symmetric groups attached through `perms` get the exact orthogonal
    representations labeled by partitions; any other group is split
    numerically through its regular representation.
    """
    if group.perms is not None:
        n = group.perms[0].degree
        out = []
        for shape in enumerate_partitions(n):
            rep = irrep(shape)
            out.append(
                GroupRep(
                    group=group,
                    matrices=tuple(rep.matrix(pi) for pi in group.perms),
                    label=str(shape.parts),
                )
            )
        return out
    return _regular_irreps(group, seed)


def trivial_rep(group: FiniteGroup) -> GroupRep:
    one = np.ones((1, 1), dtype=complex)
    return GroupRep(group=group, matrices=tuple(one for _ in range(group.order)), label="trivial")


@dataclass(frozen=True, eq=False)
class InvariantKernel:
    """Kernel on the total set, invariant under the diagonal deck action."""

    cover: FiniteCover
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", mat)
        npts = self.cover.total_size
        if mat.shape != (npts, npts):
            raise DomainError("kernel must be square over the total set")
        action = self.cover.action
        for g in range(self.cover.group.order):
            moved = mat[np.ix_(action[:, g], action[:, g])]
            err = np.abs(moved - mat)
            worst = float(err.max()) if err.size else 0.0
            if worst > 1e-10:
                x, y = np.unravel_index(int(err.argmax()), err.shape)
                raise DomainError(
                    "kernel is not invariant: "
                    f"A({x}.g, {y}.g) != A({x}, {y}) for g={self.cover.group.labels[g]}"
                )

    def adjoint(self) -> "InvariantKernel":
        return InvariantKernel(cover=self.cover, matrix=linalg.dagger(self.matrix))


def random_invariant_kernel(
    cover: FiniteCover, rng: np.random.Generator, hermitian: bool = False
) -> InvariantKernel:
    """Group-average of a random dense kernel; exactly invariant."""
    npts = cover.total_size
    raw = rng.standard_normal((npts, npts)) + 1j * rng.standard_normal((npts, npts))
    acc = np.zeros_like(raw)
    for g in range(cover.group.order):
        sel = cover.action[:, g]
        acc += raw[np.ix_(sel, sel)]
    acc /= cover.group.order
    if hermitian:
        acc = (acc + linalg.dagger(acc)) / 2
    return InvariantKernel(cover=cover, matrix=acc)


def kernel_orbit_basis(cover: FiniteCover) -> list[np.ndarray]:
    """Orthonormal basis of the invariant kernels, one per entry orbit.

    The diagonal action on index pairs is free, so there are exactly
    |base|**2 * |group| orbits; each normalized indicator is one basis
    kernel.
    """
    npts = cover.total_size
    action = cover.action
    npairs = npts * npts
    label = np.full(npairs, -1, dtype=np.int64)
    basis = []
    for start in range(npairs):
        if label[start] >= 0:
            continue
        a, b = divmod(start, npts)
        members = sorted(
            int(action[a, g]) * npts + int(action[b, g]) for g in range(cover.group.order)
        )
        for mem in members:
            label[mem] = len(basis)
        mat = np.zeros((npts, npts), dtype=complex)
        rows, cols = np.divmod(np.array(members), npts)
        mat[rows, cols] = 1.0 / math.sqrt(len(members))
        basis.append(mat)
    return basis


def constrained_space(cover: FiniteCover, rep: GroupRep) -> np.ndarray:
    """Orthonormal basis (columns) of the equivariant functions.

    Functions psi with psi(x.h) = U(h^-1) psi(x), encoded as vectors with
    index (point, component); the 1/sqrt(|G|) scaling realizes the
    quotient measure so that the columns are orthonormal and evaluation
    along the section is unitary.
    """
    if rep.group is not cover.group:
        raise DomainError("representation must belong to the cover's deck group")
    dchi = rep.dimension
    ng = cover.group.order
    h_of = cover.deck_element()
    basis = np.zeros((cover.total_size * dchi, cover.base_size * dchi), dtype=complex)
    scale = 1.0 / math.sqrt(ng)
    for x in range(cover.total_size):
        q = int(cover.tau[x])
        u_inv = rep.matrices[cover.group.inverse(int(h_of[x]))]
        basis[x * dchi : (x + 1) * dchi, q * dchi : (q + 1) * dchi] = u_inv * scale
    return basis


def constrained_action(
    kernel: InvariantKernel, rep: GroupRep, tol: float = linalg.RESIDUAL_TOL
) -> np.ndarray:
    """Matrix of the kernel action restricted to the equivariant functions.

    The kernel acts as (matrix x identity) on vector-valued functions;
    invariance keeps the constrained subspace stable, which is checked
    (leakage must stay below tol).
    """
    basis = constrained_space(kernel.cover, rep)
    big = np.kron(kernel.matrix, np.eye(rep.dimension))
    image = big @ basis
    restricted = linalg.dagger(basis) @ image
    leakage = linalg.max_abs(image - basis @ restricted)
    if leakage > tol:
        raise ConsistencyError(f"constrained subspace leaks: {leakage:.2e}")
    return restricted


def section_action(kernel: InvariantKernel, rep: GroupRep) -> np.ndarray:
    """Kernel action transported to functions on the quotient.

    On psi: base -> internal space,
    (A psi)(q) = sum_{h, q'} A(sigma(q), sigma(q').h) U(h^-1) psi(q');
    this is the conjugate of the constrained action by the section
    evaluation unitary.
    """
    cover = kernel.cover
    if rep.group is not cover.group:
        raise DomainError("representation must belong to the cover's deck group")
    dchi = rep.dimension
    nbase = cover.base_size
    ng = cover.group.order
    mat = np.zeros((nbase * dchi, nbase * dchi), dtype=complex)
    for q in range(nbase):
        row_pt = int(cover.section[q])
        for qp in range(nbase):
            block = np.zeros((dchi, dchi), dtype=complex)
            for h in range(ng):
                col_pt = cover.point_of(qp, h)
                block += kernel.matrix[row_pt, col_pt] * rep.matrices[cover.group.inverse(h)]
            mat[q * dchi : (q + 1) * dchi, qp * dchi : (qp + 1) * dchi] = block
    return mat


def realization_unitary(cover: FiniteCover, rep: GroupRep) -> np.ndarray:
    """Unitary from the constrained to the quotient realization.

    Evaluation along the section, expressed in the coordinates provided
    by constrained_space: U psi = psi(sigma(.)). Conjugation by it turns
    every constrained action into the matching section action.
    """
    dchi = rep.dimension
    basis = constrained_space(cover, rep)
    rows = [int(cover.section[q]) * dchi + i for q in range(cover.base_size) for i in range(dchi)]
    return math.sqrt(cover.group.order) * basis[rows, :]


@dataclass(frozen=True)
class SectorCensusRecord:
    label: str
    internal_dim: int
    carrier_dim: int
    commutant_dim: int

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "internal_dim": self.internal_dim,
            "carrier_dim": self.carrier_dim,
            "commutant_dim": self.commutant_dim,
        }


@dataclass(frozen=True)
class SectorCensusReport:
    """Verification record for the sector correspondence on one cover."""

    total_size: int
    base_size: int
    group_order: int
    kernel_space_dim: int
    sectors: tuple[SectorCensusRecord, ...]
    pairwise_intertwiner_dims: dict
    dimension_identity_ok: bool
    intertwining_residual_max: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "total_size": self.total_size,
            "base_size": self.base_size,
            "group_order": self.group_order,
            "kernel_space_dim": self.kernel_space_dim,
            "sectors": [s.to_dict() for s in self.sectors],
            "pairwise_intertwiner_dims": dict(self.pairwise_intertwiner_dims),
            "dimension_identity_ok": self.dimension_identity_ok,
            "intertwining_residual_max": self.intertwining_residual_max,
            "passed": self.passed,
        }


def sector_census(
    cover: FiniteCover, seed: int = 0, n_check_kernels: int = 5
) -> SectorCensusReport:
    """Verify the sector correspondence for one cover.

    For every irreducible of the deck group the constrained action must
    have scalar commutant, distinct irreducibles must admit no
    intertwiner, the squared carrier dimensions must exhaust the
    invariant-kernel space, and the realization unitary must conjugate
    the constrained action into the section action on random kernels.
    """
    reps = irreps_of(cover.group, seed=seed)
    kernels = [InvariantKernel(cover=cover, matrix=mat) for mat in kernel_orbit_basis(cover)]
    kernel_dim = len(kernels)
    expected_kernel_dim = cover.base_size**2 * cover.group.order
    if kernel_dim != expected_kernel_dim:
        raise ConsistencyError(
            f"kernel orbit count {kernel_dim} != {expected_kernel_dim}"
        )

    actions: list[list[np.ndarray]] = []
    records = []
    for rep in reps:
        acts = [constrained_action(k, rep) for k in kernels]
        actions.append(acts)
        records.append(
            SectorCensusRecord(
                label=rep.label,
                internal_dim=rep.dimension,
                carrier_dim=cover.base_size * rep.dimension,
                commutant_dim=linalg.commutant_dimension_of(acts),
            )
        )

    pairwise = {}
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            dim = linalg.intertwiner_basis(actions[i], actions[j]).shape[1]
            pairwise[f"{reps[i].label}|{reps[j].label}"] = dim

    identity_ok = sum(r.carrier_dim**2 for r in records) == kernel_dim

    rng = np.random.default_rng(seed)
    residual = 0.0
    for _ in range(n_check_kernels):
        kernel = random_invariant_kernel(cover, rng)
        for rep in reps:
            u = realization_unitary(cover, rep)
            conj = u @ constrained_action(kernel, rep) @ linalg.dagger(u)
            residual = max(residual, linalg.max_abs(conj - section_action(kernel, rep)))

    passed = (
        identity_ok
        and all(r.commutant_dim == 1 for r in records)
        and all(v == 0 for v in pairwise.values())
        and residual < linalg.RESIDUAL_TOL
    )
    return SectorCensusReport(
        total_size=cover.total_size,
        base_size=cover.base_size,
        group_order=cover.group.order,
        kernel_space_dim=kernel_dim,
        sectors=tuple(records),
        pairwise_intertwiner_dims=pairwise,
        dimension_identity_ok=identity_ok,
        intertwining_residual_max=residual,
        passed=passed,
    )
