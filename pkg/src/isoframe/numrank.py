"""Numeric rigidity analysis: matrices, rank, mobility, self-stress bases.

Three matrices describe the same linear map in different normalizations:

* R, shape (b, d*j): row for bar (u, v) holds p_u - p_v in the u block
  and p_v - p_u in the v block.
* C: R with each row divided by the bar length (direction cosines).
* A = transpose(C), shape (d*j, b): takes bar tensions to joint loads.

Infinitesimal mechanisms live in null(R) modulo rigid-body motions;
states of self-stress in null(A).  Rank is computed on R, whose entries
are plain coordinate differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InternalInconsistency, NonFiniteEntry, ZeroLengthBar
from .core import Framework

# Singular values below DEFAULT_RANK_TOL * largest are treated as zero.
DEFAULT_RANK_TOL = 1e-10


@dataclass(frozen=True)
class EquilibriumSystem:
    """The three matrix views of one framework's first-order behavior."""

    R: np.ndarray
    C: np.ndarray
    A: np.ndarray
    lengths: np.ndarray


def build_system(f: Framework) -> EquilibriumSystem:
    d, j, b = f.dimension, f.joint_count, f.bar_count
    coords = f.coordinates
    R = np.zeros((b, d * j))
    lengths = np.zeros(b)
    for bar in f.bars:
        u, v = bar.ends
        diff = coords[u] - coords[v]
        length = float(np.linalg.norm(diff))
        if length < 1e-12:
            # unreachable through new_framework, which rejects
            # coincident joints; kept for hand-built Framework objects
            raise ZeroLengthBar(f"bar {bar.id} between joints {u} and {v}")
        R[bar.id, d * u : d * u + d] = diff
        R[bar.id, d * v : d * v + d] = -diff
        lengths[bar.id] = length
    C = R / lengths[:, None] if b else R.copy()
    return EquilibriumSystem(R=R, C=C, A=C.T.copy(), lengths=lengths)


def numeric_rank(M: np.ndarray, tol: float = DEFAULT_RANK_TOL) -> tuple[int, np.ndarray]:
    """Rank by SVD with a relative threshold.

    Returns (rank, singular values descending).  Matrices with no rows
    or no columns have rank 0 and an empty singular value list.
    """
    M = np.asarray(M, dtype=float)
    if not np.all(np.isfinite(M)):
        raise NonFiniteEntry("matrix contains NaN or infinite entries")
    if M.size == 0:
        return 0, np.zeros(0)
    sv = np.linalg.svd(M, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0, sv
    rank = int(np.sum(sv > tol * sv[0]))
    return rank, sv


def rigid_body_basis(f: Framework) -> np.ndarray:
    """Orthonormal basis (rows) of rigid-body velocity fields.

    Translations plus infinitesimal rotations about the centroid.  For
    degenerate placements (all joints collinear in 3D) the span is
    smaller than d(d+1)/2 and the basis reflects that.
    """
    d, j = f.dimension, f.joint_count
    coords = f.coordinates - f.centroid()
    fields: list[np.ndarray] = []
    for axis in range(d):
        t = np.zeros((j, d))
        t[:, axis] = 1.0
        fields.append(t.ravel())
    if d == 2:
        rot = np.stack([-coords[:, 1], coords[:, 0]], axis=1)
        fields.append(rot.ravel())
    else:
        for axis in range(3):
            e = np.zeros(3)
            e[axis] = 1.0
            rot = np.cross(np.broadcast_to(e, coords.shape), coords)
            fields.append(rot.ravel())
    raw = np.stack(fields)
    u, sv, vt = np.linalg.svd(raw, full_matrices=False)
    keep = sv > 1e-12 * sv[0]
    return vt[keep]


def rigid_body_dimension(f: Framework) -> int:
    return rigid_body_basis(f).shape[0]


@dataclass(frozen=True)
class KinematicSummary:
    """Counts derived from the rigidity matrix rank.

    mechanisms = d*j - rank - rigid_body_dim, self_stresses = b - rank;
    both exact integers once the rank is fixed by the tolerance.
    """

    dimension: int
    joint_count: int
    bar_count: int
    rank: int
    rigid_body_dim: int
    mechanisms: int
    self_stresses: int
    tolerance_used: float
    singular_values: np.ndarray = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return self.mechanisms

    @property
    def s(self) -> int:
        return self.self_stresses

    @property
    def is_isostatic(self) -> bool:
        return self.mechanisms == 0 and self.self_stresses == 0


def mobility(f: Framework, tol: float = DEFAULT_RANK_TOL) -> KinematicSummary:
    """Rank the rigidity matrix and report mechanism/self-stress counts."""
    sys = build_system(f)
    rank, sv = numeric_rank(sys.R, tol)
    rb = rigid_body_dimension(f)
    return KinematicSummary(
        dimension=f.dimension,
        joint_count=f.joint_count,
        bar_count=f.bar_count,
        rank=rank,
        rigid_body_dim=rb,
        mechanisms=f.dimension * f.joint_count - rank - rb,
        self_stresses=f.bar_count - rank,
        tolerance_used=tol,
        singular_values=sv,
    )


def nullspace_bases(
    f: Framework, tol: float = DEFAULT_RANK_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal bases for self-stresses and non-trivial mechanisms.

    Returns (stress_basis, mechanism_basis): stress rows have length b
    and satisfy A @ sigma ~ 0; mechanism rows have length d*j, lie in
    null(R), and are orthogonal to every rigid-body field.  Row counts
    must equal the mobility() counts or InternalInconsistency is raised.
    """
    summary = mobility(f, tol)
    sys = build_system(f)
    d, j, b = f.dimension, f.joint_count, f.bar_count

    if b == 0:
        stress = np.zeros((0, 0))
    else:
        u, sv, vt = np.linalg.svd(sys.C, full_matrices=True)
        cutoff = tol * sv[0] if sv.size and sv[0] > 0 else 0.0
        rank_c = int(np.sum(sv > cutoff))
        stress = u[:, rank_c:].T
    if stress.shape[0] != summary.self_stresses:
        raise InternalInconsistency(
            f"stress basis has {stress.shape[0]} rows, expected "
            f"{summary.self_stresses}"
        )

    u, sv, vt = np.linalg.svd(sys.R, full_matrices=True)
    cutoff = tol * sv[0] if sv.size and sv[0] > 0 else 0.0
    rank_r = int(np.sum(sv > cutoff))
    kernel = vt[rank_r:]
    rb = rigid_body_basis(f)
    # project rigid-body motions out of the kernel, then re-orthonormalize;
    # singular values near 1 survive, near 0 were pure rigid-body content
    proj = kernel - (kernel @ rb.T) @ rb
    if proj.size:
        u2, sv2, vt2 = np.linalg.svd(proj, full_matrices=False)
        mech = vt2[sv2 > 0.5]
    else:
        mech = np.zeros((0, d * j))
    if mech.shape[0] != summary.mechanisms:
        raise InternalInconsistency(
            f"mechanism basis has {mech.shape[0]} rows, expected "
            f"{summary.mechanisms}"
        )

    if stress.size:
        res = np.abs(sys.A @ stress.T).max()
        scale = max(np.abs(sys.A).max(), 1.0)
        if res > 10 * tol * scale * b:
            raise InternalInconsistency(f"self-stress residual too large: {res}")
    if mech.size:
        res = np.abs(sys.R @ mech.T).max()
        scale = max(np.abs(sys.R).max(), 1.0)
        if res > 10 * tol * scale * max(d * j, b):
            raise InternalInconsistency(f"mechanism residual too large: {res}")
    return stress, mech
