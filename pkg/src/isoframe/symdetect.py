"""Detection and classification of point symmetries of a framework.

The pipeline:

1. Center coordinates on the centroid (every symmetry of a finite
   joint set fixes it) and sort joints into shells of equal distance
   from the center.
2. Pick a well-conditioned spanning basis of joint positions, greedily
   preferring joints whose shells are small.
3. Enumerate candidate images of the basis (same shell, matching
   pairwise inner products), solve for the matrix, keep it when it is
   near-orthogonal, snap it to the nearest orthogonal matrix, and
   verify it permutes the joints and the bars.
4. Classify verified matrices into E / C / S / sigma / i with exact
   rational rotation fractions, close the set under multiplication,
   compute conjugacy classes, merge inverse-paired classes, and name
   the group on the Schoenflies flowchart.

All geometric tolerances are relative to the framework diameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .core import Framework
from .errors import (
    ContinuousSymmetry,
    InternalInconsistency,
    NotAGroup,
    ToleranceAmbiguity,
    UnrecognizedGroup,
)

# Relative geometric tolerance: coordinates agree when they differ by
# less than this fraction of the framework diameter.
DEFAULT_GEOM_TOL = 1e-6

# Matrices closer than this (max-abs difference) are the same operation.
_MATCH_TOL = 1e-8

# Matrices that agree to better than this but worse than the match
# tolerance are reported as ambiguous rather than silently separated.
_AMBIGUITY_GATE = 1e-4

# Largest rotation order the angle snapper will recognize.
_MAX_ROTATION_DENOM = 24

_KIND_RANK = {"E": 0, "C": 1, "i": 2, "S": 3, "sigma": 4}
_ROLE_RANK = {"": 0, "h": 1, "v": 2, "v2": 3, "d": 4, "alt": 5, "alt2": 6}


@dataclass(frozen=True)
class IsometryOp:
    """One orthogonal map about the centroid, classified by type.

    kind is "E", "C", "S", "sigma", or "i".  For C and S the angle is
    2*pi*k/n with 1 <= k < n and gcd(k, n) = 1.  axis holds the
    rotation axis for 3D C and S, the unit plane normal for a 3D
    mirror, the unit mirror line direction for a 2D mirror, and None
    otherwise.  Axes are sign-canonicalized: the first component larger
    than 1e-7 in magnitude is positive.
    """

    kind: str
    matrix: np.ndarray = field(repr=False, compare=False)
    n: int = 0
    k: int = 0
    angle: float = 0.0
    axis: tuple[float, ...] | None = None


@dataclass(frozen=True)
class SymmetryAssignment:
    """An isometry together with the joint and bar permutations it induces.

    Permutations map ids to image ids; they are None when the operation
    was supplied bare rather than detected on a framework.
    """

    op: IsometryOp
    joint_perm: tuple[int, ...] | None
    bar_perm: tuple[int, ...] | None


class ClassKey(NamedTuple):
    """Stable identifier of a merged conjugacy class across groups.

    kind and rotation fraction plus a role string that separates
    geometrically distinct classes of the same type, e.g. the two
    mirror families of C4v.  k is stored as min(k, n - k) because a
    class is merged with its inverse class.
    """

    kind: str
    n: int
    k: int
    role: str


@dataclass(frozen=True)
class ConjugacyClass:
    key: ClassKey
    label: str
    size: int
    member_ids: tuple[int, ...]
    rep_id: int


@dataclass(eq=False)
class PointGroupInfo:
    """A finite point group realized on concrete elements.

    elements are sorted canonically with the identity first;
    mult_table[x, y] is the index of element x composed after y, and
    inverse[x] the index of the inverse.  classes are merged with their
    inverse classes so they align one-to-one with real character table
    columns.
    """

    schoenflies: str
    dimension: int
    order: int
    elements: list[SymmetryAssignment]
    classes: list[ConjugacyClass]
    principal_axis: tuple[float, ...] | None
    mult_table: np.ndarray = field(repr=False)
    inverse: np.ndarray = field(repr=False)

    def class_of_element(self, element_id: int) -> ConjugacyClass:
        for cls in self.classes:
            if element_id in cls.member_ids:
                return cls
        raise InternalInconsistency(f"element {element_id} is in no class")


@dataclass(frozen=True)
class UnshiftedCounts:
    """Joints and bars left in place by one symmetry operation.

    subcounts holds the named quantities the per-operation counting
    rules consume; bar_tags records, for each fixed bar, how it sits
    relative to the invariant set of the operation.
    """

    kind: str
    n: int
    k: int
    joints_unshifted: int
    bars_unshifted: int
    fixed_joint_ids: tuple[int, ...]
    fixed_bar_ids: tuple[int, ...]
    subcounts: dict[str, int]
    bar_tags: dict[int, str]


@dataclass(frozen=True)
class OrbitPartition:
    joint_orbits: tuple[tuple[int, ...], ...]
    bar_orbits: tuple[tuple[int, ...], ...]


def _canon_sign(v: np.ndarray) -> tuple[np.ndarray, bool]:
    """Flip v so its first significantly nonzero component is positive."""
    for c in v:
        if abs(c) > 1e-7:
            if c < 0:
                return -v, True
            return v, False
    return v, False


def _angle_to_fraction(angle: float, angle_tol: float) -> tuple[int, int]:
    frac = Fraction(angle / (2 * math.pi)).limit_denominator(_MAX_ROTATION_DENOM)
    n, k = frac.denominator, frac.numerator
    if k < 1 or k >= n or abs(angle - 2 * math.pi * k / n) > angle_tol:
        raise UnrecognizedGroup(
            f"rotation angle {angle:.9f} is not a multiple of 2*pi/n "
            f"for any n up to {_MAX_ROTATION_DENOM}"
        )
    return n, k


def _null_axis(M: np.ndarray) -> np.ndarray:
    """Unit vector spanning the fixed space of M, for M with a 1-eigenvalue."""
    _, sv, vt = np.linalg.svd(M - np.eye(M.shape[0]))
    if sv[-1] > 1e-4:
        raise InternalInconsistency("expected a fixed direction, found none")
    return vt[-1]


def _frozen(M: np.ndarray) -> np.ndarray:
    out = np.array(M, dtype=float)
    out.setflags(write=False)
    return out


def classify_matrix(
    M: np.ndarray, dimension: int, angle_tol: float = 1e-6
) -> IsometryOp:
    """Classify an orthogonal matrix as E, C, S, sigma, or i."""
    M = np.asarray(M, dtype=float)
    if M.shape != (dimension, dimension):
        raise ValueError(f"expected a {dimension}x{dimension} matrix, got {M.shape}")
    if np.abs(M.T @ M - np.eye(dimension)).max() > 1e-6:
        raise ValueError("matrix is not orthogonal")
    Mf = _frozen(M)
    det = float(np.linalg.det(M))

    if dimension == 2:
        if det > 0:
            theta = math.atan2(M[1, 0], M[0, 0]) % (2 * math.pi)
            if min(theta, 2 * math.pi - theta) <= angle_tol:
                return IsometryOp("E", Mf)
            n, k = _angle_to_fraction(theta, angle_tol)
            return IsometryOp("C", Mf, n, k, 2 * math.pi * k / n, None)
        # reflection across the line at angle a: entries are cos 2a, sin 2a
        half = math.atan2(M[1, 0], M[0, 0]) / 2
        line = np.array([math.cos(half), math.sin(half)])
        line, _ = _canon_sign(line)
        return IsometryOp("sigma", Mf, 0, 0, 0.0, tuple(float(c) for c in line))

    if dimension != 3:
        raise ValueError("only 2D and 3D isometries are supported")

    if det > 0:
        cos_a = min(1.0, max(-1.0, (float(np.trace(M)) - 1) / 2))
        skew = np.array(
            [M[2, 1] - M[1, 2], M[0, 2] - M[2, 0], M[1, 0] - M[0, 1]]
        ) / 2
        sin_a = float(np.linalg.norm(skew))
        phi = math.atan2(sin_a, cos_a)
        if phi <= angle_tol:
            return IsometryOp("E", Mf)
        if abs(phi - math.pi) <= angle_tol:
            axis, _ = _canon_sign(_null_axis(M))
            return IsometryOp("C", Mf, 2, 1, math.pi, tuple(float(c) for c in axis))
        axis = skew / sin_a
        axis, flipped = _canon_sign(axis)
        if flipped:
            phi = 2 * math.pi - phi
        n, k = _angle_to_fraction(phi, angle_tol)
        return IsometryOp("C", Mf, n, k, 2 * math.pi * k / n, tuple(float(c) for c in axis))

    # improper: -M is proper; its angle psi gives i (psi=0), a mirror
    # (psi=pi, plane normal = axis), or S with angle psi - pi
    N = -M
    cos_a = min(1.0, max(-1.0, (float(np.trace(N)) - 1) / 2))
    skew = np.array([N[2, 1] - N[1, 2], N[0, 2] - N[2, 0], N[1, 0] - N[0, 1]]) / 2
    sin_a = float(np.linalg.norm(skew))
    psi = math.atan2(sin_a, cos_a)
    if psi <= angle_tol:
        return IsometryOp("i", Mf)
    if abs(psi - math.pi) <= angle_tol:
        normal, _ = _canon_sign(_null_axis(N))
        return IsometryOp("sigma", Mf, 0, 0, 0.0, tuple(float(c) for c in normal))
    axis = skew / sin_a
    axis, flipped = _canon_sign(axis)
    if flipped:
        psi = 2 * math.pi - psi
    phi = (psi - math.pi) % (2 * math.pi)
    n, k = _angle_to_fraction(phi, angle_tol)
    return IsometryOp("S", Mf, n, k, 2 * math.pi * k / n, tuple(float(c) for c in axis))


def _op_sort_key(op: IsometryOp):
    ax = op.axis if op.axis is not None else ()
    return (
        _KIND_RANK[op.kind],
        -op.n,
        op.k,
        round(op.angle, 9),
        tuple(round(float(c), 9) for c in ax),
    )


def _shells(norms: np.ndarray, tol: float) -> list[list[int]]:
    order = np.argsort(norms, kind="stable")
    shells: list[list[int]] = [[int(order[0])]]
    for prev, cur in zip(order[:-1], order[1:]):
        if norms[cur] - norms[prev] <= 2 * tol:
            shells[-1].append(int(cur))
        else:
            shells.append([int(cur)])
    return shells


def _greedy_basis(
    P: np.ndarray, shell_size: dict[int, int], spanrank: int, tol: float
) -> list[int]:
    """Spanning joints, max-residual greedy with a small-shell preference."""
    j = P.shape[0]
    basis: list[int] = []
    Q = np.zeros((0, P.shape[1]))
    while len(basis) < spanrank:
        resid = P - (P @ Q.T) @ Q if Q.shape[0] else P
        rnorm = np.linalg.norm(resid, axis=1)
        rmax = float(rnorm.max())
        if rmax <= tol:
            raise ToleranceAmbiguity(
                "joint positions span a space whose dimension is unclear "
                "at the current geometric tolerance"
            )
        candidates = [i for i in range(j) if rnorm[i] >= 0.5 * rmax and i not in basis]
        pick = min(candidates, key=lambda i: (shell_size[i], i))
        basis.append(pick)
        newdir = resid[pick] / rnorm[pick]
        Q = np.vstack([Q, newdir])
    return basis


def _candidate_images(
    P: np.ndarray,
    basis: list[int],
    shell_of: dict[int, list[int]],
    dot_tol: float,
) -> list[tuple[int, ...]]:
    r = len(basis)
    gram = np.array([[float(P[a] @ P[b]) for b in basis] for a in basis])
    results: list[tuple[int, ...]] = []

    def rec(level: int, chosen: list[int]) -> None:
        if level == r:
            results.append(tuple(chosen))
            return
        for m in shell_of[basis[level]]:
            if m in chosen:
                continue
            if abs(float(P[m] @ P[m]) - gram[level, level]) > dot_tol:
                continue
            if any(
                abs(float(P[chosen[a]] @ P[m]) - gram[a, level]) > dot_tol
                for a in range(level)
            ):
                continue
            chosen.append(m)
            rec(level + 1, chosen)
            chosen.pop()

    rec(0, [])
    return results


def _matrices_for_images(
    P: np.ndarray, basis: list[int], images: tuple[int, ...], d: int
) -> list[np.ndarray]:
    B = np.column_stack([P[i] for i in basis])
    Bp = np.column_stack([P[m] for m in images])
    if len(basis) == d:
        try:
            inv = np.linalg.inv(B)
        except np.linalg.LinAlgError:
            return []
        return [Bp @ inv]
    # rank-deficient span: extend with the normal direction, both signs
    if d == 3:
        normal = np.cross(B[:, 0], B[:, 1])
    else:
        normal = np.array([-B[1, 0], B[0, 0]])
    nn = float(np.linalg.norm(normal))
    if nn == 0.0:
        return []
    normal = normal / nn
    try:
        inv = np.linalg.inv(np.column_stack([B, normal]))
    except np.linalg.LinAlgError:
        return []
    return [np.column_stack([Bp, sgn * normal]) @ inv for sgn in (1.0, -1.0)]


def _find_joint_permutation(
    P: np.ndarray, M: np.ndarray, tol: float
) -> tuple[int, ...] | None:
    j = P.shape[0]
    images = P @ M.T
    perm = [-1] * j
    used = [False] * j
    for i in range(j):
        dists = np.linalg.norm(P - images[i], axis=1)
        hits = np.flatnonzero(dists <= tol)
        if hits.size == 0:
            return None
        if hits.size > 1:
            raise ToleranceAmbiguity(
                f"the image of joint {i} matches {hits.size} joints within "
                f"tolerance {tol:g}; joints are too close together for this "
                "tolerance"
            )
        target = int(hits[0])
        if used[target]:
            raise ToleranceAmbiguity(
                f"two joints map onto joint {target} within tolerance {tol:g}"
            )
        used[target] = True
        perm[i] = target
    return tuple(perm)


def _bar_permutation(f: Framework, joint_perm: tuple[int, ...]) -> tuple[int, ...] | None:
    perm: list[int] = []
    for bar in f.bars:
        u, v = bar.ends
        image = (joint_perm[u], joint_perm[v])
        if image[0] > image[1]:
            image = (image[1], image[0])
        bid = f.pair_to_bar.get(image)
        if bid is None:
            return None
        perm.append(bid)
    return tuple(perm)


def detect_symmetries(
    f: Framework, geom_tol: float | None = None
) -> list[SymmetryAssignment]:
    """All point symmetries of the framework, identity included.

    geom_tol is relative to the framework diameter; positions matching
    to better than geom_tol * diameter are considered equal.  Raises
    ContinuousSymmetry when the joint set has infinitely many
    symmetries (a single joint, or a collinear set in 3D) and
    ToleranceAmbiguity when distinct answers live inside the tolerance.
    """
    rel = DEFAULT_GEOM_TOL if geom_tol is None else float(geom_tol)
    if not 0 < rel < 0.1:
        raise ValueError("geom_tol must lie in (0, 0.1)")
    d, j = f.dimension, f.joint_count
    if j <= 1:
        raise ContinuousSymmetry(
            "a framework with at most one joint has continuous point symmetry"
        )
    P = f.coordinates - f.centroid()
    diam = f.diameter()
    scale = diam if diam > 0 else 1.0
    tol = rel * scale

    sv = np.linalg.svd(P, compute_uv=False)
    spanrank = int(np.sum(sv > tol * math.sqrt(j)))
    if d == 3 and spanrank <= 1:
        raise ContinuousSymmetry(
            "all joints are collinear; every rotation about that line is a symmetry"
        )
    if spanrank == 0:
        raise ContinuousSymmetry("all joints coincide at the centroid")

    norms = np.linalg.norm(P, axis=1)
    shells = _shells(norms, tol)
    shell_of: dict[int, list[int]] = {}
    for shell in shells:
        for i in shell:
            shell_of[i] = shell
    shell_size = {i: len(shell_of[i]) for i in range(j)}

    basis = _greedy_basis(P, shell_size, spanrank, tol)
    dot_tol = 4 * tol * scale

    found: list[tuple[np.ndarray, tuple[int, ...], tuple[int, ...]]] = []
    dedupe_tol = max(_MATCH_TOL, 10 * rel)
    for images in _candidate_images(P, basis, shell_of, dot_tol):
        for M in _matrices_for_images(P, basis, images, d):
            if np.abs(M.T @ M - np.eye(d)).max() > 0.05:
                continue
            u, _, vt = np.linalg.svd(M)
            M = u @ vt
            perm = _find_joint_permutation(P, M, tol)
            if perm is None:
                continue
            bar_perm = _bar_permutation(f, perm)
            if bar_perm is None:
                continue
            duplicate = False
            for Mk, _, _ in found:
                gap = float(np.abs(M - Mk).max())
                if gap <= dedupe_tol:
                    duplicate = True
                    break
                if gap < _AMBIGUITY_GATE:
                    raise ToleranceAmbiguity(
                        f"two candidate symmetries differ by {gap:g}, between "
                        "the identification tolerance and the ambiguity gate"
                    )
            if not duplicate:
                found.append((M, perm, bar_perm))

    angle_tol = max(1e-6, 10 * rel)
    assignments = [
        SymmetryAssignment(classify_matrix(M, d, angle_tol), perm, bar_perm)
        for M, perm, bar_perm in found
    ]
    assignments.sort(key=lambda a: _op_sort_key(a.op))
    if not assignments or assignments[0].op.kind != "E":
        raise InternalInconsistency("the identity was not among the detected symmetries")
    return assignments


def _axis_tuple(axis: Sequence[float] | None) -> tuple[float, ...]:
    if axis is None:
        return ()
    return tuple(round(float(c), 9) for c in axis)


def _parallel(a: Sequence[float], b: Sequence[float], tol: float = 1e-4) -> bool:
    av, bv = np.asarray(a, float), np.asarray(b, float)
    return min(
        float(np.linalg.norm(av - bv)), float(np.linalg.norm(av + bv))
    ) <= tol


def _perpendicular(a: Sequence[float], b: Sequence[float], tol: float = 1e-4) -> bool:
    return abs(float(np.dot(a, b))) <= tol


def _expected_element_order(op: IsometryOp) -> int:
    if op.kind == "E":
        return 1
    if op.kind in ("sigma", "i"):
        return 2
    if op.kind == "C":
        return op.n
    return op.n if op.n % 2 == 0 else 2 * op.n


def _expected_group_order(label: str, dimension: int) -> int:
    fixed = {
        "C1": 1, "Cs": 2, "Ci": 2,
        "T": 12, "Td": 24, "Th": 24,
        "O": 24, "Oh": 48, "I": 60, "Ih": 120,
    }
    if label in fixed:
        return fixed[label]
    head = label[0]
    rest = label[1:]
    suffix = ""
    while rest and not rest[-1].isdigit():
        suffix = rest[-1] + suffix
        rest = rest[:-1]
    n = int(rest)
    if head == "C":
        return n if suffix == "" else 2 * n
    if head == "S":
        return n
    if head == "D":
        return 2 * n if suffix == "" else 4 * n
    raise UnrecognizedGroup(f"no expected order for label {label!r}")


def _axis_groups(
    ops: list[IsometryOp], axis_tol: float = 1e-4
) -> list[tuple[np.ndarray, int]]:
    """Group proper rotations by axis; return (axis, largest order) pairs."""
    groups: list[tuple[np.ndarray, int]] = []
    for op in ops:
        axis = np.asarray(op.axis, float)
        for idx, (gaxis, gorder) in enumerate(groups):
            if _parallel(axis, gaxis, axis_tol):
                groups[idx] = (gaxis, max(gorder, op.n))
                break
        else:
            groups.append((axis, op.n))
    return groups


def _schoenflies_2d(ops: list[IsometryOp]) -> tuple[str, None]:
    rotations = sum(1 for op in ops if op.kind in ("E", "C"))
    mirrors = sum(1 for op in ops if op.kind == "sigma")
    if mirrors == 0:
        return ("C1" if rotations == 1 else f"C{rotations}"), None
    if rotations == 1:
        return "Cs", None
    if mirrors != rotations:
        raise UnrecognizedGroup(
            f"{rotations} rotations with {mirrors} mirrors is not a 2D point group"
        )
    return f"C{rotations}v", None


def _schoenflies_3d(
    ops: list[IsometryOp], axis_tol: float = 1e-4
) -> tuple[str, tuple[float, ...] | None]:
    proper = [op for op in ops if op.kind == "C"]
    sigmas = [op for op in ops if op.kind == "sigma"]
    sops = [op for op in ops if op.kind == "S"]
    has_i = any(op.kind == "i" for op in ops)
    has_improper = bool(sigmas or sops) or has_i

    axes = _axis_groups(proper, axis_tol)
    n_by_order = lambda n: sum(1 for _, o in axes if o == n)

    if n_by_order(5) >= 2:
        if has_improper and not has_i:
            raise UnrecognizedGroup("icosahedral rotations with impropers but no inversion")
        return ("Ih" if has_i else "I"), None
    if n_by_order(4) >= 2:
        if has_improper and not has_i:
            raise UnrecognizedGroup("octahedral rotations with impropers but no inversion")
        return ("Oh" if has_i else "O"), None
    if n_by_order(3) >= 2:
        if has_i:
            return "Th", None
        if has_improper:
            return "Td", None
        return "T", None

    if not proper:
        if has_i:
            return "Ci", None
        if sigmas:
            normal, _ = _canon_sign(np.asarray(sigmas[0].axis, float))
            return "Cs", tuple(float(c) for c in normal)
        return "C1", None

    n_max = max(order for _, order in axes)
    principal_candidates = [axis for axis, order in axes if order == n_max]
    principal = None
    if len(principal_candidates) > 1:
        # a tie only happens for order 2; prefer an axis carrying an S4
        for axis in principal_candidates:
            if any(op.n == 4 and _parallel(op.axis, axis, axis_tol) for op in sops):
                principal = axis
                break
        if principal is None:
            principal = max(principal_candidates, key=lambda a: _axis_tuple(a))
    else:
        principal = principal_candidates[0]
    principal_t = tuple(float(c) for c in principal)

    perp_c2 = sum(
        1
        for axis, order in axes
        if order == 2
        and _perpendicular(axis, principal, axis_tol)
        and not _parallel(axis, principal, axis_tol)
    )
    horizontal = [s for s in sigmas if _parallel(s.axis, principal, axis_tol)]
    vertical = [s for s in sigmas if _perpendicular(s.axis, principal, axis_tol)]

    if perp_c2 == n_max and n_max >= 2:
        if horizontal:
            return f"D{n_max}h", principal_t
        if len(vertical) == n_max:
            return f"D{n_max}d", principal_t
        if sigmas:
            raise UnrecognizedGroup("dihedral rotations with an unfamiliar mirror set")
        return f"D{n_max}", principal_t
    if horizontal:
        return f"C{n_max}h", principal_t
    if len(vertical) == n_max:
        return f"C{n_max}v", principal_t
    if sigmas:
        raise UnrecognizedGroup("rotations with an unfamiliar mirror set")
    if any(
        op.n == 2 * n_max and _parallel(op.axis, principal, axis_tol) for op in sops
    ):
        return f"S{2 * n_max}", principal_t
    return f"C{n_max}", principal_t


def _merged_classes(
    table: np.ndarray, inverse: np.ndarray
) -> list[list[int]]:
    g = table.shape[0]
    class_of = [-1] * g
    raw: list[list[int]] = []
    for i in range(g):
        if class_of[i] >= 0:
            continue
        members = {int(table[table[a, i], inverse[a]]) for a in range(g)}
        idx = len(raw)
        raw.append(sorted(members))
        for m in members:
            class_of[m] = idx
    merged: list[list[int]] = []
    seen: set[int] = set()
    for ci, members in enumerate(raw):
        if ci in seen:
            continue
        inv_ci = class_of[int(inverse[members[0]])]
        if inv_ci == ci:
            merged.append(members)
            seen.add(ci)
        else:
            merged.append(sorted(set(members) | set(raw[inv_ci])))
            seen.add(ci)
            seen.add(inv_ci)
    return merged


def _class_geometry_key(ops: list[IsometryOp]) -> tuple[str, int, int]:
    kinds = {op.kind for op in ops}
    if len(kinds) != 1:
        raise InternalInconsistency("mixed kinds inside one conjugacy class")
    kind = kinds.pop()
    if kind in ("E", "i", "sigma"):
        return kind, 0, 0
    ns = {op.n for op in ops}
    if len(ns) != 1:
        raise InternalInconsistency("mixed rotation orders inside one conjugacy class")
    n = ns.pop()
    ks = {min(op.k, n - op.k) for op in ops}
    if len(ks) != 1:
        raise InternalInconsistency("mixed rotation fractions inside one merged class")
    return kind, n, ks.pop()


def _assign_roles(
    label: str,
    dimension: int,
    ops: list[IsometryOp],
    merged: list[list[int]],
    principal: tuple[float, ...] | None,
    axis_tol: float = 1e-4,
) -> list[str]:
    cubic = label in ("T", "Td", "Th", "O", "Oh", "I", "Ih")
    c4_axes = [op.axis for op in ops if op.kind == "C" and op.n == 4]
    roles = [""] * len(merged)
    alt_classes: list[int] = []
    v_classes: list[int] = []

    for ci, members in enumerate(merged):
        reps = [ops[m] for m in members]
        kind, n, _ = _class_geometry_key(reps)
        if kind in ("E", "i", "S"):
            continue
        if kind == "C":
            if cubic:
                if n == 2 and label in ("O", "Oh"):
                    on_c4 = any(_parallel(reps[0].axis, a, axis_tol) for a in c4_axes)
                    roles[ci] = "" if on_c4 else "alt"
                continue
            if dimension == 2:
                continue
            if principal is None:
                raise InternalInconsistency("axial group without a principal axis")
            if _parallel(reps[0].axis, principal, axis_tol):
                continue
            if n == 2 and _perpendicular(reps[0].axis, principal, axis_tol):
                alt_classes.append(ci)
                continue
            raise InternalInconsistency("rotation axis neither on nor across the principal axis")
        # mirrors
        if label == "Cs" and dimension == 3:
            roles[ci] = "h"
        elif label == "Th":
            roles[ci] = "h"
        elif label == "Oh":
            on_c4 = any(_parallel(reps[0].axis, a, axis_tol) for a in c4_axes)
            roles[ci] = "h" if on_c4 else "d"
        elif label == "Td":
            roles[ci] = "d"
        elif label in ("I", "Ih"):
            roles[ci] = ""
        elif dimension == 2:
            if label == "Cs":
                roles[ci] = "v"
            else:
                v_classes.append(ci)
        else:
            if principal is None:
                raise InternalInconsistency("mirror in a group without a principal axis")
            if _parallel(reps[0].axis, principal, axis_tol):
                roles[ci] = "h"
            elif label.endswith("d"):
                roles[ci] = "d"
            else:
                v_classes.append(ci)

    def class_max_axis(ci: int) -> tuple[float, ...]:
        return max(_axis_tuple(ops[m].axis) for m in merged[ci])

    if alt_classes:
        if len(alt_classes) > 2:
            raise InternalInconsistency("more than two classes of crossing twofold axes")
        for rank, ci in enumerate(
            sorted(alt_classes, key=class_max_axis, reverse=True)
        ):
            roles[ci] = "alt" if rank == 0 else "alt2"

    if v_classes:
        if len(v_classes) > 2:
            raise InternalInconsistency("more than two classes of vertical mirrors")
        if len(v_classes) == 1:
            roles[v_classes[0]] = "v"
        elif label.startswith("D") and alt_classes:
            # the "v" mirrors are those whose planes contain the alt axes;
            # a plane contains an axis when its normal is perpendicular to it
            alt_axis = ops[merged[alt_classes[0]][0]].axis
            first = v_classes[0]
            contains = any(
                _perpendicular(ops[m].axis, alt_axis, axis_tol)
                for m in merged[first]
            )
            roles[first] = "v" if contains else "v2"
            roles[v_classes[1]] = "v2" if contains else "v"
        else:
            ordered = sorted(v_classes, key=class_max_axis, reverse=True)
            roles[ordered[0]] = "v"
            roles[ordered[1]] = "v2"
    return roles


def _class_label(key: ClassKey, size: int) -> str:
    if key.kind == "E":
        return "E"
    if key.kind == "i":
        return "i"
    if key.kind == "sigma":
        name = "sigma" + (f"_{key.role}" if key.role in ("h", "d") else "")
        if key.role == "v":
            name = "sigma_v"
        elif key.role == "v2":
            name = "sigma_v'"
    else:
        name = f"{key.kind}{key.n}"
        if key.k > 1:
            name += f"^{key.k}"
        if key.role == "alt":
            name += "'"
        elif key.role == "alt2":
            name += "''"
    return f"{size}{name}" if size > 1 else name


def classify_group(
    elements: Sequence[SymmetryAssignment | IsometryOp],
    match_tol: float = 1e-5,
) -> PointGroupInfo:
    """Close, verify, and name a finite set of isometries as a point group.

    Accepts bare IsometryOp values or full assignments.  Raises
    NotAGroup when the set is not closed or lacks identity or inverses,
    and UnrecognizedGroup when the closure does not match any supported
    Schoenflies type.
    """
    if not elements:
        raise NotAGroup("no elements supplied")
    assignments = [
        e if isinstance(e, SymmetryAssignment) else SymmetryAssignment(e, None, None)
        for e in elements
    ]
    dims = {a.op.matrix.shape[0] for a in assignments}
    if len(dims) != 1:
        raise ValueError("elements mix dimensions")
    dimension = dims.pop()
    assignments.sort(key=lambda a: _op_sort_key(a.op))
    ops = [a.op for a in assignments]
    if ops[0].kind != "E":
        raise NotAGroup("the identity is not among the elements")
    g = len(ops)
    mats = [op.matrix for op in ops]

    table = np.zeros((g, g), dtype=int)
    stacked = np.stack(mats)
    for x in range(g):
        prods = stacked[x] @ stacked
        dist = np.abs(prods[:, None, :, :] - stacked[None, :, :, :]).max(
            axis=(2, 3)
        )
        hits = dist <= match_tol
        counts = hits.sum(axis=1)
        if (counts == 0).any():
            y = int(np.flatnonzero(counts == 0)[0])
            raise NotAGroup(
                f"the product of elements {x} and {y} is not in the set"
            )
        if (counts > 1).any():
            y = int(np.flatnonzero(counts > 1)[0])
            close = [int(i) for i in np.flatnonzero(hits[y])]
            raise ToleranceAmbiguity(
                f"elements {close} coincide within the matching tolerance"
            )
        table[x] = hits.argmax(axis=1)
    for x in range(g):
        if sorted(table[x]) != list(range(g)) or sorted(table[:, x]) != list(range(g)):
            raise NotAGroup("multiplication by one element is not a permutation")
    inverse = np.zeros(g, dtype=int)
    for x in range(g):
        ys = np.flatnonzero(table[x] == 0)
        if ys.size != 1:
            raise NotAGroup(f"element {x} has no unique inverse")
        inverse[x] = ys[0]

    for i, op in enumerate(ops):
        order, cur = 1, i
        while cur != 0:
            cur = int(table[cur, i])
            order += 1
            if order > 4 * g:
                raise NotAGroup(f"element {i} generates an unbounded cycle")
        expected = _expected_element_order(op)
        if order != expected:
            raise UnrecognizedGroup(
                f"element {i} classified as {op.kind}{op.n or ''} has order "
                f"{order}, expected {expected}"
            )

    # axes inherit the matrix error, so compare them at a tolerance that
    # scales with match_tol; 0.05 rad stays far below any genuine
    # inter-axis angle in a finite point group at desk scale
    axis_tol = min(0.05, max(1e-4, 5.0 * float(match_tol)))

    if dimension == 2:
        label, principal = _schoenflies_2d(ops)
    else:
        label, principal = _schoenflies_3d(ops, axis_tol)
    expected_order = _expected_group_order(label, dimension)
    if expected_order != g:
        raise UnrecognizedGroup(
            f"classified as {label} but the element count is {g}, "
            f"expected {expected_order}"
        )

    merged = _merged_classes(table, inverse)
    roles = _assign_roles(label, dimension, ops, merged, principal, axis_tol)
    classes: list[ConjugacyClass] = []
    for members, role in zip(merged, roles):
        kind, n, k = _class_geometry_key([ops[m] for m in members])
        key = ClassKey(kind, n, k, role)
        classes.append(
            ConjugacyClass(
                key=key,
                label=_class_label(key, len(members)),
                size=len(members),
                member_ids=tuple(members),
                rep_id=min(members),
            )
        )
    classes.sort(
        key=lambda c: (_KIND_RANK[c.key.kind], -c.key.n, c.key.k, _ROLE_RANK[c.key.role])
    )
    keys = [c.key for c in classes]
    if len(set(keys)) != len(keys):
        raise InternalInconsistency(f"duplicate class keys in {label}: {keys}")

    return PointGroupInfo(
        schoenflies=label,
        dimension=dimension,
        order=g,
        elements=assignments,
        classes=classes,
        principal_axis=principal,
        mult_table=table,
        inverse=inverse,
    )


def detect_point_group(
    f: Framework, geom_tol: float | None = None
) -> PointGroupInfo:
    """Detect all symmetries of f and classify them as a point group."""
    rel = DEFAULT_GEOM_TOL if geom_tol is None else float(geom_tol)
    assignments = detect_symmetries(f, geom_tol)
    return classify_group(assignments, match_tol=max(_MATCH_TOL, 10 * rel))


def _fixed_tag_for_bar(
    f: Framework,
    P: np.ndarray,
    op: IsometryOp,
    bar_id: int,
    joint_perm: tuple[int, ...],
    vtol: float,
) -> str:
    u, v = f.bars[bar_id].ends
    swapped = joint_perm[u] == v
    pu, pv = P[u], P[v]
    direction = pu - pv
    mid = (pu + pv) / 2
    kind = op.kind
    if kind == "C":
        if f.dimension == 2:
            if op.n != 2:
                raise InternalInconsistency(
                    f"bar {bar_id} is fixed by a 2D rotation of order {op.n}"
                )
            if not swapped or float(np.linalg.norm(mid)) > vtol:
                raise InternalInconsistency(
                    f"bar {bar_id} fixed by C2 is not centered on the rotation center"
                )
            return "centered_at_origin"
        axis = np.asarray(op.axis, float)
        on_axis = lambda p: float(np.linalg.norm(p - (p @ axis) * axis)) <= vtol
        if not swapped:
            if on_axis(pu) and on_axis(pv):
                return "along_axis"
            raise InternalInconsistency(
                f"bar {bar_id} has endpoints fixed by a rotation but off its axis"
            )
        if op.n != 2:
            raise InternalInconsistency(
                f"bar {bar_id} has endpoints swapped by a rotation of order {op.n} > 2"
            )
        if on_axis(mid) and abs(float(direction @ axis)) <= vtol:
            return "perpendicular_to_axis"
        raise InternalInconsistency(
            f"bar {bar_id} fixed by C2 neither lies along nor crosses the axis"
        )
    if kind == "sigma":
        if f.dimension == 2:
            line = np.asarray(op.axis, float)
            on_line = lambda p: float(np.linalg.norm(p - (p @ line) * line)) <= vtol
            if not swapped:
                if on_line(pu) and on_line(pv):
                    return "in_plane"
                raise InternalInconsistency(
                    f"bar {bar_id} has endpoints fixed by a mirror but off its line"
                )
            if on_line(mid) and abs(float(direction @ line)) <= vtol:
                return "perpendicular_to_plane"
            raise InternalInconsistency(
                f"bar {bar_id} fixed by a mirror neither lies on nor crosses its line"
            )
        normal = np.asarray(op.axis, float)
        in_plane = lambda p: abs(float(p @ normal)) <= vtol
        if not swapped:
            if in_plane(pu) and in_plane(pv):
                return "in_plane"
            raise InternalInconsistency(
                f"bar {bar_id} has endpoints fixed by a mirror but off its plane"
            )
        off_plane = np.linalg.norm(direction - (direction @ normal) * normal)
        if in_plane(mid) and float(off_plane) <= vtol:
            return "perpendicular_to_plane"
        raise InternalInconsistency(
            f"bar {bar_id} fixed by a mirror neither lies in nor crosses its plane"
        )
    if kind == "i":
        if swapped and float(np.linalg.norm(mid)) <= vtol:
            return "centered_at_origin"
        raise InternalInconsistency(
            f"bar {bar_id} fixed by inversion is not centered on the center"
        )
    if kind == "S":
        axis = np.asarray(op.axis, float)
        on_axis = lambda p: float(np.linalg.norm(p - (p @ axis) * axis)) <= vtol
        if swapped and on_axis(pu) and on_axis(pv):
            return "along_axis"
        raise InternalInconsistency(
            f"bar {bar_id} fixed by a rotoreflection does not lie along its axis"
        )
    raise InternalInconsistency(f"no fixed-bar geometry for kind {kind!r}")


def unshifted_counts(
    f: Framework,
    assignment: SymmetryAssignment,
    geom_tol: float | None = None,
) -> UnshiftedCounts:
    """Count and locate the joints and bars one operation leaves in place.

    Every fixed item is verified to sit on the operation's invariant
    set; a failure there means the permutation and the geometry
    disagree, which is a bug, not bad input.
    """
    rel = DEFAULT_GEOM_TOL if geom_tol is None else float(geom_tol)
    op = assignment.op
    joint_perm = assignment.joint_perm
    bar_perm = assignment.bar_perm
    P = f.coordinates - f.centroid()
    diam = f.diameter()
    scale = diam if diam > 0 else 1.0
    tol = rel * scale
    if joint_perm is None:
        joint_perm = _find_joint_permutation(P, op.matrix, tol)
        if joint_perm is None:
            raise ValueError("the isometry does not permute the joints of this framework")
        bar_perm = _bar_permutation(f, joint_perm)
        if bar_perm is None:
            raise ValueError("the isometry does not permute the bars of this framework")
    assert bar_perm is not None

    fixed_joints = tuple(i for i in range(f.joint_count) if joint_perm[i] == i)
    fixed_bars = tuple(b for b in range(f.bar_count) if bar_perm[b] == b)
    vtol = 10 * tol

    # verify fixed joints sit on the invariant set
    for i in (fixed_joints if op.kind != "E" else ()):
        p = P[i]
        if op.kind == "C" and f.dimension == 3:
            axis = np.asarray(op.axis, float)
            err = float(np.linalg.norm(p - (p @ axis) * axis))
        elif op.kind == "C":
            err = float(np.linalg.norm(p))
        elif op.kind == "sigma" and f.dimension == 3:
            err = abs(float(p @ np.asarray(op.axis, float)))
        elif op.kind == "sigma":
            line = np.asarray(op.axis, float)
            err = float(np.linalg.norm(p - (p @ line) * line))
        else:  # i or S fix only the center
            err = float(np.linalg.norm(p))
        if err > vtol:
            raise InternalInconsistency(
                f"joint {i} is reported fixed but sits {err:g} off the invariant set"
            )

    bar_tags: dict[int, str] = {}
    if op.kind != "E":
        for b in fixed_bars:
            bar_tags[b] = _fixed_tag_for_bar(f, P, op, b, joint_perm, vtol)

    jf, bf = len(fixed_joints), len(fixed_bars)
    if op.kind == "E":
        subcounts = {"j": jf, "b": bf}
    elif op.kind == "C" and f.dimension == 2:
        if op.n == 2:
            subcounts = {"j_c": jf, "b_2": bf}
        else:
            if bf:
                raise InternalInconsistency(
                    f"a 2D rotation of order {op.n} > 2 cannot fix a bar"
                )
            subcounts = {"j_c": jf}
    elif op.kind == "C":
        if op.n == 2:
            subcounts = {"j_2": jf, "b_2": bf}
        else:
            subcounts = {"j_n": jf, "b_n": bf}
    elif op.kind == "sigma":
        subcounts = {"j_sigma": jf, "b_sigma": bf}
    elif op.kind == "i":
        subcounts = {"j_c": jf, "b_c": bf}
    else:  # S
        subcounts = {"j_c": jf, "b_nc": bf}

    return UnshiftedCounts(
        kind=op.kind,
        n=op.n,
        k=op.k,
        joints_unshifted=jf,
        bars_unshifted=bf,
        fixed_joint_ids=fixed_joints,
        fixed_bar_ids=fixed_bars,
        subcounts=subcounts,
        bar_tags=bar_tags,
    )


def orbits(f: Framework, group: PointGroupInfo) -> OrbitPartition:
    """Joint and bar orbits under the group action, via union-find."""

    def find(parent: list[int], x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(parent: list[int], a: int, b: int) -> None:
        ra, rb = find(parent, a), find(parent, b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    jp = list(range(f.joint_count))
    bp = list(range(f.bar_count))
    for a in group.elements:
        if a.joint_perm is None or a.bar_perm is None:
            raise ValueError("group elements lack permutations; detect them on a framework")
        for i, img in enumerate(a.joint_perm):
            union(jp, i, img)
        for b, img in enumerate(a.bar_perm):
            union(bp, b, img)

    def collect(parent: list[int]) -> tuple[tuple[int, ...], ...]:
        buckets: dict[int, list[int]] = {}
        for x in range(len(parent)):
            buckets.setdefault(find(parent, x), []).append(x)
        return tuple(tuple(sorted(v)) for _, v in sorted(buckets.items()))

    return OrbitPartition(joint_orbits=collect(jp), bar_orbits=collect(bp))
