"""Symmetry detection: group labels, class tables, permutation algebra."""

from __future__ import annotations

import math
import random

import numpy as np
import pytest

from isoframe.constructgen import fig2_examples, platonic
from isoframe.core import new_framework
from isoframe.errors import ContinuousSymmetry, ToleranceAmbiguity
from isoframe.symdetect import (
    SymmetryAssignment,
    classify_matrix,
    detect_point_group,
    detect_symmetries,
    orbits,
    unshifted_counts,
)

from oracles import brute_fixed_counts

# Per-class (label, joints unshifted, bars unshifted), in detected class
# order.  Frozen from an independent brute-force pass: apply each class
# representative's matrix to the coordinates and count nearest-image
# fixed points directly.
TETRA_TABLE = [
    ("E", 4, 6),
    ("8C3", 1, 0),
    ("3C2", 0, 2),
    ("6S4", 0, 0),
    ("6sigma_d", 2, 2),
]

OCTA_TABLE = [
    ("E", 6, 12),
    ("6C4", 2, 0),
    ("8C3", 0, 0),
    ("3C2", 2, 0),
    ("6C2'", 0, 2),
    ("i", 0, 0),
    ("8S6", 0, 0),
    ("6S4", 0, 0),
    ("3sigma_h", 4, 4),
    ("6sigma_d", 2, 2),
]

ICOSA_TABLE = [
    ("E", 12, 30),
    ("12C5", 2, 0),
    ("12C5^2", 2, 0),
    ("20C3", 0, 0),
    ("15C2", 0, 2),
    ("i", 0, 0),
    ("12S10", 0, 0),
    ("12S10^3", 0, 0),
    ("20S6", 0, 0),
    ("15sigma", 4, 4),
]


def _class_table(f, group):
    rows = []
    for cls in group.classes:
        rep = group.elements[cls.rep_id]
        uc = unshifted_counts(f, rep)
        rows.append((cls.label, uc.joints_unshifted, uc.bars_unshifted))
    return rows


@pytest.mark.parametrize(
    "name,label,order",
    [
        ("tetrahedron", "Td", 24),
        ("octahedron", "Oh", 48),
        ("icosahedron", "Ih", 120),
    ],
)
def test_platonic_group_labels(name, label, order):
    g = detect_point_group(platonic(name))
    assert g.schoenflies == label
    assert g.order == order
    assert len(g.elements) == order
    assert sum(c.size for c in g.classes) == order
    # identity is element 0 and forms its own class labeled E
    assert g.elements[0].op.kind == "E"
    e_cls = g.class_of_element(0)
    assert e_cls.label == "E" and e_cls.size == 1


@pytest.mark.parametrize(
    "name,table",
    [
        ("tetrahedron", TETRA_TABLE),
        ("octahedron", OCTA_TABLE),
        ("icosahedron", ICOSA_TABLE),
    ],
)
def test_platonic_unshifted_tables(name, table):
    f = platonic(name)
    g = detect_point_group(f)
    assert _class_table(f, g) == table


@pytest.mark.parametrize(
    "name,table",
    [("tetrahedron", TETRA_TABLE), ("octahedron", OCTA_TABLE)],
)
def test_unshifted_counts_match_bruteforce(name, table):
    # every element, not just class reps, against the nearest-image oracle
    f = platonic(name)
    g = detect_point_group(f)
    coords = f.coordinates - f.centroid()
    edges = [b.ends for b in f.bars]
    for a in g.elements:
        ref_j, ref_b = brute_fixed_counts(coords, edges, a.op.matrix)
        uc = unshifted_counts(f, a)
        assert (uc.joints_unshifted, uc.bars_unshifted) == (ref_j, ref_b)


@pytest.mark.parametrize(
    "key,label,order",
    [
        ("C1", "C1", 1),
        ("C2", "C2", 2),
        ("C3", "C3", 3),
        ("Cs_perp", "Cs", 2),
        ("Cs_in", "Cs", 2),
        ("C2v", "C2v", 4),
        ("C3v_perp", "C3v", 6),
        ("C3v_in", "C3v", 6),
    ],
)
def test_plane_fixture_groups(key, label, order):
    g = detect_point_group(fig2_examples(key))
    assert g.schoenflies == label
    assert g.order == order


def test_classify_matrix_3d_kinds():
    ident = classify_matrix(np.eye(3), 3)
    assert ident.kind == "E"

    th = 2 * math.pi / 5
    rot = np.array(
        [
            [math.cos(th), -math.sin(th), 0.0],
            [math.sin(th), math.cos(th), 0.0],
            [0.0, 0.0, 1.0],
        ]
    )
    c5 = classify_matrix(rot, 3)
    assert (c5.kind, c5.n, c5.k) == ("C", 5, 1)
    assert c5.axis is not None
    assert np.allclose(np.abs(c5.axis), [0, 0, 1])

    s4 = classify_matrix(
        np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, -1.0]]), 3
    )
    assert (s4.kind, s4.n) == ("S", 4)

    mirror = classify_matrix(np.diag([1.0, 1.0, -1.0]), 3)
    assert mirror.kind == "sigma"
    assert np.allclose(np.abs(mirror.axis), [0, 0, 1])  # plane normal

    inv = classify_matrix(-np.eye(3), 3)
    assert inv.kind == "i"


def test_classify_matrix_2d_kinds():
    th = 2 * math.pi / 3
    rot = np.array(
        [[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]]
    )
    c3 = classify_matrix(rot, 2)
    assert (c3.kind, c3.n, c3.k) == ("C", 3, 1)

    flip_y = classify_matrix(np.diag([1.0, -1.0]), 2)
    assert flip_y.kind == "sigma"
    assert np.allclose(np.abs(flip_y.axis), [1, 0])  # mirror line direction

    half_turn = classify_matrix(-np.eye(2), 2)
    assert (half_turn.kind, half_turn.n) == ("C", 2)

    with pytest.raises(ValueError):
        classify_matrix(np.array([[1.0, 1.0], [0.0, 1.0]]), 2)  # not orthogonal
    with pytest.raises(ValueError):
        classify_matrix(np.eye(3), 2)  # wrong shape


@pytest.mark.parametrize("name", ["tetrahedron", "octahedron"])
def test_multiplication_table_consistency(name):
    # the table must agree with both matrix products and permutation
    # composition: table[x, y] represents "apply y, then x"
    f = platonic(name)
    g = detect_point_group(f)
    mats = [a.op.matrix for a in g.elements]
    perms = [a.joint_perm for a in g.elements]
    for x in range(g.order):
        for y in range(g.order):
            t = int(g.mult_table[x, y])
            assert np.abs(mats[x] @ mats[y] - mats[t]).max() < 1e-8
            composed = tuple(perms[x][perms[y][i]] for i in range(f.joint_count))
            assert composed == perms[t]


def test_inverse_table(octahedron):
    g = detect_point_group(octahedron)
    for x in range(g.order):
        inv = int(g.inverse[x])
        assert int(g.mult_table[x, inv]) == 0
        assert int(g.mult_table[inv, x]) == 0
        M = g.elements[x].op.matrix @ g.elements[inv].op.matrix
        assert np.abs(M - np.eye(3)).max() < 1e-8


@pytest.mark.parametrize(
    "name,n_joint_orbits,n_bar_orbits",
    [
        ("tetrahedron", 1, 1),
        ("octahedron", 1, 1),
        ("icosahedron", 1, 1),
    ],
)
def test_platonic_orbits_are_transitive(name, n_joint_orbits, n_bar_orbits):
    f = platonic(name)
    g = detect_point_group(f)
    part = orbits(f, g)
    assert len(part.joint_orbits) == n_joint_orbits
    assert len(part.bar_orbits) == n_bar_orbits
    assert sorted(i for orb in part.joint_orbits for i in orb) == list(
        range(f.joint_count)
    )
    assert sorted(i for orb in part.bar_orbits for i in orb) == list(
        range(f.bar_count)
    )


@pytest.mark.parametrize(
    "key",
    ["C2", "C3", "Cs_in", "C2v", "C3v_in", "C3v_perp"],
)
def test_burnside_orbit_counts(key):
    # averaging fixed-point counts over the group must give the orbit
    # counts exactly (Burnside)
    f = fig2_examples(key)
    g = detect_point_group(f)
    part = orbits(f, g)
    fixed_j = sum(unshifted_counts(f, a).joints_unshifted for a in g.elements)
    fixed_b = sum(unshifted_counts(f, a).bars_unshifted for a in g.elements)
    assert fixed_j == g.order * len(part.joint_orbits)
    assert fixed_b == g.order * len(part.bar_orbits)


def test_detection_is_rotation_and_translation_invariant(octahedron):
    rng = np.random.default_rng(20260816)
    A = rng.normal(size=(3, 3))
    Q, R = np.linalg.qr(A)
    Q = Q @ np.diag(np.sign(np.diag(R)))
    if np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    shift = rng.normal(size=3) * 5.0
    moved = new_framework(
        3,
        (octahedron.coordinates @ Q.T) + shift,
        [b.ends for b in octahedron.bars],
    )
    g = detect_point_group(moved)
    assert g.schoenflies == "Oh"
    assert g.order == 48
    assert _class_table(moved, g) == OCTA_TABLE


def test_detection_survives_tiny_jitter(octahedron):
    rng = np.random.default_rng(7)
    bumped = new_framework(
        3,
        octahedron.coordinates + rng.normal(size=(6, 3)) * 1e-10,
        [b.ends for b in octahedron.bars],
    )
    g = detect_point_group(bumped)
    assert g.schoenflies == "Oh" and g.order == 48


def test_moderate_jitter_breaks_symmetry_at_default_tolerance(octahedron):
    rng = np.random.default_rng(8)
    noise = rng.normal(size=(6, 3)) * 1e-4
    bumped = new_framework(
        3, octahedron.coordinates + noise, [b.ends for b in octahedron.bars]
    )
    g = detect_point_group(bumped)
    assert g.schoenflies == "C1" and g.order == 1
    # the same frame recovers full symmetry under a looser tolerance
    loose = detect_point_group(bumped, geom_tol=1e-3)
    assert loose.schoenflies == "Oh" and loose.order == 48


def test_continuous_symmetry_rejected():
    lonely = new_framework(2, [(0.0, 0.0)], [])
    with pytest.raises(ContinuousSymmetry):
        detect_symmetries(lonely)
    collinear = new_framework(
        3, [(0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (2.0, 0.0, 0.0)], [(0, 1), (1, 2)]
    )
    with pytest.raises(ContinuousSymmetry):
        detect_point_group(collinear)


def test_close_joints_trip_ambiguity_guard():
    f = new_framework(
        2,
        [(0.0, 0.0), (1.0, 0.0), (1.0 + 1e-4, 1e-4), (0.0, 1.0)],
        [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)],
    )
    with pytest.raises(ToleranceAmbiguity):
        detect_symmetries(f, geom_tol=1e-2)


def test_bare_operation_counts(octahedron):
    # a hand-built op with no precomputed permutations works if and only
    # if it really is a symmetry of the framework
    th = math.pi / 2
    c4z = np.array(
        [
            [math.cos(th), -math.sin(th), 0.0],
            [math.sin(th), math.cos(th), 0.0],
            [0.0, 0.0, 1.0],
        ]
    )
    bare = SymmetryAssignment(
        op=classify_matrix(c4z, 3), joint_perm=None, bar_perm=None
    )
    uc = unshifted_counts(octahedron, bare)
    assert (uc.joints_unshifted, uc.bars_unshifted) == (2, 0)

    tetra = platonic("tetrahedron")
    with pytest.raises(ValueError):
        unshifted_counts(tetra, bare)  # C4 is not a tetrahedral symmetry


def test_fixed_bar_tags_octahedron(octahedron):
    g = detect_point_group(octahedron)
    by_label = {c.label: g.elements[c.rep_id] for c in g.classes}

    uc = unshifted_counts(octahedron, by_label["6C2'"])
    assert sorted(uc.bar_tags.values()) == ["perpendicular_to_axis"] * 2

    uc = unshifted_counts(octahedron, by_label["3sigma_h"])
    assert sorted(uc.bar_tags.values()) == ["in_plane"] * 4

    uc = unshifted_counts(octahedron, by_label["6sigma_d"])
    assert sorted(uc.bar_tags.values()) == ["perpendicular_to_plane"] * 2


def test_fixed_bar_tags_plane_fixtures():
    f = fig2_examples("C2")
    g = detect_point_group(f)
    half_turn = next(a for a in g.elements if a.op.kind == "C")
    uc = unshifted_counts(f, half_turn)
    assert list(uc.bar_tags.values()) == ["centered_at_origin"]
    assert uc.subcounts == {"j_c": 0, "b_2": 1}

    f = fig2_examples("Cs_in")
    g = detect_point_group(f)
    mirror = next(a for a in g.elements if a.op.kind == "sigma")
    uc = unshifted_counts(f, mirror)
    assert uc.joints_unshifted == 2
    assert list(uc.bar_tags.values()) == ["in_plane"]
