"""Randomized invariants: serialization, relabeling, rigid motions, pebbles."""

from __future__ import annotations

import math

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from isoframe.chartables import CATALOG_2D, CATALOG_3D, character_table
from isoframe.constructgen import cap_face, platonic, twisted_cap_all_faces
from isoframe.core import from_json, new_framework, to_json
from isoframe.laman import Graph, pebble_game_2_3
from isoframe.maxwell import maxwell_count, maxwell_trace, two_cos
from isoframe.numrank import mobility
from isoframe.symdetect import detect_point_group


@st.composite
def frameworks(draw, dimension: int | None = None):
    d = dimension if dimension is not None else draw(st.sampled_from([2, 3]))
    j = draw(st.integers(min_value=d + 1, max_value=8))
    # lattice sites keep joints separated; jitter keeps geometry generic
    sites = draw(
        st.lists(
            st.tuples(*(st.integers(-6, 6) for _ in range(d))),
            min_size=j,
            max_size=j,
            unique=True,
        )
    )
    jitter = draw(
        st.lists(
            st.tuples(*(st.floats(-0.2, 0.2) for _ in range(d))),
            min_size=j,
            max_size=j,
        )
    )
    coords = [
        tuple(0.5 * s + 0.1 * e for s, e in zip(site, eps))
        for site, eps in zip(sites, jitter)
    ]
    pairs = [(a, b) for a in range(j) for b in range(a + 1, j)]
    bars = draw(
        st.lists(st.sampled_from(pairs), min_size=1, max_size=len(pairs), unique=True)
    )
    return new_framework(d, coords, sorted(bars))


@given(frameworks())
@settings(max_examples=60, deadline=None)
def test_json_roundtrip_is_exact(f):
    g = from_json(to_json(f))
    assert g.dimension == f.dimension
    assert [b.ends for b in g.bars] == [b.ends for b in f.bars]
    assert np.array_equal(g.coordinates, f.coordinates)
    # serialization is canonical, so a second trip is byte-identical
    assert to_json(g) == to_json(f)


@given(frameworks(), st.randoms(use_true_random=False))
@settings(max_examples=40, deadline=None)
def test_relabeling_preserves_counts(f, rng):
    j = f.joint_count
    perm = list(range(j))
    rng.shuffle(perm)
    coords = [None] * j
    for i, p in enumerate(perm):
        coords[p] = tuple(f.coordinates[i])
    bars = sorted(tuple(sorted((perm[u], perm[v]))) for u, v in (b.ends for b in f.bars))
    g = new_framework(f.dimension, coords, bars)

    assert maxwell_count(g) == maxwell_count(f)
    kf, kg = mobility(f), mobility(g)
    assert (kg.rank, kg.mechanisms, kg.self_stresses) == (
        kf.rank,
        kf.mechanisms,
        kf.self_stresses,
    )
    if f.dimension == 2:
        assert pebble_game_2_3(g).verdict == pebble_game_2_3(f).verdict


@given(frameworks())
@settings(max_examples=60, deadline=None)
def test_signed_count_matches_rank_on_spanning_geometry(f):
    centered = f.coordinates - f.coordinates.mean(axis=0)
    assume(np.linalg.matrix_rank(centered, tol=1e-6) == f.dimension)
    k = mobility(f)
    assert k.mechanisms - k.self_stresses == maxwell_count(f)
    assert k.rigid_body_dim == (3 if f.dimension == 2 else 6)


def _rotation(dim: int, params: tuple[float, ...]) -> np.ndarray:
    if dim == 2:
        c, s = math.cos(params[0]), math.sin(params[0])
        return np.array([[c, -s], [s, c]])
    ax, ay, az = params
    rx = np.array(
        [
            [1, 0, 0],
            [0, math.cos(ax), -math.sin(ax)],
            [0, math.sin(ax), math.cos(ax)],
        ]
    )
    ry = np.array(
        [
            [math.cos(ay), 0, math.sin(ay)],
            [0, 1, 0],
            [-math.sin(ay), 0, math.cos(ay)],
        ]
    )
    rz = np.array(
        [
            [math.cos(az), -math.sin(az), 0],
            [math.sin(az), math.cos(az), 0],
            [0, 0, 1],
        ]
    )
    return rz @ ry @ rx


@given(
    st.tuples(st.floats(-3.0, 3.0), st.floats(-3.0, 3.0), st.floats(-3.0, 3.0)),
    st.tuples(st.floats(-5.0, 5.0), st.floats(-5.0, 5.0), st.floats(-5.0, 5.0)),
)
@settings(max_examples=25, deadline=None)
def test_rigid_motion_equivariance_on_octahedron(angles, shift):
    f = platonic("octahedron")
    rot = _rotation(3, angles)
    moved = new_framework(
        3,
        [tuple(rot @ p + np.asarray(shift)) for p in f.coordinates],
        [b.ends for b in f.bars],
    )
    group = detect_point_group(moved)
    assert group.schoenflies == "Oh"
    assert group.order == 48
    trace = maxwell_trace(moved, group)
    assert all(v == 0 for v in trace.values)
    k = mobility(moved)
    assert (k.mechanisms, k.self_stresses) == (0, 0)


@given(frameworks(dimension=2))
@settings(max_examples=40, deadline=None)
def test_rigid_motion_preserves_kinematics_2d(f):
    rot = _rotation(2, (0.7853981,))
    moved = new_framework(
        2,
        [tuple(rot @ p + np.array([2.5, -1.25])) for p in f.coordinates],
        [b.ends for b in f.bars],
    )
    kf, kg = mobility(f), mobility(moved)
    assert (kg.rank, kg.mechanisms, kg.self_stresses) == (
        kf.rank,
        kf.mechanisms,
        kf.self_stresses,
    )


@st.composite
def bare_graphs(draw):
    j = draw(st.integers(min_value=2, max_value=9))
    pairs = [(a, b) for a in range(j) for b in range(a + 1, j)]
    edges = draw(
        st.lists(st.sampled_from(pairs), min_size=0, max_size=len(pairs), unique=True)
    )
    return Graph(j, tuple(sorted(edges)))


@given(bare_graphs())
@settings(max_examples=80, deadline=None)
def test_pebble_bookkeeping_never_leaks(g):
    seen = []

    def audit(state):
        state.check_invariant()
        seen.append((sum(state.pebbles), state.placed))

    report = pebble_game_2_3(g, on_move=audit)
    # one event at the start, then one per accepted bar; rejections are silent
    assert len(seen) == seen[-1][1] + 1
    if report.verdict == "dependent":
        assert seen[-1][1] < len(g.edges)
    else:
        assert seen[-1][1] == len(g.edges)
    assert all(free + placed == 2 * g.joint_count for free, placed in seen)
    assert report.free_pebbles == seen[-1][0]
    assert report.verdict in {"tight", "independent-but-underbraced", "dependent"}
    if report.verdict == "tight":
        assert len(g.edges) == 2 * g.joint_count - 3
        assert report.free_pebbles == 3
    if report.verdict == "dependent":
        jt, bt = report.witness_joint_total, report.witness_bar_total
        assert bt > 2 * jt - 3


_TABLE_KEYS = [(lbl, 3) for lbl in sorted(CATALOG_3D)] + [
    (lbl, 2) for lbl in sorted(CATALOG_2D)
]


@given(
    st.sampled_from(_TABLE_KEYS),
    st.lists(st.integers(min_value=-3, max_value=4), min_size=1, max_size=12),
)
@settings(max_examples=80, deadline=None)
def test_character_decomposition_roundtrip(key, mults):
    t = character_table(*key)
    weights = {
        row.name: mults[i % len(mults)] for i, row in enumerate(t.rows)
    }
    combo = tuple(
        float(sum(weights[row.name] * row.values[c] for row in t.rows))
        for c in range(len(t.class_keys))
    )
    # a merged conjugate pair holds two constituent irreps per copy
    expected = {
        row.name: (2 if row.paired else 1) * weights[row.name] for row in t.rows
    }
    assert t.decompose(combo) == expected


@given(st.floats(0.05, 3.0))
@settings(max_examples=25, deadline=None)
def test_capping_any_height_stays_isostatic(h):
    capped = cap_face(platonic("tetrahedron"), (0, 1, 2), apex_height=h)
    assert maxwell_count(capped) == 0
    k = mobility(capped)
    assert (k.mechanisms, k.self_stresses) == (0, 0)


@given(st.floats(0.02, 2.0))
@settings(max_examples=10, deadline=None)
def test_twist_any_angle_stays_isostatic(theta):
    period = 2.0 * math.pi / 3.0
    r = theta % period
    assume(min(r, period - r) > 1e-3 and abs(r - period / 2) > 1e-3)
    twisted = twisted_cap_all_faces(platonic("tetrahedron"), twist_angle=theta)
    assert maxwell_count(twisted) == 0
    k = mobility(twisted)
    assert (k.mechanisms, k.self_stresses) == (0, 0)


@given(st.integers(2, 12), st.integers(1, 24))
def test_rotation_character_bounds_and_symmetry(n, k):
    # classified operations only ever store k coprime to n
    assume(math.gcd(n, k % n if k % n else n) == 1)
    v = two_cos(n, k % n)
    assert -2.0 <= float(v) <= 2.0
    assert math.isclose(float(v), float(two_cos(n, n - (k % n))), abs_tol=1e-12)
    assert math.isclose(
        float(v), 2.0 * math.cos(2.0 * math.pi * k / n), abs_tol=1e-12
    )
