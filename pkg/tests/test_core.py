"""Framework construction, validation, counting, and JSON round trips."""

from __future__ import annotations

import math

import numpy as np
import pytest

import isoframe as iso
from isoframe.errors import (
    DanglingEndpoint,
    DuplicateBar,
    DuplicateJoint,
    NonFiniteEntry,
    ParseError,
    SelfLoop,
    ZeroLengthBar,
)


def triangle():
    return iso.new_framework(
        2, [(0.0, 0.0), (2.0, 0.0), (0.7, 1.5)], [(0, 1), (1, 2), (0, 2)]
    )


def test_basic_counts():
    f = triangle()
    assert f.dimension == 2
    assert f.joint_count == 3
    assert f.bar_count == 3
    assert iso.maxwell_count(f) == 0


def test_bar_ends_are_sorted_and_ids_sequential():
    f = iso.new_framework(
        2, [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)], [(2, 0), (1, 0), (2, 1)]
    )
    assert [b.ends for b in f.bars] == [(0, 2), (0, 1), (1, 2)]
    assert [b.id for b in f.bars] == [0, 1, 2]
    assert [j.id for j in f.joints] == [0, 1, 2]


def test_coordinates_are_read_only():
    f = triangle()
    with pytest.raises(ValueError):
        f.coordinates[0, 0] = 9.0


def test_duplicate_joint_rejected():
    with pytest.raises(DuplicateJoint):
        iso.new_framework(2, [(0.0, 0.0), (1e-12, 0.0)], [(0, 1)])


def test_self_loop_rejected():
    with pytest.raises(SelfLoop):
        iso.new_framework(2, [(0.0, 0.0), (1.0, 0.0)], [(1, 1)])


def test_duplicate_bar_rejected_both_orientations():
    with pytest.raises(DuplicateBar):
        iso.new_framework(
            2, [(0.0, 0.0), (1.0, 0.0)], [(0, 1), (1, 0)]
        )


def test_dangling_endpoint_rejected():
    with pytest.raises(DanglingEndpoint):
        iso.new_framework(2, [(0.0, 0.0), (1.0, 0.0)], [(0, 2)])


def test_non_finite_rejected():
    with pytest.raises(NonFiniteEntry):
        iso.new_framework(2, [(0.0, 0.0), (math.nan, 1.0)], [(0, 1)])


def test_zero_length_guard_is_separation_based():
    # two joints closer than the separation tolerance collide
    with pytest.raises((DuplicateJoint, ZeroLengthBar)):
        iso.new_framework(3, [(0.0, 0.0, 0.0), (0.0, 0.0, 1e-13)], [(0, 1)])


def test_maxwell_count_3d(octahedron):
    assert iso.maxwell_count(octahedron) == 3 * 6 - 12 - 6 == 0


def test_induced_counts(octahedron):
    j, b = iso.induced_counts(octahedron, [0, 1, 2])
    assert b == 3
    assert j == len(
        {e for k in (0, 1, 2) for e in octahedron.bars[k].ends}
    )


def test_in_scope_boundaries():
    tri3 = iso.new_framework(
        3,
        [(0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0)],
        [(0, 1), (1, 2), (0, 2)],
    )
    assert not iso.in_scope(tri3)
    assert iso.in_scope(iso.platonic("tetrahedron"))
    two = iso.new_framework(2, [(0.0, 0.0), (1.0, 0.0)], [(0, 1)])
    assert not iso.in_scope(two)
    assert iso.in_scope(triangle())


def test_json_round_trip(octahedron):
    text = iso.to_json(octahedron)
    back = iso.from_json(text)
    assert back.dimension == octahedron.dimension
    assert [b.ends for b in back.bars] == [b.ends for b in octahedron.bars]
    assert np.array_equal(back.coordinates, octahedron.coordinates)


def test_json_dict_shape(banana):
    data = iso.to_json_dict(banana)
    assert set(data) == {"dimension", "joints", "bars"}
    assert data["dimension"] == 3
    assert len(data["joints"]) == 8
    assert all(len(p) == 3 for p in data["joints"])
    assert sorted(map(tuple, data["bars"])) == [
        b.ends for b in sorted(banana.bars, key=lambda x: x.ends)
    ]


@pytest.mark.parametrize(
    "payload",
    [
        "[]",
        '{"dimension": 4, "joints": [], "bars": []}',
        '{"dimension": 2, "joints": [[0, 0], [1]], "bars": []}',
        '{"dimension": 2, "joints": [[0, 0], [1, 0]], "bars": [[0]]}',
        '{"dimension": 2, "joints": [[0, 0], [1, 0]], "bars": [[0, "x"]]}',
        '{"joints": [[0, 0], [1, 0]], "bars": [[0, 1]]}',
    ],
)
def test_from_json_rejects_malformed(payload):
    with pytest.raises(ParseError):
        iso.from_json(payload)


def test_centroid_and_diameter():
    f = triangle()
    assert np.allclose(f.centroid(), np.mean(f.coordinates, axis=0))
    d = max(
        np.linalg.norm(f.coordinates[a] - f.coordinates[b])
        for a in range(3)
        for b in range(3)
    )
    assert math.isclose(f.diameter(), d)


def test_has_bar_and_pair_lookup():
    f = triangle()
    assert f.has_bar(0, 1) and f.has_bar(1, 0)
    assert not f.has_bar(0, 0)
    assert f.pair_to_bar[(0, 2)] == 2 or f.pair_to_bar[(0, 2)] == 1
