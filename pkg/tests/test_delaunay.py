import random

import pytest

from dtough.delaunay import (
    EdgeKind,
    Triangulation,
    build,
    edge_angle_check,
    from_triangles,
    verify_delaunay,
    witness_disk,
)
from dtough.errors import DegenerateInput, NotInteriorEdge, TooFewPoints
from dtough.exactgeom import Position, disk_classify, point

import helpers

P = point


def test_single_triangle():
    t = build([P(0, 0), P(1, 0), P(0, 1)])
    assert t.triangles == ((0, 1, 2),)
    assert len(t.edges) == 3
    assert all(e.kind is EdgeKind.BOUNDARY for e in t.edges)
    assert verify_delaunay(t) is None


def test_too_few_points():
    with pytest.raises(TooFewPoints):
        build([P(0, 0), P(1, 0)])


def test_degenerate_input():
    with pytest.raises(DegenerateInput):
        build([P(0, 0), P(1, 0), P(0, 1), P(1, 1)])  # cocircular square
    with pytest.raises(DegenerateInput):
        build([P(0, 0), P(1, 1), P(2, 2), P(5, 0)])  # collinear triple


def test_quad_diagonal_choice():
    # Expected diagonal computed by the brute-force empty-circumdisk oracle:
    # of the two candidate triangulations of this convex quad, only the one
    # using diagonal (1, 3) has empty circumdisks.
    pts = [P(0, 0), P(2, 0), P(3, 2), P(1, 3)]
    t = build(pts)
    assert len(t.triangles) == 2
    assert t.is_edge(1, 3) and not t.is_edge(0, 2)
    assert edge_angle_check(t, 1, 3)
    with pytest.raises(NotInteriorEdge):
        edge_angle_check(t, 0, 1)  # boundary edge

    # the flipped diagonal must fail both verifications
    flipped = from_triangles(pts, [(0, 1, 2), (0, 2, 3)])
    counter = verify_delaunay(flipped)
    assert counter is not None
    assert not edge_angle_check(flipped, 0, 2)


def test_four_points_with_interior_vertex():
    # (1, 1) lies strictly inside the triangle of the other three, so this
    # set triangulates into three faces around an interior vertex.
    t = build([P(0, 0), P(3, 0), P(1, 1), P(2, 5)])
    assert len(t.triangles) == 3
    assert len(t.hull) == 3
    assert sum(1 for e in t.edges if e.kind is EdgeKind.INTERIOR) == 3
    assert verify_delaunay(t) is None


def test_from_triangles_validation():
    pts = [P(0, 0), P(2, 0), P(3, 2), P(1, 3)]
    with pytest.raises(ValueError):
        from_triangles(pts, [(0, 2, 1), (0, 2, 3)])  # CW triangle
    with pytest.raises(ValueError):
        from_triangles(pts, [(0, 1, 2)])  # vertex 3 unused
    with pytest.raises(ValueError):
        from_triangles(pts, [(0, 1, 3), (1, 2, 3), (0, 1, 3)])  # duplicate


def _euler_ok(t: Triangulation) -> bool:
    n, h = len(t), len(t.hull)
    return len(t.triangles) == 2 * n - 2 - h and len(t.edges) == 3 * n - 3 - h


def test_build_verify_sweep():
    # 200 seeded instances across n = 3..20
    for i in range(200):
        n = 3 + i % 18
        _, t = helpers.random_tri(n, 1000 + i)
        assert verify_delaunay(t) is None
        assert _euler_ok(t)
        for e in t.edges:
            if e.kind is EdgeKind.INTERIOR:
                assert edge_angle_check(t, e.u, e.v)


def _edge_points(t: Triangulation) -> frozenset:
    return frozenset(
        frozenset((t.vertices[e.u], t.vertices[e.v])) for e in t.edges
    )


def test_permutation_invariance():
    # unique under general position: shuffling the input changes nothing
    for seed in range(6):
        pts, t = helpers.random_tri(9, 2000 + seed)
        reference = _edge_points(t)
        rng = random.Random(seed)
        for _ in range(5):
            shuffled = list(pts)
            rng.shuffle(shuffled)
            assert _edge_points(build(shuffled)) == reference


def _assert_witness(t: Triangulation, u: int, v: int) -> None:
    d = witness_disk(t, u, v)
    for i, p in enumerate(t.vertices):
        expected = Position.BOUNDARY if i in (u, v) else Position.EXTERIOR
        assert disk_classify(d, p) is expected


def test_witness_single_triangle():
    # includes the right-angle hypotenuse, where the circumcenter sits
    # exactly on the edge midpoint
    t = build([P(0, 0), P(1, 0), P(0, 1)])
    for e in t.edges:
        _assert_witness(t, e.u, e.v)


def test_witness_interior_edge():
    t = build([P(0, 0), P(2, 0), P(3, 2), P(1, 3)])
    _assert_witness(t, 1, 3)


def test_witness_fan_spoke():
    t = helpers.fan_tri(5)
    assert t.is_edge(0, 2)
    _assert_witness(t, 0, 2)


def test_witness_every_edge_random():
    for seed in (0, 1, 2):
        _, t = helpers.random_tri(11, 3000 + seed)
        for e in t.edges:
            _assert_witness(t, e.u, e.v)


def test_obtuse_boundary_witness():
    # the long edge of a very flat triangle: its apex is inside the edge's
    # diametral disk, so the witness center must leave the hull side
    t = build([P(0, 0), P(10, 0), P(5, 1)])
    for e in t.edges:
        _assert_witness(t, e.u, e.v)
