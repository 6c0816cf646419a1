from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dtough.errors import CollinearInput, PreconditionViolated
from dtough.exactgeom import (
    CirclePosition,
    Disk,
    Orientation,
    Point,
    Position,
    Violation,
    ViolationKind,
    circumdisk,
    coord,
    disk,
    disk_classify,
    disk_contains_disk,
    disks_interior_disjoint,
    disks_internally_tangent,
    general_position,
    in_circle,
    orient,
    point,
    shrink_parameter,
    shrink_toward,
    triangle_classify,
)

P = point


def test_coord_parses_exactly():
    assert coord("0.25") == Fraction(1, 4)
    assert coord("-7/2") == Fraction(-7, 2)
    assert coord(3) == 3
    with pytest.raises(TypeError):
        coord(0.25)


def test_orient_basic():
    assert orient(P(0, 0), P(1, 0), P(0, 1)) is Orientation.CCW
    assert orient(P(0, 0), P(1, 1), P(2, 2)) is Orientation.COLLINEAR
    assert orient(P(0, 0), P(0, 1), P(1, 0)) is Orientation.CW


def test_in_circle_unit_square():
    a, b, c = P(0, 0), P(1, 0), P(0, 1)
    assert in_circle(a, b, c, P(1, 1)) is CirclePosition.ON
    assert in_circle(a, b, c, P(2, 2)) is CirclePosition.OUTSIDE
    assert in_circle(a, b, c, P("1/2", "1/2")) is CirclePosition.INSIDE


def test_in_circle_rejects_collinear():
    with pytest.raises(CollinearInput):
        in_circle(P(0, 0), P(1, 1), P(2, 2), P(0, 1))


def test_in_circle_orientation_normalized():
    # same circle regardless of the order the defining points are given in
    a, b, c, d = P(0, 0), P(1, 0), P(0, 1), P("1/2", "1/2")
    assert in_circle(a, b, c, d) is in_circle(a, c, b, d)


def _bisector_solver(a: Point, b: Point, c: Point) -> Point:
    """Independent circumcenter oracle: solve the two perpendicular-bisector
    equations 2(b-a).x = |b|^2-|a|^2 and 2(c-a).x = |c|^2-|a|^2 by Cramer."""
    a11, a12 = 2 * (b.x - a.x), 2 * (b.y - a.y)
    a21, a22 = 2 * (c.x - a.x), 2 * (c.y - a.y)
    r1 = b.x * b.x + b.y * b.y - a.x * a.x - a.y * a.y
    r2 = c.x * c.x + c.y * c.y - a.x * a.x - a.y * a.y
    det = a11 * a22 - a12 * a21
    return Point((r1 * a22 - a12 * r2) / det, (a11 * r2 - r1 * a21) / det)


def test_circumdisk_examples():
    d = circumdisk(P(0, 0), P(1, 0), P(0, 1))
    assert d.center == P("1/2", "1/2") and d.radius_sq == Fraction(1, 2)
    d = circumdisk(P(0, 0), P(2, 0), P(1, 1))
    assert d.center == P(1, 0) and d.radius_sq == 1
    assert d.center == _bisector_solver(P(0, 0), P(2, 0), P(1, 1))
    d = circumdisk(P(0, 0), P(4, 0), P(0, 3))
    assert d.center == P(2, "3/2") and d.radius_sq == Fraction(25, 4)


def test_circumdisk_boundary_property():
    pts = (P(3, 7), P("-1/3", 2), P(5, "-4/9"))
    d = circumdisk(*pts)
    assert all(disk_classify(d, p) is Position.BOUNDARY for p in pts)
    assert d.center == _bisector_solver(*pts)


def test_disk_classify():
    d = disk(0, 0, 1)
    assert disk_classify(d, P(1, 0)) is Position.BOUNDARY
    assert disk_classify(d, P(0, 0)) is Position.INTERIOR
    assert disk_classify(d, P(2, 0)) is Position.EXTERIOR


def test_shrink_toward_examples():
    d = disk(0, 0, 1)
    s = shrink_toward(d, P(-1, 0), P(0, 0))
    assert s.center == P("-1/2", 0) and s.radius_sq == Fraction(1, 4)
    s = shrink_toward(d, P(-1, 0), P("1/2", 0))
    assert s.center == P("-1/4", 0) and s.radius_sq == Fraction(9, 16)
    with pytest.raises(PreconditionViolated):
        shrink_toward(d, P(0, 1), P(0, 1))  # anchor equals target: not interior
    with pytest.raises(PreconditionViolated):
        shrink_toward(d, P("1/2", 0), P(0, 0))  # anchor not on boundary


def test_shrink_toward_properties():
    d = disk(3, -2, 25)
    anchor, target = P(0, 2), P(4, -1)
    assert disk_classify(d, anchor) is Position.BOUNDARY
    s = shrink_toward(d, anchor, target)
    assert s.radius_sq < d.radius_sq
    assert disk_classify(s, anchor) is Position.BOUNDARY
    assert disk_classify(s, target) is Position.BOUNDARY
    assert disk_contains_disk(d, s)
    assert disks_internally_tangent(d, s)
    t = shrink_parameter(d, anchor, target)
    assert 0 < t < 1


def test_general_position_examples():
    ok = [P(0, 0), P(1, 0), P(0, 1)]
    assert general_position(ok) is None
    square = ok + [P(1, 1)]
    assert general_position(square) == Violation(ViolationKind.COCIRCULAR, (0, 1, 2, 3))
    line = [P(0, 0), P(1, 1), P(2, 2), P(5, 0)]
    assert general_position(line) == Violation(ViolationKind.COLLINEAR, (0, 1, 2))
    dup = [P(0, 0), P(1, 0), P(0, 0)]
    assert general_position(dup) == Violation(ViolationKind.DUPLICATE, (0, 2))


def test_on_circle_iff_cocircular():
    pts = [P(0, 0), P(3, 1), P(1, 4)]
    d = circumdisk(*pts)
    # reflecting a boundary point across the center yields an exact fourth
    # cocircular point
    fourth = P(2 * d.center.x - pts[0].x, 2 * d.center.y - pts[0].y)
    assert in_circle(*pts, fourth) is CirclePosition.ON
    assert general_position(pts + [fourth]) == Violation(
        ViolationKind.COCIRCULAR, (0, 1, 2, 3)
    )


def test_triangle_classify():
    a, b, c = P(0, 0), P(4, 0), P(0, 4)
    assert triangle_classify(a, b, c, P(1, 1)) is Position.INTERIOR
    assert triangle_classify(a, b, c, P(2, 0)) is Position.BOUNDARY
    assert triangle_classify(a, b, c, P(5, 5)) is Position.EXTERIOR


def test_disjointness_predicates():
    assert disks_interior_disjoint(disk(0, 0, 1), disk(2, 0, 1))  # tangent
    assert disks_interior_disjoint(disk(0, 0, 1), disk(3, 0, 1))
    assert not disks_interior_disjoint(disk(0, 0, 1), disk(1, 0, 1))
    assert disk_contains_disk(disk(0, 0, 4), disk(0, 0, 1))
    assert not disk_contains_disk(disk(0, 0, 1), disk(0, 0, 4))


small_fraction = st.builds(
    Fraction, st.integers(-40, 40), st.integers(1, 12)
)
points = st.builds(Point, small_fraction, small_fraction)


@given(points, points, points)
def test_orient_symmetries(a, b, c):
    o = orient(a, b, c)
    assert orient(b, c, a) is o
    assert orient(c, a, b) is o
    flipped = {
        Orientation.CCW: Orientation.CW,
        Orientation.CW: Orientation.CCW,
        Orientation.COLLINEAR: Orientation.COLLINEAR,
    }[o]
    assert orient(a, c, b) is flipped


@given(points, points, points, points, st.sampled_from([Fraction(3), Fraction(1, 7)]))
def test_predicates_scale_invariant(a, b, c, d, factor):
    def scale(p: Point) -> Point:
        return Point(p.x * factor, p.y * factor)

    assert orient(a, b, c) is orient(scale(a), scale(b), scale(c))
    if orient(a, b, c) is not Orientation.COLLINEAR:
        assert in_circle(a, b, c, d) is in_circle(scale(a), scale(b), scale(c), scale(d))
        disk_before = circumdisk(a, b, c)
        disk_after = Disk(scale(disk_before.center), disk_before.radius_sq * factor**2)
        assert disk_classify(disk_before, d) is disk_classify(disk_after, scale(d))
