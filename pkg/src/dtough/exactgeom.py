"""Exact rational plane geometry: points, disks, and sign predicates.

Every coordinate is a ``fractions.Fraction`` and every predicate is the sign
of an exactly evaluated rational expression, so answers never depend on
floating-point rounding and are invariant under rational rescaling of the
input. Disks store the *squared* radius; radii themselves are irrational in
general and never materialize.

Speed is traded for certainty throughout: one misclassified in-circle test
would invalidate every combinatorial audit built on top of this module, so
there is no floating-point filter layer. All functions are pure and all
types immutable; the module is safe under any amount of concurrency.
"""

from __future__ import annotations

import math
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Optional, Sequence, Union

from .errors import CollinearInput, PreconditionViolated

Coord = Fraction
Scalar = Union[int, str, Fraction]


def coord(value: Scalar) -> Fraction:
    """Coerce a value to an exact coordinate.

    Accepts ints, Fractions, and strings (``"3"``, ``"-7/2"``, ``"0.125"``;
    decimal strings parse exactly). Floats are rejected: their binary
    expansion is rarely what the caller meant, and exactness is the whole
    point of this package.
    """
    if isinstance(value, float):
        raise TypeError("float coordinates are inexact; pass a str, int, or Fraction")
    return Fraction(value)


class Point(NamedTuple):
    x: Fraction
    y: Fraction


class Disk(NamedTuple):
    """A closed disk: boundary points are members."""

    center: Point
    radius_sq: Fraction


def point(x: Scalar, y: Scalar) -> Point:
    return Point(coord(x), coord(y))


def disk(cx: Scalar, cy: Scalar, radius_sq: Scalar) -> Disk:
    r2 = coord(radius_sq)
    if r2 < 0:
        raise ValueError("squared radius must be nonnegative")
    return Disk(point(cx, cy), r2)


class Orientation(Enum):
    CCW = 1
    CW = -1
    COLLINEAR = 0


class CirclePosition(Enum):
    INSIDE = "inside"
    ON = "on"
    OUTSIDE = "outside"


class Position(Enum):
    """Classification against a closed region (disk or triangle)."""

    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


class ViolationKind(Enum):
    DUPLICATE = "duplicate"
    COLLINEAR = "collinear"
    COCIRCULAR = "cocircular"


class Violation(NamedTuple):
    """A general-position failure with the indices that witness it."""

    kind: ViolationKind
    indices: tuple[int, ...]


# ---------------------------------------------------------------------------
# Vector helpers
# ---------------------------------------------------------------------------


def dist_sq(a: Point, b: Point) -> Fraction:
    dx = a.x - b.x
    dy = a.y - b.y
    return dx * dx + dy * dy


def midpoint(a: Point, b: Point) -> Point:
    return Point((a.x + b.x) / 2, (a.y + b.y) / 2)


def _cross(a: Point, b: Point, c: Point) -> Fraction:
    """Twice the signed area of triangle (a, b, c)."""
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)


def _dot(a: Point, b: Point, c: Point) -> Fraction:
    """(b - a) . (c - a)"""
    return (b.x - a.x) * (c.x - a.x) + (b.y - a.y) * (c.y - a.y)


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------


def orient(a: Point, b: Point, c: Point) -> Orientation:
    """Turn direction of the path a -> b -> c."""
    det = _cross(a, b, c)
    if det > 0:
        return Orientation.CCW
    if det < 0:
        return Orientation.CW
    return Orientation.COLLINEAR


def in_circle(a: Point, b: Point, c: Point, d: Point) -> CirclePosition:
    """Classify d against the circle through a, b, c.

    The lifted 3x3 determinant is sign-normalized by the orientation of
    (a, b, c), so the result depends only on the circle, not on the order
    the defining points are given in.
    """
    o = orient(a, b, c)
    if o is Orientation.COLLINEAR:
        raise CollinearInput(f"no circle through collinear points {a}, {b}, {c}")
    adx = a.x - d.x
    ady = a.y - d.y
    bdx = b.x - d.x
    bdy = b.y - d.y
    cdx = c.x - d.x
    cdy = c.y - d.y
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = (
        alift * (bdx * cdy - cdx * bdy)
        + blift * (cdx * ady - adx * cdy)
        + clift * (adx * bdy - bdx * ady)
    )
    det *= o.value
    if det > 0:
        return CirclePosition.INSIDE
    if det < 0:
        return CirclePosition.OUTSIDE
    return CirclePosition.ON


def circumdisk(a: Point, b: Point, c: Point) -> Disk:
    """The disk whose boundary passes through a, b, and c.

    The center is the intersection of two perpendicular bisectors; with
    rational inputs it is rational, as is the squared radius.
    """
    if orient(a, b, c) is Orientation.COLLINEAR:
        raise CollinearInput(f"no circumdisk of collinear points {a}, {b}, {c}")
    d = 2 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y))
    a2 = a.x * a.x + a.y * a.y
    b2 = b.x * b.x + b.y * b.y
    c2 = c.x * c.x + c.y * c.y
    ux = (a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d
    uy = (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d
    center = Point(ux, uy)
    return Disk(center, dist_sq(center, a))


def disk_classify(d: Disk, p: Point) -> Position:
    """Exact comparison of squared distance against squared radius."""
    gap = dist_sq(d.center, p) - d.radius_sq
    if gap < 0:
        return Position.INTERIOR
    if gap > 0:
        return Position.EXTERIOR
    return Position.BOUNDARY


def triangle_classify(a: Point, b: Point, c: Point, p: Point) -> Position:
    """Classify p against the closed triangle (a, b, c)."""
    if orient(a, b, c) is Orientation.CW:
        b, c = c, b
    elif orient(a, b, c) is Orientation.COLLINEAR:
        raise CollinearInput("degenerate triangle")
    sides = (orient(a, b, p), orient(b, c, p), orient(c, a, p))
    if any(s is Orientation.CW for s in sides):
        return Position.EXTERIOR
    if any(s is Orientation.COLLINEAR for s in sides):
        return Position.BOUNDARY
    return Position.INTERIOR


# ---------------------------------------------------------------------------
# Disk algebra
# ---------------------------------------------------------------------------


def shrink_parameter(d: Disk, anchor: Point, target: Point) -> Fraction:
    """Parameter t* on the anchor-to-center segment equalizing the two distances.

    With x(t) = anchor + t * (center - anchor), this is the unique t solving
    |x(t) - anchor|^2 = |x(t) - target|^2. The quadratic terms cancel, so t*
    is rational:  t* = |anchor - target|^2 / (2 (center - anchor).(target - anchor)).

    For a target interior to the disk and an anchor on its boundary the
    denominator is strictly positive and t* lies in (0, 1).
    """
    num = dist_sq(anchor, target)
    den = 2 * _dot(anchor, d.center, target)
    if den == 0:
        raise PreconditionViolated("shrink direction is degenerate (anchor equals target?)")
    return num / den


def shrink_toward(d: Disk, anchor: Point, target: Point) -> Disk:
    """Shrink d along the ray from anchor through its center until target
    lies on the boundary.

    The result passes through anchor and target exactly, stays inside d, and
    is internally tangent to d at anchor. Preconditions (anchor on the
    boundary, target strictly interior) are checked exactly.
    """
    if disk_classify(d, anchor) is not Position.BOUNDARY:
        raise PreconditionViolated(f"anchor {anchor} is not on the disk boundary")
    if disk_classify(d, target) is not Position.INTERIOR:
        raise PreconditionViolated(f"target {target} is not interior to the disk")
    t = shrink_parameter(d, anchor, target)
    cx = anchor.x + t * (d.center.x - anchor.x)
    cy = anchor.y + t * (d.center.y - anchor.y)
    center = Point(cx, cy)
    shrunk = Disk(center, dist_sq(center, anchor))
    # Internal tangency at the anchor, in squared form; a failure here would
    # mean the algebra above is wrong, not that the input is bad.
    if not disks_internally_tangent(d, shrunk):
        raise AssertionError("shrunken disk lost tangency with its parent")
    return shrunk


def disks_internally_tangent(outer: Disk, inner: Disk) -> bool:
    """dist(centers) = R - r, tested as a rational identity on squares."""
    if inner.radius_sq > outer.radius_sq:
        return False
    d2 = dist_sq(outer.center, inner.center)
    m = outer.radius_sq + inner.radius_sq - d2
    return m >= 0 and m * m == 4 * outer.radius_sq * inner.radius_sq


def disk_contains_disk(outer: Disk, inner: Disk) -> bool:
    """Closed containment: dist(centers) <= R - r, in squared form."""
    if inner.radius_sq > outer.radius_sq:
        return False
    d2 = dist_sq(outer.center, inner.center)
    m = outer.radius_sq + inner.radius_sq - d2
    return m >= 0 and m * m >= 4 * outer.radius_sq * inner.radius_sq


def disks_interior_disjoint(a: Disk, b: Disk) -> bool:
    """Open interiors disjoint: dist(centers) >= R + r, in squared form.

    External tangency counts as disjoint (the shared point is a boundary
    point of both disks, not an interior point of either).
    """
    d2 = dist_sq(a.center, b.center)
    m = d2 - a.radius_sq - b.radius_sq
    return m >= 0 and m * m >= 4 * a.radius_sq * b.radius_sq


# ---------------------------------------------------------------------------
# General position
# ---------------------------------------------------------------------------


def general_position(points: Sequence[Point]) -> Optional[Violation]:
    """None when no two points coincide, no three are collinear, and no four
    are cocircular; otherwise the first violation found, with witnesses.

    The cocircularity scan is the naive O(n^4) one. At desk scale (n <= 64)
    this is seconds, and it is the only scan whose correctness is obvious.
    """
    pts = list(points)
    n = len(pts)
    seen: dict[Point, int] = {}
    for i, p in enumerate(pts):
        if p in seen:
            return Violation(ViolationKind.DUPLICATE, (seen[p], i))
        seen[p] = i
    for i, j, k in combinations(range(n), 3):
        if orient(pts[i], pts[j], pts[k]) is Orientation.COLLINEAR:
            return Violation(ViolationKind.COLLINEAR, (i, j, k))
    for i, j, k, m in combinations(range(n), 4):
        if in_circle(pts[i], pts[j], pts[k], pts[m]) is CirclePosition.ON:
            return Violation(ViolationKind.COCIRCULAR, (i, j, k, m))
    return None


def general_position_added(base: Sequence[Point], added: Sequence[Point]) -> Optional[Violation]:
    """General-position check of base + added, assuming base alone passes.

    Only tuples touching an added point are scanned, which drops the
    cocircularity cost from O((n+k)^4) to O(k n^3). Indices in a returned
    violation refer to the concatenated sequence.
    """
    pts = list(base) + list(added)
    n_base = len(base)
    n = len(pts)
    added_range = range(n_base, n)
    base_range = range(n_base)
    for i in added_range:
        for j in range(n):
            if j != i and pts[j] == pts[i]:
                return Violation(ViolationKind.DUPLICATE, tuple(sorted((j, i))))
    for a in added_range:
        for i, j in combinations(range(a), 2):
            if orient(pts[i], pts[j], pts[a]) is Orientation.COLLINEAR:
                return Violation(ViolationKind.COLLINEAR, (i, j, a))
    for a in added_range:
        for i, j, k in combinations(range(a), 3):
            if orient(pts[i], pts[j], pts[k]) is Orientation.COLLINEAR:
                continue  # caught above when it involves an added point
            if in_circle(pts[i], pts[j], pts[k], pts[a]) is CirclePosition.ON:
                return Violation(ViolationKind.COCIRCULAR, (i, j, k, a))
    return None


def int_at_least_sqrt(value: Fraction) -> int:
    """Smallest convenient integer >= sqrt(value), for rational scale bounds."""
    if value < 0:
        raise ValueError("negative value")
    return math.isqrt(math.ceil(value)) + 1
