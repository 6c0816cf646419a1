"""Blocking sets: verification, the lower-bound report, and two tight
instance families.

A point set B blocks a point set P when the Delaunay triangulation of their
union has no edge joining two points of P. Verification is direct: build
the union's triangulation and scan. The constructions realize "close" and
"approximately" with a halving loop whose every emitted instance is checked
exactly before being returned, so instances are unconditionally correct
rather than asymptotically plausible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .delaunay import Triangulation, build
from .errors import ConstructionFailed, DegenerateInput, PreconditionViolated
from .exactgeom import (
    Disk,
    Point,
    Position,
    disk_classify,
    disks_interior_disjoint,
    dist_sq,
    general_position,
    midpoint,
    orient,
)


class BlockingVerdict(NamedTuple):
    blocked: bool
    witness: Optional[tuple[int, int]]  # a surviving P-P edge when not blocked


@dataclass(frozen=True)
class LowerBoundReport:
    blocked: bool
    p_independent: bool  # P is an independent set of the union triangulation
    size_ok: bool  # |B| >= |P|
    p_size: int
    b_size: int

    @property
    def alarm(self) -> bool:
        """True when a blocked instance contradicts the size lower bound."""
        return self.blocked and not (self.p_independent and self.size_ok)


@dataclass(frozen=True)
class BlockingInstance:
    points: tuple[Point, ...]
    blockers: tuple[Point, ...]
    verified: bool


def _union_triangulation(p: Sequence[Point], b: Sequence[Point]) -> Optional[Triangulation]:
    pts = tuple(p) + tuple(b)
    if len(p) < 2:
        raise PreconditionViolated("need at least two points to block")
    violation = general_position(pts)
    if violation is not None:
        raise DegenerateInput(violation)
    if len(pts) == 2:
        return None  # the bare pair; its single edge exists by definition
    return build(pts)


def _pp_edges(tri: Triangulation, p_count: int) -> list[tuple[int, int]]:
    return [(e.u, e.v) for e in tri.edges if e.u < p_count and e.v < p_count]


def verify_blocking(p: Sequence[Point], b: Sequence[Point]) -> BlockingVerdict:
    """BLOCKED iff the union's Delaunay triangulation has no P-P edge."""
    tri = _union_triangulation(p, b)
    if tri is None:
        return BlockingVerdict(False, (0, 1))
    offenders = _pp_edges(tri, len(p))
    if offenders:
        return BlockingVerdict(False, offenders[0])
    return BlockingVerdict(True, None)


def lower_bound_report(p: Sequence[Point], b: Sequence[Point]) -> LowerBoundReport:
    """Blocking verdict plus the two facts a blocked instance must satisfy:
    P independent in the union triangulation, and |B| >= |P|.

    A blocked instance failing either is an alarm, never silently accepted;
    callers check ``.alarm``.
    """
    tri = _union_triangulation(p, b)
    if tri is None:
        return LowerBoundReport(False, False, len(b) >= len(p), len(p), len(b))
    offenders = _pp_edges(tri, len(p))
    blocked = not offenders
    p_independent = not offenders  # same scan, stated as the independence fact
    return LowerBoundReport(blocked, p_independent, len(b) >= len(p), len(p), len(b))


# ---------------------------------------------------------------------------
# Fan instances (tightness family: n points blocked by exactly n)
# ---------------------------------------------------------------------------


def _rot90(v: Point) -> Point:
    return Point(-v.y, v.x)


def _outward_normal(a: Point, b: Point, inside_probe: Point) -> Point:
    """Perpendicular of (b - a) pointing away from the probe's side."""
    n = _rot90(Point(b.x - a.x, b.y - a.y))
    side = orient(a, b, inside_probe)
    tip = Point(a.x + n.x, a.y + n.y)
    if orient(a, b, tip) is side:
        n = Point(-n.x, -n.y)
    return n


def fan_instance(n: int, seed: int = 0) -> BlockingInstance:
    """A hub-and-arc point set whose triangulation is blocked by n points.

    One point sits at the origin; n-1 points sit at rational near-unit radii
    on a sub-quarter arc parameterized rationally (half-angle substitution),
    so the hub connects to every arc point and consecutive arc points are
    adjacent. Blockers: one just outside each of the two hub edges, hugging
    the hub, and one just outside each far hull edge at its midpoint. The
    jitter and offset scale halves until general position, the expected edge
    pattern, and the blocking verdict all verify exactly.
    """
    if n < 4:
        raise PreconditionViolated(f"fan instances need n >= 4, got {n}")
    eps = Fraction(1, 8)
    for attempt in range(40):
        rng = random.Random(f"fan-{n}-{seed}-{attempt}")
        magnitudes = rng.sample(range(1, 257), n - 1)
        hub = Point(Fraction(0), Fraction(0))
        pts = [hub]
        for i in range(n - 1):
            t = Fraction(1, 8) + Fraction(3, 4) * Fraction(i, n - 2)
            radius = 1 + eps * rng.choice((-1, 1)) * Fraction(magnitudes[i], 512)
            den = 1 + t * t
            pts.append(Point(radius * (1 - t * t) / den, radius * 2 * t / den))
        points = tuple(pts)
        if general_position(points) is not None:
            eps /= 2
            continue
        tri = build(points)
        if len(tri.hull) != n:
            eps /= 2
            continue
        spokes = {(0, i) for i in range(1, n)}
        rim = {(i, i + 1) for i in range(1, n - 1)}
        if tri.edge_set() != spokes | rim:
            eps /= 2
            continue

        blockers: list[Point] = []
        # Two blockers close to the hub, just outside the hub's hull edges.
        for arm, probe in ((1, n - 1), (n - 1, 1)):
            c = points[arm]
            nrm = _outward_normal(hub, c, points[probe])
            blockers.append(
                Point(eps * c.x + eps * eps * nrm.x, eps * c.y + eps * eps * nrm.y)
            )
        # One blocker just outside each far hull edge, at its midpoint.
        for i in range(1, n - 1):
            a, c = points[i], points[i + 1]
            m = midpoint(a, c)
            nrm = _outward_normal(a, c, hub)
            blockers.append(Point(m.x + eps * nrm.x, m.y + eps * nrm.y))

        b = tuple(blockers)
        if general_position(points + b) is not None:
            eps /= 2
            continue
        if not verify_blocking(points, b).blocked:
            eps /= 2
            continue
        return BlockingInstance(points, b, verified=True)
    raise ConstructionFailed(f"fan construction did not verify after 40 halvings (n={n})")


# ---------------------------------------------------------------------------
# Interior-disjoint witness-disk family
# ---------------------------------------------------------------------------


class DisjointDiskInstance(NamedTuple):
    points: tuple[Point, ...]
    disks: tuple[Disk, ...]  # one verified empty witness per consecutive edge
    pairwise_disjoint: bool


def _externally_tangent(a: Disk, b: Disk) -> bool:
    d2 = dist_sq(a.center, b.center)
    m = d2 - a.radius_sq - b.radius_sq
    return m >= 0 and m * m == 4 * a.radius_sq * b.radius_sq


def _is_witness(points: Sequence[Point], d: Disk, i: int, j: int) -> bool:
    for k, p in enumerate(points):
        pos = disk_classify(d, p)
        if k in (i, j):
            if pos is not Position.BOUNDARY:
                return False
        elif pos is not Position.EXTERIOR:
            return False
    return True


def disjoint_disk_instance(n: int) -> DisjointDiskInstance:
    """Points on a nearly flat convex arc with geometrically growing gaps,
    plus one witness disk per consecutive edge, interior-disjoint as a family.

    Disks of consecutive edges share a boundary vertex, so the best possible
    separation there is exact external tangency; the chain is built to be
    tangent by construction (each center lies on the line through the shared
    vertex and the previous center) and verified. Non-consecutive pairs come
    out strictly disjoint. The arc flattens (denominator doubling) until
    every disk verifies as an empty witness.
    """
    if n < 2:
        raise PreconditionViolated(f"need n >= 2, got {n}")
    xs = [Fraction(3**i - 1, 2) for i in range(n)]
    flat = 2**20
    for attempt in range(40):
        points = tuple(Point(x, x * x / flat) for x in xs)
        if n == 2:
            d = Disk(midpoint(points[0], points[1]), dist_sq(midpoint(points[0], points[1]), points[0]))
            return DisjointDiskInstance(points, (d,), True)
        violation = general_position(points)
        if violation is not None:  # unreachable for this arc; kept as a guard
            flat *= 2
            continue
        tri = build(points)
        if not all(tri.is_edge(i, i + 1) for i in range(n - 1)):
            flat *= 2
            continue

        disks = []
        c0 = midpoint(points[0], points[1])
        disks.append(Disk(c0, dist_sq(c0, points[0])))
        ok = _is_witness(points, disks[0], 0, 1)
        for i in range(1, n - 1):
            if not ok:
                break
            shared = points[i]
            after = points[i + 1]
            prev_center = disks[-1].center
            d = Point(shared.x - prev_center.x, shared.y - prev_center.y)
            den = 2 * (d.x * (after.x - shared.x) + d.y * (after.y - shared.y))
            if den <= 0:
                ok = False
                break
            s = dist_sq(shared, after) / den
            center = Point(shared.x + s * d.x, shared.y + s * d.y)
            nxt = Disk(center, dist_sq(center, shared))
            if not _is_witness(points, nxt, i, i + 1):
                ok = False
                break
            if not _externally_tangent(disks[-1], nxt):
                ok = False
                break
            disks.append(nxt)
        if ok and len(disks) == n - 1:
            if all(
                disks_interior_disjoint(disks[i], disks[j])
                for i in range(len(disks))
                for j in range(i + 1, len(disks))
            ):
                return DisjointDiskInstance(points, tuple(disks), True)
        flat *= 2
    raise ConstructionFailed(f"disjoint-disk construction failed after 40 doublings (n={n})")
