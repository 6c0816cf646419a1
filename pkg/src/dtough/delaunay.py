"""Delaunay triangulation construction and verification.

``build`` runs incremental insertion with exact in-circle edge flipping and
a linear-walk point location (no spatial index; desk scale). Its output is
never trusted: ``verify_delaunay`` re-checks the empty-circumdisk property
of every face against every vertex by brute force, and tests run both.

A ``Triangulation`` is an immutable value. Vertex indices refer to the
``vertices`` tuple, triangles are CCW index triples, and the convex hull is
a CCW cycle starting at its smallest index.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .errors import (
    DegenerateInput,
    NotInteriorEdge,
    TooFewPoints,
    WitnessSearchFailed,
)
from .exactgeom import (
    CirclePosition,
    Disk,
    Orientation,
    Point,
    Position,
    circumdisk,
    disk_classify,
    dist_sq,
    general_position,
    in_circle,
    midpoint,
    orient,
)


class EdgeKind(Enum):
    BOUNDARY = "boundary"
    INTERIOR = "interior"


class Edge(NamedTuple):
    u: int  # smaller index
    v: int
    kind: EdgeKind


class CounterExample(NamedTuple):
    """A face whose circumdisk is not empty, with the offending vertex."""

    triangle: tuple[int, int, int]
    vertex: int


def _norm_tri(a: int, b: int, c: int) -> tuple[int, int, int]:
    """Rotate a CCW triple so the smallest index leads (orientation kept)."""
    if a <= b and a <= c:
        return (a, b, c)
    if b <= a and b <= c:
        return (b, c, a)
    return (c, a, b)


def _edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Triangulation:
    """Vertices, CCW triangles, edge adjacency, and the convex hull cycle.

    Treat instances as immutable; every operation in this package builds new
    values instead of mutating. ``adjacency`` maps each normalized edge to
    the indices (into ``triangles``) of its one or two incident faces.
    """

    vertices: tuple[Point, ...]
    triangles: tuple[tuple[int, int, int], ...]
    adjacency: dict[tuple[int, int], tuple[int, ...]]
    hull: tuple[int, ...]
    edges: tuple[Edge, ...]
    neighbors: tuple[tuple[int, ...], ...] = field(repr=False)

    def __len__(self) -> int:
        return len(self.vertices)

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((e.u, e.v) for e in self.edges)

    def is_edge(self, u: int, v: int) -> bool:
        return _edge_key(u, v) in self.adjacency

    def edge(self, u: int, v: int) -> Edge:
        key = _edge_key(u, v)
        tris = self.adjacency[key]
        kind = EdgeKind.BOUNDARY if len(tris) == 1 else EdgeKind.INTERIOR
        return Edge(key[0], key[1], kind)

    def opposite_vertices(self, u: int, v: int) -> tuple[int, ...]:
        """Third vertices of the faces incident to edge (u, v)."""
        key = _edge_key(u, v)
        out = []
        for ti in self.adjacency[key]:
            tri = self.triangles[ti]
            out.append(next(w for w in tri if w != u and w != v))
        return tuple(out)

    def face_disk(self, ti: int) -> Disk:
        a, b, c = self.triangles[ti]
        return circumdisk(self.vertices[a], self.vertices[b], self.vertices[c])


def _hull_cycle(n: int, boundary_edges: list[tuple[int, int]], pts: Sequence[Point]) -> tuple[int, ...]:
    """Order boundary edges into a CCW cycle starting at the smallest index."""
    ring: dict[int, list[int]] = defaultdict(list)
    for u, v in boundary_edges:
        ring[u].append(v)
        ring[v].append(u)
    for v, nbrs in ring.items():
        if len(nbrs) != 2:
            raise ValueError(f"boundary is not a simple cycle at vertex {v}")
    start = min(ring)
    cycle = [start, ring[start][0]]
    while True:
        prev, cur = cycle[-2], cycle[-1]
        nxt = ring[cur][0] if ring[cur][0] != prev else ring[cur][1]
        if nxt == start:
            break
        cycle.append(nxt)
        if len(cycle) > len(boundary_edges):
            raise ValueError("boundary edges do not close into one cycle")
    if len(cycle) != len(boundary_edges):
        raise ValueError("boundary edges form more than one cycle")
    area2 = Fraction(0)
    for i in range(len(cycle)):
        a = pts[cycle[i]]
        b = pts[cycle[(i + 1) % len(cycle)]]
        area2 += a.x * b.y - b.x * a.y
    if area2 < 0:
        cycle = [cycle[0]] + cycle[:0:-1]
    return tuple(cycle)


def from_triangles(points: Sequence[Point], triangles: Sequence[tuple[int, int, int]]) -> Triangulation:
    """Assemble and structurally validate a triangulation.

    Checks: CCW faces, every edge incident to one face (boundary) or two
    (interior), a single convex CCW boundary cycle, every vertex used, and
    the face count implied by Euler's formula. Does NOT check the empty
    circle property; that is ``verify_delaunay``'s job, which lets tests
    assemble deliberately non-Delaunay triangulations.
    """
    pts = tuple(points)
    n = len(pts)
    if n < 3:
        raise TooFewPoints(f"need at least 3 points, got {n}")
    tris = []
    seen = set()
    used = set()
    for a, b, c in triangles:
        if len({a, b, c}) != 3 or not all(0 <= i < n for i in (a, b, c)):
            raise ValueError(f"bad triangle {(a, b, c)}")
        if orient(pts[a], pts[b], pts[c]) is not Orientation.CCW:
            raise ValueError(f"triangle {(a, b, c)} is not CCW")
        t = _norm_tri(a, b, c)
        if t in seen:
            raise ValueError(f"duplicate triangle {t}")
        seen.add(t)
        tris.append(t)
        used.update(t)
    if used != set(range(n)):
        raise ValueError("some vertices belong to no triangle")
    tris.sort()
    adjacency: dict[tuple[int, int], list[int]] = defaultdict(list)
    for ti, (a, b, c) in enumerate(tris):
        for u, v in ((a, b), (b, c), (c, a)):
            adjacency[_edge_key(u, v)].append(ti)
    boundary = []
    for key, inc in adjacency.items():
        if len(inc) == 1:
            boundary.append(key)
        elif len(inc) != 2:
            raise ValueError(f"edge {key} belongs to {len(inc)} triangles")
    hull = _hull_cycle(n, boundary, pts)
    h = len(hull)
    for i in range(h):
        a, b, c = hull[i], hull[(i + 1) % h], hull[(i + 2) % h]
        if orient(pts[a], pts[b], pts[c]) is not Orientation.CCW:
            raise ValueError("hull is not convex")
    if len(tris) != 2 * n - 2 - h:
        raise ValueError(
            f"face count {len(tris)} does not tile the hull (expected {2 * n - 2 - h})"
        )
    edges = tuple(
        Edge(u, v, EdgeKind.BOUNDARY if len(inc) == 1 else EdgeKind.INTERIOR)
        for (u, v), inc in sorted(adjacency.items())
    )
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        nbrs[e.u].add(e.v)
        nbrs[e.v].add(e.u)
    return Triangulation(
        vertices=pts,
        triangles=tuple(tris),
        adjacency={k: tuple(v) for k, v in sorted(adjacency.items())},
        hull=hull,
        edges=edges,
        neighbors=tuple(tuple(sorted(s)) for s in nbrs),
    )


# ---------------------------------------------------------------------------
# Incremental construction
# ---------------------------------------------------------------------------


class _Builder:
    """Mutable scaffolding used only inside build()."""

    def __init__(self, pts: Sequence[Point]):
        self.pts = pts
        self.tris: set[tuple[int, int, int]] = set()
        self.edge2tris: dict[tuple[int, int], set[tuple[int, int, int]]] = defaultdict(set)

    def _mk(self, a: int, b: int, c: int) -> tuple[int, int, int]:
        if orient(self.pts[a], self.pts[b], self.pts[c]) is Orientation.CW:
            b, c = c, b
        return _norm_tri(a, b, c)

    def add(self, a: int, b: int, c: int) -> tuple[int, int, int]:
        t = self._mk(a, b, c)
        self.tris.add(t)
        for u, v in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            self.edge2tris[_edge_key(u, v)].add(t)
        return t

    def remove(self, t: tuple[int, int, int]) -> None:
        self.tris.remove(t)
        for u, v in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            key = _edge_key(u, v)
            self.edge2tris[key].discard(t)
            if not self.edge2tris[key]:
                del self.edge2tris[key]

    def locate(self, p: Point) -> Optional[tuple[int, int, int]]:
        # General position means p is never on an edge: strictly inside or out.
        for t in self.tris:
            a, b, c = (self.pts[i] for i in t)
            if (
                orient(a, b, p) is Orientation.CCW
                and orient(b, c, p) is Orientation.CCW
                and orient(c, a, p) is Orientation.CCW
            ):
                return t
        return None

    def hull(self) -> tuple[int, ...]:
        boundary = [k for k, inc in self.edge2tris.items() if len(inc) == 1]
        return _hull_cycle(len(self.pts), boundary, self.pts)

    def legalize(self, stack: list[tuple[int, int, int]]) -> None:
        """Flip edges opposite the last inserted vertex until locally Delaunay."""
        while stack:
            u, v, p = stack.pop()
            key = _edge_key(u, v)
            inc = self.edge2tris.get(key, set())
            if len(inc) != 2:
                continue
            t_p = next((t for t in inc if p in t), None)
            if t_p is None:
                continue
            t_o = next(t for t in inc if t != t_p)
            w = next(x for x in t_o if x != u and x != v)
            a, b, c = (self.pts[i] for i in t_p)
            side = in_circle(a, b, c, self.pts[w])
            if side is CirclePosition.ON:
                raise AssertionError("cocircular flip test on general-position input")
            if side is CirclePosition.INSIDE:
                self.remove(t_p)
                self.remove(t_o)
                self.add(p, u, w)
                self.add(p, w, v)
                stack.append((u, w, p))
                stack.append((w, v, p))

    def insert(self, i: int) -> None:
        p = self.pts[i]
        t = self.locate(p)
        stack = []
        if t is not None:
            a, b, c = t
            self.remove(t)
            self.add(a, b, i)
            self.add(b, c, i)
            self.add(c, a, i)
            stack = [(a, b, i), (b, c, i), (c, a, i)]
        else:
            hull = self.hull()
            h = len(hull)
            for j in range(h):
                u, v = hull[j], hull[(j + 1) % h]
                if orient(self.pts[u], self.pts[v], p) is Orientation.CW:
                    self.add(v, u, i)
                    stack.append((u, v, i))
            if not stack:
                raise AssertionError("outside point sees no hull edge")
        self.legalize(stack)


def build(points: Sequence[Point]) -> Triangulation:
    """Delaunay triangulation of a general-position point set.

    Incremental insertion in input order with exact flipping. Uniqueness
    under general position makes the result independent of insertion order;
    tests check this by shuffling inputs.
    """
    pts = tuple(points)
    if len(pts) < 3:
        raise TooFewPoints(f"need at least 3 points, got {len(pts)}")
    violation = general_position(pts)
    if violation is not None:
        raise DegenerateInput(violation)
    builder = _Builder(pts)
    builder.add(0, 1, 2)
    for i in range(3, len(pts)):
        builder.insert(i)
    return from_triangles(pts, sorted(builder.tris))


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def verify_delaunay(tri: Triangulation) -> Optional[CounterExample]:
    """Brute-force empty-circumdisk check, independent of how tri was built.

    None when every face's circumdisk excludes every non-incident vertex;
    otherwise the first counterexample in face order.
    """
    for ti, t in enumerate(tri.triangles):
        d = tri.face_disk(ti)
        for vi, p in enumerate(tri.vertices):
            if vi in t:
                continue
            if disk_classify(d, p) is not Position.EXTERIOR:
                return CounterExample(t, vi)
    return None


def edge_angle_check(tri: Triangulation, u: int, v: int) -> bool:
    """Whether the two angles opposite an interior edge sum below a straight
    angle, decided by the exact in-circle form of that inequality.

    For faces (u, v, r) and (u, v, s) the angle sum at r and s is less than
    180 degrees exactly when s lies strictly outside the circle through
    u, r, v.
    """
    key = _edge_key(u, v)
    if key not in tri.adjacency:
        raise NotInteriorEdge(f"({u}, {v}) is not an edge")
    opp = tri.opposite_vertices(u, v)
    if len(opp) != 2:
        raise NotInteriorEdge(f"({u}, {v}) is a boundary edge")
    r, s = opp
    pos = in_circle(tri.vertices[u], tri.vertices[r], tri.vertices[v], tri.vertices[s])
    return pos is CirclePosition.OUTSIDE


def _witness_ok(tri: Triangulation, d: Disk, u: int, v: int) -> bool:
    for i, p in enumerate(tri.vertices):
        pos = disk_classify(d, p)
        if i == u or i == v:
            if pos is not Position.BOUNDARY:
                return False
        elif pos is not Position.EXTERIOR:
            return False
    return True


def witness_disk(tri: Triangulation, u: int, v: int) -> Disk:
    """A verified empty disk with exactly the edge's endpoints on its boundary.

    Candidate centers come from the pencil of circles through the endpoints,
    whose centers form the perpendicular bisector line of the edge. For an
    interior edge the two face circumcenters delimit a segment of valid
    centers and the midpoint always verifies. For a boundary edge the face
    circumcenter is one end of the valid range; which side of it works
    depends on whether the face apex sits inside or outside the edge's
    diametral disk, and a right angle at the apex degenerates the segment
    entirely (circumcenter equals edge midpoint), in which case the search
    leaves along the bisector instead. Every candidate is verified exactly
    against all vertices before being returned.
    """
    key = _edge_key(u, v)
    if key not in tri.adjacency:
        raise NotInteriorEdge(f"({u}, {v}) is not an edge")
    pu, pv = tri.vertices[key[0]], tri.vertices[key[1]]
    inc = tri.adjacency[key]
    centers = [tri.face_disk(ti).center for ti in inc]

    def pencil_disk(center: Point) -> Disk:
        return Disk(center, dist_sq(center, pu))

    candidates: list[Point] = []
    if len(centers) == 2:
        c1, c2 = centers
        for k in range(1, 34):
            t = Fraction(1, 2**k)
            candidates.append(Point(c1.x + t * (c2.x - c1.x), c1.y + t * (c2.y - c1.y)))
    else:
        c = centers[0]
        mid = midpoint(pu, pv)
        apex = tri.opposite_vertices(*key)[0]
        ap = tri.vertices[apex]
        if c == mid:
            # Right angle at the apex: the circumcenter IS the edge midpoint,
            # so step off along the bisector, away from the apex's side.
            perp = Point(-(pv.y - pu.y), pv.x - pu.x)
            sign = 1 if (perp.x * (pu.x - ap.x) + perp.y * (pu.y - ap.y)) > 0 else -1
            for k in range(1, 34):
                t = Fraction(sign, 2**k)
                candidates.append(Point(mid.x + t * perp.x, mid.y + t * perp.y))
        else:
            diametral = Disk(mid, dist_sq(mid, pu))
            apex_pos = disk_classify(diametral, ap)
            # Apex inside the diametral disk: valid centers lie beyond the
            # circumcenter, away from the edge. Outside: toward the midpoint.
            sign = -1 if apex_pos is Position.INTERIOR else 1
            for k in range(1, 34):
                t = Fraction(sign, 2**k)
                candidates.append(Point(c.x + t * (mid.x - c.x), c.y + t * (mid.y - c.y)))
    for center in candidates:
        d = pencil_disk(center)
        if _witness_ok(tri, d, key[0], key[1]):
            return d
    raise WitnessSearchFailed(f"no verified witness disk for edge {key}")
