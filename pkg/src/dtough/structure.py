"""Combinatorial structure of Delaunay triangulations.

Connectivity after vertex removal, exhaustive toughness, maximum independent
sets, perfect matchings, and the counting audit that certifies the
floor(n/2) independent-set bound instance by instance.

The audit machinery works on an augmented triangulation: two far-away
"sentinel" points are added so that, together with one hull vertex kept in
the removed set, they enclose the whole triangulation in a triangle while
staying outside every face circumdisk. The enclosure makes the removed-set
subgraph's outer face a triangle and every hole a bounded simple polygon,
which is what the face/edge double count needs. Sentinel placement is a
doubling search whose every candidate is verified with exact arithmetic;
nothing about the placement is trusted.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, NamedTuple, Optional, Sequence

from .delaunay import Triangulation, build, edge_angle_check, _edge_key
from .errors import (
    InvariantBroken,
    NotIndependent,
    PreconditionViolated,
    SearchExhausted,
    TooLarge,
)
from .exactgeom import (
    Orientation,
    Point,
    Position,
    disk_classify,
    dist_sq,
    general_position_added,
    int_at_least_sqrt,
    orient,
    triangle_classify,
)

VertexSet = frozenset[int]
Matching = frozenset[tuple[int, int]]


# ---------------------------------------------------------------------------
# Connectivity and toughness
# ---------------------------------------------------------------------------


def components_after_removal(tri: Triangulation, removed: Iterable[int]) -> tuple[VertexSet, ...]:
    """Connected components of the graph induced on the surviving vertices.

    Sorted by smallest member, so the partition is deterministic.
    """
    gone = frozenset(removed)
    if not gone <= frozenset(range(len(tri))):
        raise PreconditionViolated("removed set contains out-of-range indices")
    alive = [v for v in range(len(tri)) if v not in gone]
    seen: set[int] = set()
    comps = []
    for start in alive:
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            for u in tri.neighbors[v]:
                if u not in gone and u not in seen:
                    seen.add(u)
                    comp.add(u)
                    queue.append(u)
        comps.append(frozenset(comp))
    return tuple(sorted(comps, key=min))


def _adjacency_masks(tri: Triangulation) -> list[int]:
    masks = [0] * len(tri)
    for e in tri.edges:
        masks[e.u] |= 1 << e.v
        masks[e.v] |= 1 << e.u
    return masks


def _component_count_mask(masks: list[int], alive: int) -> int:
    count = 0
    left = alive
    while left:
        comp = left & -left
        while True:
            grown = comp
            m = comp
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                grown |= masks[v] & alive
            if grown == comp:
                break
            comp = grown
        count += 1
        left &= ~comp
    return count


class ToughnessWitness(NamedTuple):
    ratio: Fraction
    separator: VertexSet
    component_count: int


def toughness_exhaustive(tri: Triangulation, max_n: int = 18) -> Optional[ToughnessWitness]:
    """Minimum of |S| / components(T - S) over all disconnecting S, exactly.

    Enumerates every nonempty vertex subset, so it is gated (default n <= 18;
    pass a larger ``max_n`` to opt into the exponential run). Returns None
    when no subset disconnects the graph.
    """
    n = len(tri)
    if n > max_n:
        raise TooLarge(f"toughness scan on {n} > {max_n} vertices refused")
    masks = _adjacency_masks(tri)
    full = (1 << n) - 1
    best: Optional[ToughnessWitness] = None
    for s_mask in range(1, full + 1):
        alive = full & ~s_mask
        if alive == 0:
            continue
        comps = _component_count_mask(masks, alive)
        if comps < 2:
            continue
        ratio = Fraction(s_mask.bit_count(), comps)
        if best is None or ratio < best.ratio:
            best = ToughnessWitness(
                ratio,
                frozenset(i for i in range(n) if s_mask >> i & 1),
                comps,
            )
    return best


# ---------------------------------------------------------------------------
# Maximum independent set
# ---------------------------------------------------------------------------


def max_independent_set(tri: Triangulation, max_n: int = 30) -> tuple[int, VertexSet]:
    """Exact maximum independent set by branch and bound with degree pivoting.

    Vertices with at most one available neighbor are taken greedily (always
    safe), then the search branches on a maximum-degree pivot. The
    certificate is deterministic for a given triangulation.
    """
    n = len(tri)
    if n > max_n:
        raise TooLarge(f"independent set search on {n} > {max_n} vertices refused")
    adj = _adjacency_masks(tri)
    best_size = 0
    best_mask = 0

    def grab(avail: int, size: int, mask: int) -> None:
        nonlocal best_size, best_mask
        while avail:
            if size + avail.bit_count() <= best_size:
                return
            reduced = False
            m = avail
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                if (adj[v] & avail).bit_count() <= 1:
                    mask |= 1 << v
                    size += 1
                    avail &= ~(adj[v] | 1 << v)
                    reduced = True
                    break
            if not reduced:
                break
        if avail == 0:
            if size > best_size:
                best_size = size
                best_mask = mask
            return
        pivot = -1
        pivot_deg = -1
        m = avail
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            d = (adj[v] & avail).bit_count()
            if d > pivot_deg:
                pivot_deg = d
                pivot = v
        bit = 1 << pivot
        grab(avail & ~(adj[pivot] | bit), size + 1, mask | bit)
        grab(avail & ~bit, size, mask)

    grab((1 << n) - 1, 0, 0)
    cert = frozenset(i for i in range(n) if best_mask >> i & 1)
    return best_size, cert


# ---------------------------------------------------------------------------
# Perfect matching
# ---------------------------------------------------------------------------


def perfect_matching(tri_or_pair) -> Optional[Matching]:
    """A perfect matching of a Delaunay triangulation, or None for odd order.

    Accepts a two-point sequence as the degenerate case (its single edge is
    the matching); everything else must be a Triangulation. The search is a
    memoized exhaustive backtrack over vertex bitmasks, exact at desk scale.
    An even-order input with no matching found is reported as a broken
    invariant rather than None, since even-order Delaunay triangulations
    always have one.
    """
    # TODO: switch to a blossom matcher if instances outgrow the memoized search.
    if not isinstance(tri_or_pair, Triangulation):
        pts = tuple(tri_or_pair)
        if len(pts) != 2:
            raise PreconditionViolated("expected a Triangulation or exactly two points")
        return frozenset({(0, 1)})
    tri = tri_or_pair
    n = len(tri)
    if n % 2:
        return None
    adj = _adjacency_masks(tri)
    dead: set[int] = set()

    def search(rem: int) -> Optional[list[tuple[int, int]]]:
        if rem == 0:
            return []
        if rem in dead:
            return None
        v = (rem & -rem).bit_length() - 1
        cand = adj[v] & rem
        while cand:
            u = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            rest = search(rem & ~(1 << v) & ~(1 << u))
            if rest is not None:
                rest.append((v, u))
                return rest
        dead.add(rem)
        return None

    pairs = search((1 << n) - 1)
    if pairs is None:
        raise InvariantBroken("even-order Delaunay triangulation without a perfect matching")
    return frozenset(_edge_key(u, v) for u, v in pairs)


# ---------------------------------------------------------------------------
# Sentinel augmentation
# ---------------------------------------------------------------------------


class SentinelAugmentation(NamedTuple):
    tri: Triangulation  # triangulation of the original points plus both sentinels
    anchor: int  # hull vertex of the input kept in the removed set
    sentinels: tuple[Point, Point]  # appended as the last two vertex indices


def sentinel_augment(tri: Triangulation, removed: Iterable[int]) -> SentinelAugmentation:
    """Add two verified sentinel points enclosing the triangulation.

    Requirements checked exactly for every candidate placement:

    * every original vertex except the anchor lies strictly inside the
      triangle (anchor, s1, s2); the anchor is its corner;
    * both sentinels are exterior to every face circumdisk, which is enough
      to keep them out of every disk certifying an edge;
    * the enlarged point set is still in general position;
    * every edge of the input survives into the augmented triangulation,
      whose hull is exactly the sentinel triangle.

    Every vertex sits in the wedge at the anchor spanned by its two hull
    edges (the interior angle is below a straight angle), so the sentinels
    are placed far along those two edge directions, each tilted slightly
    outward to pull the edges' far endpoints strictly inside. The reach
    doubles and the tilt halves per attempt; a shrinking vertical nudge on
    one sentinel steps around any exact degeneracy a symmetric placement
    happens to hit.
    """
    gone = frozenset(removed)
    hull_in_removed = [h for h in tri.hull if h in gone]
    if not hull_in_removed:
        raise PreconditionViolated("removed set must contain a hull vertex")
    anchor = min(hull_in_removed)
    pos = tri.hull.index(anchor)
    a_pt = tri.vertices[tri.hull[pos - 1]]
    b_pt = tri.vertices[tri.hull[(pos + 1) % len(tri.hull)]]
    u_pt = tri.vertices[anchor]

    def unit_ish(v: Point) -> Point:
        m = max(abs(v.x), abs(v.y))
        return Point(v.x / m, v.y / m)  # length in [1, sqrt(2)]

    def away_from(leg: Point, probe: Point) -> Point:
        """Perpendicular of leg pointing away from the side holding probe."""
        n = Point(-leg.y, leg.x)
        along = Point(u_pt.x + leg.x, u_pt.y + leg.y)
        if orient(u_pt, along, Point(u_pt.x + n.x, u_pt.y + n.y)) is orient(u_pt, along, probe):
            n = Point(-n.x, -n.y)
        return n

    d_a = unit_ish(Point(a_pt.x - u_pt.x, a_pt.y - u_pt.y))
    d_b = unit_ish(Point(b_pt.x - u_pt.x, b_pt.y - u_pt.y))
    n_a = away_from(d_a, b_pt)
    n_b = away_from(d_b, a_pt)

    face_disks = [tri.face_disk(ti) for ti in range(len(tri.triangles))]
    bound = Fraction(0)
    for fd in face_disks:
        bound = max(bound, 2 * (dist_sq(fd.center, u_pt) + fd.radius_sq))
    scale = 4 * int_at_least_sqrt(bound)
    tri_edges = tri.edge_set()

    for attempt in range(64):
        reach = scale * 2**attempt
        tilt = Fraction(1, 2 ** (attempt + 2))
        nudge = Fraction(0) if attempt == 0 else Fraction(1, 2**attempt)
        s1 = Point(
            u_pt.x + reach * (d_a.x + tilt * n_a.x),
            u_pt.y + reach * (d_a.y + tilt * n_a.y) + nudge,
        )
        s2 = Point(
            u_pt.x + reach * (d_b.x + tilt * n_b.x),
            u_pt.y + reach * (d_b.y + tilt * n_b.y),
        )
        if orient(u_pt, s1, s2) is Orientation.COLLINEAR:
            continue
        if not all(
            triangle_classify(u_pt, s1, s2, p) is Position.INTERIOR
            for i, p in enumerate(tri.vertices)
            if i != anchor
        ):
            continue
        if not all(
            disk_classify(fd, s) is Position.EXTERIOR
            for fd in face_disks
            for s in (s1, s2)
        ):
            continue
        if general_position_added(tri.vertices, (s1, s2)) is not None:
            continue
        augmented = build(tri.vertices + (s1, s2))
        if not tri_edges <= augmented.edge_set():
            continue
        n = len(tri)
        if set(augmented.hull) != {anchor, n, n + 1}:
            continue
        return SentinelAugmentation(augmented, anchor, (s1, s2))
    raise SearchExhausted("no sentinel placement satisfied all conditions in 64 attempts")


# ---------------------------------------------------------------------------
# Plane subgraph faces (rotation system traversal)
# ---------------------------------------------------------------------------


def _ccw_neighbor_order(points: Sequence[Point], center: int, nbrs: Iterable[int]) -> list[int]:
    """Neighbors sorted counterclockwise around a vertex, by exact comparisons."""
    c = points[center]

    def half(i: int) -> int:
        d = points[i]
        if d.y > c.y or (d.y == c.y and d.x > c.x):
            return 0
        return 1

    def cmp(i: int, j: int) -> int:
        hi, hj = half(i), half(j)
        if hi != hj:
            return -1 if hi < hj else 1
        o = orient(c, points[i], points[j])
        if o is Orientation.CCW:
            return -1
        if o is Orientation.CW:
            return 1
        raise InvariantBroken(f"neighbors {i} and {j} collinear with vertex {center}")

    return sorted(nbrs, key=cmp_to_key(cmp))


def planar_faces(points: Sequence[Point], edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    """Face cycles of a plane graph given by its straight-line embedding.

    Traverses the dart permutation induced by the counterclockwise rotation
    at each vertex. Interior faces come out counterclockwise (positive
    signed area), the single outer face clockwise.
    """
    nbrs: dict[int, list[int]] = {}
    for u, v in edges:
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    rot = {v: _ccw_neighbor_order(points, v, ns) for v, ns in sorted(nbrs.items())}
    slot = {(v, u): k for v, order in rot.items() for k, u in enumerate(order)}
    darts = sorted(slot)
    seen: set[tuple[int, int]] = set()
    faces = []
    for start in darts:
        if start in seen:
            continue
        cycle = []
        cur = start
        while cur not in seen:
            seen.add(cur)
            cycle.append(cur[0])
            a, b = cur
            order = rot[b]
            cur = (b, order[(slot[(b, a)] - 1) % len(order)])
        if cur != start:
            raise InvariantBroken("face traversal did not close on its starting dart")
        faces.append(cycle)
    return faces


def _cycle_area2(points: Sequence[Point], cycle: Sequence[int]) -> Fraction:
    total = Fraction(0)
    for i in range(len(cycle)):
        a = points[cycle[i]]
        b = points[cycle[(i + 1) % len(cycle)]]
        total += a.x * b.y - b.x * a.y
    return total


def _point_in_cycle(p: Point, cycle_pts: Sequence[Point]) -> bool:
    """Exact crossing-parity test; the point must not lie on the boundary."""
    inside = False
    m = len(cycle_pts)
    for i in range(m):
        a = cycle_pts[i]
        b = cycle_pts[(i + 1) % m]
        if (a.y <= p.y) == (b.y <= p.y):
            continue
        o = orient(a, b, p)
        if o is Orientation.COLLINEAR:
            raise InvariantBroken("query point lies on a face boundary")
        upward = b.y > a.y
        if (upward and o is Orientation.CCW) or (not upward and o is Orientation.CW):
            inside = not inside
    return inside


# ---------------------------------------------------------------------------
# The counting audit
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AuditReport:
    """Ledger of the face/edge double count over the removed-set subgraph.

    ``angle_total_exact`` is the total of the angles opposite each surviving
    edge, computed from the face census (180 per hole-free face, 360 per
    hole). ``angle_total_float`` recomputes the same total as a plain
    floating-point angle sum; agreement within 1e-6 relative is a sanity
    check on the geometry, while every load-bearing verdict is exact.
    """

    anchor: int
    sentinels: tuple[Point, Point]
    good_faces: int  # interior faces containing no removed-independent vertex
    bad_faces: int  # interior faces containing exactly one
    subgraph_edges: int
    subgraph_vertices: int
    euler_ok: bool  # edges == vertices + faces - 1
    angle_total_exact: int  # degrees: 180 * good + 360 * bad
    angle_total_float: float
    float_agrees: bool
    per_edge_ok: bool  # every edge's opposite-angle sum is below 180, exactly
    strict_inequality_ok: bool  # angle_total_exact < 180 * subgraph_edges
    bad_face_bound_ok: bool  # bad_faces <= subgraph_vertices - 2
    independent_matches_bad: bool  # every removed vertex claims exactly one face


def _opposite_angles_deg(tri: Triangulation, u: int, v: int) -> float:
    total = 0.0
    for w in tri.opposite_vertices(u, v):
        apex = tri.vertices[w]
        d1 = (tri.vertices[u].x - apex.x, tri.vertices[u].y - apex.y)
        d2 = (tri.vertices[v].x - apex.x, tri.vertices[v].y - apex.y)
        cross = float(d1[0] * d2[1] - d1[1] * d2[0])
        dot = float(d1[0] * d2[0] + d1[1] * d2[1])
        total += math.degrees(math.atan2(abs(cross), dot))
    return total


def angle_audit(tri: Triangulation, independent: Iterable[int]) -> AuditReport:
    """Run the full double-counting argument on one instance and report it.

    The independent set is removed, sentinels are added around the rest, and
    the surviving plane subgraph's interior faces are classified by how many
    removed vertices they contain (0 or 1; anything else is structurally
    impossible and raises). The face census and the per-edge angle bound
    then pin the number of holes below the subgraph order minus two, which
    is exactly the floor(n/2) independence bound for this instance.
    """
    chosen = frozenset(independent)
    if not chosen <= frozenset(range(len(tri))):
        raise PreconditionViolated("independent set contains out-of-range indices")
    for e in tri.edges:
        if e.u in chosen and e.v in chosen:
            raise NotIndependent(f"edge ({e.u}, {e.v}) joins two chosen vertices")
    removed = frozenset(range(len(tri))) - chosen
    aug = sentinel_augment(tri, removed)
    big = aug.tri
    n = len(tri)
    keep = removed | {n, n + 1}

    sub_edges = sorted((e.u, e.v) for e in big.edges if e.u in keep and e.v in keep)
    incident = {v for e in sub_edges for v in e}
    if incident != keep:
        raise InvariantBroken("a surviving vertex became isolated after removal")

    faces = planar_faces(big.vertices, sub_edges)
    outer = [f for f in faces if _cycle_area2(big.vertices, f) < 0]
    if len(outer) != 1:
        raise InvariantBroken(f"expected one outer face, found {len(outer)}")
    if set(outer[0]) != {aug.anchor, n, n + 1}:
        raise InvariantBroken("outer face is not the sentinel triangle")
    interior = [f for f in faces if _cycle_area2(big.vertices, f) > 0]
    if len(interior) + 1 != len(faces):
        raise InvariantBroken("degenerate zero-area face in traversal")

    good = 0
    bad = 0
    located: list[int] = []
    for f in interior:
        ring = [big.vertices[i] for i in f]
        inside = [x for x in chosen if _point_in_cycle(big.vertices[x], ring)]
        if not inside:
            if len(f) != 3:
                raise InvariantBroken("hole-free interior face is not a triangle")
            good += 1
        elif len(inside) == 1:
            bad += 1
            located.append(inside[0])
        else:
            raise InvariantBroken("interior face contains two removed vertices")
    independent_matches_bad = sorted(located) == sorted(chosen)

    e_count = len(sub_edges)
    s_size = len(keep)
    euler_ok = e_count == s_size + bad + good - 1
    angle_exact = 180 * good + 360 * bad
    angle_float = sum(_opposite_angles_deg(big, u, v) for u, v in sub_edges)
    float_agrees = abs(angle_exact - angle_float) < 1e-6 * angle_exact

    per_edge_ok = True
    for u, v in sub_edges:
        opp = big.opposite_vertices(u, v)
        # A boundary edge has a single opposite angle, below 180 like any
        # triangle angle; only two-sided edges need the exact test.
        if len(opp) == 2 and not edge_angle_check(big, u, v):
            per_edge_ok = False
            break

    return AuditReport(
        anchor=aug.anchor,
        sentinels=aug.sentinels,
        good_faces=good,
        bad_faces=bad,
        subgraph_edges=e_count,
        subgraph_vertices=s_size,
        euler_ok=euler_ok,
        angle_total_exact=angle_exact,
        angle_total_float=angle_float,
        float_agrees=float_agrees,
        per_edge_ok=per_edge_ok,
        strict_inequality_ok=angle_exact < 180 * e_count,
        bad_face_bound_ok=bad <= s_size - 2,
        independent_matches_bad=independent_matches_bad,
    )


# ---------------------------------------------------------------------------
# Representatives after removal
# ---------------------------------------------------------------------------


class RepresentativeReport(NamedTuple):
    component_count: int
    tri: Triangulation  # triangulation of removed set plus representatives
    representatives: VertexSet  # original indices, lowest of each component
    independent: bool  # no edge of the new triangulation joins two representatives


def representative_independence(tri: Triangulation, removed: Iterable[int]) -> RepresentativeReport:
    """Re-triangulate the removed set plus one representative per component
    and report whether the representatives stay independent.

    They always should; a False here would falsify the toughness argument,
    so the operation reports instead of assuming.
    """
    gone = frozenset(removed)
    comps = components_after_removal(tri, gone)
    reps = frozenset(min(c) for c in comps)
    keep = sorted(gone | reps)
    if len(keep) < 3:
        raise PreconditionViolated("need at least 3 points to triangulate")
    sub = build([tri.vertices[i] for i in keep])
    new_index = {orig: k for k, orig in enumerate(keep)}
    rep_new = {new_index[r] for r in reps}
    independent = not any(e.u in rep_new and e.v in rep_new for e in sub.edges)
    return RepresentativeReport(len(comps), sub, reps, independent)
