"""Shared fixtures-in-functions and independent oracles for the test suite.

Everything here is deliberately dumb: union-find instead of BFS, full subset
enumeration instead of branch and bound, recursive matching enumeration
instead of the memoized search. Oracles must not share code paths with the
implementations they check.
"""

from __future__ import annotations

import io
import json
from contextlib import redirect_stdout
from fractions import Fraction
from functools import lru_cache

from dtough import blocking, build, cli
from dtough.exactgeom import Disk, Point, disk_classify, dist_sq, midpoint, Position
from dtough.generate import random_points


@lru_cache(maxsize=None)
def random_tri(n: int, seed: int):
    pts = random_points(n, seed)
    return pts, build(pts)


@lru_cache(maxsize=None)
def fan(n: int, seed: int = 1):
    return blocking.fan_instance(n, seed)


@lru_cache(maxsize=None)
def fan_tri(n: int, seed: int = 1):
    return build(fan(n, seed).points)


# ---------------------------------------------------------------------------
# Oracles
# ---------------------------------------------------------------------------


def uf_components(n: int, edges, removed) -> int:
    """Component count of the survivor graph by union-find."""
    removed = set(removed)
    parent = {v: v for v in range(n) if v not in removed}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for u, v in edges:
        if u in removed or v in removed:
            continue
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    return len({find(v) for v in parent})


def mis_exhaustive(n: int, edges) -> int:
    """Maximum independent set size by checking all 2^n subsets."""
    adj = [0] * n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    best = 0
    for mask in range(1 << n):
        if mask.bit_count() <= best:
            continue
        ok = True
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if adj[v] & mask:
                ok = False
                break
        if ok:
            best = mask.bit_count()
    return best


def has_perfect_matching_exhaustive(n: int, edges) -> bool:
    """Plain recursive matching existence check, no memoization."""
    if n % 2:
        return False
    nbrs = {v: set() for v in range(n)}
    for u, v in edges:
        nbrs[u].add(v)
        nbrs[v].add(u)

    def rec(unmatched: frozenset) -> bool:
        if not unmatched:
            return True
        v = min(unmatched)
        for u in sorted(nbrs[v] & unmatched):
            if rec(unmatched - {v, u}):
                return True
        return False

    return rec(frozenset(range(n)))


def toughness_reverse_oracle(tri):
    """Re-run the subset scan in descending mask order; min ratio must agree."""
    n = len(tri)
    adj = [0] * n
    for e in tri.edges:
        adj[e.u] |= 1 << e.v
        adj[e.v] |= 1 << e.u
    full = (1 << n) - 1
    best = None
    for s_mask in range(full, 0, -1):
        alive = full & ~s_mask
        if alive == 0:
            continue
        comps = 0
        left = alive
        while left:
            comp = left & -left
            while True:
                grown = comp
                m = comp
                while m:
                    v = (m & -m).bit_length() - 1
                    m &= m - 1
                    grown |= adj[v] & alive
                if grown == comp:
                    break
                comp = grown
            comps += 1
            left &= ~comp
        if comps >= 2:
            ratio = Fraction(s_mask.bit_count(), comps)
            if best is None or ratio < best:
                best = ratio
    return best


# ---------------------------------------------------------------------------
# Disk construction through two vertices with exact boundary exclusivity
# ---------------------------------------------------------------------------


def pencil_disk(tri, p: int, q: int, gap_index: int) -> Disk | None:
    """A disk through vertices p and q with no third vertex on its boundary.

    Centers move along the perpendicular bisector of (p, q); each other
    vertex crosses the boundary at one rational parameter, so picking a
    parameter strictly between consecutive crossings (or beyond the last)
    controls exactly how many vertices are interior.
    """
    pp, qq = tri.vertices[p], tri.vertices[q]
    mid = midpoint(pp, qq)
    perp = Point(-(qq.y - pp.y), qq.x - pp.x)
    thresholds = []
    for i, x in enumerate(tri.vertices):
        if i in (p, q):
            continue
        offset = dist_sq(mid, pp) - dist_sq(mid, x)
        slope = 2 * (perp.x * (x.x - pp.x) + perp.y * (x.y - pp.y))
        if slope != 0:
            thresholds.append(-offset / slope)
    ts = sorted(set(thresholds))
    if not ts:
        t = Fraction(0)
    elif gap_index <= 0:
        t = ts[0] - 1
    elif gap_index >= len(ts):
        t = ts[-1] + 1
    else:
        a, b = ts[gap_index - 1], ts[gap_index]
        t = (a + b) / 2
    center = Point(mid.x + t * perp.x, mid.y + t * perp.y)
    d = Disk(center, dist_sq(center, pp))
    for i, x in enumerate(tri.vertices):
        if i in (p, q):
            continue
        if disk_classify(d, x) is Position.BOUNDARY:
            return None
    return d


def interior_count(tri, d: Disk) -> int:
    return sum(
        1 for x in tri.vertices if disk_classify(d, x) is Position.INTERIOR
    )


# ---------------------------------------------------------------------------
# CLI harness
# ---------------------------------------------------------------------------


def run_cli(argv) -> tuple[int, str]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.main(list(argv))
    return code, buf.getvalue()


def report_without_timing(stdout: str) -> str:
    doc = json.loads(stdout)
    doc.pop("timing_ms", None)
    return json.dumps(doc, indent=2)
