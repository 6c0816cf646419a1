import random
from fractions import Fraction

import pytest

from dtough.blocking import (
    disjoint_disk_instance,
    fan_instance,
    lower_bound_report,
    verify_blocking,
)
from dtough.delaunay import build
from dtough.errors import DegenerateInput, PreconditionViolated
from dtough.exactgeom import (
    Position,
    disk_classify,
    disks_interior_disjoint,
    dist_sq,
    point,
)
from dtough.structure import max_independent_set

import helpers

P = point


def test_empty_blockers_never_block():
    pts, _ = helpers.random_tri(5, 77)
    verdict = verify_blocking(pts, ())
    assert not verdict.blocked and verdict.witness is not None
    # two bare points: their single edge survives by definition
    verdict = verify_blocking((P(0, 0), P(1, 0)), ())
    assert not verdict.blocked and verdict.witness == (0, 1)


def test_needs_two_points():
    with pytest.raises(PreconditionViolated):
        verify_blocking((P(0, 0),), ())


def test_degenerate_union_rejected():
    with pytest.raises(DegenerateInput):
        verify_blocking((P(0, 0), P(2, 2)), (P(1, 1),))  # collinear


def test_fan_instances_blocked_and_tight():
    for n in range(4, 11):
        inst = helpers.fan(n)
        assert inst.verified
        assert len(inst.points) == n and len(inst.blockers) == n
        rep = lower_bound_report(inst.points, inst.blockers)
        assert rep.blocked and rep.p_independent and rep.size_ok
        assert not rep.alarm
        assert rep.p_size == rep.b_size  # tightness


def test_fan_requires_four():
    with pytest.raises(PreconditionViolated):
        fan_instance(3)


def test_fan_mis_is_half():
    inst = helpers.fan(10)
    size, _ = max_independent_set(build(inst.points))
    assert size == 5


def test_fan_deletion_reexposes_an_edge():
    n = 6
    inst = helpers.fan(n)
    # blockers 2.. guard the rim edges (i, i+1) in order
    for j in range(2, n):
        reduced = inst.blockers[:j] + inst.blockers[j + 1 :]
        verdict = verify_blocking(inst.points, reduced)
        assert not verdict.blocked
        # the specific rim edge that blocker guarded must be back
        union = build(tuple(inst.points) + tuple(reduced))
        rim = (j - 1, j)
        assert union.is_edge(*rim)
        assert verdict.witness is not None
        u, v = verdict.witness
        assert u < n and v < n


def test_two_points_one_blocker_sweep():
    # no single point placement blocks a two-point set (it would beat the
    # lower bound); sampled placements must all come back unblocked
    rng = random.Random("pair-sweep")
    denom = 2**12
    blocked = 0
    for trial in range(500):
        a = P(Fraction(rng.randrange(denom), denom), Fraction(rng.randrange(denom), denom))
        b = P(Fraction(rng.randrange(denom), denom), Fraction(rng.randrange(denom), denom))
        mx, my = (a.x + b.x) / 2, (a.y + b.y) / 2
        bl = P(
            mx + Fraction(rng.randrange(-denom, denom), denom**2),
            my + Fraction(rng.randrange(-denom, denom), denom**2),
        )
        try:
            verdict = verify_blocking((a, b), (bl,))
        except DegenerateInput:
            continue
        if verdict.blocked:
            blocked += 1
    assert blocked == 0


def test_disjoint_disk_instances():
    for n in (2, 5, 8):
        pts, disks, disjoint = disjoint_disk_instance(n)
        assert disjoint
        assert len(disks) == n - 1
        # each disk re-verified as an empty witness of its consecutive edge
        for i, d in enumerate(disks):
            for k, p in enumerate(pts):
                expected = Position.BOUNDARY if k in (i, i + 1) else Position.EXTERIOR
                assert disk_classify(d, p) is expected
        # adjacent disks: exactly tangent; non-adjacent: strictly apart
        for i in range(len(disks)):
            for j in range(i + 1, len(disks)):
                a, b = disks[i], disks[j]
                assert disks_interior_disjoint(a, b)
                gap = dist_sq(a.center, b.center) - a.radius_sq - b.radius_sq
                if j == i + 1:
                    assert gap * gap == 4 * a.radius_sq * b.radius_sq
                else:
                    assert gap * gap > 4 * a.radius_sq * b.radius_sq
        if n >= 3:
            tri = build(pts)
            assert all(tri.is_edge(i, i + 1) for i in range(n - 1))


def test_disjoint_instance_needs_two():
    with pytest.raises(PreconditionViolated):
        disjoint_disk_instance(1)


def test_small_blocker_attempt_fails():
    # n - 1 blockers, one inside each disk, cannot block n points
    n = 8
    pts, disks, _ = disjoint_disk_instance(n)
    eps = Fraction(1, 2**40)
    attempt = tuple(
        P(d.center.x + eps * (k + 1), d.center.y + eps) for k, d in enumerate(disks)
    )
    for k, d in enumerate(disks):
        assert disk_classify(d, attempt[k]) is Position.INTERIOR
    verdict = verify_blocking(pts, attempt)
    assert not verdict.blocked
    rep = lower_bound_report(pts, attempt)
    assert not rep.blocked and not rep.alarm
