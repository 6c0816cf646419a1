"""Static SVG rendering of triangulations, disks, paths, and blockers.

Pure string assembly, deterministic for identical inputs. Exact coordinates
are rounded to 1e-6 here and only here; the drawing is documentation, never
evidence. The y axis is flipped so pictures match the usual mathematical
orientation.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence

from .delaunay import EdgeKind, Triangulation
from .exactgeom import Disk, Point

_CANVAS = 640.0


def _fmt(value: float) -> str:
    return f"{value:.6f}"


class _Frame:
    """Affine map from model space to a padded, y-flipped canvas."""

    def __init__(self, xs: list[float], ys: list[float]):
        min_x, max_x = min(xs), max(xs)
        min_y, max_y = min(ys), max(ys)
        span = max(max_x - min_x, max_y - min_y) or 1.0
        pad = 0.06 * span
        self.scale = _CANVAS / (span + 2 * pad)
        self.min_x = min_x - pad
        self.max_y = max_y + pad
        self.width = (max_x - min_x + 2 * pad) * self.scale
        self.height = (max_y - min_y + 2 * pad) * self.scale

    def to(self, p: Point) -> tuple[float, float]:
        return (
            (float(p.x) - self.min_x) * self.scale,
            (self.max_y - float(p.y)) * self.scale,
        )


def render_svg(
    tri: Triangulation,
    *,
    hollow: frozenset[int] = frozenset(),
    witness_disks: Sequence[Disk] = (),
    path: Sequence[int] = (),
    extra_disk: Optional[Disk] = None,
    blockers: Sequence[Point] = (),
    sentinel_triangle: Optional[tuple[int, int, int]] = None,
) -> str:
    """Compose one SVG document. ``hollow`` vertices render unfilled,
    boundary edges bold, blockers as crosses, disks as thin circles."""
    xs: list[float] = []
    ys: list[float] = []

    def take(p: Point) -> None:
        xs.append(float(p.x))
        ys.append(float(p.y))

    for p in tri.vertices:
        take(p)
    for p in blockers:
        take(p)
    for d in list(witness_disks) + ([extra_disk] if extra_disk else []):
        r = math.sqrt(float(d.radius_sq))
        xs.extend((float(d.center.x) - r, float(d.center.x) + r))
        ys.extend((float(d.center.y) - r, float(d.center.y) + r))
    frame = _Frame(xs, ys)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(frame.width)}" '
        f'height="{_fmt(frame.height)}" viewBox="0 0 {_fmt(frame.width)} {_fmt(frame.height)}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]

    for d in witness_disks:
        cx, cy = frame.to(d.center)
        r = math.sqrt(float(d.radius_sq)) * frame.scale
        parts.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" '
            'fill="none" stroke="#999999" stroke-width="0.7"/>'
        )
    if extra_disk is not None:
        cx, cy = frame.to(extra_disk.center)
        r = math.sqrt(float(extra_disk.radius_sq)) * frame.scale
        parts.append(
            f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(r)}" '
            'fill="none" stroke="#1f77b4" stroke-width="1.2"/>'
        )

    for e in tri.edges:
        x1, y1 = frame.to(tri.vertices[e.u])
        x2, y2 = frame.to(tri.vertices[e.v])
        width = 2.4 if e.kind is EdgeKind.BOUNDARY else 0.9
        parts.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="black" stroke-width="{width}"/>'
        )

    if sentinel_triangle is not None:
        a, b, c = sentinel_triangle
        pts = " ".join(
            f"{_fmt(x)},{_fmt(y)}" for x, y in (frame.to(tri.vertices[i]) for i in (a, b, c))
        )
        parts.append(
            f'<polygon points="{pts}" fill="none" stroke="#d62728" '
            'stroke-width="1.0" stroke-dasharray="6,4"/>'
        )

    if path:
        pts = " ".join(
            f"{_fmt(x)},{_fmt(y)}" for x, y in (frame.to(tri.vertices[i]) for i in path)
        )
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="#2ca02c" stroke-width="3.0"/>'
        )

    for i, p in enumerate(tri.vertices):
        x, y = frame.to(p)
        if i in hollow:
            parts.append(
                f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="4.0" '
                'fill="white" stroke="black" stroke-width="1.3"/>'
            )
        else:
            parts.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3.2" fill="black"/>')

    for p in blockers:
        x, y = frame.to(p)
        arm = 4.5
        parts.append(
            f'<line x1="{_fmt(x - arm)}" y1="{_fmt(y - arm)}" x2="{_fmt(x + arm)}" '
            f'y2="{_fmt(y + arm)}" stroke="#d62728" stroke-width="1.6"/>'
        )
        parts.append(
            f'<line x1="{_fmt(x - arm)}" y1="{_fmt(y + arm)}" x2="{_fmt(x + arm)}" '
            f'y2="{_fmt(y - arm)}" stroke="#d62728" stroke-width="1.6"/>'
        )

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
