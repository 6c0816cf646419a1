"""The plain-text point file format.

One point per line as ``x y``. Coordinates are decimal literals (parsed
exactly: ``0.25`` is 1/4) or fractions ``a/b``. ``#`` starts a comment,
blank lines are skipped, duplicates are rejected at load. Emission is
canonical (always ``a/b`` or a bare integer), so emit -> parse -> emit is
byte-identical.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import PointFileError
from .exactgeom import Point


def parse_points(text: str) -> tuple[Point, ...]:
    points: list[Point] = []
    seen: dict[Point, int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise PointFileError(line_no, f"expected 'x y', got {len(fields)} field(s)")
        coords = []
        for field in fields:
            try:
                coords.append(Fraction(field))
            except (ValueError, ZeroDivisionError) as exc:
                raise PointFileError(line_no, f"bad coordinate {field!r}: {exc}") from exc
        p = Point(coords[0], coords[1])
        if p in seen:
            raise PointFileError(line_no, f"duplicate of point on line {seen[p]}")
        seen[p] = line_no
        points.append(p)
    return tuple(points)


def fraction_str(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def format_points(points: Sequence[Point]) -> str:
    return "".join(f"{fraction_str(p.x)} {fraction_str(p.y)}\n" for p in points)


def read_points(path: str | Path) -> tuple[Point, ...]:
    return parse_points(Path(path).read_text(encoding="utf-8"))


def write_points(path: str | Path, points: Sequence[Point]) -> None:
    Path(path).write_text(format_points(points), encoding="utf-8")
