"""Command line interface: generators, theorem checks, disk paths, blocking
verdicts, and SVG rendering.

Verdict reports are JSON on stdout with exact rationals serialized as
``a/b`` strings (never floats). Exit codes: 0 every requested verdict
affirms, 1 a verified invariant failed (a falsification alarm), 2 input
could not be parsed or is degenerate, 3 a size gate refused an exhaustive
check (raise it with --max-n).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import blocking, diskpath, generate, pointfile, render, structure
from .delaunay import (
    EdgeKind,
    Triangulation,
    build,
    edge_angle_check,
    verify_delaunay,
    witness_disk,
)
from .errors import (
    ConstructionFailed,
    DegenerateInput,
    DToughError,
    InvariantBroken,
    PointFileError,
    PreconditionViolated,
    TieOnBoundary,
    TooFewPoints,
)
from .exactgeom import Disk, Point, coord

EXIT_OK = 0
EXIT_ALARM = 1
EXIT_INPUT = 2
EXIT_GATE = 3

TOUGHNESS_GATE = 18
MIS_GATE = 30
AUDIT_GATE = 30

ALL_CHECKS = ("delaunay", "toughness", "mis", "matching", "audit")


def _frac(f: Fraction) -> str:
    return pointfile.fraction_str(f)


def _point_json(p: Point) -> list[str]:
    return [_frac(p.x), _frac(p.y)]


def _instance_summary(tri: Triangulation) -> dict:
    return {
        "n": len(tri),
        "hull_size": len(tri.hull),
        "edge_count": len(tri.edges),
    }


def _max_workers(tasks: int) -> int:
    cap = os.environ.get("DTOUGH_THREADS")
    limit = int(cap) if cap else (os.cpu_count() or 1)
    return max(1, min(limit, tasks))


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


def _check_one(path: str, checks: Sequence[str], max_n: Optional[int]) -> tuple[int, dict]:
    report: dict = {"command": "check", "file": path}
    try:
        points = pointfile.read_points(path)
        tri = build(points)
    except (PointFileError, DegenerateInput, TooFewPoints, OSError) as exc:
        report["error"] = str(exc)
        return EXIT_INPUT, report
    report["instance"] = _instance_summary(tri)
    n = len(tri)
    verdicts: dict = {}
    report["verdicts"] = verdicts
    code = EXIT_OK

    def gate(name: str, default_gate: int) -> bool:
        limit = max(default_gate, max_n or 0)
        if n > limit:
            verdicts[name] = {"refused": f"n={n} exceeds gate {limit}; raise with --max-n"}
            return False
        return True

    mis_result: Optional[tuple[int, frozenset[int]]] = None

    for name in checks:
        if name == "delaunay":
            counter = verify_delaunay(tri)
            angles_ok = all(
                edge_angle_check(tri, e.u, e.v)
                for e in tri.edges
                if e.kind is EdgeKind.INTERIOR
            )
            ok = counter is None and angles_ok
            verdicts["delaunay"] = {
                "empty_circumdisks": counter is None,
                "interior_angle_ok": angles_ok,
                "counterexample": None
                if counter is None
                else {"triangle": list(counter.triangle), "vertex": counter.vertex},
                "ok": ok,
            }
            if not ok:
                code = max(code, EXIT_ALARM)
        elif name == "toughness":
            if not gate("toughness", TOUGHNESS_GATE):
                code = max(code, EXIT_GATE)
                continue
            worst = structure.toughness_exhaustive(tri, max_n=max(TOUGHNESS_GATE, max_n or 0))
            if worst is None:
                verdicts["toughness"] = {"toughness": None, "witness": None, "ok": True}
            else:
                ok = worst.ratio >= 1
                verdicts["toughness"] = {
                    "toughness": _frac(worst.ratio),
                    "witness": sorted(worst.separator),
                    "components": worst.component_count,
                    "ok": ok,
                }
                if not ok:
                    code = max(code, EXIT_ALARM)
        elif name == "mis":
            if not gate("mis", MIS_GATE):
                code = max(code, EXIT_GATE)
                continue
            size, cert = structure.max_independent_set(tri, max_n=max(MIS_GATE, max_n or 0))
            mis_result = (size, cert)
            ok = size <= n // 2
            verdicts["mis"] = {
                "size": size,
                "bound": n // 2,
                "certificate": sorted(cert),
                "ok": ok,
            }
            if not ok:
                code = max(code, EXIT_ALARM)
        elif name == "matching":
            try:
                matching = structure.perfect_matching(tri)
            except InvariantBroken as exc:
                verdicts["matching"] = {"exists": False, "error": str(exc), "ok": False}
                code = max(code, EXIT_ALARM)
                continue
            exists = matching is not None
            ok = exists == (n % 2 == 0)
            verdicts["matching"] = {
                "exists": exists,
                "edges": sorted(map(list, matching)) if matching else None,
                "ok": ok,
            }
            if not ok:
                code = max(code, EXIT_ALARM)
        elif name == "audit":
            if not gate("audit", AUDIT_GATE):
                code = max(code, EXIT_GATE)
                continue
            if mis_result is None:
                size, cert = structure.max_independent_set(tri, max_n=max(AUDIT_GATE, max_n or 0))
            else:
                size, cert = mis_result
            rep = structure.angle_audit(tri, cert)
            ok = (
                rep.euler_ok
                and rep.per_edge_ok
                and rep.strict_inequality_ok
                and rep.bad_face_bound_ok
                and rep.independent_matches_bad
                and rep.float_agrees
            )
            verdicts["audit"] = {
                "independent_set": sorted(cert),
                "anchor": rep.anchor,
                "sentinels": [_point_json(s) for s in rep.sentinels],
                "good_faces": rep.good_faces,
                "bad_faces": rep.bad_faces,
                "subgraph_edges": rep.subgraph_edges,
                "subgraph_vertices": rep.subgraph_vertices,
                "euler_ok": rep.euler_ok,
                "angle_total_exact": rep.angle_total_exact,
                "per_edge_ok": rep.per_edge_ok,
                "strict_inequality_ok": rep.strict_inequality_ok,
                "bad_face_bound_ok": rep.bad_face_bound_ok,
                "independent_matches_bad": rep.independent_matches_bad,
                "float_agrees": rep.float_agrees,
                "ok": ok,
            }
            if not ok:
                code = max(code, EXIT_ALARM)
        else:
            report["error"] = f"unknown check {name!r}"
            return EXIT_INPUT, report
    return code, report


def _cmd_check(args: argparse.Namespace) -> tuple[int, dict]:
    checks = tuple(args.checks.split(",")) if args.checks else ALL_CHECKS
    for c in checks:
        if c not in ALL_CHECKS:
            return EXIT_INPUT, {"command": "check", "error": f"unknown check {c!r}"}
    files = args.files
    if len(files) == 1:
        return _check_one(files[0], checks, args.max_n)
    with ThreadPoolExecutor(max_workers=_max_workers(len(files))) as pool:
        results = list(pool.map(lambda f: _check_one(f, checks, args.max_n), files))
    code = max(c for c, _ in results)
    return code, {"command": "check", "reports": [r for _, r in results]}


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------


def _cmd_gen(args: argparse.Namespace) -> tuple[int, Optional[dict]]:
    kind, n, seed = args.kind, args.n, args.seed
    try:
        if kind == "random":
            body = pointfile.format_points(generate.random_points(n, seed))
            blockers_body = None
        elif kind == "convex":
            body = pointfile.format_points(generate.convex_points(n, seed))
            blockers_body = None
        elif kind == "fan":
            inst = blocking.fan_instance(n, seed)
            body = pointfile.format_points(inst.points)
            blockers_body = pointfile.format_points(inst.blockers)
        elif kind == "disjoint-arc":
            inst = blocking.disjoint_disk_instance(n)
            body = pointfile.format_points(inst.points)
            blockers_body = None
        else:  # pragma: no cover - argparse choices guard this
            raise PreconditionViolated(f"unknown kind {kind}")
    except (TooFewPoints, PreconditionViolated, ConstructionFailed) as exc:
        return EXIT_INPUT, {"command": "gen", "error": str(exc)}

    if args.out == "-":
        if blockers_body is not None:
            return EXIT_INPUT, {
                "command": "gen",
                "error": "fan emits two files; --out is required",
            }
        sys.stdout.write(body)
        return EXIT_OK, None
    out = Path(args.out)
    out.write_text(body, encoding="utf-8")
    files = [str(out)]
    if blockers_body is not None:
        blockers_path = Path(str(out) + ".blockers")
        blockers_path.write_text(blockers_body, encoding="utf-8")
        files.append(str(blockers_path))
    return EXIT_OK, {"command": "gen", "kind": kind, "n": n, "seed": seed, "files": files}


# ---------------------------------------------------------------------------
# path
# ---------------------------------------------------------------------------


def _cmd_path(args: argparse.Namespace) -> tuple[int, dict]:
    report: dict = {"command": "path"}
    try:
        points = pointfile.read_points(args.file)
        tri = build(points)
        d = Disk(Point(coord(args.cx), coord(args.cy)), coord(args.r2))
    except (PointFileError, DegenerateInput, TooFewPoints, OSError, ValueError, TypeError) as exc:
        report["error"] = str(exc)
        return EXIT_INPUT, report
    report["instance"] = _instance_summary(tri)
    report["disk"] = {"center": _point_json(d.center), "radius_sq": _frac(d.radius_sq)}
    p, q = args.p, args.q
    try:
        found = diskpath.find_path(tri, p, q, d)
    except TieOnBoundary as exc:
        report["error"] = "tie_on_boundary"
        report["witnesses"] = list(exc.witnesses)
        return EXIT_INPUT, report
    except PreconditionViolated as exc:
        report["error"] = str(exc)
        return EXIT_INPUT, report
    except InvariantBroken as exc:
        report["error"] = str(exc)
        return EXIT_ALARM, report
    oracle = diskpath.path_oracle(tri, p, q, d)
    agree = oracle is not None
    report["path"] = list(found.vertices)
    report["oracle_path"] = None if oracle is None else list(oracle.vertices)
    report["agree"] = agree
    report["ok"] = agree
    if args.svg:
        doc = render.render_svg(tri, path=found.vertices, extra_disk=d)
        Path(args.svg).write_text(doc, encoding="utf-8")
        report["svg"] = args.svg
    return (EXIT_OK if agree else EXIT_ALARM), report


# ---------------------------------------------------------------------------
# block
# ---------------------------------------------------------------------------


def _cmd_block(args: argparse.Namespace) -> tuple[int, dict]:
    report: dict = {"command": "block"}
    try:
        p = pointfile.read_points(args.points)
        b = pointfile.read_points(args.blockers)
        verdict = blocking.verify_blocking(p, b)
        bound = blocking.lower_bound_report(p, b)
    except (PointFileError, DegenerateInput, PreconditionViolated, TooFewPoints, OSError) as exc:
        report["error"] = str(exc)
        return EXIT_INPUT, report
    report["p_size"] = bound.p_size
    report["b_size"] = bound.b_size
    report["blocked"] = verdict.blocked
    report["witness"] = None if verdict.witness is None else list(verdict.witness)
    report["p_independent"] = bound.p_independent
    report["size_ok"] = bound.size_ok
    report["tight"] = verdict.blocked and bound.p_size == bound.b_size
    report["ok"] = not bound.alarm
    return (EXIT_ALARM if bound.alarm else EXIT_OK), report


# ---------------------------------------------------------------------------
# render
# ---------------------------------------------------------------------------


def _cmd_render(args: argparse.Namespace) -> tuple[int, dict]:
    report: dict = {"command": "render"}
    try:
        points = pointfile.read_points(args.file)
        blockers = pointfile.read_points(args.blockers) if args.blockers else ()
        tri = build(tuple(points) + tuple(blockers)) if blockers else build(points)
    except (PointFileError, DegenerateInput, TooFewPoints, OSError) as exc:
        report["error"] = str(exc)
        return EXIT_INPUT, report
    hollow: frozenset[int] = frozenset()
    sentinel_triangle = None
    disks: list[Disk] = []
    n_shown = len(points)
    if args.audit:
        base = build(points)
        if len(base) > max(AUDIT_GATE, args.max_n or 0):
            report["error"] = f"audit overlay refused for n={len(base)}"
            return EXIT_GATE, report
        _, cert = structure.max_independent_set(base, max_n=max(MIS_GATE, args.max_n or 0))
        aug = structure.sentinel_augment(base, frozenset(range(len(base))) - cert)
        tri = aug.tri
        hollow = cert
        sentinel_triangle = (aug.anchor, len(base), len(base) + 1)
    elif args.mis:
        if len(tri) > max(MIS_GATE, args.max_n or 0):
            report["error"] = f"independent-set overlay refused for n={len(tri)}"
            return EXIT_GATE, report
        _, cert = structure.max_independent_set(tri, max_n=max(MIS_GATE, args.max_n or 0))
        hollow = cert
    if args.witness_disks:
        disks = [witness_disk(tri, e.u, e.v) for e in tri.edges]
    doc = render.render_svg(
        tri,
        hollow=hollow,
        witness_disks=disks,
        blockers=tuple(blockers) if args.blockers and not args.audit else (),
        sentinel_triangle=sentinel_triangle,
    )
    Path(args.svg).write_text(doc, encoding="utf-8")
    report["svg"] = args.svg
    report["bytes"] = len(doc.encode("utf-8"))
    report["ok"] = True
    return EXIT_OK, report


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dtough",
        description="Exact Delaunay triangulations with mechanical theorem checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a seeded point set")
    p_gen.add_argument("kind", choices=("random", "convex", "fan", "disjoint-arc"))
    p_gen.add_argument("n", type=int)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", default="-", help="output file; '-' for stdout")

    p_check = sub.add_parser("check", help="run theorem checks on point files")
    p_check.add_argument("files", nargs="+")
    p_check.add_argument(
        "--checks",
        default=None,
        help=f"comma list from {{{','.join(ALL_CHECKS)}}}; default all",
    )
    p_check.add_argument("--max-n", type=int, default=None, help="raise size gates")
    p_check.add_argument("--no-json", action="store_true", help="flat text verdict lines")
    p_check.add_argument("--json", action="store_true", help="JSON output (the default)")

    p_path = sub.add_parser("path", help="path between two vertices inside a disk")
    p_path.add_argument("file")
    p_path.add_argument("p", type=int)
    p_path.add_argument("q", type=int)
    p_path.add_argument("cx", help="disk center x (rational)")
    p_path.add_argument("cy", help="disk center y (rational)")
    p_path.add_argument("r2", help="disk squared radius (rational)")
    p_path.add_argument("--svg", default=None)

    p_block = sub.add_parser("block", help="verify a blocking instance")
    p_block.add_argument("points")
    p_block.add_argument("blockers")

    p_render = sub.add_parser("render", help="draw a triangulation as SVG")
    p_render.add_argument("file")
    p_render.add_argument("--svg", required=True)
    p_render.add_argument("--blockers", default=None)
    p_render.add_argument("--mis", action="store_true", help="hollow a maximum independent set")
    p_render.add_argument("--witness-disks", action="store_true")
    p_render.add_argument("--audit", action="store_true", help="sentinel overlay")
    p_render.add_argument("--max-n", type=int, default=None)
    return parser


def _flat_lines(report: dict, indent: str = "") -> list[str]:
    lines = []
    for key, value in report.items():
        if isinstance(value, dict):
            lines.append(f"{indent}{key}:")
            lines.extend(_flat_lines(value, indent + "  "))
        else:
            lines.append(f"{indent}{key}: {value}")
    return lines


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    handlers = {
        "gen": _cmd_gen,
        "check": _cmd_check,
        "path": _cmd_path,
        "block": _cmd_block,
        "render": _cmd_render,
    }
    try:
        code, report = handlers[args.command](args)
    except DToughError as exc:  # anything not already mapped is an input problem
        code, report = EXIT_INPUT, {"command": args.command, "error": str(exc)}
    if report is not None:
        report["timing_ms"] = round((time.perf_counter() - started) * 1000.0, 3)
        if getattr(args, "no_json", False):
            print("\n".join(_flat_lines(report)))
        else:
            print(json.dumps(report, indent=2))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
