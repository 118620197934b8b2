"""Command-line entry point: ``arcpoly <command> ...``.

Exit codes: 0 success, 1 a certified negative answer (infeasible angles or
an obstructed embedding), 2 bad input, 3 undecided, 4 a drawing that failed
its own verification.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import graphio
from .cactus import (
    check_embedded_faces,
    embedding_from_interior,
    embedding_from_rotation,
    natural_embedding,
    random_cactus,
    validate_cactus,
)
from .errors import AngleOutOfRange, ArcPolyError, ForbiddenTriple, NotACactus
from .figures import crossing_configuration, write_figures
from .lombardi import draw_cactus, verify_lombardi
from .polygon import is_simple, realize
from .svg import write_svg
from .triangle import Status, classify, construct_triangle

PI = math.pi
ANGLE_MATCH_TOL = 1e-6

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_UNDECIDED, EXIT_BROKEN = 0, 1, 2, 3, 4


def _pi(x):
    return f"{x:.12f} ({x / PI:+.6f} pi)"


def _angles(texts):
    return [graphio.parse_angle(t) for t in texts]


def _fail(msg, code):
    print(f"error: {msg}", file=sys.stderr)
    return code


def cmd_classify(args):
    try:
        theta = _angles(args.angles)
        verdict = classify(theta)
    except ArcPolyError as exc:
        return _fail(exc, EXIT_INPUT)
    print("theta =", ", ".join(_pi(t) for t in verdict.theta))
    print("psi   =", _pi(verdict.psi))
    print("phi   =", ", ".join(_pi(p) for p in verdict.phi))
    print("verdict:", verdict.status.value)
    if verdict.violating_index is not None:
        print(f"violating index: {verdict.violating_index} ({verdict.violation_kind.value})")
    if args.svg:
        if verdict.realizable:
            write_svg(args.svg, construct_triangle(verdict.theta))
        else:
            arcs, points, labels = crossing_configuration(verdict.theta)
            write_svg(args.svg, arcs, highlights=points, labels=labels)
        print("wrote", args.svg)
    return EXIT_OK if verdict.status is Status.REALIZABLE else EXIT_NO


def cmd_realize(args):
    try:
        angles = _angles(args.angles)
        poly = realize(angles)
    except (ForbiddenTriple, AngleOutOfRange) as exc:
        return _fail(f"{type(exc).__name__}: {exc}", EXIT_INPUT)
    except ArcPolyError as exc:
        return _fail(exc, EXIT_INPUT)
    measured = poly.angles()
    worst = max(abs(a - b) for a, b in zip(angles, measured))
    simple = is_simple(poly)
    print("measured angles:", ", ".join(_pi(a) for a in measured))
    print(f"max angle error: {worst:.3e}")
    print("simple:", simple.simple)
    if not simple.simple:
        print("witness:", simple.witness)
    if args.svg:
        write_svg(args.svg, poly.normalized())
        print("wrote", args.svg)
    return EXIT_OK if simple.simple and worst <= ANGLE_MATCH_TOL else EXIT_BROKEN


def _load_graph(path):
    with open(path, encoding="utf-8") as fh:
        gf = graphio.parse_graph(fh.read())
    g = validate_cactus(gf.edges, gf.vertices)
    return gf, g


def _file_embedding(gf, g):
    if gf.rotation:
        rot = dict(natural_embedding(g).rotation)
        rot.update(gf.rotation)
        return embedding_from_rotation(g, rot)
    if gf.interior:
        return embedding_from_interior(g, gf.interior)
    return natural_embedding(g)


def _print_report(rep):
    if rep.ok:
        print(f"verify: ok (max angle error {rep.max_angle_error:.3e})")
    else:
        print(f"verify: FAILED {rep.kind} at vertex {rep.vertex} edges {rep.edges}: {rep.message}")


def cmd_draw(args):
    try:
        gf, g = _load_graph(args.graph)
        emb = natural_embedding(g) if args.embedding == "natural" else _file_embedding(gf, g)
    except NotACactus as exc:
        return _fail(f"NotACactus: {exc} (edge {exc.witness_edge})", EXIT_INPUT)
    except (OSError, ArcPolyError) as exc:
        return _fail(exc, EXIT_INPUT)
    if args.embedding == "file":
        reports = check_embedded_faces(emb)
        for r in reports:
            print(f"face {r.vertices}: angles ({', '.join(f'{a / PI:.4f}pi' for a in r.angles)}) {r.status}")
        bad = [r for r in reports if r.obstruction]
        if bad:
            for r in bad:
                v = r.verdict
                if v is not None and hasattr(v, "phi"):
                    print(f"obstruction: face {r.vertices} is {r.status};"
                          f" phi = ({', '.join(f'{p / PI:+.4f}pi' for p in v.phi)}),"
                          f" violating index {v.violating_index}")
                else:
                    print(f"obstruction: face {r.vertices} is {r.status}: {r.note}")
            if args.svg:
                tri = next((r for r in bad if len(r.vertices) == 3), None)
                if tri is not None:
                    arcs, points, labels = crossing_configuration(tri.angles)
                    write_svg(args.svg, arcs, highlights=points, labels=labels)
                    print("wrote diagnostic", args.svg)
            return EXIT_NO
        if not emb.is_natural:
            print("verdict: Undecided (only the natural embedding is drawn)")
            return EXIT_UNDECIDED
    try:
        D = draw_cactus(g, emb)
    except ArcPolyError as exc:
        return _fail(f"drawing failed: {exc}", EXIT_BROKEN)
    rep = verify_lombardi(D, g)
    _print_report(rep)
    if args.svg:
        write_svg(args.svg, D, vertex_radius=2.0)
        print("wrote", args.svg)
    if args.save:
        with open(args.save, "w", encoding="utf-8") as fh:
            fh.write(graphio.drawing_to_json(D))
        print("wrote", args.save)
    return EXIT_OK if rep.ok else EXIT_BROKEN


def cmd_verify(args):
    try:
        with open(args.drawing, encoding="utf-8") as fh:
            D, edges = graphio.drawing_from_json(fh.read())
        g = validate_cactus(edges, sorted(D.points))
    except (OSError, ArcPolyError) as exc:
        return _fail(exc, EXIT_INPUT)
    rep = verify_lombardi(D, g, tol=args.tol)
    _print_report(rep)
    return EXIT_OK if rep.ok else EXIT_NO


def cmd_gen(args):
    try:
        g = random_cactus(args.vertices, args.max_cycle, args.seed)
    except ArcPolyError as exc:
        return _fail(exc, EXIT_INPUT)
    text = graphio.serialize_graph(graphio.graph_file_of(g))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_figures(args):
    for path in write_figures(args.out):
        print("wrote", path)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="arcpoly", description="Arc-polygons and Lombardi drawings of cacti.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify-triangle", help="classify an interior-angle triple")
    s.add_argument("angles", nargs=3, help="radians or multiples of pi such as 5pi/3")
    s.add_argument("--svg", help="write the triangle, or its crossing configuration")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("realize", help="realize an angle sequence with all angles in [0, pi]")
    s.add_argument("angles", nargs="+")
    s.add_argument("--svg", help="output SVG file")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("draw", help="Lombardi drawing of a cactus graph file")
    s.add_argument("graph")
    s.add_argument("--embedding", choices=("natural", "file"), default="natural")
    s.add_argument("--svg", help="output SVG file")
    s.add_argument("--save", help="save the drawing as JSON for later verification")
    s.set_defaults(func=cmd_draw)

    s = sub.add_parser("verify", help="re-check a saved drawing")
    s.add_argument("drawing")
    s.add_argument("--tol", type=float, default=1e-6, help="angle tolerance in radians")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen-cactus", help="seeded random cactus graph file")
    s.add_argument("--vertices", type=int, default=30)
    s.add_argument("--max-cycle", type=int, default=8)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output", help="output file (default: stdout)")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("figures", help="write the fixture figures")
    s.add_argument("--out", default="figures")
    s.set_defaults(func=cmd_figures)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
