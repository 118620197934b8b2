"""Fixture figures written as SVG files (the golden set under tests/golden)."""

from __future__ import annotations

import math
import os

from .cactus import bad_hat_embedding, check_embedded_faces, hat_cactus
from .lombardi import draw_cactus
from .polygon import ArcPolygon, QuadVariant, _semicircle, base_quadrilateral, is_simple
from .svg import emit_svg
from .triangle import classify, triangle_arcs

PI = math.pi


def boscovich_triangle():
    """Three semicircles on -1, 0, 1 with the cusp (angle 2pi) at 0.

    Angles in vertex order are (2pi, pi, pi).
    """
    a, b, c = 0j, -1 + 0j, 1 + 0j
    arcs = (_semicircle(a, b, False), _semicircle(b, c, True), _semicircle(c, a, False))
    return ArcPolygon((a, b, c), arcs)


def _fmt(x):
    return f"{x / PI:+.4f}pi"


def crossing_configuration(theta, vertices=None):
    """(arcs, contact points, labels) of the three sides built from theta,
    whether or not they form a simple triangle."""
    v, arcs = triangle_arcs(theta, vertices)
    report = is_simple(ArcPolygon(v, arcs), collect=True)
    points = []
    for w in report.witnesses:
        if w.point is not None and all(abs(w.point - p) > 1e-9 for p in points):
            points.append(w.point)
    verdict = classify(theta)
    labels = [(v[i], f"v{i}: phi={_fmt(verdict.phi[i])}") for i in range(3)]
    return arcs, points, labels


def _triangle_figure(theta, title):
    arcs, points, labels = crossing_configuration(theta)
    return emit_svg(arcs, highlights=points, labels=labels, title=title)


def bad_hat_diagnostic(inside=4):
    """Diagnostic figure for the triangle face of the bad-hat embedding."""
    emb = bad_hat_embedding(inside)
    face = next(r for r in check_embedded_faces(emb) if len(r.vertices) == 3)
    title = f"triangle face {face.vertices}: {face.status}"
    return _triangle_figure(face.angles, title)


def figure_texts():
    """Map of file name to SVG text, in a fixed order."""
    out = {}
    out["boscovich.svg"] = emit_svg(boscovich_triangle(), title="angles (2pi, pi, pi)")
    out["triangle-boundary.svg"] = _triangle_figure((0.0, 4 * PI / 3, 5 * PI / 3), "angles (0, 4pi/3, 5pi/3)")
    out["triangle-crossing.svg"] = _triangle_figure((0.0, 3 * PI / 2, 11 * PI / 6), "angles (0, 3pi/2, 11pi/6)")
    for variant, name in ((QuadVariant.ADJACENT_ZEROS, "adjacent"), (QuadVariant.ALTERNATING_ZEROS, "alternating")):
        out[f"quad-{name}.svg"] = emit_svg(base_quadrilateral(variant), title=variant.value)
    out["hat-natural.svg"] = emit_svg(draw_cactus(hat_cactus()), vertex_radius=2.0, title="natural embedding")
    out["hat-badhat.svg"] = bad_hat_diagnostic()
    return out


def write_figures(directory):
    os.makedirs(directory, exist_ok=True)
    written = []
    for name, text in figure_texts().items():
        path = os.path.join(directory, name)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        written.append(path)
    return written
