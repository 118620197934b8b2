"""Deterministic SVG output for arcs, arc-polygons and drawings."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .geometry import Arc, bbox_union


def _num(x):
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _collect(obj):
    """(arcs, vertex points) of a drawing, polygon or iterable of arcs."""
    if hasattr(obj, "arcs") and hasattr(obj, "points"):
        return [obj.arcs[k] for k in sorted(obj.arcs)], [obj.points[k] for k in sorted(obj.points)]
    if hasattr(obj, "edges") and hasattr(obj, "vertices"):
        return list(obj.edges), list(obj.vertices)
    arcs = list(obj)
    pts = []
    for a in arcs:
        for p in (a.start, a.end):
            if p not in pts:
                pts.append(p)
    return arcs, pts


class _Frame:
    def __init__(self, box, width, pad):
        x0, y0, x1, y1 = box
        span = max(x1 - x0, y1 - y0, 1e-12)
        self.k = (width - 2 * pad) / span
        self.x0, self.y1, self.pad = x0, y1, pad
        self.width = width
        self.height = 2 * pad + (y1 - y0) * self.k

    def xy(self, z):
        # y axis points down in SVG
        return _num(self.pad + (z.real - self.x0) * self.k), _num(self.pad + (self.y1 - z.imag) * self.k)


def _path(arc, fr):
    x0, y0 = fr.xy(arc.start)
    x1, y1 = fr.xy(arc.end)
    if arc.is_segment:
        return f"M {x0} {y0} L {x1} {y1}"
    r = _num(arc.radius * fr.k)
    large = 1 if abs(arc.sweep) > math.pi else 0
    # with y pointing down, a counterclockwise arc of the model is drawn in
    # SVG's negative angle direction
    sweep = 1 if arc.sweep < 0 else 0
    return f"M {x0} {y0} A {r} {r} 0 {large} {sweep} {x1} {y1}"


def emit_svg(obj=(), width=400, pad=20, stroke="black", stroke_width=1.5,
             vertex_radius=3.0, highlights=(), labels=(), title=None):
    """SVG text for ``obj`` (a Drawing, ArcPolygon or iterable of Arc).

    ``highlights`` are points marked in red (crossings, touching points);
    ``labels`` is a sequence of (point, text) annotations.
    """
    arcs, pts = _collect(obj)
    highlights = list(highlights)
    labels = list(labels)
    marks = pts + highlights + [p for p, _ in labels]
    boxes = [a.bbox() for a in arcs] + [(p.real, p.imag, p.real, p.imag) for p in marks]
    box = bbox_union(boxes) if boxes else (0.0, 0.0, 1.0, 1.0)
    fr = _Frame(box, width, pad)
    W, H = _num(fr.width), _num(fr.height)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(f'<g fill="none" stroke="{stroke}" stroke-width="{_num(stroke_width)}">')
    out += [f'<path d="{_path(a, fr)}"/>' for a in arcs]
    out.append("</g>")
    if pts and vertex_radius > 0:
        out.append(f'<g fill="{stroke}">')
        for p in pts:
            x, y = fr.xy(p)
            out.append(f'<circle cx="{x}" cy="{y}" r="{_num(vertex_radius)}"/>')
        out.append("</g>")
    if highlights:
        out.append('<g fill="none" stroke="red" stroke-width="1.500000">')
        for p in highlights:
            x, y = fr.xy(p)
            out.append(f'<circle cx="{x}" cy="{y}" r="{_num(2 * vertex_radius + 2)}"/>')
        out.append("</g>")
    if labels:
        out.append('<g font-family="sans-serif" font-size="12" fill="blue">')
        for p, text in labels:
            x, y = fr.xy(p)
            out.append(f'<text x="{x}" y="{y}">{escape(str(text))}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, obj=(), **kw):
    text = emit_svg(obj, **kw)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return text
