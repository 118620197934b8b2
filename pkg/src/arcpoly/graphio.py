"""Plain-text graph files, drawing files and angle literals.

A graph file has up to four sections::

    # comment
    [vertices]
    0 1 2 3
    [edges]
    0 1
    1 2
    2 0
    2 3
    [rotation]
    2: 1 2 3
    [interior]
    2 1

Edges are numbered from 0 in the order listed.  A rotation line gives the
counterclockwise order of the edge ids at one vertex; an interior line
``v k`` asks for k of the non-cycle edges at v to be drawn inside the face
of v's cycle.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import ArcPolyError
from .geometry import Arc

SECTIONS = ("vertices", "edges", "rotation", "interior")


class ParseError(ArcPolyError):
    pass


@dataclass
class GraphFile:
    vertices: list
    edges: list
    rotation: Optional[dict] = None
    interior: Optional[dict] = field(default=None)

    def __eq__(self, other):
        if not isinstance(other, GraphFile):
            return NotImplemented
        return (
            list(self.vertices) == list(other.vertices)
            and [tuple(e) for e in self.edges] == [tuple(e) for e in other.edges]
            and _norm(self.rotation) == _norm(other.rotation)
            and (self.interior or None) == (other.interior or None)
        )


def _norm(rot):
    if not rot:
        return None
    return {v: tuple(es) for v, es in rot.items()}


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def parse_graph(text):
    section = None
    seen = set()
    vertices, edges, rotation, interior = [], [], {}, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"\[(\w+)\]", line)
        if m:
            section = m.group(1).lower()
            if section not in SECTIONS:
                raise ParseError(f"line {lineno}: unknown section [{section}]")
            if section in seen:
                raise ParseError(f"line {lineno}: section [{section}] repeated")
            seen.add(section)
            continue
        if section is None:
            raise ParseError(f"line {lineno}: content before the first section header")
        if section == "vertices":
            vertices.extend(_ints(line.split(), lineno))
        elif section == "edges":
            pair = _ints(line.split(), lineno)
            if len(pair) != 2:
                raise ParseError(f"line {lineno}: an edge needs exactly two vertex ids")
            edges.append(tuple(pair))
        elif section == "rotation":
            head, sep, rest = line.partition(":")
            if not sep:
                raise ParseError(f"line {lineno}: rotation lines look like 'v: e1 e2 ...'")
            (v,) = _ints([head.strip()], lineno)
            if v in rotation:
                raise ParseError(f"line {lineno}: rotation for vertex {v} given twice")
            rotation[v] = tuple(_ints(rest.split(), lineno))
        else:
            pair = _ints(line.split(), lineno)
            if len(pair) != 2 or pair[1] < 0:
                raise ParseError(f"line {lineno}: interior lines look like 'v k' with k >= 0")
            if pair[0] in interior:
                raise ParseError(f"line {lineno}: interior mark for vertex {pair[0]} given twice")
            interior[pair[0]] = pair[1]
    gf = GraphFile(vertices, edges, rotation or None, interior or None)
    check_graph_file(gf)
    return gf


def check_graph_file(gf):
    if len(set(gf.vertices)) != len(gf.vertices):
        raise ParseError("vertex ids must be unique")
    known = set(gf.vertices)
    for i, (a, b) in enumerate(gf.edges):
        if a not in known or b not in known:
            raise ParseError(f"edge {i} references an undeclared vertex")
    if gf.rotation:
        incident = {v: [] for v in gf.vertices}
        for i, (a, b) in enumerate(gf.edges):
            incident[a].append(i)
            if b != a:
                incident[b].append(i)
        for v, order in gf.rotation.items():
            if v not in known:
                raise ParseError(f"rotation for undeclared vertex {v}")
            if sorted(order) != sorted(incident[v]):
                raise ParseError(f"rotation at vertex {v} must list each incident edge exactly once")
    for v in gf.interior or {}:
        if v not in known:
            raise ParseError(f"interior mark for undeclared vertex {v}")


def serialize_graph(gf):
    lines = ["[vertices]", " ".join(str(v) for v in gf.vertices), "[edges]"]
    lines += [f"{a} {b}" for a, b in gf.edges]
    if gf.rotation:
        lines.append("[rotation]")
        lines += [f"{v}: {' '.join(str(e) for e in es)}" for v, es in sorted(gf.rotation.items())]
    if gf.interior:
        lines.append("[interior]")
        lines += [f"{v} {k}" for v, k in sorted(gf.interior.items())]
    return "\n".join(lines) + "\n"


def graph_file_of(g, rotation=None, interior=None):
    """GraphFile for a CactusGraph."""
    return GraphFile(list(g.vertices), [tuple(e) for e in g.edges], rotation, interior)


_ANGLE = re.compile(
    r"""^\s*(?P<sign>[+-]?)\s*
        (?:(?P<num>\d+(?:\.\d*)?|\.\d+)\s*\*?\s*)?
        (?P<pi>pi|π)
        (?:\s*/\s*(?P<den>\d+(?:\.\d*)?|\.\d+))?\s*$""",
    re.VERBOSE | re.IGNORECASE,
)


def parse_angle(text):
    """Radians from a decimal literal or a rational multiple of pi such as
    ``5pi/3``, ``2*pi/3``, ``-pi/2`` or ``pi``."""
    s = str(text).strip()
    m = _ANGLE.match(s)
    if m:
        coef = Fraction(m.group("num") or "1")
        if m.group("den"):
            den = Fraction(m.group("den"))
            if den == 0:
                raise ParseError(f"division by zero in angle {text!r}")
            coef /= den
        if m.group("sign") == "-":
            coef = -coef
        return coef.numerator * math.pi / coef.denominator
    try:
        value = float(s)
    except ValueError:
        raise ParseError(f"cannot read angle {text!r}") from None
    if not math.isfinite(value):
        raise ParseError(f"angle {text!r} is not finite")
    return value


def _pt(z):
    return [z.real, z.imag]


def drawing_to_json(D):
    doc = {
        "format": "arcpoly-drawing",
        "version": 1,
        "vertices": [{"id": v, "at": _pt(D.points[v])} for v in sorted(D.points)],
        "edges": [
            {
                "id": e,
                "ends": list(D.edges[e]),
                "arc": [_pt(D.arcs[e].start), _pt(D.arcs[e].witness), _pt(D.arcs[e].end)],
            }
            for e in sorted(D.arcs)
        ],
    }
    return json.dumps(doc, indent=1) + "\n"


def drawing_from_json(text):
    """(Drawing, edge list) from a saved drawing."""
    from .lombardi import Drawing

    try:
        doc = json.loads(text)
        if doc.get("format") != "arcpoly-drawing":
            raise ParseError("not a drawing file")
        points = {int(v["id"]): complex(*v["at"]) for v in doc["vertices"]}
        arcs, edges = {}, {}
        for e in doc["edges"]:
            eid = int(e["id"])
            s, w, t = (complex(*p) for p in e["arc"])
            arcs[eid] = Arc(s, w, t)
            edges[eid] = tuple(int(x) for x in e["ends"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ArcPolyError):
            raise
        raise ParseError(f"malformed drawing file: {exc}") from None
    if sorted(edges) != list(range(len(edges))):
        raise ParseError("edge ids must be 0..m-1")
    return Drawing(points, arcs, edges), [edges[i] for i in range(len(edges))]
