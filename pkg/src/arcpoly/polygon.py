"""Arc-polygons and the realizer for angle sequences with every angle in
[0, pi].

Polygons are traversed clockwise: the interior lies on the right of each
directed edge.  Edge i runs from vertex i to vertex i+1 (mod n).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import (
    AngleOutOfRange,
    ForbiddenTriple,
    NotACusp,
    NotApplicable,
    NotSimpleInput,
    ParameterOutOfRange,
)
from .geometry import EPS, PT_TOL, TAU, Arc, arc_intersections, bbox_union, close, cross, unit

PI = math.pi
# angles closer than this to 0, pi or 2pi are snapped / treated as exact
ANGLE_TOL = 1e-9


@dataclass(frozen=True)
class ArcPolygon:
    vertices: tuple
    edges: tuple

    def __post_init__(self):
        verts = tuple(complex(v) for v in self.vertices)
        edges = tuple(self.edges)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        n = len(verts)
        if n < 2 or len(edges) != n:
            raise ValueError("an arc-polygon needs n >= 2 vertices and n edges")
        scale = max(1.0, max(abs(v) for v in verts))
        for i, arc in enumerate(edges):
            if not (
                close(arc.start, verts[i], 1e3 * PT_TOL * scale)
                and close(arc.end, verts[(i + 1) % n], 1e3 * PT_TOL * scale)
            ):
                raise ValueError(f"edge {i} does not join vertex {i} to vertex {(i + 1) % n}")

    def __len__(self):
        return len(self.vertices)

    def angles(self):
        return [measure_interior_angle(self, i) for i in range(len(self))]

    def bbox(self):
        return bbox_union(a.bbox() for a in self.edges)

    def signed_area(self):
        """Enclosed area, positive for counterclockwise traversal."""
        total = 0.0
        for arc in self.edges:
            s, e = arc.start, arc.end
            if arc.is_segment:
                total += 0.5 * cross(s, e)
            else:
                c = arc.center
                total += 0.5 * ((c.conjugate() * (e - s)).imag + arc.radius**2 * arc.sweep)
        return total

    def map(self, f):
        """Image under a similarity (or reflection) f applied pointwise."""
        return ArcPolygon(tuple(f(v) for v in self.vertices), tuple(a.transformed(f) for a in self.edges))

    def reflected(self):
        return self.map(lambda z: z.conjugate())

    def normalized(self):
        """Translate and scale into the unit square."""
        x0, y0, x1, y1 = self.bbox()
        size = max(x1 - x0, y1 - y0)
        lo = complex(x0, y0)
        return self.map(lambda z: (z - lo) / size)

    def rotated(self, k):
        """Relabel so that old vertex k becomes vertex 0."""
        n = len(self)
        k %= n
        return ArcPolygon(self.vertices[k:] + self.vertices[:k], self.edges[k:] + self.edges[:k])

    def clockwise(self):
        return self if self.signed_area() <= 0 else self.reflected()


def measure_interior_angle(poly, i):
    """Interior angle at vertex i in [0, 2pi]; 0 at a cusp, 2pi at a full wrap."""
    n = len(poly)
    if not 0 <= i < n:
        raise IndexError(f"vertex index {i} out of range for {n} vertices")
    out = poly.edges[i]
    inc = poly.edges[i - 1]
    raw = cmath.phase(out.tangent_start / inc.tangent_end)
    if raw < 0:
        raw += TAU
    if raw < ANGLE_TOL or raw > TAU - ANGLE_TOL:
        # tangent arcs: the interior sliver exists iff the reversed incoming
        # arc bends to the right of the outgoing one
        k_out = out.curvature
        k_in = -inc.curvature
        return 0.0 if k_in <= k_out else TAU
    return raw


class Witness(NamedTuple):
    edges: tuple
    point: Optional[complex]
    kind: str


class SimplicityReport(NamedTuple):
    simple: bool
    witness: Optional[Witness] = None
    witnesses: tuple = ()


def _boxes_meet(b1, b2, pad):
    return not (b1[2] + pad < b2[0] or b2[2] + pad < b1[0] or b1[3] + pad < b2[1] or b2[3] + pad < b1[1])


def is_simple(poly, collect=False):
    """Check that edges meet only at the vertices they share."""
    n = len(poly)
    edges = poly.edges
    boxes = [a.bbox() for a in edges]
    found = []
    for i in range(n):
        for j in range(i + 1, n):
            if not _boxes_meet(boxes[i], boxes[j], PT_TOL):
                continue
            shared = []
            if j == i + 1:
                shared.append(poly.vertices[j])
            if i == 0 and j == n - 1:
                shared.append(poly.vertices[0])
            res = arc_intersections(edges[i], edges[j])
            if res.overlap:
                found.append(Witness((i, j), None, "improper overlap"))
            for c in res:
                if c.end_a and c.end_b and any(close(c.point, v) for v in shared):
                    continue
                if c.end_a or c.end_b:
                    kind = "vertex-on-edge"
                elif c.tangential:
                    kind = "tangential contact"
                else:
                    kind = "transversal crossing"
                found.append(Witness((i, j), c.point, kind))
            if found and not collect:
                return SimplicityReport(False, found[0], tuple(found))
    if found:
        return SimplicityReport(False, found[0], tuple(found))
    return SimplicityReport(True)


def _semicircle(a, b, upper):
    mid = (a + b) / 2
    h = abs(b - a) / 2
    return Arc(a, mid + (1j * h if upper else -1j * h), b)


class QuadVariant(enum.Enum):
    ADJACENT_ZEROS = "AdjacentZeros"  # (0, 0, pi, pi)
    ALTERNATING_ZEROS = "AlternatingZeros"  # (0, pi, 0, pi)


QUAD_ANGLES = {
    QuadVariant.ADJACENT_ZEROS: (0.0, 0.0, PI, PI),
    QuadVariant.ALTERNATING_ZEROS: (0.0, PI, 0.0, PI),
}


def base_quadrilateral(variant):
    """Semicircle quadrilaterals on the points 0, 1, 2, 3 of the x axis."""
    variant = QuadVariant(variant)
    if variant is QuadVariant.ADJACENT_ZEROS:
        xs = (0, 1, 2, 3)
        sides = (True, True, False, True)
    else:
        xs = (0, 2, 3, 1)
        sides = (False, True, True, False)
    verts = [complex(x, 0) for x in xs]
    arcs = [_semicircle(verts[i], verts[(i + 1) % 4], sides[i]) for i in range(4)]
    return ArcPolygon(verts, arcs).clockwise()


def insert_flat_vertex(poly, e, s=0.5):
    """Split edge e at arc-length fraction s; the new vertex becomes index e+1."""
    n = len(poly)
    if not 0 <= e < n:
        raise IndexError(f"edge index {e} out of range")
    if not 0.0 < s < 1.0:
        raise ParameterOutOfRange(f"split parameter {s} not in (0, 1)")
    first, second = poly.edges[e].split(s)
    verts = list(poly.vertices)
    verts.insert(e + 1, first.end)
    edges = list(poly.edges)
    edges[e : e + 1] = [first, second]
    return ArcPolygon(verts, edges)


def _open_at_cusp(poly, k):
    """Invert about cusp k.

    Returns the finite vertices (from the vertex after the cusp round to the
    one before it), the finite arcs between them, and the common direction in
    which the two cusp edges run off to infinity.
    """
    n = len(poly)
    c = poly.vertices[k]

    def inv(z):
        return c + 1.0 / (z - c).conjugate()

    verts = [inv(poly.vertices[(k + 1 + j) % n]) for j in range(n - 1)]
    arcs = [poly.edges[(k + 1 + j) % n].transformed(inv).rewitnessed() for j in range(n - 2)]
    d_in = unit(inv(poly.edges[k - 1].witness) - verts[-1])
    d_out = unit(inv(poly.edges[k].witness) - verts[0])
    if abs(d_in - d_out) > 1e-6:
        raise NotACusp(f"vertex {k}: edges do not become parallel rays")
    return verts, arcs, unit(d_in + d_out)


def _place(verts, arcs, direction, forward):
    """Rotate the opened polygon so its rays run along +x (forward) or -x and
    scale so the rays lie on y = 0 (ray through the last vertex for forward,
    the first vertex otherwise) and y = 1."""
    rot = direction.conjugate() if forward else -direction.conjugate()
    low = verts[-1] if forward else verts[0]
    high = verts[0] if forward else verts[-1]
    y_low = (low * rot).imag
    gap = (high * rot).imag - y_low
    if gap <= 0:
        raise NotSimpleInput("opened polygon has an unexpected orientation")

    def f(z):
        return (z * rot - 1j * y_low) / gap

    return [f(v) for v in verts], [a.transformed(f) for a in arcs]


def glue_at_cusps(P, cuspP, Q, cuspQ, margin=0.5, retries=8):
    """Merge two polygons at zero-angle vertices.

    The result lists P's vertices starting after its cusp, then Q's likewise,
    so its angle sequence is P's followed by Q's with both cusps removed.
    ``margin`` is the gap left between the two opened pieces, in units of the
    common strip width; it doubles on each failed simplicity check.
    """
    for poly, k in ((P, cuspP), (Q, cuspQ)):
        if len(poly) < 3:
            raise NotSimpleInput("gluing needs polygons with at least three vertices")
        if measure_interior_angle(poly, k) > ANGLE_TOL:
            raise NotACusp(f"vertex {k} has angle {measure_interior_angle(poly, k)}")
        if not is_simple(poly).simple:
            raise NotSimpleInput("gluing input is not simple")
    sv, sa, sd = _open_at_cusp(P, cuspP)
    tv, ta, td = _open_at_cusp(Q, cuspQ)
    sv, sa = _place(sv, sa, sd, forward=True)
    tv, ta = _place(tv, ta, td, forward=False)

    def extent(verts, arcs):
        boxes = [a.bbox() for a in arcs] + [(v.real, v.imag, v.real, v.imag) for v in verts]
        return bbox_union(boxes)

    bs = extent(sv, sa)
    bt = extent(tv, ta)
    for _ in range(retries + 1):
        dx = bs[2] - bt[0] + margin
        tv2 = [v + dx for v in tv]
        ta2 = [a.transformed(lambda z: z + dx) for a in ta]
        verts = sv + tv2
        edges = sa + [Arc.segment(sv[-1], tv2[0])] + ta2 + [Arc.segment(tv2[-1], sv[0])]
        # inversion reversed the orientation; reflect back to clockwise
        glued = ArcPolygon(verts, edges).reflected().normalized()
        if is_simple(glued).simple:
            return glued
        margin *= 2
    raise NotSimpleInput("glued polygon is not simple after separation retries")


def _snap(theta):
    for target in (0.0, PI):
        if abs(theta - target) <= ANGLE_TOL:
            return target
    return theta


def _is_forbidden(seq):
    return len(seq) == 3 and sorted(seq) == [0.0, 0.0, PI]


def _quad_match(seq):
    for variant, pattern in QUAD_ANGLES.items():
        for k in range(4):
            if all(seq[j] == pattern[(j + k) % 4] for j in range(4)):
                return variant, k
    return None


def realize(angles):
    """Simple arc-polygon whose interior angles are the given sequence."""
    seq = [float(a) for a in angles]
    if len(seq) < 3:
        raise ValueError("realize needs at least three angles")
    for a in seq:
        if not -ANGLE_TOL <= a <= PI + ANGLE_TOL:
            raise AngleOutOfRange(f"angle {a} outside [0, pi]")
    seq = [_snap(min(max(a, 0.0), PI)) for a in seq]
    if _is_forbidden(seq):
        raise ForbiddenTriple(f"{tuple(angles)} is a permutation of (0, 0, pi)")
    return _realize(seq).normalized()


def _realize(seq):
    from .triangle import construct_triangle

    n = len(seq)
    if n == 3:
        return construct_triangle(seq)
    if n == 4:
        match = _quad_match(seq)
        if match is not None:
            variant, k = match
            return base_quadrilateral(variant).rotated(k)
    for i in range(n):
        if seq[i] != PI:
            continue
        rest = seq[:i] + seq[i + 1 :]
        if _is_forbidden(rest):
            continue
        poly = _realize(rest)
        poly = insert_flat_vertex(poly, (i - 1) % (n - 1), 0.5)
        return poly.rotated(n - 1) if i == 0 else poly
    m = (n + 1) // 2
    left = _realize(seq[:m] + [0.0])
    right = _realize(seq[m:] + [0.0])
    return glue_at_cusps(left, len(left) - 1, right, len(right) - 1)


@dataclass(frozen=True)
class Infeasibility:
    n: int
    angles: tuple
    reason: str
    realizable: bool = False


def zigzag_is_infeasible(n):
    """Why no simple arc-polygon alternates between angles 0 and 2pi."""
    if n < 4 or n % 2:
        raise NotApplicable("the alternation argument needs an even number of sides >= 4")
    angles = tuple(0.0 if i % 2 == 0 else TAU for i in range(n))
    reason = (
        "nested circles: an edge whose end angles are 0 and 2pi has its two "
        "neighbours tangent to it on opposite sides of its circle, and tangent "
        "circles cannot cross, so the sides form a strictly nested chain of "
        "circles that cannot return from the innermost to the outermost"
    )
    return Infeasibility(n, angles, reason)
