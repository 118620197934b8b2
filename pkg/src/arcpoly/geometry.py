"""Planar kernel: points, generalized circles, three-point arcs and Moebius maps.

Points are plain ``complex`` numbers (x + iy).  The point at infinity of the
extended plane is the :data:`INF` sentinel; it is never encoded as a large
float.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    AngleOutOfRange,
    CoincidentPoints,
    MapsThroughInfinity,
    PointsNotOnCircle,
)

EPS = float(os.environ.get("ARC_EPSILON", "1e-9"))
# two computed points closer than this are the same point
PT_TOL = 100 * EPS
TAU = 2 * math.pi


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


class _lazy:
    """Compute an attribute once and store it on the instance.

    Like functools.cached_property without its per-access lock, which
    dominates the cost of the small geometric objects used here.
    """

    def __init__(self, func):
        self.func = func
        self.name = func.__name__
        self.__doc__ = func.__doc__

    def __set_name__(self, owner, name):
        self.name = name

    def __get__(self, obj, owner=None):
        if obj is None:
            return self
        value = self.func(obj)
        obj.__dict__[self.name] = value
        return value


def point(x, y):
    return complex(x, y)


def is_inf(p):
    return p is INF


def close(p, q, tol=None):
    if p is INF or q is INF:
        return p is q
    return abs(p - q) <= (PT_TOL if tol is None else tol)


def wrap_angle(a):
    """Reduce an angle to (-pi, pi]."""
    a = math.fmod(a, TAU)
    if a <= -math.pi:
        a += TAU
    elif a > math.pi:
        a -= TAU
    return a


def cross(u, v):
    return u.real * v.imag - u.imag * v.real


def unit(z):
    r = abs(z)
    if r == 0:
        raise CoincidentPoints("zero-length direction")
    return z / r


@dataclass(frozen=True)
class GCircle:
    """Generalized circle a(x^2+y^2) + bx + cy + d = 0 (a == 0 for a line)."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        coeffs = (self.a, self.b, self.c, self.d)
        m = max(abs(v) for v in coeffs)
        if m == 0 or not math.isfinite(m):
            raise ValueError("degenerate generalized circle")
        if abs(self.a) / m <= EPS:
            sign = 1.0 if (self.b, self.c) >= (0.0, 0.0) else -1.0
            if abs(self.b) / m <= EPS:
                sign = math.copysign(1.0, self.c)
            vals = (0.0, sign * self.b / m, sign * self.c / m, sign * self.d / m)
        else:
            sign = math.copysign(1.0, self.a)
            vals = tuple(sign * v / m for v in coeffs)
            if vals[1] ** 2 + vals[2] ** 2 - 4 * vals[0] * vals[3] <= 0:
                raise ValueError("generalized circle with empty or point locus")
        for name, v in zip("abcd", vals):
            object.__setattr__(self, name, v)

    @classmethod
    def from_center(cls, center, radius):
        return cls(1.0, -2 * center.real, -2 * center.imag, abs(center) ** 2 - radius**2)

    @classmethod
    def line_through(cls, p, q):
        if close(p, q, 0.0):
            raise CoincidentPoints("line through a single point")
        n = 1j * (q - p)  # normal
        return cls(0.0, n.real, n.imag, -(n.real * p.real + n.imag * p.imag))

    @property
    def is_line(self):
        return self.a == 0.0

    @property
    def coeffs(self):
        return (self.a, self.b, self.c, self.d)

    @_lazy
    def center(self):
        if self.is_line:
            return INF
        return complex(-self.b, -self.c) / (2 * self.a)

    @_lazy
    def radius(self):
        if self.is_line:
            return math.inf
        return math.sqrt(self.b**2 + self.c**2 - 4 * self.a * self.d) / (2 * abs(self.a))

    def value(self, p):
        return self.a * (p.real**2 + p.imag**2) + self.b * p.real + self.c * p.imag + self.d

    def distance(self, p):
        """Euclidean distance from p to the locus."""
        if self.is_line:
            return abs(self.value(p)) / math.hypot(self.b, self.c)
        return abs(abs(p - self.center) - self.radius)

    def contains(self, p, tol=None):
        return self.distance(p) <= (PT_TOL if tol is None else tol)

    def same_as(self, other, tol=None):
        tol = 100 * EPS if tol is None else tol
        diff = max(abs(x - y) for x, y in zip(self.coeffs, other.coeffs))
        return diff <= tol

    def line_frame(self):
        """(point, unit direction) of a line carrier."""
        n = complex(self.b, self.c)
        nn = abs(n) ** 2
        return -self.d * n / nn, 1j * n / abs(n)


class Ray(NamedTuple):
    """Half-line from a finite origin toward infinity; only used while gluing."""

    origin: complex
    direction: complex


def circumcircle(p0, p1, p2):
    """Generalized circle through three distinct points (a line if collinear)."""
    pts = (p0, p1, p2)
    scale = max(abs(p - q) for p in pts for q in pts)
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(pts[i] - pts[j]) <= PT_TOL * max(1.0, scale):
                raise CoincidentPoints(f"points {pts[i]!r} and {pts[j]!r} coincide")
    m = (p0 + p1 + p2) / 3
    q = [p - m for p in pts]
    s = [abs(z) ** 2 for z in q]
    x = [z.real for z in q]
    y = [z.imag for z in q]

    def det3(r0, r1, r2):
        return (
            r0[0] * (r1[1] * r2[2] - r1[2] * r2[1])
            - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
            + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0])
        )

    rows = list(zip(s, x, y, (1.0, 1.0, 1.0)))
    a = det3(*[(r[1], r[2], r[3]) for r in rows])
    b = -det3(*[(r[0], r[2], r[3]) for r in rows])
    c = det3(*[(r[0], r[1], r[3]) for r in rows])
    d = -det3(*[(r[0], r[1], r[2]) for r in rows])
    if abs(a) <= EPS * scale**2:
        return GCircle.line_through(p0, p2 if abs(p2 - p0) >= abs(p1 - p0) else p1)
    # undo the centroid shift
    mx, my = m.real, m.imag
    return GCircle(
        a,
        b - 2 * a * mx,
        c - 2 * a * my,
        a * (mx * mx + my * my) - b * mx - c * my + d,
    )


@dataclass(frozen=True)
class Arc:
    """Directed circular arc start -> witness -> end (a segment when collinear)."""

    start: complex
    witness: complex
    end: complex

    def __post_init__(self):
        pts = (self.start, self.witness, self.end)
        if any(p is INF for p in pts):
            raise MapsThroughInfinity("arc through the point at infinity")
        for name in ("start", "witness", "end"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        s, w, e = self.start, self.witness, self.end
        if min(abs(s - w), abs(w - e), abs(s - e)) == 0:
            raise CoincidentPoints("arc points must be pairwise distinct")

    @classmethod
    def segment(cls, p, q):
        return cls(p, (p + q) / 2, q)

    @_lazy
    def _cross(self):
        return cross(self.witness - self.start, self.end - self.start)

    @_lazy
    def is_segment(self):
        s, w, e = self.start, self.witness, self.end
        if abs(self._cross) > EPS * abs(w - s) * abs(e - s):
            return False
        # collinear: the witness must lie between the endpoints
        t = ((w - s) * (e - s).conjugate()).real
        if not 0 < t < abs(e - s) ** 2:
            raise MapsThroughInfinity("collinear arc passes through infinity")
        return True

    @_lazy
    def carrier(self):
        if self.is_segment:
            return GCircle.line_through(self.start, self.end)
        return circumcircle(self.start, self.witness, self.end)

    @_lazy
    def center(self):
        if self.is_segment:
            return INF
        a = self.witness - self.start
        b = self.end - self.start
        return self.start + (abs(a) ** 2 * b - abs(b) ** 2 * a) / (a.conjugate() * b - a * b.conjugate())

    @_lazy
    def radius(self):
        if self.is_segment:
            return math.inf
        return abs(self.start - self.center)

    @_lazy
    def sweep(self):
        """Signed central angle, counterclockwise positive; 0 for segments."""
        if self.is_segment:
            return 0.0
        s, w, e = self.start, self.witness, self.end
        at_w = abs(cmath.phase((s - w) / (e - w)))
        return math.copysign(TAU - 2 * at_w, self._cross)

    @property
    def curvature(self):
        """Signed curvature along the direction of travel (left turn positive)."""
        if self.is_segment:
            return 0.0
        return math.copysign(1.0 / self.radius, self.sweep)

    @_lazy
    def length(self):
        if self.is_segment:
            return abs(self.end - self.start)
        return abs(self.sweep) * self.radius

    @_lazy
    def tangent_start(self):
        s, w, e = self.start, self.witness, self.end
        return unit((w - s) * (e - s) / (e - w))

    @_lazy
    def tangent_end(self):
        s, w, e = self.start, self.witness, self.end
        return unit((w - e) * (s - e) / (s - w))

    def reversed(self):
        return Arc(self.end, self.witness, self.start)

    def point_at(self, t):
        """Point at arc-length fraction t in [0, 1]."""
        s, e = self.start, self.end
        if self.is_segment:
            return s + t * (e - s)
        sw = self.sweep
        if abs(sw) <= math.pi:
            half = sw / 2
            return s + (e - s) * (math.sin(half * t) / math.sin(half)) * cmath.exp(1j * half * (t - 1))
        c = self.center
        return c + (s - c) * cmath.exp(1j * sw * t)

    @_lazy
    def midpoint(self):
        return self.point_at(0.5)

    def rewitnessed(self):
        return Arc(self.start, self.midpoint, self.end)

    def param(self, p):
        """Arc-length fraction of a carrier point p (may fall outside [0, 1])."""
        s, e = self.start, self.end
        if self.is_segment:
            return ((p - s) * (e - s).conjugate()).real / abs(e - s) ** 2
        c = self.center
        ang = cmath.phase((p - c) / (s - c))
        if self.sweep < 0:
            ang = -ang
        if ang < 0:
            ang += TAU
        return ang / abs(self.sweep)

    def on_span(self, p, tol=None):
        """Whether a point already known to be on the carrier lies on the arc."""
        tol = PT_TOL if tol is None else tol
        s, e = self.start, self.end
        if abs(p - s) <= tol or abs(p - e) <= tol:
            return True
        if self.is_segment:
            t = self.param(p)
            return 0.0 < t < 1.0
        side_p = cross(e - s, p - s)
        side_w = cross(e - s, self.witness - s)
        return side_p * side_w > 0

    def contains(self, p, tol=None):
        tol = PT_TOL if tol is None else tol
        return self.carrier.distance(p) <= tol and self.on_span(p, tol)

    def split(self, t):
        """Two sub-arcs meeting at the point of arc-length fraction t."""
        m = self.point_at(t)
        return Arc(self.start, self.point_at(t / 2), m), Arc(m, self.point_at((1 + t) / 2), self.end)

    def bbox(self):
        return self._bbox

    @_lazy
    def _bbox(self):
        pts = [self.start, self.end]
        if not self.is_segment:
            c, r = self.center, self.radius
            for d in (1, 1j, -1, -1j):
                q = c + r * d
                if self.on_span(q, 0.0):
                    pts.append(q)
        xs = [p.real for p in pts]
        ys = [p.imag for p in pts]
        return min(xs), min(ys), max(xs), max(ys)

    def sample(self, n):
        return [self.point_at(i / (n - 1)) for i in range(n)]

    def transformed(self, f):
        """Arc through the images of the three defining points under f."""
        return Arc(f(self.start), f(self.witness), f(self.end))


def tangent_direction(arc, at="start"):
    """Unit tangent at an endpoint, pointing into the arc."""
    if at == "start":
        return arc.tangent_start
    if at == "end":
        return arc.tangent_end
    raise ValueError(f"unknown endpoint selector {at!r}")


def arc_from_tangent(p, t, q):
    """Arc leaving p in direction t and ending at q."""
    if close(p, q, 0.0):
        raise CoincidentPoints("arc endpoints coincide")
    u = t / (p - q)
    u /= abs(u)
    if abs(u - 1) <= EPS:
        raise MapsThroughInfinity("tangent points away from the far endpoint")
    # |(w-p)/(w-q)| = 1 picks the arc midpoint
    w = (p - q * u) / (1 - u)
    if abs(u + 1) <= EPS:
        w = (p + q) / 2
    return Arc(p, w, q)


def _reference_tangent(ref, p, q, clockwise):
    if ref.is_line:
        return unit(q - p)
    radial = unit(p - ref.center)
    return -1j * radial if clockwise else 1j * radial


def arc_at_angle_to_circle(p, q, ref, phi, clockwise=True):
    """Arc from p to q meeting the reference circle at signed angle phi.

    The reference arc runs along ``ref`` from p to q (clockwise when
    ``clockwise`` is true).  Positive phi bends the new arc toward the side on
    the right of that traversal (into the disk for clockwise travel), negative
    phi away from it; phi = 0 returns the reference arc itself.
    """
    if not (ref.contains(p, 1e3 * PT_TOL) and ref.contains(q, 1e3 * PT_TOL)):
        raise PointsNotOnCircle("endpoints must lie on the reference circle")
    if abs(phi) > math.pi + EPS:
        raise AngleOutOfRange(f"|phi| = {abs(phi)} exceeds pi")
    return _arc_at_angle(p, q, ref, phi, clockwise)


def _arc_at_angle(p, q, ref, phi, clockwise=True):
    t = _reference_tangent(ref, p, q, clockwise)
    turn = cmath.exp(-1j * phi) if clockwise else cmath.exp(1j * phi)
    return arc_from_tangent(p, t * turn, q)


class Contact(NamedTuple):
    point: complex
    tangential: bool
    end_a: bool  # point is an endpoint of the first arc
    end_b: bool


class Intersections(NamedTuple):
    contacts: tuple
    overlap: bool = False

    def __len__(self):
        return len(self.contacts)

    def __iter__(self):
        return iter(self.contacts)

    @property
    def points(self):
        return [c.point for c in self.contacts]


def _line_meets(z0, u, g):
    """Intersections of the line z0 + t*u with g: list of (point, tangential)."""
    a, b, c = g.a, g.b, g.c
    qa = a
    qb = 2 * a * (z0.real * u.real + z0.imag * u.imag) + b * u.real + c * u.imag
    qc = g.value(z0)
    if qa == 0.0:
        if abs(qb) <= EPS:
            return []
        return [(z0 + (-qc / qb) * u, False)]
    disc = qb * qb - 4 * qa * qc
    rel = disc / (b * b + c * c - 4 * a * g.d)
    if rel < -EPS:
        return []
    if rel <= EPS:
        return [(z0 + (-qb / (2 * qa)) * u, True)]
    root = math.sqrt(disc)
    qq = -0.5 * (qb + math.copysign(root, qb))
    return [(z0 + (qq / qa) * u, False), (z0 + (qc / qq) * u, False)]


def carrier_intersections(g1, g2):
    """Intersections of two generalized circles; None when they coincide."""
    if g1.same_as(g2):
        return None
    if g1.is_line or g2.is_line:
        line, other = (g1, g2) if g1.is_line else (g2, g1)
        z0, u = line.line_frame()
        return _line_meets(z0, u, other)
    # radical line of two proper circles
    rb = g2.a * g1.b - g1.a * g2.b
    rc = g2.a * g1.c - g1.a * g2.c
    rd = g2.a * g1.d - g1.a * g2.d
    scale = max(abs(rb), abs(rc), abs(rd))
    if math.hypot(rb, rc) <= EPS * max(scale, EPS):
        return []  # concentric
    n = complex(rb, rc)
    z0 = -rd * n / abs(n) ** 2
    u = 1j * n / abs(n)
    small = g1 if g1.radius <= g2.radius else g2
    # re-anchor the line frame near the circle for conditioning
    z0 = z0 + ((small.center - z0) * u.conjugate()).real * u
    return _line_meets(z0, u, small)


def _snap_endpoint(p, arc):
    if close(p, arc.start):
        return arc.start, True
    if close(p, arc.end):
        return arc.end, True
    return p, False


def _snap_tangency(p, a, b):
    # a near-tangency merges two roots up to ~r*sqrt(EPS) apart; prefer an
    # endpoint lying on both carriers inside that window
    window = 10 * math.sqrt(EPS) * min(a.radius, b.radius, a.length + b.length)
    for q in (a.start, a.end, b.start, b.end):
        if abs(q - p) <= window and a.carrier.contains(q) and b.carrier.contains(q):
            return q
    return p


def arc_intersections(a, b):
    """All points common to two arcs, flagged tangential / endpoint.

    When both arcs lie on one carrier and share more than isolated points the
    result has ``overlap=True``.
    """
    pts = carrier_intersections(a.carrier, b.carrier)
    if pts is None:
        return _same_carrier(a, b)
    out = []
    for p, tangential in pts:
        if tangential:
            p = _snap_tangency(p, a, b)
        if not (a.on_span(p) and b.on_span(p)):
            continue
        p1, ea = _snap_endpoint(p, a)
        p2, eb = _snap_endpoint(p, b)
        q = p1 if ea else p2
        out.append(Contact(q, tangential, ea, eb))
    # endpoints can be missed when the carriers are nearly tangent there
    for p in (a.start, a.end):
        if any(close(p, c.point) for c in out):
            continue
        if b.contains(p):
            _, eb = _snap_endpoint(p, b)
            out.append(Contact(p, True, True, eb))
    for p in (b.start, b.end):
        if any(close(p, c.point) for c in out):
            continue
        if a.contains(p):
            _, ea = _snap_endpoint(p, a)
            out.append(Contact(p, True, ea, True))
    return Intersections(tuple(out))


def _same_carrier(a, b):
    def inside(p, arc):
        return arc.on_span(p) and not (close(p, arc.start) or close(p, arc.end))

    if (
        inside(a.start, b)
        or inside(a.end, b)
        or inside(b.start, a)
        or inside(b.end, a)
        or inside(a.midpoint, b)
        or inside(b.midpoint, a)
    ):
        return Intersections((), overlap=True)
    out = []
    for p in (a.start, a.end):
        for q in (b.start, b.end):
            if close(p, q):
                out.append(Contact(p, True, True, True))
    return Intersections(tuple(out))


def invert(mirror, p):
    """Inversion of p in a circle (reflection when the mirror is a line)."""
    if mirror.is_line:
        if p is INF:
            return INF
        z0, u = mirror.line_frame()
        return z0 + u * u * (p - z0).conjugate()
    c, r = mirror.center, mirror.radius
    if p is INF:
        return c
    if p == c:
        return INF
    return c + r * r / (p - c).conjugate()


def invert_at(center, radius, p):
    if p is INF:
        return center
    if p == center:
        return INF
    return center + radius * radius / (p - center).conjugate()


@dataclass(frozen=True)
class MoebiusMap:
    """z -> (alpha z + beta) / (gamma z + delta), applied after conjugation
    when ``conjugate_first`` is set (anti-Moebius maps such as inversions)."""

    alpha: complex = 1
    beta: complex = 0
    gamma: complex = 0
    delta: complex = 1
    conjugate_first: bool = False

    def __post_init__(self):
        if abs(self.alpha * self.delta - self.beta * self.gamma) == 0:
            raise ValueError("singular Moebius map")

    @classmethod
    def identity(cls):
        return cls()

    @classmethod
    def inversion(cls, mirror):
        if mirror.is_line:
            z0, u = mirror.line_frame()
            u2 = u * u
            return cls(u2, z0 - u2 * z0.conjugate(), 0, 1, True)
        c, r = mirror.center, mirror.radius
        return cls(c, r * r - abs(c) ** 2, 1, -c.conjugate(), True)

    @classmethod
    def similarity(cls, scale_rotation, shift=0):
        return cls(scale_rotation, shift, 0, 1, False)

    @classmethod
    def from_points(cls, src, dst):
        """Orientation-preserving map sending three points onto three points."""

        def to_standard(z1, z2, z3):
            # z1 -> 0, z2 -> 1, z3 -> inf
            return cls(z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))

        return to_standard(*dst).inverse() @ to_standard(*src)

    def _matrix(self):
        return (self.alpha, self.beta, self.gamma, self.delta)

    def __matmul__(self, other):
        a1, b1, c1, d1 = self._matrix()
        a2, b2, c2, d2 = other._matrix()
        if self.conjugate_first:
            a2, b2, c2, d2 = (v.conjugate() for v in (complex(a2), complex(b2), complex(c2), complex(d2)))
        return MoebiusMap(
            a1 * a2 + b1 * c2,
            a1 * b2 + b1 * d2,
            c1 * a2 + d1 * c2,
            c1 * b2 + d1 * d2,
            self.conjugate_first != other.conjugate_first,
        )

    def inverse(self):
        a, b, c, d = self._matrix()
        m = MoebiusMap(d, -b, -c, a, False)
        if not self.conjugate_first:
            return m
        # (h o conj)^-1 = conj o h^-1 = conj(h^-1) o conj
        return MoebiusMap(*(complex(v).conjugate() for v in m._matrix()), True)

    @property
    def pole(self):
        """Preimage of infinity."""
        if self.gamma == 0:
            return INF
        z = -self.delta / self.gamma
        return complex(z).conjugate() if self.conjugate_first else z

    def __call__(self, p):
        if p is INF:
            if self.gamma == 0:
                return INF
            return self.alpha / self.gamma
        z = p.conjugate() if self.conjugate_first else p
        den = self.gamma * z + self.delta
        if den == 0:
            return INF
        return (self.alpha * z + self.beta) / den


def apply_map(T, p):
    return T(p)


def apply_map_arc(T, arc):
    pole = T.pole
    if pole is not INF and arc.contains(pole):
        raise MapsThroughInfinity("arc passes through the pole of the map")
    pts = [T(p) for p in (arc.start, arc.witness, arc.end)]
    if any(p is INF for p in pts):
        raise MapsThroughInfinity("arc point maps to infinity")
    return Arc(*pts)


def bbox_union(boxes):
    boxes = list(boxes)
    return (
        min(b[0] for b in boxes),
        min(b[1] for b in boxes),
        max(b[2] for b in boxes),
        max(b[3] for b in boxes),
    )
