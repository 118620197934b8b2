"""Realizability of arc-triangle angle triples, and witness construction.

Vertices v0, v1, v2 sit clockwise on their circumcircle.  The side opposite
v_i is separated from the circumcircle by a bigon of signed angle phi_i
(positive when the side bulges into the disk).  A triple of interior angles
theta is realizable by a simple arc-triangle exactly when every phi_i lies in
the open interval (-pi, pi).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import AngleOutOfRange, DegenerateVertices, NotRealizable
from .geometry import EPS, TAU, _arc_at_angle, circumcircle, cross, wrap_angle

PI = math.pi


class Status(enum.Enum):
    REALIZABLE = "Realizable"
    BOUNDARY = "Boundary"
    INFEASIBLE = "Infeasible"


class Violation(enum.Enum):
    AT_PLUS_PI = "phi=+pi"
    AT_MINUS_PI = "phi=-pi"
    BELOW_MINUS_PI = "phi<-pi"
    ABOVE_PI = "phi>pi"


class BigonTriple(NamedTuple):
    phi: tuple
    psi: float


@dataclass(frozen=True)
class TriangleVerdict:
    status: Status
    theta: tuple
    phi: tuple
    psi: float
    violating_index: Optional[int] = None
    violation_kind: Optional[Violation] = None
    # for out-of-range phi: theta at that index is the unique angle < pi
    # (phi < -pi) or the unique angle > pi (phi > pi)
    unique_extreme: Optional[bool] = None

    @property
    def realizable(self):
        return self.status is Status.REALIZABLE


def _check_angles(theta):
    theta = tuple(float(t) for t in theta)
    if len(theta) != 3:
        raise AngleOutOfRange("an angle triple needs exactly three angles")
    for t in theta:
        if not (-EPS <= t <= TAU + EPS):
            raise AngleOutOfRange(f"angle {t} outside [0, 2pi]")
    return tuple(min(max(t, 0.0), TAU) for t in theta)


def bigon_angles(theta):
    theta = _check_angles(theta)
    psi = (PI - sum(theta)) / 2
    return BigonTriple(tuple(psi + t for t in theta), psi)


def classify(theta):
    theta = _check_angles(theta)
    phi, psi = bigon_angles(theta)
    on_boundary = [i for i in range(3) if abs(abs(phi[i]) - PI) <= EPS]
    outside = [i for i in range(3) if abs(phi[i]) > PI + EPS]
    if len(outside) > 1:
        # cannot happen for angles in [0, 2pi]
        raise AssertionError(f"two out-of-range bigon angles for {theta}")
    if outside:
        i = outside[0]
        others = [theta[j] for j in range(3) if j != i]
        if phi[i] < 0:
            kind = Violation.BELOW_MINUS_PI
            unique = theta[i] < PI and all(t >= PI for t in others)
        else:
            kind = Violation.ABOVE_PI
            unique = theta[i] > PI and all(t <= PI for t in others)
        assert unique, f"extreme-angle property violated for {theta}"
        return TriangleVerdict(Status.INFEASIBLE, theta, phi, psi, i, kind, unique)
    if on_boundary:
        i = on_boundary[0]
        kind = Violation.AT_PLUS_PI if phi[i] > 0 else Violation.AT_MINUS_PI
        return TriangleVerdict(Status.BOUNDARY, theta, phi, psi, i, kind)
    return TriangleVerdict(Status.REALIZABLE, theta, phi, psi)


DEFAULT_VERTICES = (
    complex(1.0, 0.0),
    cmath.exp(-2j * PI / 3),
    cmath.exp(-4j * PI / 3),
)

# minimal angular distance between a side's tangent and the direction that
# would send the side through infinity
_PLACEMENT_MARGIN = 0.35


def _through_infinity_gap(phi, gaps):
    """Smallest distance of phi from the tangent that makes a side a line
    through infinity, for clockwise central gaps between consecutive vertices."""
    worst = math.inf
    for j in range(3):
        bad = gaps[j] / 2 - PI
        worst = min(worst, abs(wrap_angle(phi[(j + 2) % 3] - bad)))
    return worst


def default_vertices(phi=None):
    """Clockwise vertex triple on the unit circle.

    The symmetric placement is used unless one of the sides would pass through
    or near infinity, in which case the best placement on a pi/36 grid is
    chosen.
    """
    if phi is None:
        return DEFAULT_VERTICES
    base = (TAU / 3,) * 3
    if _through_infinity_gap(phi, base) >= _PLACEMENT_MARGIN:
        return DEFAULT_VERTICES
    step = PI / 36
    best, best_gaps = -1.0, base
    for i in range(6, 61):
        for j in range(6, 61):
            g0, g1 = i * step, j * step
            g2 = TAU - g0 - g1
            if g2 < 6 * step - 1e-12:
                continue
            score = _through_infinity_gap(phi, (g0, g1, g2))
            if score > best + 1e-12:
                best, best_gaps = score, (g0, g1, g2)
    g0, g1, _ = best_gaps
    return (complex(1.0, 0.0), cmath.exp(-1j * g0), cmath.exp(-1j * (g0 + g1)))


def _check_vertices(vertices):
    v0, v1, v2 = (complex(v) for v in vertices)
    scale = max(abs(v0 - v1), abs(v1 - v2), abs(v2 - v0))
    if min(abs(v0 - v1), abs(v1 - v2), abs(v2 - v0)) <= EPS * max(scale, 1.0):
        raise DegenerateVertices("triangle vertices coincide")
    turn = cross(v1 - v0, v2 - v0)
    if abs(turn) <= EPS * scale * scale:
        raise DegenerateVertices("collinear triangle vertices")
    if turn > 0:
        raise DegenerateVertices("triangle vertices must be in clockwise order")
    return v0, v1, v2


def triangle_arcs(theta, vertices=None):
    """The three sides prescribed by the bigon angles, simple or not.

    Side j runs from v_j to v_{j+1} and is opposite v_{j+2}.
    """
    phi, _ = bigon_angles(theta)
    if vertices is None:
        vertices = default_vertices(phi)
    v = _check_vertices(vertices)
    circle = circumcircle(*v)
    arcs = [_arc_at_angle(v[j], v[(j + 1) % 3], circle, phi[(j + 2) % 3]) for j in range(3)]
    return v, arcs


def construct_triangle(theta, vertices=None):
    """Simple arc-triangle with interior angles theta on the given vertices."""
    from .polygon import ArcPolygon

    verdict = classify(theta)
    if verdict.status is not Status.REALIZABLE:
        raise NotRealizable(
            f"angles {verdict.theta} are {verdict.status.value}"
            f" (phi = {tuple(round(p, 12) for p in verdict.phi)})"
        )
    v, arcs = triangle_arcs(verdict.theta, vertices)
    return ArcPolygon(v, arcs)


class Facet(NamedTuple):
    """Linear constraint coeffs . theta <= bound (strict when ``strict``)."""

    coeffs: tuple
    bound: float
    strict: bool
    label: str

    def slack(self, theta):
        return self.bound - sum(c * t for c, t in zip(self.coeffs, theta))

    def satisfied(self, theta, tol=1e-12):
        s = self.slack(theta)
        return s > tol if self.strict else s >= -tol


def feasible_region_facets():
    """Cube facets 0 <= theta_i <= 2pi and the six truncating half-spaces
    -pi < phi_i < pi, rewritten in theta coordinates."""
    facets = []
    for i in range(3):
        e = tuple(1.0 if j == i else 0.0 for j in range(3))
        facets.append(Facet(tuple(-x for x in e), 0.0, False, f"theta{i} >= 0"))
        facets.append(Facet(e, TAU, False, f"theta{i} <= 2pi"))
    for i in range(3):
        # phi_i < pi  <=>  theta_i - theta_j - theta_k < pi
        up = tuple(1.0 if j == i else -1.0 for j in range(3))
        facets.append(Facet(up, PI, True, f"phi{i} < pi"))
        # phi_i > -pi  <=>  theta_j + theta_k - theta_i < 3pi
        facets.append(Facet(tuple(-c for c in up), 3 * PI, True, f"phi{i} > -pi"))
    return facets
