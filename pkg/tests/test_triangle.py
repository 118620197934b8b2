import cmath
import itertools
import math
import random

import pytest
from hypothesis import assume, given, strategies as st

from arcpoly.errors import AngleOutOfRange, DegenerateVertices, NotRealizable
from arcpoly.geometry import INF, MoebiusMap
from arcpoly.polygon import ArcPolygon, is_simple
from arcpoly.triangle import (
    DEFAULT_VERTICES,
    Status,
    bigon_angles,
    classify,
    construct_triangle,
    default_vertices,
    feasible_region_facets,
    triangle_arcs,
)

PI = math.pi
angle = st.floats(min_value=0, max_value=2 * PI, allow_nan=False)
triples = st.tuples(angle, angle, angle)


def realizable_with_margin(theta, margin=0.05):
    phi, _ = bigon_angles(theta)
    return all(abs(p) < PI - margin for p in phi)


@pytest.mark.parametrize(
    "theta, phi",
    [
        ((PI / 3, PI / 3, 5 * PI / 3), (-PI / 3, -PI / 3, PI)),
        ((0.0, 4 * PI / 3, 5 * PI / 3), (-PI, PI / 3, 2 * PI / 3)),
        ((0.0, 3 * PI / 2, 11 * PI / 6), (-7 * PI / 6, PI / 3, 2 * PI / 3)),
        ((PI / 3, PI / 3, PI / 3), (PI / 3, PI / 3, PI / 3)),
        ((PI, PI, PI), (0.0, 0.0, 0.0)),
    ],
)
def test_published_bigon_triples(theta, phi):
    got, _ = bigon_angles(theta)
    assert got == pytest.approx(phi, abs=1e-15)


def test_psi_formula():
    _, psi = bigon_angles((PI / 3, PI / 3, 5 * PI / 3))
    assert psi == pytest.approx(-2 * PI / 3, abs=1e-15)


@given(triples)
def test_linear_identity(theta):
    phi, psi = bigon_angles(theta)
    for i in range(3):
        assert abs(theta[i] + phi[i - 1] + phi[(i + 1) % 3] - PI) <= 1e-12
        assert phi[i] == psi + theta[i]


def test_out_of_range_angles_rejected():
    with pytest.raises(AngleOutOfRange):
        bigon_angles((-0.1, 1, 1))
    with pytest.raises(AngleOutOfRange):
        classify((7.0, 1, 1))
    with pytest.raises(AngleOutOfRange):
        classify((1, 1))


def test_bad_hat_face_is_boundary():
    v = classify((PI / 3, PI / 3, 5 * PI / 3))
    assert v.status is Status.BOUNDARY
    assert v.violating_index == 2
    assert v.violation_kind.value == "phi=+pi"


def test_crossing_triple_is_infeasible():
    v = classify((0.0, 3 * PI / 2, 11 * PI / 6))
    assert v.status is Status.INFEASIBLE
    assert v.violating_index == 0
    assert v.phi[0] == pytest.approx(-7 * PI / 6)
    # the violating vertex is the only one with an angle below pi
    assert v.unique_extreme


def test_boscovich_angles_realizable():
    v = classify((2 * PI, PI, PI))
    assert v.realizable
    assert v.phi == pytest.approx((PI / 2, -PI / 2, -PI / 2))


def test_forbidden_triple_is_boundary():
    v = classify((0.0, 0.0, PI))
    assert v.status is Status.BOUNDARY
    assert v.violating_index == 2
    assert v.phi[2] == pytest.approx(PI)


def test_at_most_one_violation_on_dense_grid():
    step = 2 * PI / 36
    grid = [k * step for k in range(37)]
    for theta in itertools.product(grid, repeat=3):
        phi, _ = bigon_angles(theta)
        assert sum(abs(p) > PI + 1e-9 for p in phi) <= 1
        classify(theta)  # asserts the extreme-angle property internally


@given(triples)
def test_violation_has_unique_extreme_angle(theta):
    v = classify(theta)
    if v.status is Status.INFEASIBLE:
        i = v.violating_index
        others = [theta[j] for j in range(3) if j != i]
        if v.phi[i] < 0:
            assert theta[i] < PI and all(t >= PI for t in others)
        else:
            assert theta[i] > PI and all(t <= PI for t in others)


# construction

def test_equilateral_is_straight():
    tri = construct_triangle((PI / 3,) * 3, DEFAULT_VERTICES)
    assert all(a.is_segment for a in tri.edges)
    assert tri.angles() == pytest.approx([PI / 3] * 3, abs=1e-9)


def test_all_pi_gives_the_circumcircle():
    tri = construct_triangle((PI,) * 3)
    for a in tri.edges:
        assert abs(abs(a.witness) - 1) < 1e-12
    assert is_simple(tri).simple


def test_boscovich_up_to_moebius():
    tri = construct_triangle((2 * PI, PI, PI))
    assert is_simple(tri).simple
    assert tri.angles() == pytest.approx([2 * PI, PI, PI], abs=1e-6)
    # the two sides at the cusp vertex are tangent there
    assert abs(tri.edges[0].tangent_start - tri.edges[2].tangent_end) < 1e-9


def test_construct_refuses_boundary_and_infeasible():
    with pytest.raises(NotRealizable):
        construct_triangle((PI / 3, PI / 3, 5 * PI / 3))
    with pytest.raises(NotRealizable):
        construct_triangle((0.0, 3 * PI / 2, 11 * PI / 6))


def test_degenerate_vertices_rejected():
    with pytest.raises(DegenerateVertices):
        construct_triangle((1, 1, 1), (0j, 1 + 0j, 2 + 0j))
    with pytest.raises(DegenerateVertices):
        construct_triangle((1, 1, 1), (1 + 0j, 1j, -1 + 0j))  # counterclockwise


@given(triples)
def test_measured_round_trip(theta):
    assume(realizable_with_margin(theta))
    tri = construct_triangle(theta)
    assert tri.angles() == pytest.approx(theta, abs=1e-6)
    assert is_simple(tri).simple


@given(triples, st.floats(0, 2 * PI), st.floats(0.5, 2.5), st.floats(0.5, 2.5))
def test_moebius_invariance(theta, rot, g0, g1):
    assume(realizable_with_margin(theta, 0.1))
    g2 = 2 * PI - g0 - g1
    assume(g2 > 0.5)
    base = cmath.exp(1j * rot)
    verts = (base, base * cmath.exp(-1j * g0), base * cmath.exp(-1j * (g0 + g1)))
    a = construct_triangle(theta)
    b = construct_triangle(theta, verts)
    assert b.angles() == pytest.approx(theta, abs=1e-6)
    # the map sending one vertex triple to the other carries sides onto sides
    T = MoebiusMap.from_points(a.vertices, b.vertices)
    for ea, eb in zip(a.edges, b.edges):
        image = T(ea.midpoint)
        if image is not INF and abs(image) < 1e6:
            assert eb.carrier.distance(image) <= 1e-6 * max(1.0, abs(image))


def test_default_vertices_avoid_infinity():
    theta = (0.0, 3 * PI / 2, 11 * PI / 6)
    phi, _ = bigon_angles(theta)
    verts = default_vertices(phi)
    triangle_arcs(theta, verts)  # must not raise


def test_infeasible_configurations_are_not_simple():
    rng = random.Random(3)
    seen = 0
    while seen < 200:
        theta = tuple(rng.uniform(0, 2 * PI) for _ in range(3))
        v = classify(theta)
        if v.status is not Status.INFEASIBLE or min(abs(abs(p) - PI) for p in v.phi) < 1e-6:
            continue
        verts, arcs = triangle_arcs(theta)
        report = is_simple(ArcPolygon(verts, arcs), collect=True)
        assert not report.simple
        assert report.witness.kind in ("transversal crossing", "vertex-on-edge", "improper overlap")
        seen += 1


def test_characterization_sample():
    rng = random.Random(11)
    for _ in range(500):
        theta = tuple(rng.uniform(0, 2 * PI) for _ in range(3))
        v = classify(theta)
        if min(abs(abs(p) - PI) for p in v.phi) < 1e-6:
            continue
        verts, arcs = triangle_arcs(theta)
        assert v.realizable == is_simple(ArcPolygon(verts, arcs)).simple


def _realizes(theta):
    verts, arcs = triangle_arcs(theta)
    P = ArcPolygon(verts, arcs)
    measured = P.angles()
    return is_simple(P).simple and all(abs(a - t) <= 1e-6 for a, t in zip(measured, theta))


def test_characterization_with_measured_angles():
    # Realizable exactly when the constructed curve is simple and measures
    # the requested angles on its right; includes the pi/6 lattice
    rng = random.Random(12)
    lattice = list(itertools.product([k * PI / 6 for k in range(13)], repeat=3))
    for theta in lattice + [tuple(rng.uniform(0, 2 * PI) for _ in range(3)) for _ in range(1000)]:
        v = classify(theta)
        if min(abs(abs(p) - PI) for p in v.phi) < 1e-6:
            continue
        assert v.realizable == _realizes(theta), theta


@pytest.mark.parametrize(
    "theta",
    [
        (0.0, 0.0, 7 * PI / 6),
        (0.0, 7 * PI / 6, 0.0),
        (2 * PI, 2 * PI, PI / 3),
        (0.0, 2 * PI, 2 * PI),
        (0.0, 0.0, 2 * PI),
    ],
)
def test_double_extreme_builds_the_swapped_triple(theta):
    # 0 and 2pi give the same tangent directions, so with a repeated extreme
    # angle the sides built for an infeasible triple close up into a simple
    # curve where that pair is exchanged (0 <-> 2pi), a realizable triple
    pair = next(t for t in (0.0, 2 * PI) if theta.count(t) == 2)
    swapped = tuple(2 * PI - t if t == pair else t for t in theta)
    assert classify(theta).status is Status.INFEASIBLE
    assert classify(swapped).realizable
    verts, arcs = triangle_arcs(theta)
    P = ArcPolygon(verts, arcs)
    assert is_simple(P).simple
    assert P.angles() == pytest.approx(swapped, abs=1e-9)


# feasible region

def test_cube_centre_strictly_inside():
    assert all(f.satisfied((PI, PI, PI)) and f.slack((PI, PI, PI)) > 0 for f in feasible_region_facets())


def test_cut_corner_violates_one_facet():
    bad = [f for f in feasible_region_facets() if not f.satisfied((0.0, 0.0, 2 * PI))]
    assert len(bad) == 1
    assert bad[0].label == "phi2 < pi"


def test_equal_corner_survives():
    facets = feasible_region_facets()
    truncations = [f for f in facets if f.strict]
    assert len(facets) == 12 and len(truncations) == 6
    assert all(f.slack((2 * PI,) * 3) > 0 for f in truncations)
    assert all(f.satisfied((2 * PI,) * 3) for f in facets)


@given(triples)
def test_facets_agree_with_classify(theta):
    v = classify(theta)
    assume(min(abs(abs(p) - PI) for p in v.phi) > 1e-9)
    inside = all(f.satisfied(theta) for f in feasible_region_facets())
    assert inside == v.realizable
