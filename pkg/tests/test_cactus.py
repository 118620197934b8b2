import math
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from arcpoly.cactus import (
    bad_hat_embedding,
    biconnected_components,
    check_embedded_faces,
    embedding_from_interior,
    embedding_from_rotation,
    face_angle_sequence,
    hat_cactus,
    natural_embedding,
    random_cactus,
    validate_cactus,
)
from arcpoly.errors import ArcPolyError, NotACactus, NotConnected, UnsupportedGraph
from oracles import enumerate_cycles

PI = math.pi
K4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


# validation

def test_triangle_with_pendants():
    g = validate_cactus([(0, 1), (1, 2), (2, 0), (0, 3), (1, 4), (2, 5)])
    assert len(g.cycles) == 1 and len(g.bridges) == 3


def test_k4_rejected_with_witness():
    with pytest.raises(NotACactus) as info:
        validate_cactus(K4)
    assert info.value.witness_edge is not None
    e = info.value.witness_edge
    assert sum(e in c for c in enumerate_cycles(K4)) > 1


def test_hat_graph():
    g = hat_cactus()
    assert len(g.cycles) == 1 and len(g.bridges) == 12
    assert all(g.degree(v) == 6 for v in (0, 1, 2))


def test_disconnected_rejected():
    with pytest.raises(NotConnected):
        validate_cactus([(0, 1), (2, 3)])


def test_self_loop_rejected():
    with pytest.raises(UnsupportedGraph):
        validate_cactus([(0, 1), (1, 1)])


def test_parallel_edges_form_a_bigon():
    g = validate_cactus([(0, 1), (0, 1), (1, 2)])
    assert [len(c.vertices) for c in g.cycles] == [2]


# blocks

def test_path_blocks():
    dec = biconnected_components(validate_cactus([(0, 1), (1, 2), (2, 3)]))
    assert len(dec.blocks) == 3
    assert dec.articulation_points == {1, 2}


def test_bowtie_blocks():
    g = validate_cactus([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    dec = biconnected_components(g)
    assert len(dec.blocks) == 2 and dec.articulation_points == {0}


@pytest.mark.parametrize("seed", range(10))
def test_generator_block_count(seed):
    g = random_cactus(40, 8, seed)
    assert len(g.blocks) == len(g.cycles) + len(g.bridges)
    assert all(2 <= len(c.vertices) <= 8 for c in g.cycles)
    assert len(g.vertices) <= 40


def _random_multigraph(rng, n):
    """Small connected multigraph, cactus or not."""
    edges = [(rng.randrange(i), i) for i in range(1, n)]
    for _ in range(rng.randint(0, n)):
        a, b = rng.sample(range(n), 2)
        edges.append((a, b))
    return edges


@pytest.mark.parametrize("seed", range(60))
def test_validation_matches_cycle_enumeration(seed):
    rng = random.Random(seed)
    edges = _random_multigraph(rng, rng.randint(2, 12))
    cycles = enumerate_cycles(edges)
    counts = [sum(k in c for c in cycles) for k in range(len(edges))]
    is_cactus = max(counts) <= 1
    try:
        g = validate_cactus(edges)
    except NotACactus:
        assert not is_cactus
        return
    assert is_cactus
    assert {frozenset(c.edges) for c in g.cycles} == cycles
    assert set(g.bridges) == {k for k in range(len(edges)) if counts[k] == 0}


@pytest.mark.parametrize("seed", range(30))
def test_articulation_points_match_networkx(seed):
    g = random_cactus(12, 5, seed)
    G = nx.MultiGraph()
    G.add_edges_from(g.edges)
    assert set(nx.articulation_points(G)) == set(g.articulation_points)


# embeddings

def test_pendant_outside_the_face():
    g = validate_cactus([(0, 1), (1, 2), (2, 0), (0, 3)])
    e = natural_embedding(g)
    assert face_angle_sequence(e, 0) == pytest.approx((2 * PI / 3, PI, PI))
    rot = e.rotation[0]
    # the cycle's two edges at 0 are adjacent and the pendant is not between
    # the incoming and outgoing edge on the face side
    assert set(rot) == {0, 2, 3}


def test_hat_natural_angles():
    e = natural_embedding(hat_cactus())
    assert face_angle_sequence(e, 0) == pytest.approx((PI / 3,) * 3)
    assert e.is_natural


def test_bad_hat_angles():
    e = bad_hat_embedding()
    assert face_angle_sequence(e, 0) == pytest.approx((PI / 3, PI / 3, 5 * PI / 3))
    assert not e.is_natural


def test_isolated_cycle_angles():
    g = validate_cactus([(0, 1), (1, 2), (2, 3), (3, 0)])
    assert face_angle_sequence(natural_embedding(g), 0) == pytest.approx((PI,) * 4)


@pytest.mark.parametrize("seed", range(10))
def test_natural_gaps(seed):
    g = random_cactus(60, 8, seed)
    e = natural_embedding(g)
    for c, b in enumerate(g.cycles):
        assert e.gaps[c] == (1,) * len(b.vertices)
        for theta, v in zip(face_angle_sequence(e, c), b.vertices):
            assert 0 < theta <= PI + 1e-12
            assert theta == pytest.approx(2 * PI / g.degree(v))


def test_rotation_round_trip():
    e = bad_hat_embedding()
    again = embedding_from_rotation(e.graph, e.rotation)
    assert again.gaps == e.gaps


def test_interleaved_rotation_rejected():
    g = validate_cactus([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    rot = dict(natural_embedding(g).rotation)
    rot[0] = (0, 3, 2, 5)  # alternates between the two triangles
    with pytest.raises(ArcPolyError):
        embedding_from_rotation(g, rot)


def test_pendant_inside_a_face_is_a_valid_rotation():
    g = validate_cactus([(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (0, 5)])
    rot = dict(natural_embedding(g).rotation)
    rot[0] = (3, 4, 0, 5)  # edge 4 sits between the cycle's two edges
    e = embedding_from_rotation(g, rot)
    assert not e.is_natural


def test_cycle_nested_in_a_face_is_a_valid_rotation():
    g = validate_cactus([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (0, 5)])
    rot = dict(natural_embedding(g).rotation)
    rot[0] = (2, 3, 5, 0, 6)  # the second triangle lies in the first one's face
    embedding_from_rotation(g, rot)


def test_interior_count_must_match_blocks():
    g = hat_cactus()
    with pytest.raises(ArcPolyError):
        embedding_from_interior(g, {2: 9})


# face checks

def test_bad_hat_obstruction():
    reports = check_embedded_faces(bad_hat_embedding())
    (r,) = reports
    assert r.status == "Boundary" and r.obstruction
    assert r.verdict.phi == pytest.approx((-PI / 3, -PI / 3, PI))


def test_natural_hat_has_no_obstruction():
    assert not any(r.obstruction for r in check_embedded_faces(natural_embedding(hat_cactus())))


@pytest.mark.parametrize("inside", [5, 6, 7])
def test_more_pendants_inside_stay_refused(inside):
    (r,) = check_embedded_faces(bad_hat_embedding(inside))
    assert r.status == "Infeasible"
    assert r.verdict.phi[2] > PI


def test_long_face_with_big_angle_is_undecided():
    edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (0, 5), (0, 6)]
    g = validate_cactus(edges)
    e = embedding_from_interior(g, {0: 3})
    (r,) = check_embedded_faces(e)
    assert r.status == "Undecided"


def test_unbalanced_bigon_is_infeasible():
    g = validate_cactus([(0, 1), (0, 1), (1, 2)])
    (r,) = check_embedded_faces(natural_embedding(g))
    assert r.status == "Infeasible"


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_natural_faces_never_obstructed(seed):
    g = random_cactus(30, 8, seed)
    assert not any(r.obstruction for r in check_embedded_faces(natural_embedding(g)))
