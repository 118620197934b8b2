"""Cactus multigraphs, their block decomposition and rotation systems.

Edges are identified by their index in the input edge list, so parallel
edges (two-vertex cycles) stay distinguishable.  A rotation system lists the
incident edge ids of every vertex in counterclockwise order.
"""

from __future__ import annotations

import math
import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .errors import ArcPolyError, NotACactus, NotConnected, UnsupportedGraph
from .triangle import Status, TriangleVerdict, classify

TAU = 2 * math.pi


class Block(NamedTuple):
    """A cycle or a bridge.

    For a cycle, ``edges[i]`` joins ``vertices[i]`` and ``vertices[i+1]``
    (indices mod the length); a bridge has two vertices and one edge.
    """

    kind: str  # "cycle" or "bridge"
    vertices: tuple
    edges: tuple

    @property
    def is_cycle(self):
        return self.kind == "cycle"


@dataclass(frozen=True)
class CactusGraph:
    vertices: tuple
    edges: tuple  # (u, v) pairs, index = edge id
    blocks: tuple
    articulation_points: frozenset
    _incident: dict = field(repr=False, compare=False, default_factory=dict)
    _block_of_edge: tuple = field(repr=False, compare=False, default=())

    @property
    def cycles(self):
        return tuple(b for b in self.blocks if b.is_cycle)

    @property
    def bridges(self):
        return tuple(b.edges[0] for b in self.blocks if not b.is_cycle)

    def incident(self, v):
        return self._incident[v]

    def degree(self, v):
        return len(self._incident[v])

    def block_of_edge(self, eid):
        return self._block_of_edge[eid]

    def blocks_at(self, v):
        return tuple(sorted({self._block_of_edge[e] for e in self._incident[v]}))

    def other_end(self, eid, v):
        a, b = self.edges[eid]
        return b if a == v else a


def _adjacency(vertices, edges):
    adj = {v: [] for v in vertices}
    for eid, (a, b) in enumerate(edges):
        adj[a].append((b, eid))
        adj[b].append((a, eid))
    return adj


def _edge_blocks(vertices, adj):
    """Biconnected components as lists of edge ids (iterative Tarjan).

    Parent edges are skipped by id rather than by endpoint so parallel edges
    form their own block.
    """
    disc, low = {}, {}
    blocks = []
    edge_stack = []
    clock = 0
    for root in vertices:
        if root in disc:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, None, iter(adj[root]))]
        while stack:
            v, parent_edge, it = stack[-1]
            descended = False
            for w, eid in it:
                if eid == parent_edge:
                    continue
                if w not in disc:
                    disc[w] = low[w] = clock
                    clock += 1
                    edge_stack.append(eid)
                    stack.append((w, eid, iter(adj[w])))
                    descended = True
                    break
                if disc[w] < disc[v]:
                    low[v] = min(low[v], disc[w])
                    edge_stack.append(eid)
            if descended:
                continue
            stack.pop()
            if not stack:
                continue
            u = stack[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= disc[u]:
                block = []
                while True:
                    e = edge_stack.pop()
                    block.append(e)
                    if e == parent_edge:
                        break
                blocks.append(sorted(block))
    return blocks


def _order_cycle(edge_ids, edges):
    """Walk a cycle block from its smallest vertex; None if it is no cycle."""
    inc = defaultdict(list)
    for eid in edge_ids:
        a, b = edges[eid]
        inc[a].append(eid)
        inc[b].append(eid)
    if len(inc) != len(edge_ids) or any(len(es) != 2 for es in inc.values()):
        return None
    start = min(inc)
    verts, order = [start], []
    v, eid = start, min(inc[start])
    while True:
        order.append(eid)
        a, b = edges[eid]
        w = b if a == v else a
        if w == start:
            break
        verts.append(w)
        e0, e1 = inc[w]
        eid = e1 if e0 == eid else e0
        v = w
    if len(order) != len(edge_ids):
        return None
    return Block("cycle", tuple(verts), tuple(order))


def validate_cactus(edges, vertices=None):
    """Check that ``edges`` form a connected cactus and decompose it.

    ``vertices`` defaults to the endpoints of the edges; listing extra
    vertices that carry no edge makes the graph disconnected.
    """
    edges = tuple((int(a), int(b)) for a, b in edges)
    if not edges:
        raise ArcPolyError("a cactus needs at least one edge")
    for eid, (a, b) in enumerate(edges):
        if a == b:
            raise UnsupportedGraph(f"edge {eid} is a self-loop")
    ends = {v for e in edges for v in e}
    if vertices is None:
        vertices = ends
    vertices = tuple(sorted(set(int(v) for v in vertices)))
    unknown = ends - set(vertices)
    if unknown:
        raise ArcPolyError(f"edges reference undeclared vertices {sorted(unknown)}")
    adj = _adjacency(vertices, edges)

    seen = {vertices[0]}
    todo = [vertices[0]]
    while todo:
        v = todo.pop()
        for w, _ in adj[v]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    if len(seen) != len(vertices):
        missing = sorted(set(vertices) - seen)
        raise NotConnected(f"vertex {missing[0]} is unreachable from {vertices[0]}")

    blocks = []
    for ids in _edge_blocks(vertices, adj):
        if len(ids) == 1:
            a, b = edges[ids[0]]
            blocks.append(Block("bridge", (min(a, b), max(a, b)), (ids[0],)))
            continue
        cyc = _order_cycle(ids, edges)
        if cyc is None:
            raise NotACactus(
                f"edges {ids} form a biconnected block that is not a cycle;"
                f" edge {ids[0]} lies on more than one cycle",
                witness_edge=ids[0],
            )
        blocks.append(cyc)
    blocks.sort(key=lambda b: (min(b.vertices), min(b.edges)))

    block_of_edge = [0] * len(edges)
    for i, b in enumerate(blocks):
        for e in b.edges:
            block_of_edge[e] = i
    incident = {v: tuple(e for _, e in adj[v]) for v in vertices}
    count = defaultdict(int)
    for b in blocks:
        for v in b.vertices:
            count[v] += 1
    arts = frozenset(v for v, c in count.items() if c > 1)
    return CactusGraph(vertices, edges, tuple(blocks), arts, incident, tuple(block_of_edge))


class BlockDecomposition(NamedTuple):
    blocks: tuple
    articulation_points: frozenset
    # block-cut tree as adjacency between ("b", i) and ("v", v) nodes
    tree: dict


def biconnected_components(g: CactusGraph):
    tree = defaultdict(list)
    for i, b in enumerate(g.blocks):
        for v in b.vertices:
            if v in g.articulation_points:
                tree[("b", i)].append(("v", v))
                tree[("v", v)].append(("b", i))
    return BlockDecomposition(g.blocks, g.articulation_points, dict(tree))


def _cycle_ends(block, i):
    """(incoming, outgoing) edge ids at the i-th vertex of a cycle block."""
    k = len(block.vertices)
    return block.edges[(i - 1) % k], block.edges[i]


@dataclass(frozen=True)
class EmbeddedCactus:
    """A cactus with a rotation system.

    Each cycle is traversed in its stored vertex order; ``flipped[c]`` says
    whether its face lies to the left of that traversal instead of the right.
    ``gaps[c][i]`` counts the rotation gaps at the i-th cycle vertex that lie
    inside the face.
    """

    graph: CactusGraph
    rotation: dict
    flipped: tuple
    gaps: tuple

    @property
    def is_natural(self):
        return all(all(k == 1 for k in gs) for gs in self.gaps)


def _raw_gaps(g, rotation, block):
    out = []
    for i, v in enumerate(block.vertices):
        rot = rotation[v]
        e_in, e_out = _cycle_ends(block, i)
        out.append((rot.index(e_out) - rot.index(e_in)) % len(rot))
    return out


def _check_rotation(g, rotation):
    rot = {}
    for v in g.vertices:
        if v not in rotation:
            raise ArcPolyError(f"rotation misses vertex {v}")
        order = tuple(int(e) for e in rotation[v])
        if sorted(order) != sorted(g.incident(v)):
            raise ArcPolyError(f"rotation at {v} must list each incident edge exactly once")
        # a cycle's two edges at v split the other edges into the part
        # inside its face and the part outside; two cycles whose edges
        # alternate around v would cross there
        pos = {e: i for i, e in enumerate(order)}
        pairs = [
            sorted(pos[e] for e in g.blocks[bi].edges if e in pos)
            for bi in g.blocks_at(v)
            if g.blocks[bi].is_cycle
        ]
        for i, (a1, a2) in enumerate(pairs):
            for b1, b2 in pairs[i + 1 :]:
                if (a1 < b1 < a2) != (a1 < b2 < a2):
                    raise ArcPolyError(f"rotation at {v} interleaves blocks")
        rot[v] = order
    return rot


def natural_embedding(g: CactusGraph):
    """Every cycle bounds a face; other blocks are placed outside it.

    Blocks at a vertex are listed in block order.  A cycle contributes its
    (incoming, outgoing) pair, which leaves the single face gap between them.
    """
    rot = {v: [] for v in g.vertices}
    for b in g.blocks:
        if b.is_cycle:
            for i, v in enumerate(b.vertices):
                rot[v].extend(_cycle_ends(b, i))
        else:
            for v in b.vertices:
                rot[v].append(b.edges[0])
    rotation = {v: tuple(r) for v, r in rot.items()}
    cycles = g.cycles
    return EmbeddedCactus(
        g, rotation, (False,) * len(cycles), tuple((1,) * len(c.vertices) for c in cycles)
    )


def embedding_from_rotation(g: CactusGraph, rotation):
    """Embedding for a given rotation system.

    A rotation alone does not say which side of a cycle is its face; the side
    enclosing fewer edges is taken as the face.
    """
    rot = _check_rotation(g, rotation)
    flipped, gaps = [], []
    for b in g.cycles:
        right = _raw_gaps(g, rot, b)
        left = [len(rot[v]) - k for v, k in zip(b.vertices, right)]
        if sum(left) < sum(right):
            flipped.append(True)
            gaps.append(tuple(left))
        else:
            flipped.append(False)
            gaps.append(tuple(right))
    return EmbeddedCactus(g, rot, tuple(flipped), tuple(gaps))


def embedding_from_interior(g: CactusGraph, marks):
    """Natural embedding with ``marks[v]`` of the other edges at v moved
    inside the face of v's cycle.

    Whole blocks are moved, so the count must be a sum of block sizes at v.
    """
    base = natural_embedding(g)
    rot = dict(base.rotation)
    for v, k in marks.items():
        v, k = int(v), int(k)
        cyc = [g.blocks[i] for i in g.blocks_at(v) if g.blocks[i].is_cycle]
        if len(cyc) != 1:
            raise ArcPolyError(f"interior mark at {v} needs exactly one cycle through it")
        b = cyc[0]
        e_in, e_out = _cycle_ends(b, b.vertices.index(v))
        others = [e for e in rot[v] if e not in (e_in, e_out)]
        inside, taken = [], 0
        for bi in dict.fromkeys(g.block_of_edge(e) for e in others):
            if taken >= k:
                break
            group = [e for e in others if g.block_of_edge(e) == bi]
            inside.extend(group)
            taken += len(group)
        if taken != k:
            raise ArcPolyError(f"cannot place exactly {k} edges inside the face at {v}")
        outside = [e for e in others if e not in inside]
        rot[v] = tuple([e_in] + inside + [e_out] + outside)
    e = embedding_from_rotation(g, rot)
    # the marks name the face explicitly, so the smaller-side rule must not
    # swap it for the other side of a marked cycle
    marked = {c for c, b in enumerate(g.cycles) if any(int(v) in b.vertices for v in marks)}
    flipped, gaps = list(e.flipped), list(e.gaps)
    for c in marked:
        flipped[c] = False
        gaps[c] = tuple(_raw_gaps(g, e.rotation, g.cycles[c]))
    return EmbeddedCactus(g, e.rotation, tuple(flipped), tuple(gaps))


def face_angle_sequence(e: EmbeddedCactus, cycle):
    """Interior angles of a cycle face; ``cycle`` is an index into the cycles."""
    b = e.graph.cycles[cycle]
    return tuple(
        k * TAU / e.graph.degree(v) for v, k in zip(b.vertices, e.gaps[cycle])
    )


def face_vertex_order(e: EmbeddedCactus, cycle):
    """Cycle vertices in clockwise order around the face."""
    b = e.graph.cycles[cycle]
    if e.flipped[cycle]:
        return tuple(reversed(b.vertices))
    return b.vertices


class FaceReport(NamedTuple):
    cycle: int
    vertices: tuple
    angles: tuple
    status: str  # "Realizable", "Boundary", "Infeasible" or "Undecided"
    verdict: Optional[TriangleVerdict] = None
    note: str = ""

    @property
    def obstruction(self):
        return self.status in ("Boundary", "Infeasible")


def check_embedded_faces(e: EmbeddedCactus):
    reports = []
    for c, b in enumerate(e.graph.cycles):
        angles = face_angle_sequence(e, c)
        if e.flipped[c]:
            angles = tuple(reversed(angles))
        verts = face_vertex_order(e, c)
        n = len(angles)
        if n == 3:
            v = classify(angles)
            reports.append(FaceReport(c, verts, angles, v.status.value, v))
        elif n == 2:
            ok = abs(angles[0] - angles[1]) <= 1e-12 and 0 < angles[0] < TAU
            status = "Realizable" if ok else "Infeasible"
            note = "" if ok else "bigon needs two equal angles"
            reports.append(FaceReport(c, verts, angles, status, None, note))
        elif all(a <= math.pi + 1e-12 for a in angles):
            reports.append(FaceReport(c, verts, angles, "Realizable"))
        else:
            reports.append(
                FaceReport(c, verts, angles, "Undecided", None, "face angle above pi")
            )
    return reports


def random_cactus(n_vertices, max_cycle=8, seed=0, bridge_prob=0.35, balance_bigons=True):
    """Seeded random cactus with at most ``n_vertices`` vertices.

    Blocks are attached one at a time to a uniformly chosen existing vertex.
    With ``balance_bigons``, pendant edges are added so that both ends of
    every two-vertex cycle have the same degree (otherwise the bigon face
    cannot be drawn with Lombardi angles).
    """
    if n_vertices < 2:
        raise ArcPolyError("a random cactus needs at least two vertices")
    target = n_vertices
    rng = random.Random(seed)
    while True:
        edges = _grow(rng, target, max_cycle, bridge_prob)
        if balance_bigons:
            edges = _balance_bigons(edges, target)
        nverts = len({v for e in edges for v in e})
        if nverts <= n_vertices:
            return validate_cactus(edges)
        target = max(2, target - max(1, (nverts - n_vertices)))


def _grow(rng, n, max_cycle, bridge_prob):
    count, edges = 1, []
    while count < n:
        anchor = rng.randrange(count)
        room = n - count
        k = rng.randint(2, max_cycle) if rng.random() >= bridge_prob else 1
        k = min(k, room + 1)
        if k == 1:
            edges.append((anchor, count))
            count += 1
            continue
        ring = [anchor] + list(range(count, count + k - 1))
        count += k - 1
        for i in range(k):
            edges.append((ring[i], ring[(i + 1) % k]))
    return edges


def _balance_bigons(edges, n):
    deg = defaultdict(int)
    pairs = defaultdict(int)
    for a, b in edges:
        deg[a] += 1
        deg[b] += 1
        pairs[(min(a, b), max(a, b))] += 1
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, b), m in pairs.items():
        if m == 2:
            parent[find(a)] = find(b)
    groups = defaultdict(list)
    for x in list(parent):
        groups[find(x)].append(x)
    edges = list(edges)
    fresh = 1 + max(v for e in edges for v in e)
    for members in groups.values():
        top = max(deg[v] for v in members)
        for v in sorted(members):
            for _ in range(top - deg[v]):
                edges.append((v, fresh))
                fresh += 1
    return edges


def hat_cactus(pendants=4):
    """Triangle 0-1-2 with ``pendants`` pendant edges at every vertex."""
    edges = [(0, 1), (1, 2), (2, 0)]
    nxt = 3
    for v in range(3):
        for _ in range(pendants):
            edges.append((v, nxt))
            nxt += 1
    return validate_cactus(edges)


def bad_hat_embedding(inside=4):
    """The triangle-with-pendants graph with every pendant of vertex 2
    placed inside the triangle face.

    Vertex 2 carries ``inside`` pendants; vertices 0 and 1 carry four.
    """
    edges = [(0, 1), (1, 2), (2, 0)]
    nxt = 3
    for v, p in ((0, 4), (1, 4), (2, inside)):
        for _ in range(p):
            edges.append((v, nxt))
            nxt += 1
    g = validate_cactus(edges)
    return embedding_from_interior(g, {2: inside})
