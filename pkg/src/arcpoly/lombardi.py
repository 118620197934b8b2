"""Planar Lombardi drawings of cacti in their natural embedding.

Every block is drawn on its own with the angles the full graph demands at
its vertices.  Blocks are assembled from the leaves of the block-cut tree
upwards: a block is fitted into the angular wedge it owns at its parent
vertex, and the finished subtrees below it are attached by similarities,
shrunk until they clear everything placed before them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .cactus import CactusGraph, _cycle_ends, natural_embedding, validate_cactus
from .errors import ArcPolyError, CoincidentPoints, NonConsecutiveEdges, OverlapAfterPlacement, UnequalBigonAngles
from .geometry import PT_TOL, TAU, Arc, arc_from_tangent, arc_intersections, bbox_union, close
from .polygon import realize

ANGLE_CHECK_TOL = 1e-6
# clearance between a placed piece's bounding disk and its wedge, relative to
# the disk radius
WEDGE_MARGIN = 0.1
# fraction of the extra pi/d on each side of a wedge that a block fitted
# into it may use
CONE_SLACK = 0.9
# smallest placement distance when fitting a single block into its wedge;
# larger values make the map closer to a similarity
SQUEEZE_DISTANCE = 3.0
# below this relative scale an attached piece is considered unplaceable
MIN_SCALE = 1e-6


@dataclass(frozen=True)
class Drawing:
    """Vertex positions and one arc per edge.

    ``arcs[eid]`` runs from the first to the second endpoint listed for edge
    ``eid`` in the graph.
    """

    points: dict
    arcs: dict
    edges: dict = field(default_factory=dict)  # eid -> (u, v)

    def __post_init__(self):
        for eid, arc in self.arcs.items():
            a, b = self.edges[eid]
            scale = max(1.0, abs(self.points[a]), abs(self.points[b]))
            if not (
                close(arc.start, self.points[a], 1e3 * PT_TOL * scale)
                and close(arc.end, self.points[b], 1e3 * PT_TOL * scale)
            ):
                raise ArcPolyError(f"arc of edge {eid} does not join its endpoints")

    def bbox(self):
        boxes = [a.bbox() for a in self.arcs.values()]
        boxes += [(p.real, p.imag, p.real, p.imag) for p in self.points.values()]
        return bbox_union(boxes)

    def map(self, f):
        pts = {v: f(p) for v, p in self.points.items()}
        arcs = {}
        for eid, arc in self.arcs.items():
            a, b = self.edges[eid]
            arcs[eid] = Arc(pts[a], f(arc.witness), pts[b])
        return type(self)(**{**self.__dict__, "points": pts, "arcs": arcs})

    def normalized(self):
        """Translate and scale into the unit square."""
        x0, y0, x1, y1 = self.bbox()
        size = max(x1 - x0, y1 - y0) or 1.0
        lo = complex(x0, y0)
        return self.map(lambda z: (z - lo) / size)

    def tangent(self, eid, v):
        """Unit tangent of edge ``eid`` at its endpoint v, pointing along the edge."""
        a, b = self.edges[eid]
        arc = self.arcs[eid]
        return arc.tangent_start if a == v else arc.tangent_end

    def edges_at(self, v):
        return [eid for eid, (a, b) in self.edges.items() if v in (a, b)]


@dataclass(frozen=True)
class PartialDrawing(Drawing):
    """Drawing of a subgraph; ``degree`` holds vertex degrees in the full graph."""

    degree: dict = field(default_factory=dict)


def _edge_map(g, eids):
    return {e: g.edges[e] for e in eids}


def _bigon(g, block, degree):
    u, w = block.vertices
    if degree[u] != degree[w]:
        raise UnequalBigonAngles(
            f"two-vertex cycle {u}-{w} needs equal angles, got degrees {degree[u]} and {degree[w]}"
        )
    theta = TAU / degree[u]
    p, q = 0j, 1 + 0j
    upper = arc_from_tangent(p, cmath.exp(0.5j * theta), q)
    lower = arc_from_tangent(p, cmath.exp(-0.5j * theta), q)
    # traversal u -> w along the upper arc and back along the lower one is
    # clockwise, matching the orientation used for larger cycles
    placed = {block.edges[0]: upper, block.edges[1]: lower.reversed()}
    return {u: p, w: q}, placed, {block.edges[0]: (u, w), block.edges[1]: (w, u)}


def draw_block(g: CactusGraph, block, degree=None):
    """Partial drawing of one block with the angles required by ``g``."""
    degree = degree or {v: g.degree(v) for v in g.vertices}
    if not block.is_cycle:
        (eid,) = block.edges
        a, b = g.edges[eid]
        pts = {a: 0j, b: 1 + 0j}
        return PartialDrawing(pts, {eid: Arc.segment(0j, 1 + 0j)}, _edge_map(g, [eid]), degree)
    if len(block.vertices) == 2:
        pts, placed, walk = _bigon(g, block, degree)
    else:
        angles = [TAU / degree[v] for v in block.vertices]
        poly = realize(angles)
        k = len(block.vertices)
        pts = {v: poly.vertices[i] for i, v in enumerate(block.vertices)}
        placed = {block.edges[i]: poly.edges[i] for i in range(k)}
        walk = {block.edges[i]: (block.vertices[i], block.vertices[(i + 1) % k]) for i in range(k)}
    arcs = {}
    for eid, arc in placed.items():
        arcs[eid] = arc if walk[eid] == g.edges[eid] else arc.reversed()
        if g.edges[eid][0] == g.edges[eid][1]:
            raise ArcPolyError("self-loops are not supported")
    return PartialDrawing(pts, arcs, _edge_map(g, block.edges), degree)


class _Piece(NamedTuple):
    drawing: PartialDrawing
    first_slot: int
    count: int
    turn: complex  # rotation aligning the piece's first edge with its slot


def _slot_layout(v, D, rotation):
    """Locate D's edges at v in the rotation and check their spacing."""
    d = len(rotation)
    slot = {e: i for i, e in enumerate(rotation)}
    mine = D.edges_at(v)
    if not mine:
        raise ArcPolyError(f"partial drawing has no edge at vertex {v}")
    if any(e not in slot for e in mine):
        raise ArcPolyError(f"edge at {v} missing from the rotation")
    m = len(mine)
    positions = {slot[e] for e in mine}
    starts = [j for j in positions if (j - 1) % d not in positions]
    if m < d and len(starts) != 1:
        raise NonConsecutiveEdges(f"edges {sorted(mine)} are not consecutive around vertex {v}")
    j0 = starts[0] if m < d else 0
    step = TAU / d
    t0 = D.tangent(rotation[j0], v)
    for k in range(1, m):
        e = rotation[(j0 + k) % d]
        got = cmath.phase(D.tangent(e, v) / t0) % TAU
        if abs(got - k * step) > ANGLE_CHECK_TOL:
            raise NonConsecutiveEdges(
                f"edge {e} at vertex {v} sits at {got:.9f} rad from edge {rotation[j0]},"
                f" expected {k * step:.9f}"
            )
    turn = cmath.exp(1j * j0 * step) / t0
    return _Piece(D, j0, m, turn)


def _wedge_contains(z, lo, width):
    return 0 < (cmath.phase(z) - lo) % TAU < width


def _place_in_wedge(v, piece, lo, width, distance):
    """Image of a piece under inversion at v, rotation onto its slots,
    placement of its finite part at ``distance`` along the wedge bisector
    (in units of its bounding radius) and inversion at the origin.

    Returns (points, arcs) with v sent to 0, or None when some vertex
    misses the wedge.
    """
    D, turn = piece.drawing, piece.turn
    pv = D.points[v]

    def inv(z):
        return turn / (z - pv).conjugate()

    finite = [inv(p) for u, p in D.points.items() if u != v]
    for eid, arc in D.arcs.items():
        if v not in D.edges[eid]:
            finite.extend(inv(z) for z in (arc.start, arc.witness, arc.end))
    xs = [z.real for z in finite]
    ys = [z.imag for z in finite]
    center = complex(min(xs) + max(xs), min(ys) + max(ys)) / 2
    radius = max(abs(z - center) for z in finite) or 1.0
    anchor = distance * cmath.exp(1j * (lo + width / 2))

    def place(z):
        return (inv(z) - center) / radius + anchor

    if not all(_wedge_contains(place(p), lo, width) for u, p in D.points.items() if u != v):
        return None

    def out(z):
        return 1 / place(z).conjugate()

    points = {u: out(p) for u, p in D.points.items() if u != v}
    points[v] = 0j
    arcs = {}
    for eid, arc in D.arcs.items():
        a, b = D.edges[eid]
        s = 0j if a == v else out(arc.start)
        e = 0j if b == v else out(arc.end)
        arcs[eid] = Arc(s, out(arc.witness), e).rewitnessed()
    return points, arcs


def _wedge_of(piece, step, slack=1.0):
    """Angular interval of a piece's wedge in the rotation frame."""
    lo = piece.first_slot * step - slack * step / 2
    return lo, (piece.count - 1) * step + slack * step


def _glue_wedges(v, pieces, d, margin, retries):
    step = TAU / d
    base = (1 + margin) / math.sin(math.pi / d)
    for attempt in range(retries + 1):
        points, arcs, edges, degree = {}, {}, {}, {}
        for piece in pieces:
            lo, width = _wedge_of(piece, step)
            placed = _place_in_wedge(v, piece, lo, width, base * 2**attempt)
            if placed is None:
                break
            points.update(placed[0])
            arcs.update(placed[1])
            edges.update(piece.drawing.edges)
            degree.update(getattr(piece.drawing, "degree", {}))
        else:
            return PartialDrawing(points, arcs, edges, degree).normalized()
    raise OverlapAfterPlacement(f"could not separate the pieces glued at vertex {v}")


def _boxes(arcs):
    return np.array([a.bbox() for a in arcs]).reshape(-1, 4)


def _first_contact(new, old, allowed=(), pad=PT_TOL):
    """First point where an arc of ``new`` meets an arc of ``old`` other
    than at a common endpoint listed in ``allowed``."""
    if not new or not old:
        return None
    nb, ob = _boxes(new), _boxes(old)
    for i, a in enumerate(new):
        hit = np.nonzero(
            (ob[:, 0] <= nb[i, 2] + pad)
            & (nb[i, 0] <= ob[:, 2] + pad)
            & (ob[:, 1] <= nb[i, 3] + pad)
            & (nb[i, 1] <= ob[:, 3] + pad)
        )[0]
        for j in hit.tolist():
            res = arc_intersections(a, old[j])
            if res.overlap:
                return a.midpoint
            for c in res:
                if c.end_a and c.end_b and any(close(c.point, p) for p in allowed):
                    continue
                return c.point
    return None


def _extent(D, v):
    pv = D.points[v]
    far = max((abs(p - pv) for p in D.points.values()), default=0.0)
    for arc in D.arcs.values():
        x0, y0, x1, y1 = arc.bbox()
        far = max(far, *(abs(complex(x, y) - pv) for x in (x0, x1) for y in (y0, y1)))
    return far


def _boundary_rays(apex, lo, width, length, first=1e-3):
    """The two boundary rays of a wedge, cut into pieces of geometrically
    growing length so that their bounding boxes stay tight."""
    out = []
    for ang in (lo, lo + width):
        u = cmath.exp(1j * ang)
        r0, r1 = 0.0, min(first, length)
        while r0 < length:
            out.append(Arc.segment(apex + r0 * u, apex + r1 * u))
            r0, r1 = r1, min(2 * r1, length)
    return out


def _inside_wedge(D, v, lo, width):
    """Whether everything in D except v lies in the open wedge at v."""
    pv = D.points[v]
    others = [p for u, p in D.points.items() if u != v]
    if not all(_wedge_contains(p - pv, lo, width) for p in others):
        return False
    for eid in D.edges_at(v):
        if not _wedge_contains(D.tangent(eid, v), lo, width):
            return False
    rays = _boundary_rays(pv, lo, width, 4 * _extent(D, v) + 1)
    return _first_contact(list(D.arcs.values()), rays, allowed=(pv,)) is None


def _squeeze(D, v, rotation, slack=CONE_SLACK, margin=WEDGE_MARGIN, retries=8):
    """Move D by a Moebius map fixing the angles at v so that it lies in its
    wedge at v, narrowed by ``slack``; v goes to 0 and the first edge at v
    points along its slot."""
    d = len(rotation)
    step = TAU / d
    piece = _slot_layout(v, D, rotation)
    lo, width = _wedge_of(piece, step, slack)
    turn = piece.turn
    pv = D.points[v]
    moved = D.map(lambda z: (z - pv) * turn)
    if _inside_wedge(moved, v, lo, width):
        return moved
    base = (1 + margin) / math.sin(slack * math.pi / d)
    base = max(base, SQUEEZE_DISTANCE)
    for attempt in range(retries + 1):
        placed = _place_in_wedge(v, piece, lo, width, base * 2**attempt)
        if placed is None:
            continue
        out = PartialDrawing(placed[0], placed[1], D.edges, D.degree)
        if _inside_wedge(out, v, lo, width):
            size = _extent(out, v)
            return out.map(lambda z: z / size)
    raise OverlapAfterPlacement(f"could not fit the drawing into its wedge at vertex {v}")


def _first_contact_scaled(unit_arcs, unit_boxes, scale, shift, old, old_boxes, allowed, pad=PT_TOL):
    """_first_contact for the arcs ``shift + scale * unit_arcs``, built only
    where bounding boxes overlap."""
    nb = unit_boxes * scale + np.array([shift.real, shift.imag, shift.real, shift.imag])
    hit = (
        (old_boxes[None, :, 0] <= nb[:, None, 2] + pad)
        & (nb[:, None, 0] <= old_boxes[None, :, 2] + pad)
        & (old_boxes[None, :, 1] <= nb[:, None, 3] + pad)
        & (nb[:, None, 1] <= old_boxes[None, :, 3] + pad)
    )
    for i, j in zip(*np.nonzero(hit)):
        a = unit_arcs[i]
        a = Arc(shift + scale * a.start, shift + scale * a.witness, shift + scale * a.end)
        res = arc_intersections(a, old[j])
        if res.overlap:
            return a.midpoint
        for c in res:
            if c.end_a and c.end_b and any(close(c.point, p) for p in allowed):
                continue
            return c.point
    return None


def _glue_anchored(v, pieces, d, obstacles, shrink, tries, check_wedge=True):
    """Keep the first piece fixed and attach the others by similarities.

    The other pieces must already lie inside their wedges at v; each is
    scaled down until it clears everything placed so far.  Returns the
    merged drawing and the smallest scale used.
    """
    step = TAU / d
    base = pieces[0]
    D = base.drawing
    pv = D.points[v]
    points, arcs = dict(D.points), dict(D.arcs)
    edges, degree = dict(D.edges), dict(getattr(D, "degree", {}))
    placed = list(arcs.values()) + list(obstacles)
    placed_boxes = _boxes(placed)
    smallest = math.inf
    for piece in pieces[1:]:
        S = piece.drawing
        S_v = S.points[v]
        spin = piece.turn / base.turn
        unit = S.map(lambda z: (z - S_v) * spin)
        if check_wedge:
            lo, width = _wedge_of(piece, step)
            turned = unit.map(lambda z: z * base.turn)
            if not _inside_wedge(turned, v, lo, width):
                raise OverlapAfterPlacement(f"piece at vertex {v} does not fit its wedge")
        eids = list(unit.arcs)
        unit_arcs = [unit.arcs[e] for e in eids]
        unit_boxes = _boxes(unit_arcs)
        def clear(scale):
            return _first_contact_scaled(unit_arcs, unit_boxes, scale, pv, placed, placed_boxes, (pv,)) is None

        # halve until the piece fits, then try to win back part of the last step
        scale = 1.0
        for _ in range(tries):
            if scale < MIN_SCALE:
                break
            try:
                if clear(scale):
                    break
            except CoincidentPoints:
                break
            scale *= shrink
        else:
            scale = 0.0
        if scale < MIN_SCALE:
            raise OverlapAfterPlacement(f"could not attach a piece at vertex {v}")
        if scale < 1.0 and clear(scale / math.sqrt(shrink)):
            scale /= math.sqrt(shrink)
        smallest = min(smallest, scale)
        new_points = {u: pv + scale * p for u, p in unit.points.items()}
        new_points[v] = pv
        new_arcs = {}
        for e in eids:
            a, b = unit.edges[e]
            new_arcs[e] = Arc(new_points[a], pv + scale * unit.arcs[e].witness, new_points[b])
        points.update(new_points)
        arcs.update(new_arcs)
        edges.update(S.edges)
        degree.update(getattr(S, "degree", {}))
        placed.extend(new_arcs[e] for e in eids)
        placed_boxes = np.vstack([placed_boxes, unit_boxes * scale + np.array([pv.real, pv.imag] * 2)])
    return PartialDrawing(points, arcs, edges, degree), smallest


def glue_at_articulation(v, drawings, rotation, mode="wedge", margin=WEDGE_MARGIN, retries=8,
                         obstacles=(), shrink=0.5, tries=40):
    """Merge partial drawings that share only vertex v into one.

    ``rotation`` is the counterclockwise order of all edges at v; each
    drawing's edges must form a consecutive run in it.

    In ``"wedge"`` mode every drawing is inverted at v, rotated onto its
    slots, moved into its own angular wedge and inverted back.  In
    ``"anchored"`` mode the first drawing stays where it is and every other
    drawing, which must already lie in its wedge, is attached by a
    similarity and shrunk until it clears the drawings placed before it and
    the arcs in ``obstacles``.
    """
    rotation = tuple(rotation)
    d = len(rotation)
    pieces = [_slot_layout(v, D, rotation) for D in drawings]
    if sum(p.count for p in pieces) != d:
        raise ArcPolyError(f"drawings do not cover the {d} edges at vertex {v}")
    if mode == "wedge":
        return _glue_wedges(v, pieces, d, margin, retries)
    if mode == "anchored":
        return _glue_anchored(v, pieces, d, obstacles, shrink, tries)[0]
    raise ValueError(f"unknown gluing mode {mode!r}")


def _normalize_at(D, v):
    """Translate v to 0."""
    pv = D.points[v]
    return D.map(lambda z: z - pv)


def _block_tree(g):
    """Blocks in breadth-first order from the root, with their entry vertex."""
    root = g.blocks_at(g.vertices[0])[0]
    order, entry = [root], {root: None}
    i = 0
    while i < len(order):
        bi = order[i]
        i += 1
        for u in g.blocks[bi].vertices:
            if u == entry[bi]:
                continue
            for child in g.blocks_at(u):
                if child not in entry:
                    entry[child] = u
                    order.append(child)
    return order, entry


def _reshaped(D, v, beta):
    """Image of D (with v at 0) under z -> z / (1 + beta z), rescaled to
    unit extent; this keeps v and the edge directions at v fixed."""
    if beta == 0:
        return D
    f = lambda z: z / (1 + beta * z)
    pole = -1 / beta
    if any(abs(p - pole) < 1e-3 for p in D.points.values()):
        return None
    try:
        out = D.map(f)
    except ArcPolyError:
        return None
    # the pole must not lie on an arc: the image would pass through infinity
    for arc in D.arcs.values():
        if arc.contains(pole, 1e-6):
            return None
    size = _extent(out, v)
    return out.map(lambda z: z / size)


# |beta| values tried for z -> z/(1+beta z); blocks have unit extent here
RESHAPE_RADII = (0.8,)
RESHAPE_DIRECTIONS = 8
# stop trying reshapings once the subtrees keep this fraction of their size
GOOD_ENOUGH = 0.5


def _reshapings(D, v, lo, width, search):
    yield D
    if not search:
        return
    for r in RESHAPE_RADII:
        for k in range(RESHAPE_DIRECTIONS):
            X = _reshaped(D, v, r * cmath.exp(1j * TAU * k / RESHAPE_DIRECTIONS))
            if X is not None and _inside_wedge(X, v, lo, width):
                yield X


def _attach_children(g, emb, bi, D, w, entry, done):
    obstacles = []
    if w is not None:
        piece = _slot_layout(w, D, emb.rotation[w])
        lo, width = _wedge_of(piece, TAU / len(emb.rotation[w]), CONE_SLACK)
        lo += cmath.phase(1 / piece.turn)
        reach = _extent(D, w) + sum(
            _extent(done[c], u)
            for u in g.blocks[bi].vertices if u != w
            for c in g.blocks_at(u) if c != bi and entry[c] == u
        )
        obstacles = _boundary_rays(D.points[w], lo, width, 4 * reach + 1)
    smallest = math.inf
    for u in g.blocks[bi].vertices:
        if u == w:
            continue
        children = [c for c in g.blocks_at(u) if c != bi and entry[c] == u]
        if children:
            pieces = [_slot_layout(u, X, emb.rotation[u]) for X in [D] + [done[c] for c in children]]
            D, scale = _glue_anchored(u, pieces, len(emb.rotation[u]), obstacles, 0.5, 40, False)
            smallest = min(smallest, scale)
    return D, smallest


def draw_cactus(g, embedding=None):
    """Planar Lombardi drawing of a cactus in its natural embedding.

    Blocks are processed from the leaves of the block-cut tree upwards.  A
    block is first fitted into its wedge at the vertex joining it to its
    parent; then the finished subtrees hanging from its other vertices are
    glued on in anchored mode.  Cycle blocks try a few Moebius reshapings
    that keep the entry vertex fixed and keep the one that lets its subtrees
    stay largest.
    """
    if not isinstance(g, CactusGraph):
        g = validate_cactus(g)
    emb = embedding or natural_embedding(g)
    if not emb.is_natural:
        raise ArcPolyError("only the natural embedding can be drawn")
    degree = {v: g.degree(v) for v in g.vertices}
    order, entry = _block_tree(g)
    done = {}
    for bi in reversed(order):
        w = entry[bi]
        block = g.blocks[bi]
        D = draw_block(g, block, degree)
        has_children = any(
            c != bi and entry[c] == u for u in block.vertices if u != w for c in g.blocks_at(u)
        )
        if w is None:
            best = _attach_children(g, emb, bi, D, w, entry, done)
        else:
            D = _squeeze(D, w, emb.rotation[w])
            rot = emb.rotation[w]
            piece = _slot_layout(w, D, rot)
            lo, width = _wedge_of(piece, TAU / len(rot), CONE_SLACK)
            lo += cmath.phase(1 / piece.turn)
            best = None
            for X in _reshapings(D, w, lo, width, block.is_cycle and has_children):
                try:
                    got = _attach_children(g, emb, bi, X, w, entry, done)
                except ArcPolyError:
                    continue
                if best is None or got[1] > best[1]:
                    best = got
                if best[1] >= GOOD_ENOUGH:
                    break
            if best is None:
                raise OverlapAfterPlacement(f"could not attach the subtrees of block {bi}")
        for u in block.vertices:
            if u == w:
                continue
            for c in g.blocks_at(u):
                if c != bi and entry[c] == u:
                    del done[c]
        D = best[0]
        if w is not None:
            D = _normalize_at(D, w)
            piece = _slot_layout(w, D, emb.rotation[w])
            lo, width = _wedge_of(piece, TAU / len(emb.rotation[w]))
            if not _inside_wedge(D.map(lambda z: z * piece.turn), w, lo, width):
                raise OverlapAfterPlacement(f"subtree of block {bi} left its wedge at vertex {w}")
        done[bi] = D
    D = done[order[0]].normalized()
    return Drawing(D.points, D.arcs, D.edges)


class LombardiReport(NamedTuple):
    ok: bool
    kind: Optional[str] = None  # "coverage", "angle" or "crossing"
    vertex: Optional[int] = None
    edges: tuple = ()
    point: Optional[complex] = None
    message: str = ""
    max_angle_error: float = 0.0


def _angle_error(D, g, v):
    d = g.degree(v)
    if d < 2:
        return 0.0
    phases = sorted(cmath.phase(D.tangent(e, v)) % TAU for e in g.incident(v))
    gaps = [phases[i + 1] - phases[i] for i in range(d - 1)]
    gaps.append(TAU - phases[-1] + phases[0])
    return max(abs(x - TAU / d) for x in gaps)


def verify_lombardi(D: Drawing, g, tol=ANGLE_CHECK_TOL):
    """Check angular resolution and planarity; report the first violation."""
    if not isinstance(g, CactusGraph):
        g = validate_cactus(g)
    missing_v = [v for v in g.vertices if v not in D.points]
    missing_e = [e for e in range(len(g.edges)) if e not in D.arcs]
    if missing_v or missing_e:
        return LombardiReport(False, "coverage", message=f"missing vertices {missing_v} edges {missing_e}")
    for eid, (a, b) in enumerate(g.edges):
        if tuple(D.edges.get(eid, ())) != (a, b):
            return LombardiReport(False, "coverage", edges=(eid,), message=f"edge {eid} has the wrong endpoints")

    worst = 0.0
    for v in g.vertices:
        err = _angle_error(D, g, v)
        worst = max(worst, err)
        if err > tol:
            return LombardiReport(
                False, "angle", vertex=v, message=f"angle spacing off by {err:.3g} at vertex {v}",
                max_angle_error=err,
            )

    m = len(g.edges)
    arcs = [D.arcs[e] for e in range(m)]
    boxes = np.array([a.bbox() for a in arcs])
    pad = PT_TOL
    for i in range(m):
        hit = np.nonzero(
            (boxes[i + 1 :, 0] <= boxes[i, 2] + pad)
            & (boxes[i, 0] <= boxes[i + 1 :, 2] + pad)
            & (boxes[i + 1 :, 1] <= boxes[i, 3] + pad)
            & (boxes[i, 1] <= boxes[i + 1 :, 3] + pad)
        )[0]
        for j in (hit + i + 1).tolist():
            shared = set(g.edges[i]) & set(g.edges[j])
            res = arc_intersections(arcs[i], arcs[j])
            if res.overlap:
                return LombardiReport(False, "crossing", edges=(i, j), message="edges overlap", max_angle_error=worst)
            for c in res:
                if c.end_a and c.end_b and any(close(c.point, D.points[u]) for u in shared):
                    continue
                return LombardiReport(
                    False, "crossing", edges=(i, j), point=c.point,
                    message=f"edges {i} and {j} meet at {c.point:.9g}", max_angle_error=worst,
                )
    return LombardiReport(True, max_angle_error=worst)
