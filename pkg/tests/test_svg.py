import cmath
import math
import random
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, strategies as st

from arcpoly.figures import boscovich_triangle
from arcpoly.geometry import Arc
from arcpoly.polygon import realize
from arcpoly.svg import emit_svg

def paths(text):
    root = ET.fromstring(text.encode())
    return [p.get("d").split() for p in root.iter("{http://www.w3.org/2000/svg}path")]


def svg_arc_geometry(cmd):
    """(centre, radius, start angle, signed sweep) of an SVG
    'M x y A r r 0 large sweep x y' path, via the endpoint-to-centre
    conversion from the SVG implementation notes (rx = ry, no rotation)."""
    x1, y1 = float(cmd[1]), float(cmd[2])
    r = float(cmd[4])
    fa, fs = int(cmd[7]), int(cmd[8])
    x2, y2 = float(cmd[9]), float(cmd[10])
    dx, dy = (x1 - x2) / 2, (y1 - y2) / 2
    lam = (dx * dx + dy * dy) / (r * r)
    if lam > 1:  # radius is scaled up when too small
        r *= math.sqrt(lam)
    coef = math.sqrt(max(0.0, (r * r - dx * dx - dy * dy) / (dx * dx + dy * dy)))
    if fa == fs:
        coef = -coef
    cxp, cyp = coef * dy, -coef * dx
    centre = complex(cxp + (x1 + x2) / 2, cyp + (y1 + y2) / 2)
    t1 = math.atan2((dy - cyp) / r, (dx - cxp) / r)
    t2 = math.atan2((-dy - cyp) / r, (-dx - cxp) / r)
    dt = (t2 - t1) % (2 * math.pi)
    if not fs:
        dt -= 2 * math.pi
    return centre, r, t1, dt


def svg_arc_samples(cmd, n=200):
    c, r, t1, dt = svg_arc_geometry(cmd)
    return [c + r * cmath.exp(1j * (t1 + dt * k / n)) for k in range(n + 1)]


def distance_to_svg_arc(cmd, w):
    c, r, t1, dt = svg_arc_geometry(cmd)
    rel = (cmath.phase(w - c) - t1) % (2 * math.pi)
    if dt < 0:
        rel = 2 * math.pi - rel if rel else 0.0
    if rel <= abs(dt):
        return abs(abs(w - c) - r)
    return min(abs(w - p) for p in (c + r * cmath.exp(1j * t1), c + r * cmath.exp(1j * (t1 + dt))))


def witness_on_rendered_arc(arc, width=400, pad=20):
    text = emit_svg([arc], width=width, pad=pad)
    (cmd,) = paths(text)
    x0, y0, x1, y1 = arc.bbox()
    k = (width - 2 * pad) / max(x1 - x0, y1 - y0, 1e-12)
    w = complex(pad + (arc.witness.real - x0) * k, pad + (y1 - arc.witness.imag) * k)
    return distance_to_svg_arc(cmd, w), k


def test_empty_canvas_is_valid_svg():
    root = ET.fromstring(emit_svg().encode())
    assert root.tag == "{http://www.w3.org/2000/svg}svg"
    assert root.get("version") == "1.1"
    assert paths(emit_svg()) == []


def test_output_is_deterministic():
    P = realize([0.3, 1.0, 2.0, 0.0, 2.5])
    assert emit_svg(P) == emit_svg(realize([0.3, 1.0, 2.0, 0.0, 2.5]))


def test_unit_circle_as_two_semicircles():
    top = Arc(1 + 0j, 1j, -1 + 0j)
    bottom = Arc(-1 + 0j, -1j, 1 + 0j)
    cmds = paths(emit_svg([top, bottom]))
    assert len(cmds) == 2
    assert all(c[3] == "A" and c[4] == c[5] for c in cmds)
    # together they cover the circle: every direction from the centre is hit
    pts = svg_arc_samples(cmds[0]) + svg_arc_samples(cmds[1])
    centre = complex(200, 200)
    angles = sorted(cmath.phase(p - centre) for p in pts)
    gaps = [b - a for a, b in zip(angles, angles[1:])]
    assert max(gaps) < 0.05
    assert all(abs(abs(p - centre) - 180) < 1e-3 for p in pts)


def test_boscovich_is_three_semicircles():
    cmds = paths(emit_svg(boscovich_triangle()))
    assert len(cmds) == 3
    assert all(c[3] == "A" for c in cmds)
    for c in cmds:
        a, b = complex(float(c[1]), float(c[2])), complex(float(c[9]), float(c[10]))
        assert abs(a - b) == pytest.approx(2 * float(c[4]), rel=1e-6)


def test_segments_are_line_commands():
    cmds = paths(emit_svg([Arc.segment(0j, 1 + 1j)]))
    assert cmds == [["M", "20.000000", "380.000000", "L", "380.000000", "20.000000"]]


def test_negative_zero_is_normalized():
    text = emit_svg([Arc.segment(-0.0 + 0j, 1e-12 + 0j)])
    assert "-0.000000" not in text


def test_six_decimals():
    for c in paths(emit_svg(realize([0.3, 1.0, 2.0]))):
        # coordinates and radii; the arc flags are bare integers
        numbers = [t for i, t in enumerate(c) if t not in "MLA" and not (c[3] == "A" and i in (6, 7, 8))]
        assert all(len(t.split(".")[1]) == 6 for t in numbers)


def test_labels_and_highlights_escaped():
    text = emit_svg([Arc.segment(0j, 1 + 0j)], highlights=[0.5 + 0j], labels=[(0j, "a<b")], title="t&t")
    assert "a&lt;b" in text and "t&amp;t" in text
    ET.fromstring(text.encode())


@given(
    st.floats(-3, 3), st.floats(-3, 3), st.floats(0.1, 2 * math.pi - 0.1),
    st.floats(0, 2 * math.pi), st.floats(0.2, 3), st.booleans(),
)
def test_rendered_arc_passes_through_witness(cx, cy, sweep, start, r, ccw):
    c = complex(cx, cy)
    s = c + r * cmath.exp(1j * start)
    sgn = 1 if ccw else -1
    w = c + r * cmath.exp(1j * (start + sgn * sweep / 2))
    e = c + r * cmath.exp(1j * (start + sgn * sweep))
    arc = Arc(s, w, e)
    dist, k = witness_on_rendered_arc(arc)
    # coordinates are rounded to 1e-6 in SVG units
    assert dist < 1e-4


def test_random_arcs_render_through_witness():
    rng = random.Random(9)
    for _ in range(200):
        pts = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(3)]
        arc = Arc(*pts)
        if arc.is_segment or arc.radius > 50:
            continue
        dist, _ = witness_on_rendered_arc(arc)
        assert dist < 1e-3


def test_oracle_rejects_wrong_sweep_flag():
    arc = Arc(1 + 0j, 1j, -1 + 0j)
    (cmd,) = paths(emit_svg([arc]))
    witness = complex(200, 20)
    assert distance_to_svg_arc(cmd, witness) < 1e-6
    cmd[8] = "0" if cmd[8] == "1" else "1"
    assert distance_to_svg_arc(cmd, witness) > 100
