"""Circular-arc polygons, arc-triangle realizability and Lombardi drawings
of cactus graphs."""

from .errors import *  # noqa: F401,F403
from .geometry import INF, Arc, GCircle, MoebiusMap, arc_intersections, circumcircle
from .polygon import ArcPolygon, base_quadrilateral, glue_at_cusps, is_simple, realize
from .triangle import bigon_angles, classify, construct_triangle

__version__ = "0.1.0"
