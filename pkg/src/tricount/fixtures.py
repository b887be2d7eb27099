"""Seeded random polygons for tests and benchmarks."""

from __future__ import annotations

import math
import random

from .errors import InvalidPolygon
from .geometry import PolygonWithHoles, signed_area2


def star_polygon(rng: random.Random, n: int, radius: int = 40, center=(0, 0)) -> list:
    """Counterclockwise star-shaped polygon with n integer vertices (may be non-convex)."""
    while True:
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(n))
        pts = []
        for t in angles:
            r = rng.uniform(0.45, 1.0) * radius
            pts.append((center[0] + round(r * math.cos(t)), center[1] + round(r * math.sin(t))))
        P = PolygonWithHoles.simple(pts)
        try:
            if signed_area2(pts) > 0:
                P.validate()
                return pts
        except InvalidPolygon:
            pass


def polygon_with_holes(rng: random.Random, outer_n: int, hole_sizes=(3,), radius: int = 40,
                       tries: int = 1000) -> PolygonWithHoles:
    """Star-shaped outer boundary with small star-shaped holes near the middle."""
    for _ in range(tries):
        outer = star_polygon(rng, outer_n, radius)
        holes = []
        for k in hole_sizes:
            c = (rng.randint(-radius // 3, radius // 3), rng.randint(-radius // 3, radius // 3))
            h = star_polygon(rng, k, radius // 5, c)
            holes.append(h[::-1])
        P = PolygonWithHoles(outer, holes)
        try:
            return P.validate()
        except InvalidPolygon:
            continue
    raise RuntimeError("no valid fixture found")


def hole_fixtures(count: int = 24, seed: int = 7, max_vertices: int = 14) -> list:
    """Deterministic fixtures with one or two holes and at most max_vertices vertices."""
    rng = random.Random(seed)
    shapes = [(5, (3,)), (6, (3,)), (7, (4,)), (8, (3,)), (6, (3, 3)), (7, (3, 3)), (8, (3, 3)), (6, (4, 3)),
              (9, (4,)), (10, (3,)), (5, (3, 3)), (8, (4, 3))]
    shapes = [s for s in shapes if s[0] + sum(s[1]) <= max_vertices]
    return [polygon_with_holes(rng, *shapes[k % len(shapes)]) for k in range(count)]
