"""Exact integer/rational geometric primitives.

Every predicate here is evaluated with Python integers or ``Fraction``;
there are no tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from math import floor, gcd, isqrt
from typing import NamedTuple, Sequence

import numpy as np

from .errors import InvalidPolygon, NotCrossing


class Point(NamedTuple):
    x: int
    y: int


class RationalPoint(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y):
        return cls(Fraction(x), Fraction(y))


@dataclass(frozen=True)
class Segment:
    p: Point
    q: Point

    def __post_init__(self):
        if tuple(self.p) == tuple(self.q):
            raise ValueError("degenerate segment %r" % (self.p,))

    @classmethod
    def of(cls, x1, y1, x2, y2):
        return cls(Point(x1, y1), Point(x2, y2))


def cross(ax, ay, bx, by):
    return ax * by - ay * bx


def area2(p, q, r):
    """Twice the signed area of triangle pqr."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def orient(p, q, r) -> int:
    a = area2(p, q, r)
    return (a > 0) - (a < 0)


def on_segment(p, a, b) -> bool:
    """True if p lies on the closed segment ab."""
    if area2(a, b, p) != 0:
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def strictly_inside_segment(p, a, b) -> bool:
    return on_segment(p, a, b) and tuple(p) != tuple(a) and tuple(p) != tuple(b)


def _ends(s):
    if isinstance(s, Segment):
        return s.p, s.q
    return s[0], s[1]


def properly_cross(s1, s2) -> bool:
    """Open interiors meet in exactly one point and no endpoint touches the other segment."""
    a, b = _ends(s1)
    c, d = _ends(s2)
    o1 = orient(a, b, c)
    o2 = orient(a, b, d)
    o3 = orient(c, d, a)
    o4 = orient(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def segments_touch(s1, s2) -> bool:
    """Closed segments share at least one point."""
    a, b = _ends(s1)
    c, d = _ends(s2)
    if properly_cross(s1, s2):
        return True
    return on_segment(c, a, b) or on_segment(d, a, b) or on_segment(a, c, d) or on_segment(b, c, d)


def crossing_point(s1, s2) -> RationalPoint:
    a, b = _ends(s1)
    c, d = _ends(s2)
    if not properly_cross(s1, s2):
        raise NotCrossing("segments do not properly cross: %r %r" % ((a, b), (c, d)))
    return line_intersection(a, b, c, d)


def line_intersection(a, b, c, d) -> RationalPoint:
    """Intersection of lines ab and cd (rational inputs allowed)."""
    rx, ry = b[0] - a[0], b[1] - a[1]
    sx, sy = d[0] - c[0], d[1] - c[1]
    den = cross(rx, ry, sx, sy)
    if den == 0:
        raise NotCrossing("parallel lines")
    t = Fraction(cross(c[0] - a[0], c[1] - a[1], sx, sy)) / den
    return RationalPoint(Fraction(a[0]) + t * rx, Fraction(a[1]) + t * ry)


def segment_param(p, a, b) -> Fraction:
    """Parameter of point p (assumed on line ab) along a -> b."""
    dx, dy = b[0] - a[0], b[1] - a[1]
    return Fraction((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / (dx * dx + dy * dy)


def dist2(p, q):
    return (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2


def signed_area2(cycle: Sequence) -> int:
    n = len(cycle)
    return sum(cycle[i][0] * cycle[(i + 1) % n][1] - cycle[(i + 1) % n][0] * cycle[i][1] for i in range(n))


_SQRT_BITS = 48


def approx_sqrt(x) -> Fraction:
    """Rational approximation of sqrt(x) from below, relative error about 2^-48."""
    x = Fraction(x)
    if x <= 0:
        return Fraction(0)
    num, den = x.numerator, x.denominator
    return Fraction(isqrt((num * den) << (2 * _SQRT_BITS)), den << _SQRT_BITS)


def approx_unit(v):
    """Rational vector of (almost exactly) unit length in the direction of v."""
    L = approx_sqrt(Fraction(v[0]) ** 2 + Fraction(v[1]) ** 2)
    return (Fraction(v[0]) / L, Fraction(v[1]) / L)


def round_point(p) -> Point:
    """Nearest integer point (ties rounded up)."""
    return Point(floor(Fraction(p[0]) + Fraction(1, 2)), floor(Fraction(p[1]) + Fraction(1, 2)))


def angle_cmp(u, v) -> int:
    """Compare direction vectors by polar angle in [0, 2pi)."""

    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = cross(u[0], u[1], v[0], v[1])
    return -1 if c > 0 else (1 if c < 0 else 0)


angle_key = cmp_to_key(angle_cmp)


def point_in_polygon(p, cycle: Sequence) -> int:
    """+1 strictly inside, 0 on boundary, -1 outside (exact crossing-number test)."""
    n = len(cycle)
    inside = False
    for i in range(n):
        a, b = cycle[i], cycle[(i + 1) % n]
        if on_segment(p, a, b):
            return 0
        if (a[1] > p[1]) != (b[1] > p[1]):
            # x-coordinate of the edge at height p.y compared to p.x, exactly
            s = area2(a, b, p)
            if (s > 0) == (b[1] > a[1]):
                inside = not inside
    return 1 if inside else -1


SWEEP_THRESHOLD = 64  # edges above which simplicity checks use the bounding-box sweep


def _adjacent_pair_ok(a, b, c, d, shared_is_b: bool) -> bool:
    # consecutive edges ab, cd meeting at one vertex: no other point in common
    if shared_is_b:
        return not (on_segment(d, a, b) or on_segment(a, c, d))
    return not (on_segment(c, a, b) or on_segment(b, c, d))


def boundary_contact(cycles) -> tuple | None:
    """First pair of boundary edges that meet where they should not, or None.

    Candidate pairs come from a sweep over float bounding boxes, widened so that no
    true overlap is lost to rounding; every candidate is then decided exactly.
    Edges are reported as (cycle, index) with edge i running from vertex i to i+1.
    """
    a_pts, b_pts, cyc_of, idx_of, len_of = [], [], [], [], []
    for c, cyc in enumerate(cycles):
        n = len(cyc)
        for i in range(n):
            a_pts.append(cyc[i])
            b_pts.append(cyc[(i + 1) % n])
            cyc_of.append(c)
            idx_of.append(i)
            len_of.append(n)
    m = len(a_pts)
    if m == 0:
        return None
    ax = np.array([float(p[0]) for p in a_pts])
    ay = np.array([float(p[1]) for p in a_pts])
    bx = np.array([float(p[0]) for p in b_pts])
    by = np.array([float(p[1]) for p in b_pts])
    pad = 1.0 + 1e-12 * np.maximum(np.maximum(np.abs(ax), np.abs(bx)), np.maximum(np.abs(ay), np.abs(by)))
    xlo, xhi = np.minimum(ax, bx) - pad, np.maximum(ax, bx) + pad
    ylo, yhi = np.minimum(ay, by) - pad, np.maximum(ay, by) + pad
    order = np.argsort(xlo, kind="stable")
    xs = xlo[order]
    ends = np.searchsorted(xs, xhi[order], side="right")
    for k in range(m):
        if ends[k] <= k + 1:
            continue
        i = int(order[k])
        cand = order[k + 1:ends[k]]
        cand = cand[(ylo[cand] <= yhi[i]) & (yhi[cand] >= ylo[i])]
        for j in cand.tolist():
            e, f = (i, j) if (cyc_of[i], idx_of[i]) < (cyc_of[j], idx_of[j]) else (j, i)
            if cyc_of[e] == cyc_of[f]:
                n = len_of[e]
                if idx_of[f] == idx_of[e] + 1:
                    if _adjacent_pair_ok(a_pts[e], b_pts[e], a_pts[f], b_pts[f], True):
                        continue
                    return (cyc_of[e], idx_of[e]), (cyc_of[f], idx_of[f])
                if idx_of[e] == 0 and idx_of[f] == n - 1:
                    if _adjacent_pair_ok(a_pts[e], b_pts[e], a_pts[f], b_pts[f], False):
                        continue
                    return (cyc_of[e], idx_of[e]), (cyc_of[f], idx_of[f])
            if segments_touch((a_pts[e], b_pts[e]), (a_pts[f], b_pts[f])):
                return (cyc_of[e], idx_of[e]), (cyc_of[f], idx_of[f])
    return None


def cycle_is_simple(cycle: Sequence) -> bool:
    n = len(cycle)
    if n > SWEEP_THRESHOLD:
        if len(set(map(tuple, cycle))) != n or signed_area2(cycle) == 0:
            return False
        return boundary_contact([cycle]) is None
    return cycle_is_simple_quadratic(cycle)


def cycle_is_simple_quadratic(cycle: Sequence) -> bool:
    """All-pairs reference check."""
    n = len(cycle)
    if n < 3 or len(set(map(tuple, cycle))) != n:
        return False
    if signed_area2(cycle) == 0:
        return False
    for i in range(n):
        a, b = cycle[i], cycle[(i + 1) % n]
        for j in range(i + 1, n):
            c, d = cycle[j], cycle[(j + 1) % n]
            if j == i + 1 or (i == 0 and j == n - 1):
                # adjacent edges: only the shared vertex may be common
                other1 = a if j == i + 1 else b
                other2 = d if j == i + 1 else c
                if on_segment(other2, a, b) or on_segment(other1, c, d):
                    return False
                continue
            if segments_touch((a, b), (c, d)):
                return False
    return True


@dataclass
class PolygonWithHoles:
    """Outer cycle (CCW) plus hole cycles (CW). Vertices are indexed outer first, then holes in order."""

    outer: list
    holes: list = field(default_factory=list)

    def __post_init__(self):
        self.outer = [Point(int(x), int(y)) for x, y in self.outer]
        self.holes = [[Point(int(x), int(y)) for x, y in h] for h in self.holes]
        self._cache = {}

    @classmethod
    def simple(cls, pts):
        return cls(list(pts), [])

    @property
    def cycles(self):
        return [self.outer] + self.holes

    @property
    def vertices(self) -> list:
        vs = list(self.outer)
        for h in self.holes:
            vs.extend(h)
        return vs

    def __len__(self):
        return len(self.outer) + sum(len(h) for h in self.holes)

    def cycle_ranges(self):
        out, start = [], 0
        for c in self.cycles:
            out.append((start, start + len(c)))
            start += len(c)
        return out

    def component_of(self):
        comp = []
        for k, c in enumerate(self.cycles):
            comp.extend([k] * len(c))
        return comp

    def prev_next(self):
        """Per-vertex (prev index, next index) along its own cycle."""
        if "pn" not in self._cache:
            pn = []
            for lo, hi in self.cycle_ranges():
                m = hi - lo
                for i in range(m):
                    pn.append((lo + (i - 1) % m, lo + (i + 1) % m))
            self._cache["pn"] = pn
        return self._cache["pn"]

    def edges(self) -> list:
        """Directed boundary edges (i, next(i)); interior lies to the left."""
        return [(i, nx) for i, (_, nx) in enumerate(self.prev_next())]

    def is_edge(self, i, j) -> bool:
        p, n = self.prev_next()[i]
        return j == p or j == n

    def normalized(self) -> "PolygonWithHoles":
        outer = list(self.outer)
        if signed_area2(outer) < 0:
            outer.reverse()
        holes = []
        for h in self.holes:
            h = list(h)
            if signed_area2(h) > 0:
                h.reverse()
            holes.append(h)
        return PolygonWithHoles(outer, holes)

    def validate(self) -> "PolygonWithHoles":
        """Raise InvalidPolygon unless this is a valid polygon with holes in the stated orientation."""
        big = len(self) > SWEEP_THRESHOLD
        for c in self.cycles:
            if (big and len(c) < 3) or (not big and not cycle_is_simple(c)):
                raise InvalidPolygon("cycle is not simple")
        if signed_area2(self.outer) <= 0:
            raise InvalidPolygon("outer cycle must be counterclockwise")
        for h in self.holes:
            if signed_area2(h) >= 0:
                raise InvalidPolygon("holes must be clockwise")
        if len(set(self.vertices)) != len(self):
            raise InvalidPolygon("repeated vertex")
        cyc = self.cycles
        if big:
            hit = boundary_contact(cyc)
            if hit is not None:
                raise InvalidPolygon("boundary edges %s and %s meet" % hit)
            if any(signed_area2(c) == 0 for c in cyc):
                raise InvalidPolygon("degenerate cycle")
        for a in range(len(cyc) if not big else 0):
            for b in range(a + 1, len(cyc)):
                if _cycles_touch(cyc[a], cyc[b]):
                    raise InvalidPolygon("boundary cycles %d and %d intersect" % (a, b))
        for k, h in enumerate(self.holes):
            if point_in_polygon(h[0], self.outer) != 1:
                raise InvalidPolygon("hole %d is not inside the outer cycle" % k)
            for k2, h2 in enumerate(self.holes):
                if k2 != k and point_in_polygon(h[0], h2) == 1:
                    raise InvalidPolygon("hole %d is nested inside hole %d" % (k, k2))
        return self

    def to_json(self):
        return {"outer": [list(p) for p in self.outer], "holes": [[list(p) for p in h] for h in self.holes]}

    @classmethod
    def from_json(cls, obj):
        return cls([tuple(p) for p in obj["outer"]], [[tuple(p) for p in h] for h in obj.get("holes", [])])


def _cycles_touch(c1, c2) -> bool:
    n1, n2 = len(c1), len(c2)
    xs1 = [p[0] for p in c1]
    ys1 = [p[1] for p in c1]
    xs2 = [p[0] for p in c2]
    ys2 = [p[1] for p in c2]
    if max(xs1) < min(xs2) or max(xs2) < min(xs1) or max(ys1) < min(ys2) or max(ys2) < min(ys1):
        return False
    for i in range(n1):
        e1 = (c1[i], c1[(i + 1) % n1])
        for j in range(n2):
            if segments_touch(e1, (c2[j], c2[(j + 1) % n2])):
                return True
    return False


def in_cone(a, prev, nxt, b) -> bool:
    """Direction a->b lies strictly inside the interior angle at a (interior to the left of prev->a->nxt)."""
    ux, uy = nxt[0] - a[0], nxt[1] - a[1]
    vx, vy = prev[0] - a[0], prev[1] - a[1]
    dx, dy = b[0] - a[0], b[1] - a[1]
    turn = cross(ux, uy, vx, vy)
    c1 = cross(ux, uy, dx, dy)
    c2 = cross(dx, dy, vx, vy)
    if turn > 0:
        return c1 > 0 and c2 > 0
    if turn < 0:
        return c1 > 0 or c2 > 0
    # straight angle (turn == 0 with opposite directions): interior is the left half-plane
    return c1 > 0


def visible(P: PolygonWithHoles, i: int, j: int) -> bool:
    """True iff i, j are joined by an edge of P or the open segment ij lies in the interior of P."""
    if i == j:
        raise ValueError("visible() needs two distinct vertices")
    if P.is_edge(i, j):
        return True
    V = P.vertices
    a, b = V[i], V[j]
    for k, (e0, e1) in enumerate(P.edges()):
        if k != i and k != j and on_segment(V[k], a, b):
            return False
        if properly_cross((a, b), (V[e0], V[e1])):
            return False
    p, n = P.prev_next()[i]
    return in_cone(a, V[p], V[n], b)


_INT64_SAFE = 1 << 29
_FILTER_SAFE = 1 << 51  # differences stay exact in both int64 and float64
_EPS = 2.0 ** -53


def _cross_sign_int(ux, uy, vx, vy):
    return np.sign(ux * vy - uy * vx)


def _cross_sign_filtered(ux, uy, vx, vy):
    """Exact sign of ux*vy - uy*vx for int64 arrays with |entries| < 2**52.

    Evaluated in float64; entries whose magnitude does not clear the rounding error
    bound are recomputed with Python integers.
    """
    ux, uy, vx, vy = np.broadcast_arrays(ux, uy, vx, vy)
    p1 = ux.astype(np.float64) * vy.astype(np.float64)
    p2 = uy.astype(np.float64) * vx.astype(np.float64)
    det = p1 - p2
    bound = 4 * _EPS * (np.abs(p1) + np.abs(p2))
    out = np.sign(det).astype(np.int64)
    unsure = np.abs(det) <= bound
    if unsure.any():
        for idx in zip(*np.nonzero(unsure)):
            d = int(ux[idx]) * int(vy[idx]) - int(uy[idx]) * int(vx[idx])
            out[idx] = (d > 0) - (d < 0)
    return out


def visibility_matrix(P: PolygonWithHoles) -> np.ndarray:
    """Boolean n x n matrix of visible(P, i, j), with True on boundary edges and False on the diagonal.

    Exact throughout: int64 arithmetic below 2**29, float64 with an error filter and
    exact fallback below 2**51, Python integers beyond that.
    """
    if "vis" in P._cache:
        return P._cache["vis"]
    V = P.vertices
    n = len(V)
    mag = max(max(abs(x), abs(y)) for x, y in V)
    if mag < _INT64_SAFE:
        vis = _visibility_vec(P, _cross_sign_int)
    elif mag < _FILTER_SAFE:
        vis = _visibility_vec(P, _cross_sign_filtered)
    else:
        vis = np.zeros((n, n), dtype=bool)
        for i in range(n):
            for j in range(i + 1, n):
                vis[i, j] = vis[j, i] = visible(P, i, j)
    P._cache["vis"] = vis
    return vis


def _visibility_vec(P: PolygonWithHoles, sign) -> np.ndarray:
    V = np.array(P.vertices, dtype=np.int64)
    n = len(V)
    pn = np.array(P.prev_next(), dtype=np.int64)
    E0 = V  # edge k runs from vertex k to next(k)
    E1 = V[pn[:, 1]]
    vis = np.zeros((n, n), dtype=bool)
    idx = np.arange(n)

    def orient_arr(ax, ay, bx, by, cx, cy):
        return sign(bx - ax, by - ay, cx - ax, cy - ay)

    for i in range(n):
        a = V[i]
        js = idx[idx > i]
        if len(js) == 0:
            continue
        B = V[js]  # candidate endpoints, shape (m, 2)
        ax, ay = a[0], a[1]
        bx, by = B[:, 0][:, None], B[:, 1][:, None]
        # edges as row vectors, shape (1, n)
        cx, cy = E0[:, 0][None, :], E0[:, 1][None, :]
        dx, dy = E1[:, 0][None, :], E1[:, 1][None, :]
        o1 = orient_arr(ax, ay, bx, by, cx, cy)
        o2 = orient_arr(ax, ay, bx, by, dx, dy)
        o3 = orient_arr(cx, cy, dx, dy, ax, ay)
        o4 = orient_arr(cx, cy, dx, dy, bx, by)
        crossing = ((o1 * o2) < 0) & ((o3 * o4) < 0)
        # vertex k lying on closed segment a-b (k != i, j): o1 == 0 with bbox test on c = V[k]
        on = (o1 == 0) & (cx >= np.minimum(ax, bx)) & (cx <= np.maximum(ax, bx)) & (cy >= np.minimum(ay, by)) & (cy <= np.maximum(ay, by))
        on[:, i] = False
        on[np.arange(len(js)), js] = False
        blocked = crossing.any(axis=1) | on.any(axis=1)
        p, nx = pn[i]
        ux, uy = V[nx, 0] - ax, V[nx, 1] - ay
        vx, vy = V[p, 0] - ax, V[p, 1] - ay
        ddx, ddy = B[:, 0] - ax, B[:, 1] - ay
        turn = int(ux) * int(vy) - int(uy) * int(vx)
        c1 = sign(ux, uy, ddx, ddy)
        c2 = sign(ddx, ddy, vx, vy)
        if turn > 0:
            cone = (c1 > 0) & (c2 > 0)
        elif turn < 0:
            cone = (c1 > 0) | (c2 > 0)
        else:
            cone = c1 > 0
        ok = (~blocked) & cone
        vis[i, js] = ok
    vis = vis | vis.T
    for i, (p, nx) in enumerate(P.prev_next()):
        vis[i, p] = vis[p, i] = True
        vis[i, nx] = vis[nx, i] = True
    np.fill_diagonal(vis, False)
    return vis


@dataclass(frozen=True)
class ConvexChain:
    points: tuple
    turn: int  # +1: every consecutive triple turns left, -1: right

    def __len__(self):
        return len(self.points)

    def bbox_side(self) -> int:
        xs = [p[0] for p in self.points]
        ys = [p[1] for p in self.points]
        return max(max(xs) - min(xs), max(ys) - min(ys))


def _primitive_vectors(count: int) -> list:
    """The `count` shortest primitive vectors (p, q) with p > 0, balanced in the sign of q."""
    out = []
    r = 1
    while True:
        cand = []
        for p in range(1, r + 1):
            for q in range(-r, r + 1):
                if gcd(p, abs(q)) == 1 and p * p + q * q <= r * r:
                    cand.append((p, q))
        if len(cand) >= count:
            cand.sort(key=lambda v: (v[0] * v[0] + v[1] * v[1], abs(v[1]), v[1]))
            out = cand[:count]
            return out
        r += 1


def convex_chain(k: int, turn: int = 1) -> ConvexChain:
    """k lattice points in strictly convex position spanning O(k^1.5) grid units.

    Edge vectors are the k-1 shortest primitive vectors with positive x, sorted by slope;
    prefix sums give an x-monotone chain whose turns all have the sign ``turn``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if turn not in (1, -1):
        raise ValueError("turn must be +1 or -1")
    vecs = _primitive_vectors(k - 1) if k > 1 else []
    vecs.sort(key=lambda v: Fraction(v[1], v[0]))
    pts = [Point(0, 0)]
    for vx, vy in vecs:
        x, y = pts[-1]
        pts.append(Point(x + vx, y + vy))
    if turn == -1:
        pts = [Point(x, -y) for x, y in pts]
    miny = min(p[1] for p in pts)
    pts = [Point(x, y - miny) for x, y in pts]
    return ConvexChain(tuple(pts), turn)
