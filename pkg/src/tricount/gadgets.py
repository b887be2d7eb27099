"""Telescope gadgets and the polygon P_A.

Every segment of a red-blue arrangement becomes a long thin gadget: two tube sides
that bend slightly outward, opened at each crossing, and a concave lens closing
each end.  The four corners where two tubes cross are shared by both gadgets.  The
union of all gadgets is a polygon with holes whose triangulations encode the
non-crossing subsets of the arrangement.

Coordinates are integers throughout; the arrangement is scaled by an integer
factor found by doubling until every exact check passes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GadgetDegenerate, NotSinglePolygon, NotSimple, StitchingFailure
from .geometry import (Point, PolygonWithHoles, angle_key, approx_sqrt, approx_unit, convex_chain,
                       cycle_is_simple, line_intersection, orient, point_in_polygon, round_point,
                       signed_area2, visibility_matrix)
from .redblue import RED, Arrangement

WIDTH_FACTOR = Fraction(1, 16)
LENS_DEPTH = 4  # length of the integer vector along the tube used for lens bulge
FULL_CHECK_LIMIT = 2500  # vertex count above which P_A-wide visibility audits are skipped


@dataclass(frozen=True)
class Params:
    a: int
    b: int
    n: int = 0

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("lens parameters must be positive")

    def lens(self, color) -> int:
        return self.a + self.b if color == RED else self.a


def choose_params(n: int, mode: str = "sound", a: int | None = None, b: int | None = None) -> Params:
    """(3n^2, 2n) in sound mode; arbitrary positive (a, b) in test mode."""
    if mode == "sound":
        if n < 1:
            raise ValueError("n must be positive")
        return Params(3 * n * n, 2 * n, n)
    if a is None or b is None:
        raise ValueError("test mode needs explicit a and b")
    return Params(a, b, n)


@dataclass
class ArrangementMetrics:
    mu: int
    sin2_nu: Fraction  # squared sine of the sharpest crossing angle
    xi2: Fraction  # squared minimum distance between events on one segment
    nu_pair: tuple = ()

    @property
    def nu(self) -> float:
        return math.asin(math.sqrt(float(self.sin2_nu)))

    @property
    def xi(self) -> float:
        return math.sqrt(float(self.xi2))

    def to_json(self):
        return {"mu": self.mu, "sin2_nu": str(self.sin2_nu), "xi2": str(self.xi2),
                "nu_radians": self.nu, "xi": self.xi, "nu_pair": list(self.nu_pair)}


def measure(A: Arrangement) -> ArrangementMetrics:
    mu = A.max_coordinate()
    best = None
    for key in A.points:
        i, j = sorted(key)
        s, t = A.by_id[i], A.by_id[j]
        u = (s.q[0] - s.p[0], s.q[1] - s.p[1])
        v = (t.q[0] - t.p[0], t.q[1] - t.p[1])
        c = u[0] * v[1] - u[1] * v[0]
        val = Fraction(c * c, (u[0] ** 2 + u[1] ** 2) * (v[0] ** 2 + v[1] ** 2))
        if best is None or val < best[0]:
            best = (val, (i, j))
    xi2 = None
    for s in A.segments:
        ev = [s.p] + [A.points[frozenset((s.id, j))] for j in A.crossings[s.id]] + [s.q]
        for p, q in zip(ev, ev[1:]):
            d = Fraction(p[0] - q[0]) ** 2 + Fraction(p[1] - q[1]) ** 2
            if xi2 is None or d < xi2:
                xi2 = d
    if best is None:
        best = (Fraction(1), ())
    return ArrangementMetrics(mu, best[0], xi2 if xi2 is not None else Fraction(0), best[1])


def scale_formula(m: ArrangementMetrics, p: Params) -> int:
    """max(mu / (xi^2 nu), (a+b)^1.5 / (xi nu)) with constant 1, rounded up."""
    nu = max(m.nu, 1e-300)
    xi = max(m.xi, 1e-300)
    val = max(m.mu / (xi * xi * nu), (p.a + p.b) ** 1.5 / (xi * nu))
    return max(1, math.ceil(val))


@dataclass
class Gadget:
    seg_id: int
    color: str
    lens_size: int
    left: list  # corners on the +normal side, ordered along the segment
    right: list  # corners on the -normal side, ordered along the segment
    lens_a: list  # lens at the start, from the left side to the right side
    lens_b: list  # lens at the end, from the right side to the left side
    crossing_ids: list  # crossing segment ids, in order along the segment
    direction: tuple = ()

    @property
    def gaps(self) -> int:
        return len(self.crossing_ids)

    @property
    def tube(self) -> list:
        return self.left + self.right

    @property
    def lens_vertices(self) -> list:
        return self.lens_a + self.lens_b

    def pi_order(self) -> list:
        """Boundary of Pi_S, counterclockwise: lens A, right side, lens B, left side backwards."""
        return self.lens_a + self.right + self.lens_b + self.left[::-1]

    def ranges(self) -> dict:
        k, t = self.lens_size, len(self.right)
        return {"lens_a": (0, k), "right": (k, k + t), "lens_b": (k + t, 2 * k + t), "left": (2 * k + t, 2 * k + 2 * t)}

    def chains(self) -> list:
        """Polygonal chains of the gadget; interior vertices are private, endpoints shared."""
        out = [[self.left[0]] + self.lens_a + [self.right[0]],
               [self.right[-1]] + self.lens_b + [self.left[-1]]]
        for side in (self.right, self.left[::-1]):
            for i in range(1, len(side) - 1, 2):
                out.append([side[i], side[i + 1]])
        return out

    def vertex_count(self) -> int:
        return 2 * self.lens_size + 2 * len(self.left)

    def to_json(self):
        f = lambda ps: [list(p) for p in ps]
        return {"segment": self.seg_id, "color": self.color, "lens_size": self.lens_size,
                "left": f(self.left), "right": f(self.right), "lens_a": f(self.lens_a),
                "lens_b": f(self.lens_b), "crossings": list(self.crossing_ids)}


class _Frame:
    """Scaled segment with rational unit frame and its side lines at each crossing."""

    def __init__(self, s, crossings, points, scale, w):
        self.P = Point(s.p[0] * scale, s.p[1] * scale)
        self.Q = Point(s.q[0] * scale, s.q[1] * scale)
        d = (self.Q[0] - self.P[0], self.Q[1] - self.P[1])
        self.e = approx_unit(d)
        self.n = (-self.e[1], self.e[0])
        self.L = approx_sqrt(d[0] ** 2 + d[1] ** 2)
        self.X = []
        self.tau = []
        for j in crossings:
            x = points[frozenset((s.id, j))]
            x = (x[0] * scale, x[1] * scale)
            self.X.append(x)
            self.tau.append((x[0] - self.P[0]) * self.e[0] + (x[1] - self.P[1]) * self.e[1])
        m = len(crossings)
        kappa = w / (m * self.L) if m else Fraction(0)
        self.sigma = [kappa * (Fraction(m + 1, 2) - (j + 1)) for j in range(m)]
        self.H = [w]
        for j in range(1, m):
            self.H.append(self.H[-1] + (self.sigma[j - 1] + self.sigma[j]) / 2 * (self.tau[j] - self.tau[j - 1]))
        self.index = {c: k for k, c in enumerate(crossings)}

    def at(self, t):
        return (self.P[0] + self.e[0] * t, self.P[1] + self.e[1] * t)

    def side_line(self, j, side):
        x, h, sg = self.X[j], self.H[j] * side, self.sigma[j] * side
        base = (x[0] + self.n[0] * h, x[1] + self.n[1] * h)
        d = (self.e[0] + self.n[0] * sg, self.e[1] + self.n[1] * sg)
        return base, (base[0] + d[0], base[1] + d[1])

    def param(self, p):
        return (p[0] - self.P[0]) * self.e[0] + (p[1] - self.P[1]) * self.e[1]


def _round_vec(v, length) -> Point:
    return round_point((v[0] * length, v[1] * length))


def _lens_points(k, frame: _Frame, center_t, flip, w_avail):
    chain = convex_chain(k, -1).points
    Wc = max(p[0] for p in chain)
    slopes = [abs(Fraction(b[1] - a[1], b[0] - a[0])) for a, b in zip(chain, chain[1:])]
    smax = max(slopes, default=Fraction(1))
    V = _round_vec(frame.e, LENS_DEPTH)
    u_len = max(16, math.ceil(8 * smax * LENS_DEPTH))
    U = _round_vec((-frame.n[0], -frame.n[1]), u_len)
    if (U[0] * V[1] - U[1] * V[0]) <= 0:
        raise GadgetDegenerate("lens frame degenerate")
    width = Wc * math.sqrt(U[0] ** 2 + U[1] ** 2)
    if width > float(w_avail):
        raise GadgetDegenerate("lens of %d vertices needs width %.0f, tube offers %.0f" % (k, width, float(w_avail)))
    B = round_point(frame.at(center_t))
    half = Wc // 2
    sgn = -1 if flip else 1
    return [Point(B[0] + sgn * ((x - half) * U[0] + y * V[0]), B[1] + sgn * ((x - half) * U[1] + y * V[1]))
            for x, y in chain]


def build_gadgets(A: Arrangement, params: Params, scale: int, metrics: ArrangementMetrics | None = None,
                  width_factor: Fraction = WIDTH_FACTOR, strict: bool = True) -> dict:
    """One gadget per segment at the given integer scale; raises GadgetDegenerate if too small.

    ``strict=False`` skips the per-gadget convexity checks so that an under-scaled
    instance can still be assembled and audited.
    """
    m = metrics or measure(A)
    w = Fraction(width_factor) * scale * approx_sqrt(m.xi2) * approx_sqrt(m.sin2_nu)
    if w < 8:
        raise GadgetDegenerate("tube half-width %.2f below 8 grid units" % float(w))
    frames = {s.id: _Frame(s, A.crossings[s.id], A.points, scale, w) for s in A.segments}
    corner = {}
    for key in A.points:
        i, j = sorted(key)
        fi, fj = frames[i], frames[j]
        for si in (1, -1):
            for sj in (1, -1):
                a, b = fi.side_line(fi.index[j], si)
                c, d = fj.side_line(fj.index[i], sj)
                p = round_point(line_intersection(a, b, c, d))
                corner[(i, si, j, sj)] = p
                corner[(j, sj, i, si)] = p
    gadgets = {}
    for s in A.segments:
        f = frames[s.id]
        sides = {}
        for side in (1, -1):
            pts = [corner[(s.id, side, j, sj)] for j in A.crossings[s.id] for sj in (1, -1)]
            pts.sort(key=f.param)
            sides[side] = pts
        k = params.lens(s.color)
        if not f.tau:
            raise GadgetDegenerate("segment %r has no crossings" % s.id)
        ta = f.tau[0] / 2
        tb = (f.tau[-1] + f.L) / 2
        lens_a = _lens_points(k, f, ta, False, w)
        lens_b = _lens_points(k, f, tb, True, w)
        g = Gadget(s.id, s.color, k, sides[1], sides[-1], lens_a, lens_b, list(A.crossings[s.id]),
                   (s.q[0] - s.p[0], s.q[1] - s.p[1]))
        if strict:
            check_gadget(g)
        gadgets[s.id] = g
    return gadgets


def check_gadget(g: Gadget):
    """Exact local checks: Pi_S simple and CCW, lens reflex, tube corners convex."""
    order = g.pi_order()
    if len(set(order)) != len(order):
        raise GadgetDegenerate("gadget %r has coincident vertices" % g.seg_id)
    n = len(order)
    for i in range(n):
        o = orient(order[i - 1], order[i], order[(i + 1) % n])
        r = g.ranges()
        inner_lens = (r["lens_a"][0] < i < r["lens_a"][1] - 1) or (r["lens_b"][0] < i < r["lens_b"][1] - 1)
        if inner_lens and o >= 0:
            raise GadgetDegenerate("lens vertex %d of gadget %r is not reflex" % (i, g.seg_id))
        if not inner_lens and o <= 0:
            raise GadgetDegenerate("vertex %d of gadget %r is not convex" % (i, g.seg_id))
    if signed_area2(order) <= 0 or not cycle_is_simple(order):
        raise GadgetDegenerate("Pi_S of gadget %r is not simple" % g.seg_id)


def pi_S(g: Gadget) -> PolygonWithHoles:
    order = g.pi_order()
    if not cycle_is_simple(order):
        raise NotSimple("Pi_S of gadget %r is not simple" % g.seg_id)
    return PolygonWithHoles.simple(order)


def lens_Q(g: Gadget, side: str = "a") -> PolygonWithHoles:
    """Lens chain closed by the edge between its two tube endpoints."""
    if side == "a":
        pts = [g.left[0]] + g.lens_a + [g.right[0]]
    else:
        pts = [g.right[-1]] + g.lens_b + [g.left[-1]]
    return PolygonWithHoles.simple(pts)


@dataclass
class PolygonA:
    polygon: PolygonWithHoles
    gadgets: dict
    index: dict  # point -> vertex index in polygon
    scale: int
    params: Params
    metrics: ArrangementMetrics
    attempts: list = field(default_factory=list)
    report: dict = field(default_factory=dict)

    def gadget_indices(self, sid) -> list:
        return [self.index[p] for p in self.gadgets[sid].pi_order()]

    def lens_indices(self, sid) -> tuple:
        g = self.gadgets[sid]
        return [self.index[p] for p in g.lens_a], [self.index[p] for p in g.lens_b]

    def summary(self):
        P = self.polygon
        return {"vertices": len(P), "holes": len(P.holes), "scale": self.scale,
                "max_coordinate": max(max(abs(x), abs(y)) for x, y in P.vertices),
                "a": self.params.a, "b": self.params.b, "gadgets": len(self.gadgets)}


def assemble_polygon(A: Arrangement, gadgets: dict, validate: bool = True) -> tuple:
    """Stitch all gadget chains into boundary cycles; returns (polygon, point->index map)."""
    adj = {}
    for g in gadgets.values():
        for ch in g.chains():
            for p, q in zip(ch, ch[1:]):
                if p == q:
                    raise StitchingFailure("zero-length chain edge at %r" % (p,))
                adj.setdefault(p, []).append(q)
                adj.setdefault(q, []).append(p)
    bad = [p for p, nb in adj.items() if len(nb) != 2 or nb[0] == nb[1]]
    if bad:
        raise StitchingFailure("%d vertices without exactly two boundary neighbours, e.g. %r" % (len(bad), bad[0]))
    seen = set()
    cycles = []
    for start in sorted(adj):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        prev, cur = start, adj[start][0]
        while cur != start:
            if cur in seen:
                raise StitchingFailure("chains do not close into cycles")
            cyc.append(cur)
            seen.add(cur)
            a, b = adj[cur]
            prev, cur = cur, (b if a == prev else a)
        cycles.append(cyc)
    cycles.sort(key=lambda c: -abs(signed_area2(c)))
    outer = cycles[0]
    if signed_area2(outer) < 0:
        outer = outer[::-1]
    holes = []
    for c in cycles[1:]:
        if point_in_polygon(c[0], outer) != 1:
            raise NotSinglePolygon("boundary cycle outside the outer boundary")
        holes.append(c[::-1] if signed_area2(c) > 0 else c)
    P = PolygonWithHoles(outer, holes)
    if validate:
        P.validate()
    index = {p: i for i, p in enumerate(P.vertices)}
    return P, index


def validate_properties(PA: PolygonA, check_visibility: bool | None = None) -> dict:
    """Audit P1 (sharing), P2 (lens visibility) and P3 (no cross-gadget visibility).

    Returns a report with one list of violations per property; visibility audits are
    skipped (and marked so) above FULL_CHECK_LIMIT vertices unless forced.
    """
    P, idx, gadgets = PA.polygon, PA.index, PA.gadgets
    report = {"P1": [], "P2": [], "P3": [], "lens_self": [], "visibility_checked": False}
    owners = {}
    for sid, g in gadgets.items():
        for ch in g.chains():
            for p in ch[1:-1]:
                owners.setdefault(p, []).append(("inner", sid))
            for p in (ch[0], ch[-1]):
                owners.setdefault(p, []).append(("end", sid))
    for p, lst in owners.items():
        kinds = {k for k, _ in lst}
        sids = {s for _, s in lst}
        if "inner" in kinds and (len(lst) != 1):
            report["P1"].append(("inner vertex shared", list(p)))
        if kinds == {"end"} and len(sids) != 2:
            report["P1"].append(("endpoint not shared by exactly two gadgets", list(p)))
    if len(owners) != len(P):
        report["P1"].append(("vertex count mismatch", len(owners), len(P)))
    if check_visibility is None:
        check_visibility = len(P) <= FULL_CHECK_LIMIT
    if not check_visibility:
        return report
    report["visibility_checked"] = True
    vis = visibility_matrix(P)
    member = [set() for _ in range(len(P))]
    for sid, g in gadgets.items():
        for p in g.pi_order():
            member[idx[p]].add(sid)
        la = [idx[p] for p in g.lens_a]
        lb = [idx[p] for p in g.lens_b]
        tube = [idx[p] for p in g.tube]
        for u in la:
            for v in lb:
                if not vis[u, v]:
                    report["P2"].append(("lens-lens", sid, u, v))
        for u in la + lb:
            for v in tube:
                if not vis[u, v]:
                    report["P2"].append(("lens-tube", sid, u, v))
        for lens in (la, lb):
            for x in range(len(lens)):
                for y in range(x + 2, len(lens)):
                    if vis[lens[x], lens[y]]:
                        report["lens_self"].append((sid, lens[x], lens[y]))
    n = len(P)
    for i in range(n):
        for j in range(i + 1, n):
            if vis[i, j] and not (member[i] & member[j]):
                report["P3"].append((i, j))
    return report


def properties_ok(report) -> bool:
    return not any(report[k] for k in ("P1", "P2", "P3", "lens_self"))


def polygonize(A: Arrangement, params: Params, scale: int | None = None, max_doublings: int = 40,
               width_factor: Fraction = WIDTH_FACTOR, check_visibility: bool | None = None) -> PolygonA:
    """Build P_A, doubling the scale from the formula value until every check passes."""
    m = measure(A)
    s = scale if scale is not None else scale_formula(m, params)
    attempts = []
    for _ in range(max_doublings):
        try:
            gadgets = build_gadgets(A, params, s, m, width_factor)
            P, index = assemble_polygon(A, gadgets)
            PA = PolygonA(P, gadgets, index, s, params, m, attempts)
            rep = validate_properties(PA, check_visibility)
            if properties_ok(rep):
                attempts.append((s, "ok"))
                PA.report = rep
                return PA
            attempts.append((s, "properties"))
        except (GadgetDegenerate, StitchingFailure, NotSinglePolygon) as e:
            attempts.append((s, type(e).__name__))
        except Exception as e:  # invalid polygon from rounding collisions
            if type(e).__name__ != "InvalidPolygon":
                raise
            attempts.append((s, "InvalidPolygon"))
        s *= 2
    raise GadgetDegenerate("no valid scale found after %d doublings: %s" % (max_doublings, attempts[-3:]))


def audit_instance(A: Arrangement, params: Params, scale: int, width_factor: Fraction = WIDTH_FACTOR,
                   strict: bool = False) -> PolygonA:
    """Build P_A at one fixed scale without retrying and attach the property report.

    Used to show what goes wrong when the scale is too small for the tube width.
    """
    m = measure(A)
    gadgets = build_gadgets(A, params, scale, m, width_factor, strict=strict)
    P, index = assemble_polygon(A, gadgets)
    PA = PolygonA(P, gadgets, index, scale, params, m, [(scale, "fixed")])
    PA.report = validate_properties(PA)
    return PA


def compute_scale(m: ArrangementMetrics, p: Params, A: Arrangement | None = None) -> int:
    """Formula value, or with an arrangement the first doubling that validates."""
    if A is None:
        return scale_formula(m, p)
    return polygonize(A, p).scale


def crossing_polygon(PA: PolygonA, i: int, j: int) -> PolygonWithHoles:
    """The 12-gon at a red-red crossing: four shared corners plus their neighbours along each gadget."""
    gi, gj = PA.gadgets[i], PA.gadgets[j]
    corners = set()
    pts = set()
    for g, other in ((gi, j), (gj, i)):
        k = g.crossing_ids.index(other)
        for side in (g.left, g.right):
            entry, exit_ = side[2 * k], side[2 * k + 1]
            corners.update((entry, exit_))
            if 2 * k - 1 < 0 or 2 * k + 2 >= len(side):
                raise GadgetDegenerate("crossing is at the end of gadget %r" % g.seg_id)
            pts.update((side[2 * k - 1], side[2 * k + 2]))
    if len(corners) != 4:
        raise GadgetDegenerate("crossing corners not shared")
    allp = list(corners | pts)
    cx = Fraction(sum(p[0] for p in corners), 4)
    cy = Fraction(sum(p[1] for p in corners), 4)
    allp.sort(key=lambda p: angle_key((p[0] - cx, p[1] - cy)))
    if not cycle_is_simple(allp):
        raise NotSimple("crossing polygon is not simple")
    return PolygonWithHoles.simple(allp)


def red_red_crossings(A: Arrangement) -> list:
    reds = set(A.reds)
    return sorted(tuple(sorted(k)) for k in A.points if set(k) <= reds)


def x_arrangement():
    """Smallest valid arrangement: two crossing reds, two blues across both."""
    from .redblue import validate_arrangement
    return validate_arrangement([((0, 0), (8, 8), "red"), ((0, 8), (8, 0), "red"),
                                 ((0, 2), (8, 2), "blue"), ((0, 6), (8, 6), "blue")])
