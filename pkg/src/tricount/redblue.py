"""Red-blue segment arrangements.

An arrangement is a set of colored segments where every blue segment is crossed by
exactly two reds, and every red by blue, red, blue in that order along it.  The
bichromatic crossings split it into alternating cycles; a maximum non-crossing
subset takes one color class from every cycle.  ``build_arrangement`` turns a grid
drawing of a cubic planar graph into such an arrangement whose maximum non-crossing
subsets with 6k reds correspond to independent sets of size k.
"""

from __future__ import annotations

import json
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import networkx as nx

from .errors import (ConstructionInvalid, Disconnected, ImproperCrossing, TooLarge,
                     WrongBlueDegree, WrongRedDegreeOrOrder, ArrangementError)
from .geometry import (Point, approx_sqrt, approx_unit, RationalPoint, cross, crossing_point, properly_cross,
                       segment_param, segments_touch)
from .graphs import GridDrawing
from .templates import arc_bounds, arc_of, endpoint_templates, GRID

RED, BLUE = "red", "blue"
CYCLE_CAP = 24
BRUTE_CAP = 20


@dataclass(frozen=True)
class ColoredSegment:
    id: int
    p: Point
    q: Point
    color: str

    @property
    def ends(self):
        return (self.p, self.q)

    def to_json(self):
        return {"x1": self.p[0], "y1": self.p[1], "x2": self.q[0], "y2": self.q[1], "color": self.color, "id": self.id}


def _coerce(segments) -> list:
    out = []
    for k, s in enumerate(segments):
        if isinstance(s, ColoredSegment):
            out.append(s)
        elif isinstance(s, dict):
            out.append(ColoredSegment(s.get("id", k), Point(s["x1"], s["y1"]), Point(s["x2"], s["y2"]), s["color"]))
        else:
            (p, q, c) = s
            out.append(ColoredSegment(k, Point(*p), Point(*q), c))
    return out


@dataclass
class Arrangement:
    segments: list
    crossings: dict  # id -> ids of crossing segments, ordered along the segment from p to q
    points: dict = field(default_factory=dict)  # frozenset({i, j}) -> RationalPoint
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.by_id = {s.id: s for s in self.segments}

    @property
    def reds(self):
        return [s.id for s in self.segments if s.color == RED]

    @property
    def blues(self):
        return [s.id for s in self.segments if s.color == BLUE]

    def crosses(self, i, j) -> bool:
        return frozenset((i, j)) in self.points

    def to_json(self):
        return [s.to_json() for s in self.segments]

    def max_coordinate(self) -> int:
        return max((max(abs(c) for c in s.p + s.q) for s in self.segments), default=0)


def arrangement_from_json(text_or_obj) -> Arrangement:
    obj = json.loads(text_or_obj) if isinstance(text_or_obj, str) else text_or_obj
    return validate_arrangement(obj)


def crossing_structure(segments):
    """Pairwise exact crossing computation; raises ImproperCrossing on any non-proper contact."""
    segs = _coerce(segments)
    points = {}
    along = defaultdict(list)
    for a in range(len(segs)):
        s = segs[a]
        for b in range(a + 1, len(segs)):
            t = segs[b]
            if not segments_touch(s.ends, t.ends):
                continue
            if not properly_cross(s.ends, t.ends):
                raise ImproperCrossing("segments %r and %r touch without crossing properly" % (s.id, t.id), "V1", (s.id, t.id))
            x = crossing_point(s.ends, t.ends)
            points[frozenset((s.id, t.id))] = x
            along[s.id].append((segment_param(x, s.p, s.q), t.id))
            along[t.id].append((segment_param(x, t.p, t.q), s.id))
    crossings = {}
    for s in segs:
        lst = sorted(along[s.id])
        for (u, i), (w, j) in zip(lst, lst[1:]):
            if u == w:
                raise ImproperCrossing("three segments meet at one point on %r" % s.id, "V1", (s.id, i, j))
        crossings[s.id] = [j for _, j in lst]
    return segs, crossings, points


def validate_arrangement(segments) -> Arrangement:
    """Check the four defining clauses, raising on the first violation.

    V1 proper crossings only, V2 blue crossed by exactly two reds, V3 red crossed
    blue-red-blue, V4 connected union.
    """
    segs, crossings, points = crossing_structure(segments)
    ids = [s.id for s in segs]
    if len(set(ids)) != len(ids):
        raise ArrangementError("duplicate segment ids", "V0", ())
    color = {s.id: s.color for s in segs}
    for s in segs:
        if s.color not in (RED, BLUE):
            raise ArrangementError("unknown color %r" % s.color, "V0", (s.id,))
    for s in segs:
        cs = crossings[s.id]
        if s.color == BLUE:
            if len(cs) != 2 or any(color[j] != RED for j in cs):
                raise WrongBlueDegree("blue %r crossed by %s" % (s.id, [(j, color[j]) for j in cs]), "V2", (s.id, *cs))
        else:
            pattern = [color[j] for j in cs]
            if pattern != [BLUE, RED, BLUE]:
                raise WrongRedDegreeOrOrder("red %r crossed in order %s" % (s.id, pattern), "V3", (s.id, *cs))
    g = nx.Graph()
    g.add_nodes_from(ids)
    g.add_edges_from(tuple(k) for k in points)
    if len(ids) > 0 and not nx.is_connected(g):
        comps = [sorted(c)[0] for c in nx.connected_components(g)]
        raise Disconnected("arrangement has %d components" % len(comps), "V4", comps)
    return Arrangement(segs, crossings, points)


def alternating_cycles(A: Arrangement) -> list:
    """Cycles of the red-blue crossing graph, each listed in cyclic order."""
    color = {s.id: s.color for s in A.segments}
    nbr = defaultdict(list)
    for key in A.points:
        i, j = tuple(key)
        if color[i] != color[j]:
            nbr[i].append(j)
            nbr[j].append(i)
    seen = set()
    cycles = []
    for s in sorted(color):
        if s in seen or s not in nbr:
            continue
        cyc = [s]
        seen.add(s)
        prev, cur = None, s
        while True:
            nxt = [x for x in nbr[cur] if x != prev]
            if not nxt:
                break
            step = min(nxt) if prev is None else nxt[0]
            if step == s:
                break
            if step in seen:
                break
            cyc.append(step)
            seen.add(step)
            prev, cur = cur, step
        cycles.append(cyc)
    return cycles


class MaxNoncrossing(NamedTuple):
    max_size: int
    total: int
    histogram: dict  # red count -> number of maximum subsets


def count_max_noncrossing(A: Arrangement, cap: int = CYCLE_CAP) -> MaxNoncrossing:
    """Enumerate the 2^c per-cycle color choices and keep those without red-red crossings."""
    cycles = alternating_cycles(A)
    if len(cycles) > cap:
        raise TooLarge("%d alternating cycles exceeds cap %d" % (len(cycles), cap))
    color = {s.id: s.color for s in A.segments}
    cyc_of = {}
    for k, c in enumerate(cycles):
        for s in c:
            cyc_of[s] = k
    reds = [[s for s in c if color[s] == RED] for c in cycles]
    # cycle pairs joined by a red-red crossing (a cycle may conflict with itself)
    conflict = [0] * len(cycles)
    for key in A.points:
        i, j = tuple(key)
        if color[i] == RED and color[j] == RED:
            a, b = cyc_of[i], cyc_of[j]
            conflict[a] |= 1 << b
            conflict[b] |= 1 << a
    n = len(A.reds)
    hist = Counter()
    for mask in range(1 << len(cycles)):
        if any((mask >> k) & 1 and conflict[k] & mask for k in range(len(cycles))):
            continue
        chosen = sum(len(reds[k]) for k in range(len(cycles)) if (mask >> k) & 1)
        size = sum(len(reds[k]) if (mask >> k) & 1 else len(cycles[k]) - len(reds[k]) for k in range(len(cycles)))
        assert size == n, "non-alternating cycle"
        hist[chosen] += 1
    return MaxNoncrossing(n, sum(hist.values()), dict(sorted(hist.items())))


class BruteNoncrossing(NamedTuple):
    max_size: int
    max_count: int
    total: int


def count_noncrossing_subsets_bruteforce(segments, cap: int = BRUTE_CAP) -> BruteNoncrossing:
    """Scan every subset of raw segments; independent of the cycle structure."""
    segs = _coerce(segments)
    m = len(segs)
    if m > cap:
        raise TooLarge("%d segments exceeds cap %d" % (m, cap))
    bad = [0] * m
    for a in range(m):
        for b in range(a + 1, m):
            if segments_touch(segs[a].ends, segs[b].ends):
                bad[a] |= 1 << b
                bad[b] |= 1 << a
    sizes = Counter()
    for s in range(1 << m):
        if all(not (s >> k) & 1 or not (bad[k] & s) for k in range(m)):
            sizes[bin(s).count("1")] += 1
    top = max(sizes)
    return BruteNoncrossing(top, sizes[top], sum(sizes.values()))


# ---------------------------------------------------------------- construction

_fsqrt = approx_sqrt
_unit = approx_unit


def _seg_dist2(p, a, b) -> Fraction:
    dx, dy = b[0] - a[0], b[1] - a[1]
    t = Fraction((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / (dx * dx + dy * dy)
    t = min(max(t, Fraction(0)), Fraction(1))
    x, y = a[0] + t * dx, a[1] + t * dy
    return (p[0] - x) ** 2 + (p[1] - y) ** 2


def _line_dist2(p, a, b) -> Fraction:
    dx, dy = b[0] - a[0], b[1] - a[1]
    c = cross(dx, dy, p[0] - a[0], p[1] - a[1])
    return Fraction(c * c) / (dx * dx + dy * dy)


@dataclass(frozen=True)
class GuideDisk:
    center: RationalPoint
    kind: str  # "edge" or "vertex"
    owner: tuple  # ("edge", v, u) for the disk 2/5 from v toward u; ("vertex", v, k) for wedge k of v


@dataclass
class DiskLayout:
    disks: dict  # owner -> GuideDisk
    rho: Fraction
    rotation: dict  # v -> neighbours in counterclockwise order
    halvings: int = 0


def _rotation(d: GridDrawing):
    rot = {}
    for v in range(d.graph.n):
        pv = d.pos[v]
        nb = list(d.graph.adj[v])
        nb.sort(key=lambda u: math.atan2(d.pos[u][1] - pv[1], d.pos[u][0] - pv[0]))
        rot[v] = nb
    return rot


def _wedge_bisector(e1, e2):
    """Unit-ish direction bisecting the counterclockwise wedge from e1 to e2."""
    u1, u2 = _unit(e1), _unit(e2)
    c = cross(e1[0], e1[1], e2[0], e2[1])
    if c == 0 and e1[0] * e2[0] + e1[1] * e2[1] < 0:
        b = (-u1[1], u1[0])
    else:
        b = (u1[0] + u2[0], u1[1] + u2[1])
        if c < 0:
            b = (-b[0], -b[1])
    return _unit(b)


def place_guide_disks(d: GridDrawing, extra_margin: int = 3) -> DiskLayout:
    """Two disks per edge at 2/5 and 3/5, three per vertex on the wedge bisectors.

    The common radius starts at a tenth of the smallest vertex clearance and is halved
    until every exact separation check passes.
    """
    g = d.graph
    pos = {v: Point(*d.pos[v]) for v in range(g.n)}
    edges = g.edges
    rot = _rotation(d)
    disks = {}
    clear = {}
    for v in range(g.n):
        cands = [Fraction((pos[v][0] - pos[u][0]) ** 2 + (pos[v][1] - pos[u][1]) ** 2) for u in range(g.n) if u != v]
        cands += [_seg_dist2(pos[v], pos[a], pos[b]) for a, b in edges if v not in (a, b)]
        clear[v] = _fsqrt(min(cands))
        nb = rot[v]
        for k in range(3):
            e1 = (pos[nb[k]][0] - pos[v][0], pos[nb[k]][1] - pos[v][1])
            u2 = nb[(k + 1) % 3]
            e2 = (pos[u2][0] - pos[v][0], pos[u2][1] - pos[v][1])
            bx, by = _wedge_bisector(e1, e2)
            r = clear[v] / 5
            c = RationalPoint(pos[v][0] + r * bx, pos[v][1] + r * by)
            disks[("vertex", v, k)] = GuideDisk(c, "vertex", ("vertex", v, k))
    for a, b in edges:
        for v, u in ((a, b), (b, a)):
            c = RationalPoint(pos[v][0] + Fraction(2, 5) * (pos[u][0] - pos[v][0]),
                              pos[v][1] + Fraction(2, 5) * (pos[u][1] - pos[v][1]))
            disks[("edge", v, u)] = GuideDisk(c, "edge", ("edge", v, u))

    def ok(rho):
        r2 = rho * rho
        dl = list(disks.values())
        for i in range(len(dl)):
            for j in range(i + 1, len(dl)):
                c1, c2 = dl[i].center, dl[j].center
                if (c1[0] - c2[0]) ** 2 + (c1[1] - c2[1]) ** 2 <= 4 * r2:
                    return False
        for D in dl:
            own = {D.owner[1], D.owner[2]} if D.kind == "edge" else set()
            for a, b in edges:
                if D.kind == "edge" and {a, b} == own:
                    continue
                if _seg_dist2(D.center, pos[a], pos[b]) <= r2:
                    return False
            for v in range(g.n):
                if (D.center[0] - pos[v][0]) ** 2 + (D.center[1] - pos[v][1]) ** 2 <= r2:
                    return False
        for v in range(g.n):
            nb = rot[v]
            for k in range(3):
                c = disks[("vertex", v, k)].center
                for u in (nb[k], nb[(k + 1) % 3]):
                    if _line_dist2(c, pos[v], pos[u]) <= extra_margin ** 2 * r2:
                        return False
        # no line stabs both disks of an edge and a wedge disk next to that edge
        for a, b in edges:
            c1, c2 = disks[("edge", a, b)].center, disks[("edge", b, a)].center
            for v, u in ((a, b), (b, a)):
                k = rot[v].index(u)
                for w in (k, (k - 1) % 3):
                    c3 = disks[("vertex", v, w)].center
                    ar = (c2[0] - c1[0]) * (c3[1] - c1[1]) - (c2[1] - c1[1]) * (c3[0] - c1[0])
                    longest = max((c1[0] - c2[0]) ** 2 + (c1[1] - c2[1]) ** 2,
                                  (c1[0] - c3[0]) ** 2 + (c1[1] - c3[1]) ** 2,
                                  (c3[0] - c2[0]) ** 2 + (c3[1] - c2[1]) ** 2)
                    if ar * ar <= extra_margin ** 2 * r2 * longest:
                        return False
        return True

    rho = min(clear.values()) / 10
    halvings = 0
    while not ok(rho):
        rho /= 2
        halvings += 1
        if halvings > 200:
            raise ConstructionInvalid("no admissible disk radius found", "rho", ())
    return DiskLayout(disks, rho, rot, halvings)


def _in_widened_arc(d, arc) -> bool:
    lo, hi = arc_bounds(arc)
    return cross(lo[0], lo[1], d[0], d[1]) > 0 and cross(d[0], d[1], hi[0], hi[1]) > 0


def _red_plan(layout: DiskLayout, g):
    """Reds as (vertex, disk_from, disk_to); disk lists of (ray targets) per disk."""
    reds = []
    rot = layout.rotation
    for v in range(g.n):
        nb = rot[v]
        for k in range(3):
            u = nb[k]
            far = ("edge", u, v)  # 3/5 of the way from v, i.e. 2/5 from u
            reds.append((v, ("vertex", v, k), far))  # counterclockwise side of v->u
            reds.append((v, ("vertex", v, (k - 1) % 3), far))  # clockwise side
    return reds


def build_arrangement(d: GridDrawing, max_doublings: int = 20) -> Arrangement:
    """Red-blue arrangement with one 12-segment alternating cycle per vertex.

    Each vertex owns six reds (one per side of each incident edge, running from a
    wedge disk to the edge disk nearer the neighbour) and six blues (one in each of
    its wedge disks and one in each far edge disk).  The result is validated; any
    failure raises ConstructionInvalid.
    """
    layout = place_guide_disks(d)
    g = d.graph
    reds = _red_plan(layout, g)
    rays = defaultdict(list)  # disk -> [(red index, target disk)]
    for idx, (v, a, b) in enumerate(reds):
        rays[a].append((idx, b))
        rays[b].append((idx, a))
    for key, lst in rays.items():
        assert len(lst) == 2, key
    scale = math.ceil(Fraction(GRID) / layout.rho)
    for _ in range(max_doublings):
        built = _place(layout, reds, rays, scale)
        if built is not None:
            break
        scale *= 2
    else:
        raise ConstructionInvalid("template directions never stabilised", "templates", ())
    segs = []
    owner = {}
    for idx, (v, a, b) in enumerate(reds):
        p, q = built["red"][idx]
        segs.append(ColoredSegment(len(segs), p, q, RED))
        owner[segs[-1].id] = v
    for key in sorted(rays, key=repr):
        p, q = built["blue"][key]
        segs.append(ColoredSegment(len(segs), p, q, BLUE))
        owner[segs[-1].id] = key[1]
    try:
        A = validate_arrangement(segs)
    except ArrangementError as e:
        raise ConstructionInvalid("built arrangement invalid: %s" % e, e.clause, e.witnesses) from e
    A.meta.update({"scale": scale, "rho": str(layout.rho), "halvings": layout.halvings,
                   "vertex_of": owner, "max_coordinate": A.max_coordinate()})
    return A


def _place(layout, reds, rays, scale):
    """Instantiate the templates at the given scale; None if a ray left its arc."""
    start = {}
    blue = {}
    for key, lst in rays.items():
        c = layout.disks[key].center
        cs = (c[0] * scale, c[1] * scale)
        ox, oy = math.floor(cs[0]) - 3, math.floor(cs[1]) - 3
        r2 = (layout.rho * scale) ** 2
        for gx in (ox, ox + GRID - 1):
            for gy in (oy, oy + GRID - 1):
                if (gx - cs[0]) ** 2 + (gy - cs[1]) ** 2 >= r2:
                    return None
        dirs = []
        for idx, target in lst:
            t = layout.disks[target].center
            dirs.append((t[0] - c[0], t[1] - c[1]))
        tpl, swapped = endpoint_templates(dirs[0], dirs[1], (ox, oy))
        p_first, p_second = (tpl.p2, tpl.p1) if swapped else (tpl.p1, tpl.p2)
        start[(key, lst[0][0])] = (Point(*p_first), dirs[0])
        start[(key, lst[1][0])] = (Point(*p_second), dirs[1])
        blue[key] = (Point(*tpl.b1), Point(*tpl.b2), tpl.family, swapped)
    red = {}
    for idx, (v, a, b) in enumerate(reds):
        p, da = start[(a, idx)]
        q, db = start[(b, idx)]
        fwd = (q[0] - p[0], q[1] - p[1])
        back = (-fwd[0], -fwd[1])
        if not _in_widened_arc(fwd, arc_of(da)) or not _in_widened_arc(back, arc_of(db)):
            return None
        red[idx] = (p, q)
    # the same-direction family needs the true ray order to match the nominal one
    for key, lst in rays.items():
        if blue[key][2] != "same":
            continue
        trues = []
        for idx, _ in lst:
            p, q = red[idx]
            trues.append((q[0] - p[0], q[1] - p[1]) if reds[idx][1] == key else (p[0] - q[0], p[1] - q[1]))
        c = cross(trues[0][0], trues[0][1], trues[1][0], trues[1][1])
        swapped = blue[key][3]
        if c == 0 or (c < 0) != swapped:
            return None
    return {"red": red, "blue": {k: (v[0], v[1]) for k, v in blue.items()}}
