"""End-to-end pipeline from a cubic planar graph to P_A, and the arithmetic decoder.

The decoder peels off maximum non-crossing subsets by number of red segments r,
largest r first: c_r = N' // q(n, r), N' = N' % q(n, r).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from .counting import (CountingConstants, HoleCountStats, alpha_beta, count_simple, count_with_holes,
                       lens_polygon, q_value)
from .errors import Ambiguous, InconsistentHistogram, InfeasibleSize
from .gadgets import (Params, PolygonA, choose_params, crossing_polygon, pi_S, polygonize)
from .graphs import GridDrawing, PlanarGraph3, straight_line_draw, validate_graph
from .redblue import RED, Arrangement, build_arrangement, count_max_noncrossing

NPRIME_DEFAULT = 4
CONSTANT_VERTEX_LIMIT = 400  # largest Pi_S for which alpha/beta are computed by the DP
MOBIUS_GADGET_LIMIT = 8  # 2^g hole-engine runs for active-set classification
HOLES_ENGINE_LIMIT = 60  # vertices of P_A counted exactly with count_with_holes


@dataclass
class ReductionBundle:
    graph: PlanarGraph3 | None
    drawing: GridDrawing | None
    arrangement: Arrangement
    params: Params
    mode: str
    polygon: PolygonA | None = None
    constants: CountingConstants | None = None
    small_case: bool = False
    notes: list = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.arrangement.reds)

    def report(self) -> dict:
        out = {"n": self.n, "mode": self.mode, "a": self.params.a, "b": self.params.b,
               "small_case": self.small_case, "notes": list(self.notes)}
        if self.polygon is not None:
            out["polygon"] = self.polygon.summary()
            out["properties"] = {k: (len(v) if isinstance(v, list) else v) for k, v in self.polygon.report.items()}
        if self.constants is not None:
            out["constants"] = self.constants.to_json()
        return out

    def save(self, directory) -> Path:
        """Write graph.json, drawing.json, arrangement.json, polygon.json, constants.json and report.json."""
        d = Path(directory)
        d.mkdir(parents=True, exist_ok=True)
        files = {"arrangement.json": self.arrangement.to_json(), "report.json": _jsonable(self.report())}
        if self.graph is not None:
            files["graph.json"] = self.graph.to_json()
        if self.drawing is not None:
            files["drawing.json"] = self.drawing.to_json()
        if self.polygon is not None:
            files["polygon.json"] = self.polygon.polygon.to_json()
        if self.constants is not None:
            files["constants.json"] = self.constants.to_json()
        for name, obj in files.items():
            (d / name).write_text(json.dumps(obj, sort_keys=True) + "\n")
        return d


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, str, float)) or x is None:
        return x
    if isinstance(x, int):
        return x if abs(x) < 2 ** 53 else str(x)
    return str(x)


def lens_ids(g, order=None) -> list:
    order = order if order is not None else g.pi_order()
    L = set(g.lens_vertices)
    return [i for i, p in enumerate(order) if p in L]


def compute_constants(PA: PolygonA, n: int | None = None, check_all: bool = False) -> CountingConstants:
    """alpha, beta, gamma from the built gadget polygons.

    With ``check_all`` every gadget and every red-red crossing is counted and the
    values must agree within each class.
    """
    A_reds = {sid for sid, g in PA.gadgets.items() if g.color == RED}
    n = n if n is not None else len(A_reds)
    vals = {"blue": set(), "red": set()}
    seen = set()
    for sid in sorted(PA.gadgets):
        g = PA.gadgets[sid]
        col = "red" if g.color == RED else "blue"
        if col in seen and not check_all:
            continue
        seen.add(col)
        Pi = pi_S(g)
        if len(Pi) > CONSTANT_VERTEX_LIMIT:
            raise InfeasibleSize("Pi_S has %d vertices; constants above %d are not computed"
                                 % (len(Pi), CONSTANT_VERTEX_LIMIT))
        vals[col].add(alpha_beta(Pi, lens_ids(g)))
    gam = set()
    for i, j in red_red_crossings_of(PA):
        gam.add(count_simple(crossing_polygon(PA, i, j)))
        if not check_all:
            break
    for name, v in (("alpha", vals["blue"]), ("beta", vals["red"]), ("gamma", gam)):
        if len(v) > 1:
            raise InconsistentHistogram("%s differs between gadgets: %s" % (name, sorted(v)))
    p = PA.params
    alpha = vals["blue"].pop() if vals["blue"] else 1
    beta = vals["red"].pop() if vals["red"] else 1
    gamma = gam.pop() if gam else 1
    return CountingConstants(n, p.a, p.b, alpha, beta, gamma)


def red_red_crossings_of(PA: PolygonA) -> list:
    reds = {sid for sid, g in PA.gadgets.items() if g.color == RED}
    out = set()
    for sid in reds:
        for other in PA.gadgets[sid].crossing_ids:
            if other in reds:
                out.add(tuple(sorted((sid, other))))
    return sorted(out)


def forward(G, mode: str = "sound", a: int | None = None, b: int | None = None,
            nprime: int = NPRIME_DEFAULT, constants: bool = True, check_all: bool = False) -> ReductionBundle:
    """Graph -> drawing -> arrangement -> P_A, plus alpha, beta, gamma.

    Below the small-case threshold (n < nprime) no polygon is built; see small_case.
    """
    g = validate_graph(G) if not isinstance(G, PlanarGraph3) else G
    d = straight_line_draw(g)
    A = build_arrangement(d)
    return forward_arrangement(A, mode, a, b, nprime, constants, check_all, graph=g, drawing=d)


def forward_arrangement(A: Arrangement, mode: str = "test", a: int | None = None, b: int | None = None,
                        nprime: int = NPRIME_DEFAULT, constants: bool = True, check_all: bool = False,
                        graph=None, drawing=None) -> ReductionBundle:
    n = len(A.reds)
    if mode == "test" and a is not None and b is not None and not (a >= b >= 1):
        raise ValueError("test mode needs a >= b >= 1")
    params = choose_params(n, mode, a, b)
    bundle = ReductionBundle(graph, drawing, A, params, mode)
    if n < nprime:
        bundle.small_case = True
        bundle.notes.append("n=%d below threshold %d: small-case path, no gadget polygon" % (n, nprime))
        return bundle
    bundle.polygon = polygonize(A, params)
    if constants:
        try:
            bundle.constants = compute_constants(bundle.polygon, n, check_all)
        except InfeasibleSize as e:
            bundle.notes.append("constants skipped: %s" % e)
    return bundle


# ---------------------------------------------------------------- decoding


@dataclass
class DecodeResult:
    histogram: dict  # r -> c_r, r descending from n/2
    total: int
    residual: int

    def to_json(self):
        return {"histogram": {str(r): str(c) for r, c in self.histogram.items()},
                "total": str(self.total), "residual": str(self.residual)}


def valid_r(n: int) -> list:
    return [r for r in range(n // 2, -1, -1) if (n - 2 * r) % 2 == 0]


def decode(N: int, c: CountingConstants) -> DecodeResult:
    if c.n % 2:
        raise ValueError("n must be even")
    rest = N
    hist = {}
    for r in valid_r(c.n):
        q = q_value(c, r)
        if q == 0:
            hist[r] = 0
            continue
        hist[r], rest = divmod(rest, q)
    return DecodeResult(hist, sum(hist.values()), rest)


def encode(hist: dict, c: CountingConstants, residual: int = 0) -> int:
    """Inverse of decode on its valid range: sum of c_r q(n, r) plus residual."""
    return sum(cr * q_value(c, r) for r, cr in hist.items()) + residual


def synthetic_instance(rng, n_max: int = 12) -> tuple:
    """Random (constants, histogram, residual) on which decoding must be exact.

    beta is scaled so that q(n, r) / q(n, r-1) >= 8 * 4^(2n), which leaves room for
    every c_r <= 2^(2n) plus a residual below q(n, 0).
    """
    n = 2 * rng.randint(1, n_max // 2)
    a, b = rng.randint(1, 8), rng.randint(1, 8)
    alpha, gamma = rng.randint(1, 60), rng.randint(1, 60)
    beta = rng.randint(1, 60) * alpha * gamma * (a + b) ** 2 * 4 ** (2 * n)
    c = CountingConstants(n, a, b, alpha, beta, gamma)
    hist = {r: rng.randint(0, 2 ** (2 * n)) for r in valid_r(n)}
    residual = rng.randrange(q_value(c, 0))
    return c, hist, residual


def decode_independent_sets(result) -> dict:
    """Map a histogram over red counts r = 6k to independent-set sizes k."""
    hist = result.histogram if isinstance(result, DecodeResult) else result
    bad = {r: v for r, v in hist.items() if r % 6 and v}
    if bad:
        raise InconsistentHistogram("nonzero counts at red totals not divisible by 6: %s" % bad)
    return {r // 6: v for r, v in sorted(hist.items()) if r % 6 == 0}


def small_case(G, nprime: int = NPRIME_DEFAULT, force: bool = False) -> tuple:
    """Count maximum non-crossing subsets directly and encode the count as a lens polygon."""
    A = G if isinstance(G, Arrangement) else build_arrangement(straight_line_draw(
        validate_graph(G) if not isinstance(G, PlanarGraph3) else G))
    n = len(A.reds)
    if n >= nprime and not force:
        raise ValueError("n=%d is not below the threshold %d" % (n, nprime))
    M = count_max_noncrossing(A).total
    return M, lens_polygon(M)


def calibration_table(constants_by_n: dict) -> dict:
    """Exact brackets [q(n,0), 2^(2n) q(n, n/2) + q(n,0)) of possible totals, per n.

    The lower end is the contribution of one maximum subset with no reds; the upper end
    allows every one of the at most 2^(2n) subsets at the largest q, plus non-maximum
    triangulations below q(n, 0).
    """
    out = {}
    for n, c in constants_by_n.items():
        lo = q_value(c, 0)
        hi = 2 ** (2 * n) * q_value(c, valid_r(n)[0]) + lo
        out[n] = (lo, hi)
    return out


def recover_n(N: int, table: dict | None = None, n_meta: int | None = None) -> int:
    if n_meta is not None:
        return n_meta
    if not table:
        raise Ambiguous("no calibration table")
    hits = [n for n, (lo, hi) in table.items() if lo <= N < hi]
    if len(hits) != 1:
        raise Ambiguous("count lies in %d brackets" % len(hits))
    return hits[0]


# ---------------------------------------------------------------- verification


def active_triangle_filter(PA: PolygonA, allowed_mask: int, order: list):
    """Triangle filter forbidding lens-to-lens triangles of gadgets outside the mask."""
    import numpy as np

    P = PA.polygon
    owner = np.full(len(P), -1, dtype=np.int64)
    for bit, sid in enumerate(order):
        if (allowed_mask >> bit) & 1:
            continue
        for p in PA.gadgets[sid].lens_vertices:
            owner[PA.index[p]] = bit

    def f(u, ks, v):
        ou, ov = owner[u], owner[v]
        if ou < 0 or ou != ov:
            return np.ones(len(ks), dtype=bool)
        return owner[ks] != ou

    return f


def active_set_counts(PA: PolygonA, order: list | None = None) -> dict:
    """Exact number of triangulations of P_A by active set, by Moebius inversion.

    F(m) counts triangulations whose lens-to-lens triangles all belong to gadgets in m,
    that is with active set contained in m; inverting over subsets gives the count with
    active set exactly m.  Keys are frozensets of segment ids.
    """
    order = order if order is not None else sorted(PA.gadgets)
    g = len(order)
    if g > MOBIUS_GADGET_LIMIT:
        raise InfeasibleSize("%d gadgets: 2^%d counting runs" % (g, g))
    F = [count_with_holes(PA.polygon, active_triangle_filter(PA, m, order)) for m in range(1 << g)]
    exact = list(F)
    for bit in range(g):
        for m in range(1 << g):
            if (m >> bit) & 1:
                exact[m] -= exact[m ^ (1 << bit)]
    return {frozenset(order[b] for b in range(g) if (m >> b) & 1): exact[m] for m in range(1 << g)}


def is_noncrossing(A: Arrangement, ids) -> bool:
    return not any(A.crosses(i, j) for i, j in combinations(sorted(ids), 2))


def end_to_end_verify(A: Arrangement, params: Params, classify: bool = True) -> dict:
    """Count P_A exactly, decode it, and classify triangulations by active set.

    Decoding is sound only for large a; in test mode the comparison is reported, not
    required.  The classification checks that active sets are non-crossing and that
    every maximum non-crossing subset occurs exactly q(n, r) times.
    """
    n = len(A.reds)
    PA = polygonize(A, params)
    c = compute_constants(PA, n, check_all=True)
    rep = {"n": n, "a": params.a, "b": params.b, "vertices": len(PA.polygon), "holes": len(PA.polygon.holes),
           "constants": c.to_json()}
    if len(PA.polygon) > HOLES_ENGINE_LIMIT:
        raise InfeasibleSize("P_A has %d vertices" % len(PA.polygon))
    st = HoleCountStats()
    N = count_with_holes(PA.polygon, stats=st)
    rep["total"] = str(N)
    rep["engine"] = "holes (%d diagonal combinations)" % st.combinations
    dec = decode(N, c)
    mx = count_max_noncrossing(A)
    rep["decoded"] = dec.to_json()
    rep["max_noncrossing"] = {"max_size": mx.max_size, "histogram": {str(k): v for k, v in mx.histogram.items()}}
    rep["decode_matches"] = all(dec.histogram.get(r, 0) == mx.histogram.get(r, 0) for r in valid_r(n))
    if not classify:
        return rep
    counts = active_set_counts(PA)
    rep["path"] = ("active-set classification by Moebius inversion over gadget subsets "
                   "(exact hole-engine counts with lens-to-lens triangles restricted)")
    rep["classified_total"] = str(sum(counts.values()))
    rep["classified_total_matches"] = sum(counts.values()) == N
    crossing = {k: v for k, v in counts.items() if v and not is_noncrossing(A, k)}
    rep["crossing_active_sets"] = len(crossing)
    maxsets = []
    ok = True
    for k, v in sorted(counts.items(), key=lambda kv: sorted(kv[0])):
        if len(k) != mx.max_size or not is_noncrossing(A, k):
            continue
        r = sum(1 for s in k if A.by_id[s].color == RED)
        q = q_value(c, r)
        maxsets.append({"set": sorted(k), "r": r, "count": str(v), "q": str(q), "match": v == q})
        ok &= v == q
    rep["maximum_sets"] = maxsets
    rep["maximum_sets_match_q"] = ok
    rep["by_active_set"] = {",".join(map(str, sorted(k))) or "-": str(v) for k, v in counts.items() if v}
    return rep
