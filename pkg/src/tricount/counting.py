"""Exact triangulation counting.

``count_simple`` is the interval dynamic program for simple polygons.
``count_with_holes`` reduces a polygon with h holes to simple (weakly simple)
polygons: in every triangulation each hole's lexicographically smallest vertex has
a diagonal to a lexicographically smaller vertex, necessarily on another boundary
component.  Summing over one such diagonal per hole, with earlier candidates of the
same hole forbidden, counts every triangulation exactly once, in O(n^(h+3)) time.
``enumerate_bruteforce`` is an independent oracle that backtracks over sets of
pairwise non-crossing diagonals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Optional

import numpy as np

from .errors import BadR, NotSimple, TooLarge
from .geometry import (PolygonWithHoles, angle_key, area2, convex_chain, cycle_is_simple, in_cone,
                       point_in_polygon, properly_cross, visibility_matrix, visible)

BRUTE_CAP = 24

# A triangle filter receives (u, ks, v) in original vertex ids, ks a numpy int array,
# and returns a boolean array saying which triangles (u, k, v) are allowed.
TriangleFilter = Callable[[int, np.ndarray, int], np.ndarray]


def _as_polygon(P) -> PolygonWithHoles:
    if isinstance(P, PolygonWithHoles):
        return P
    return PolygonWithHoles.simple(P)


def _orient_row(pts, i, ks, j):
    a, b = pts[i], pts[j]
    c = pts[ks]
    return (c[:, 0] - a[0]) * (b[1] - a[1]) - (c[:, 1] - a[1]) * (b[0] - a[0])


def _walk_dp(coords: list, ok: np.ndarray, vid: list, tri_filter: Optional[TriangleFilter]) -> int:
    """Interval DP over a (weakly) simple boundary walk.

    ``ok[p, q]`` says whether positions p, q may be joined (walk edges included);
    ``vid`` maps positions to original vertex ids for the filter.
    """
    M = len(coords)
    if M < 3:
        return 0
    mag = max(max(abs(x), abs(y)) for x, y in coords)
    use_np = mag < (1 << 29)
    pts = np.array(coords, dtype=np.int64) if use_np else None
    vids = np.array(vid, dtype=np.int64)
    T = [[0] * M for _ in range(M)]
    for i in range(M - 1):
        T[i][i + 1] = 1
    for gap in range(2, M):
        for i in range(0, M - gap):
            j = i + gap
            if not ok[i, j]:
                continue
            ks = np.arange(i + 1, j)
            mask = ok[i, i + 1:j] & ok[i + 1:j, j]
            if use_np:
                # walk is counterclockwise, so (i, k, j) must turn left
                mask &= _orient_row(pts, i, ks, j) > 0
            if tri_filter is not None and mask.any():
                mask &= tri_filter(vid[i], vids[ks], vid[j])
            total = 0
            for k in ks[mask]:
                k = int(k)
                if not use_np and area2(coords[i], coords[k], coords[j]) <= 0:
                    continue
                total += T[i][k] * T[k][j]
            T[i][j] = total
    return T[0][M - 1]


def count_simple(P, tri_filter: Optional[TriangleFilter] = None, check: bool = True) -> int:
    """Number of triangulations of a simple polygon (counterclockwise vertex order)."""
    P = _as_polygon(P)
    if P.holes:
        raise NotSimple("count_simple needs a polygon without holes")
    if check and not cycle_is_simple(P.outer):
        raise NotSimple("polygon is not simple")
    if check:
        P = P.normalized() if _area_sign(P.outer) < 0 else P
    vis = visibility_matrix(P)
    n = len(P)
    return _walk_dp(list(P.outer), vis, list(range(n)), tri_filter)


def _area_sign(c):
    from .geometry import signed_area2
    s = signed_area2(c)
    return (s > 0) - (s < 0)


# ---------------------------------------------------------------- holes


def _lex_smaller(p, q) -> bool:
    return (p[0], p[1]) < (q[0], q[1])


def left_candidates(P: PolygonWithHoles) -> list:
    """Per hole: (anchor vertex, candidate partners) with partners lexicographically smaller and visible."""
    V = P.vertices
    vis = visibility_matrix(P)
    out = []
    for lo, hi in P.cycle_ranges()[1:]:
        v = min(range(lo, hi), key=lambda i: (V[i][0], V[i][1]))
        cands = [w for w in range(len(V)) if vis[v, w] and _lex_smaller(V[w], V[v]) and not P.is_edge(v, w)]
        out.append((v, cands))
    return out


def cut_walk(P: PolygonWithHoles, diagonals) -> list:
    """Boundary walk (vertex ids) of P cut open along the given diagonals.

    At each vertex the walk leaves along the first edge clockwise from the one it
    arrived on, which keeps the interior on the left.
    """
    V = P.vertices
    nbrs = {i: [] for i in range(len(V))}
    for i, j in P.edges():
        nbrs[i].append(j)
        nbrs[j].append(i)
    for u, v in diagonals:
        nbrs[u].append(v)
        nbrs[v].append(u)
    order = {}
    for v, lst in nbrs.items():
        order[v] = sorted(set(lst), key=lambda w: angle_key((V[w][0] - V[v][0], V[w][1] - V[v][1])))
    start = (0, P.prev_next()[0][1])
    walk = [0]
    u, v = start
    limit = 2 * len(V) + 4 * len(diagonals) + 4
    while True:
        lst = order[v]
        k = lst.index(u)
        w = lst[(k - 1) % len(lst)]  # next clockwise from v->u
        if (v, w) == start:
            break
        walk.append(v)
        u, v = v, w
        if len(walk) > limit:
            raise NotSimple("cut walk does not close")
    return walk


def _walk_ok(P: PolygonWithHoles, walk: list, cuts: list, forbidden: set) -> np.ndarray:
    V = P.vertices
    vis = visibility_matrix(P)
    M = len(walk)
    W = [V[v] for v in walk]
    cutset = {frozenset(c) for c in cuts}
    ok = np.zeros((M, M), dtype=bool)
    for p in range(M):
        ok[p, (p + 1) % M] = ok[(p + 1) % M, p] = True
    vids = np.array(walk)
    for p in range(M):
        u = walk[p]
        cand = np.nonzero(vis[u, vids])[0]
        prv, nxt = W[p - 1], W[(p + 1) % M]
        for q in cand:
            q = int(q)
            if q <= p or ok[p, q]:
                continue
            v = walk[q]
            if u == v or P.is_edge(u, v):
                continue
            key = frozenset((u, v))
            if key in cutset or key in forbidden:
                continue
            if not in_cone(W[p], prv, nxt, W[q]) or not in_cone(W[q], W[q - 1], W[(q + 1) % M], W[p]):
                continue
            if any(properly_cross((W[p], W[q]), (V[a], V[b])) for a, b in cuts):
                continue
            ok[p, q] = ok[q, p] = True
    return ok


@dataclass
class HoleCountStats:
    combinations: int = 0
    compatible: int = 0
    walk_lengths: list = field(default_factory=list)


def _cut_combinations(P: PolygonWithHoles, cands):
    V = P.vertices
    for choice in product(*[range(len(c)) for _, c in cands]):
        cuts = [(cands[h][0], cands[h][1][c]) for h, c in enumerate(choice)]
        if any(properly_cross((V[a], V[b]), (V[c], V[d])) for x, (a, b) in enumerate(cuts) for (c, d) in cuts[x + 1:]):
            yield None
            continue
        forbidden = {frozenset((cands[h][0], w)) for h, c in enumerate(choice) for w in cands[h][1][:c]}
        yield cuts, forbidden


def _count_cut(P: PolygonWithHoles, cuts, forbidden, tri_filter=None) -> tuple:
    walk = cut_walk(P, cuts)
    ok = _walk_ok(P, walk, cuts, forbidden)
    V = P.vertices
    return _walk_dp([V[v] for v in walk], ok, walk, tri_filter), len(walk)


def _count_cut_job(args):
    obj, cuts, forbidden = args
    return _count_cut(PolygonWithHoles.from_json(obj), cuts, forbidden)


def count_with_holes(P: PolygonWithHoles, tri_filter: Optional[TriangleFilter] = None,
                     stats: Optional[HoleCountStats] = None, max_combinations: int = 10 ** 7,
                     jobs: int = 1) -> int:
    """Exact count for a polygon with holes by enumerating one left diagonal per hole.

    With ``jobs > 1`` (and no filter) the diagonal combinations are counted in worker processes.
    """
    if not P.holes:
        return count_simple(P, tri_filter, check=False)
    cands = left_candidates(P)
    combos = math.prod(len(c) for _, c in cands)
    if combos > max_combinations:
        raise TooLarge("%d diagonal combinations" % combos)
    stats = stats if stats is not None else HoleCountStats()
    work = []
    for item in _cut_combinations(P, cands):
        stats.combinations += 1
        if item is not None:
            work.append(item)
    stats.compatible += len(work)
    if jobs > 1 and tri_filter is None and len(work) > 1:
        from concurrent.futures import ProcessPoolExecutor
        obj = P.to_json()
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_count_cut_job, [(obj, c, f) for c, f in work], chunksize=4))
    else:
        results = [_count_cut(P, c, f, tri_filter) for c, f in work]
    for _, m in results:
        stats.walk_lengths.append(m)
    return sum(c for c, _ in results)


def count(P, tri_filter: Optional[TriangleFilter] = None) -> int:
    P = _as_polygon(P)
    if P.holes:
        return count_with_holes(P, tri_filter)
    return count_simple(P, tri_filter)


# ---------------------------------------------------------------- brute force


def candidate_diagonals(P: PolygonWithHoles) -> list:
    # the scalar predicate, not the vectorized matrix, so the oracle checks that too
    n = len(P)
    return [(i, j) for i in range(n) for j in range(i + 1, n) if not P.is_edge(i, j) and visible(P, i, j)]


def triangles_of(P: PolygonWithHoles, diagonals) -> list:
    """Faces of a triangulation given by its diagonals: empty 3-cycles lying inside P."""
    V = P.vertices
    n = len(V)
    adj = [set() for _ in range(n)]
    for i, j in P.edges():
        adj[i].add(j)
        adj[j].add(i)
    for i, j in diagonals:
        adj[i].add(j)
        adj[j].add(i)
    out = []
    for a in range(n):
        for b in adj[a]:
            if b <= a:
                continue
            for c in adj[a] & adj[b]:
                if c <= b:
                    continue
                tri = [V[a], V[b], V[c]]
                if area2(*tri) < 0:
                    tri = [V[a], V[c], V[b]]
                if any(point_in_polygon(V[k], tri) == 1 for k in range(n)):
                    continue
                cx3 = tri[0][0] + tri[1][0] + tri[2][0]
                cy3 = tri[0][1] + tri[1][1] + tri[2][1]
                inside = True
                for h in P.holes:
                    if point_in_polygon((cx3, cy3), [(3 * x, 3 * y) for x, y in h]) == 1:
                        inside = False
                if inside:
                    out.append((a, b, c))
    return out


def enumerate_bruteforce(P, listing: bool = False, predicate=None, cap: int = BRUTE_CAP):
    """Count maximal sets of pairwise non-crossing diagonals by backtracking.

    Every triangulation of a polygon with V vertices and h holes has exactly V + 3h - 3
    diagonals, so the search keeps only sets of that size.  ``predicate`` (a function of
    the triangle list) restricts which triangulations are counted.  With ``listing`` the
    diagonal sets are returned as well.
    """
    P = _as_polygon(P)
    n = len(P)
    if n > cap:
        raise TooLarge("%d vertices exceeds brute-force cap %d" % (n, cap))
    V = P.vertices
    D = candidate_diagonals(P)
    target = n + 3 * len(P.holes) - 3
    m = len(D)
    conflict = [0] * m
    for x in range(m):
        a, b = D[x]
        for y in range(x + 1, m):
            c, d = D[y]
            if properly_cross((V[a], V[b]), (V[c], V[d])):
                conflict[x] |= 1 << y
                conflict[y] |= 1 << x
    found = []
    count = 0

    def rec(allowed, chosen):
        nonlocal count
        need = target - len(chosen)
        if need == 0:
            if predicate is not None or listing:
                diags = [D[k] for k in chosen]
                if predicate is not None and not predicate(triangles_of(P, diags)):
                    return
                if listing:
                    found.append(diags)
            count += 1
            return
        if bin(allowed).count("1") < need:
            return
        # diagonals that conflict with nothing still allowed are in every completion
        forced = [k for k in _bits(allowed) if not (conflict[k] & allowed)]
        if forced:
            if len(forced) > need:
                return
            a2 = allowed
            for k in forced:
                a2 &= ~(1 << k)
            rec(a2, chosen + forced)
            return
        k = (allowed & -allowed).bit_length() - 1
        rec(allowed & ~(1 << k) & ~conflict[k], chosen + [k])
        rec(allowed & ~(1 << k), chosen)

    rec((1 << m) - 1, [])
    if listing:
        return count, found
    return count


def count_diagonal_sets(P, forbidden_triangle=None, cap: int = 40, memo_limit: int = 5 * 10 ** 6) -> int:
    """Count triangulations as maximum non-crossing diagonal sets, with memoized search.

    Independent of the interval DP: only crossing tests and emptiness of triangles are
    used.  ``forbidden_triangle(a, b, c)`` (vertex ids) excludes triangulations having
    that face.  An empty triangle inside P is a face exactly when its sides are all
    present, so a forbidden face with two diagonal sides becomes a pairwise conflict and
    one with a single diagonal side removes that diagonal.  Faces with three diagonal
    sides are checked on complete sets, which disables memoization.
    """
    P = _as_polygon(P)
    n = len(P)
    if n > cap:
        raise TooLarge("%d vertices exceeds cap %d" % (n, cap))
    V = P.vertices
    D = candidate_diagonals(P)
    pos = {frozenset(d): k for k, d in enumerate(D)}
    target = n + 3 * len(P.holes) - 3
    m = len(D)
    conflict = [0] * m
    for x in range(m):
        a, b = D[x]
        for y in range(x + 1, m):
            c, d = D[y]
            if properly_cross((V[a], V[b]), (V[c], V[d])):
                conflict[x] |= 1 << y
                conflict[y] |= 1 << x
    removed = 0
    triples = []
    if forbidden_triangle is not None:
        for a, b, c in _empty_triangles(P):
            if not forbidden_triangle(a, b, c):
                continue
            sides = [pos.get(frozenset(e)) for e in ((a, b), (b, c), (a, c))]
            diag = [s for s in sides if s is not None]
            if len(diag) == 1:
                removed |= 1 << diag[0]
            elif len(diag) == 2:
                x, y = diag
                conflict[x] |= 1 << y
                conflict[y] |= 1 << x
            else:
                triples.append((1 << diag[0]) | (1 << diag[1]) | (1 << diag[2]))
    memo = {} if not triples else None

    def rec(allowed, chosen, need):
        if need == 0:
            if triples and any(chosen & t == t for t in triples):
                return 0
            return 1
        if bin(allowed).count("1") < need:
            return 0
        if memo is not None:
            hit = memo.get((allowed, need))
            if hit is not None:
                return hit
        k = (allowed & -allowed).bit_length() - 1
        bit = 1 << k
        r = rec(allowed & ~bit & ~conflict[k], chosen | bit, need - 1) + rec(allowed & ~bit, chosen, need)
        if memo is not None and len(memo) < memo_limit:
            memo[(allowed, need)] = r
        return r

    return rec(((1 << m) - 1) & ~removed, 0, target)


def _empty_triangles(P: PolygonWithHoles):
    """Triangles on polygon vertices, with all sides edges or diagonals, lying inside P and empty."""
    V = P.vertices
    n = len(V)
    vis = visibility_matrix(P)
    for a in range(n):
        for b in range(a + 1, n):
            if not vis[a, b]:
                continue
            for c in range(b + 1, n):
                if not (vis[a, c] and vis[b, c]):
                    continue
                tri = [V[a], V[b], V[c]]
                s = area2(*tri)
                if s == 0:
                    continue
                if s < 0:
                    tri = [V[a], V[c], V[b]]
                if any(point_in_polygon(V[k], tri) == 1 for k in range(n)):
                    continue
                cx3 = sum(p[0] for p in tri)
                cy3 = sum(p[1] for p in tri)
                if point_in_polygon((cx3, cy3), [(3 * x, 3 * y) for x, y in P.outer]) != 1:
                    continue
                if any(point_in_polygon((cx3, cy3), [(3 * x, 3 * y) for x, y in h]) == 1 for h in P.holes):
                    continue
                yield a, b, c


def _bits(x):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


# ---------------------------------------------------------------- lens laws and constants


def lens_polygon(k: int) -> PolygonWithHoles:
    """A k-vertex reflex chain closed by one edge uv (the Q_L shape).

    The chain bulges toward uv, and u, v sit high enough above it that every chain
    vertex sees both of them while non-adjacent chain vertices see nothing of each other.
    """
    chain = convex_chain(k, -1).points
    W = max(p[0] for p in chain)
    H = max(p[1] for p in chain)
    smax = max((abs(b[1] - a[1]) for a, b in zip(chain, chain[1:])), default=0)
    lift = H + smax * (W + 4) + 2
    poly = [(W + 2, lift), (-2, lift)] + [tuple(p) for p in chain]
    return PolygonWithHoles.simple(poly).normalized()


def count_lens(Q: PolygonWithHoles, k: int | None = None) -> int:
    """Lens vertex count of a lens polygon, cross-checked against the DP."""
    lens_k = len(Q) - 2 if k is None else k
    c = count_simple(Q)
    if c != lens_k:
        raise AssertionError("lens polygon has %d triangulations, expected %d" % (c, lens_k))
    return lens_k


def two_lens_hull_count(ell: int) -> int:
    if ell < 4 or ell % 2:
        raise ValueError("ell must be even and at least 4")
    return math.comb(ell - 2, (ell - 2) // 2)


def two_lens_hull_polygon(ell: int) -> PolygonWithHoles:
    """Two facing reflex chains of ell/2 vertices each, joined by two short edges.

    Each chain vertex sees every vertex of the other chain and only its neighbours on
    its own chain, so every triangle has one chain edge and its apex on the other chain.
    """
    k = ell // 2
    lower = list(convex_chain(k, -1).points)
    W = max(p[0] for p in lower)
    H = max(p[1] for p in lower)
    smax = max((abs(b[1] - a[1]) for a, b in zip(lower, lower[1:])), default=0)
    G = 2 * (W * smax + H) + 2
    upper = [(W - x, G - y) for x, y in lower]  # point reflection, traversed right to left
    return PolygonWithHoles.simple([tuple(p) for p in lower] + upper).normalized()


def lens_triangle_filter(lens_ids, n: int) -> TriangleFilter:
    """Allow only triangles that do not have all three corners on lenses."""
    flag = np.zeros(n, dtype=bool)
    flag[list(lens_ids)] = True

    def f(u, ks, v):
        if not (flag[u] and flag[v]):
            return np.ones(len(ks), dtype=bool)
        return ~flag[ks]

    return f


def alpha_beta(Pi: PolygonWithHoles, lens_ids) -> int:
    """Triangulations of a gadget polygon having at least one triangle with three lens corners."""
    total = count_simple(Pi)
    avoid = count_simple(Pi, lens_triangle_filter(lens_ids, len(Pi)))
    return total - avoid


@dataclass
class CountingConstants:
    n: int
    a: int
    b: int
    alpha: int
    beta: int
    gamma: int

    def q(self, r: int) -> int:
        return q_value(self, r)

    def to_json(self):
        return {k: str(getattr(self, k)) for k in ("n", "a", "b", "alpha", "beta", "gamma")}

    @classmethod
    def from_json(cls, obj):
        return cls(*(int(obj[k]) for k in ("n", "a", "b", "alpha", "beta", "gamma")))


def q_value(c: CountingConstants, r: int) -> int:
    """alpha^(n-r) beta^r gamma^((n-2r)/2) a^(2r) (a+b)^(2(n-r)) 2^(3r)."""
    n = c.n
    if r < 0 or 2 * r > n or (n - 2 * r) % 2:
        raise BadR("r=%d is not valid for n=%d" % (r, n))
    return (c.alpha ** (n - r) * c.beta ** r * c.gamma ** ((n - 2 * r) // 2)
            * c.a ** (2 * r) * (c.a + c.b) ** (2 * (n - r)) * 2 ** (3 * r))
