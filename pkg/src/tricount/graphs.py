"""Cubic planar input graphs: validation, grid drawings and independent-set oracles."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

import networkx as nx

from .errors import NotConnected, NotCubic, NotPlanar, TooLarge, TricountError
from .geometry import Point, on_segment, properly_cross

BRUTE_FORCE_CAP = 24


@dataclass
class PlanarGraph3:
    n: int
    adj: list  # adj[v] = sorted neighbour list
    rotation: dict = field(default_factory=dict)

    @property
    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def to_json(self):
        return {"n": self.n, "edges": [list(e) for e in self.edges]}


@dataclass
class GridDrawing:
    graph: PlanarGraph3
    pos: dict  # vertex -> Point

    def segment(self, u, v):
        return (self.pos[u], self.pos[v])

    def side(self) -> int:
        xs = [p[0] for p in self.pos.values()]
        ys = [p[1] for p in self.pos.values()]
        return max(max(xs) - min(xs), max(ys) - min(ys))

    def to_json(self):
        return {"graph": self.graph.to_json(), "pos": [list(self.pos[v]) for v in range(self.graph.n)]}

    @classmethod
    def from_json(cls, obj):
        g = validate_graph(obj["graph"])
        return cls(g, {v: Point(*p) for v, p in enumerate(obj["pos"])})


def _as_networkx(g) -> nx.Graph:
    if isinstance(g, PlanarGraph3):
        return g.to_networkx()
    if isinstance(g, nx.Graph):
        return nx.convert_node_labels_to_integers(g, ordering="sorted")
    if isinstance(g, str):
        g = json.loads(g)
    out = nx.Graph()
    if isinstance(g, dict) and "edges" in g:
        out.add_nodes_from(range(int(g.get("n", 0))))
        out.add_edges_from(tuple(e) for e in g["edges"])
    elif isinstance(g, dict):
        for u, nbrs in g.items():
            out.add_node(int(u))
            out.add_edges_from((int(u), int(v)) for v in nbrs)
    else:
        for u, nbrs in enumerate(g):
            out.add_node(u)
            out.add_edges_from((u, int(v)) for v in nbrs)
    if sorted(out.nodes) != list(range(out.number_of_nodes())):
        raise TricountError("vertices must be labelled 0..n-1")
    return out


def validate_graph(g) -> PlanarGraph3:
    """Check the reduction's input preconditions: connected, 3-regular, planar.

    Accepts a networkx graph, an adjacency list, or the JSON form ``{"n": .., "edges": [[u, v], ...]}``.
    Bipartiteness is not required.
    """
    G = _as_networkx(g)
    if any(u == v for u, v in G.edges):
        raise NotCubic("self-loops are not allowed")
    bad = [v for v in G.nodes if G.degree(v) != 3]
    if bad or G.number_of_nodes() == 0:
        raise NotCubic("vertices without degree 3: %s" % bad[:10])
    if not nx.is_connected(G):
        raise NotConnected("graph has %d components" % nx.number_connected_components(G))
    planar, _ = nx.check_planarity(G)
    if not planar:
        raise NotPlanar("graph is not planar")
    adj = [sorted(G.neighbors(v)) for v in range(G.number_of_nodes())]
    return PlanarGraph3(G.number_of_nodes(), adj)


def check_drawing(d: GridDrawing) -> list:
    """Return a list of violations; empty when edges meet only at shared endpoints."""
    problems = []
    edges = d.graph.edges
    for v, p in d.pos.items():
        for (a, b) in edges:
            if v not in (a, b) and on_segment(p, d.pos[a], d.pos[b]):
                problems.append(("vertex-on-edge", v, (a, b)))
    for i, (a, b) in enumerate(edges):
        for (c, e) in edges[i + 1:]:
            if {a, b} & {c, e}:
                continue
            if properly_cross(d.segment(a, b), d.segment(c, e)):
                problems.append(("crossing", (a, b), (c, e)))
    if len(set(d.pos.values())) != d.graph.n:
        problems.append(("coincident-vertices",))
    return problems


def straight_line_draw(g: PlanarGraph3) -> GridDrawing:
    """Crossing-free straight-line drawing on the (2n-4) x (n-2) canonical-ordering grid."""
    G = g.to_networkx()
    planar, emb = nx.check_planarity(G)
    if not planar:
        raise NotPlanar("graph is not planar")
    pos = nx.combinatorial_embedding_to_pos(emb, fully_triangulate=False)
    d = GridDrawing(g, {v: Point(int(x), int(y)) for v, (x, y) in pos.items()})
    problems = check_drawing(d)
    if problems:
        raise TricountError("drawing invalid: %s" % problems[:3])
    return d


def _bitmasks(g: PlanarGraph3):
    return [sum(1 << u for u in g.adj[v]) for v in range(g.n)]


def independent_set_histogram(g: PlanarGraph3, cap: int = BRUTE_FORCE_CAP) -> dict:
    """Exact number of independent sets of each size, by exhaustive branching."""
    if g.n > cap:
        raise TooLarge("%d vertices exceeds brute-force cap %d" % (g.n, cap))
    nb = _bitmasks(g)
    hist = Counter()

    def rec(v, forbidden, size):
        if v == g.n:
            hist[size] += 1
            return
        rec(v + 1, forbidden, size)
        if not (forbidden >> v) & 1:
            rec(v + 1, forbidden | nb[v], size + 1)

    rec(0, 0, 0)
    return dict(sorted(hist.items()))


def count_independent_sets(g: PlanarGraph3, cap: int = BRUTE_FORCE_CAP) -> int:
    return sum(independent_set_histogram(g, cap).values())


def count_vertex_covers(g: PlanarGraph3, cap: int = 20) -> int:
    """Second, independent brute force: scan all 2^n subsets for ones touching every edge."""
    if g.n > cap:
        raise TooLarge("%d vertices exceeds brute-force cap %d" % (g.n, cap))
    edge_masks = [(1 << u) | (1 << v) for u, v in g.edges]
    return sum(1 for s in range(1 << g.n) if all(s & m for m in edge_masks))


# Small named fixtures used by tests, scripts and the CLI.
def k4() -> PlanarGraph3:
    return validate_graph(nx.complete_graph(4))


def prism() -> PlanarGraph3:
    return validate_graph(nx.circular_ladder_graph(3))


def cube() -> PlanarGraph3:
    return validate_graph(nx.hypercube_graph(3))


NAMED_GRAPHS = {"k4": k4, "prism": prism, "cube": cube}
