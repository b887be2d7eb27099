"""SVG snapshots of arrangements, polygons and triangulations, for debugging."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .geometry import PolygonWithHoles
from .redblue import RED, Arrangement

SIZE = 800
PAD = 20


class _Frame:
    def __init__(self, pts, size=SIZE):
        xs = [float(p[0]) for p in pts] or [0.0]
        ys = [float(p[1]) for p in pts] or [0.0]
        self.x0, self.y1 = min(xs), max(ys)
        span = max(max(xs) - self.x0, self.y1 - min(ys), 1e-9)
        self.k = (size - 2 * PAD) / span
        self.size = size

    def __call__(self, p):
        # flip y so that counterclockwise stays counterclockwise on screen
        return PAD + (float(p[0]) - self.x0) * self.k, PAD + (self.y1 - float(p[1])) * self.k


def _doc(body, size=SIZE, title=""):
    t = "<title>%s</title>" % escape(title) if title else ""
    return ('<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d" viewBox="0 0 %d %d">%s\n%s\n</svg>\n'
            % (size, size, size, size, t, "\n".join(body)))


def render_arrangement(A: Arrangement, size: int = SIZE) -> str:
    pts = [p for s in A.segments for p in (s.p, s.q)]
    f = _Frame(pts, size)
    body = []
    for s in A.segments:
        (x1, y1), (x2, y2) = f(s.p), f(s.q)
        col = "#d62728" if s.color == RED else "#1f77b4"
        body.append('<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" stroke="%s" stroke-width="1.5"/>'
                    % (x1, y1, x2, y2, col))
    return _doc(body, size, "arrangement: %d segments" % len(A.segments))


def _path(f, cycle):
    return "M " + " L ".join("%.2f %.2f" % f(p) for p in cycle) + " Z"


def render_polygon(P: PolygonWithHoles, diagonals=(), size: int = SIZE) -> str:
    """Filled region (holes cut out by the even-odd rule), with optional diagonals by vertex index."""
    f = _Frame(P.vertices, size)
    d = " ".join(_path(f, c) for c in P.cycles)
    body = ['<path d="%s" fill="#f2e6c9" fill-rule="evenodd" stroke="black" stroke-width="0.8"/>' % d]
    V = P.vertices
    for i, j in diagonals:
        (x1, y1), (x2, y2) = f(V[i]), f(V[j])
        body.append('<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" stroke="#2ca02c" stroke-width="0.6"/>'
                    % (x1, y1, x2, y2))
    return _doc(body, size, "polygon: %d vertices, %d holes" % (len(P), len(P.holes)))
