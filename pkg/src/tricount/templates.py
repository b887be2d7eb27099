"""Endpoint placements inside one guide disk.

Two red rays leave a disk with given directions; we need integer start points for
both rays and a blue segment crossing both, all inside an 8x8 block of grid points.
Directions are classified into eight 45-degree arcs (split at the axes and the
diagonals).  For each ordered pair of arcs a placement is found by exhaustive search
over the block, subject to exact conditions that hold for *every* direction in the
arcs widened by about 8 degrees on each side.  Every condition is linear in the ray
direction, so checking the two widened arc boundaries suffices.

Families, by arc difference k = (arc2 - arc1) mod 8:

* ``same``      k in {0, 1, 7}: both rays within 45 degrees of a common direction.
  The ray that is counterclockwise of the other is started on its left.
* ``right``     k in {2, 6}: the rays are close to a right angle.
* ``opposite``  k in {3, 4, 5}: the rays point within 45 degrees of opposite directions.

For ``right`` and ``opposite`` disjointness is certified by a separating line; for
``same`` by the left-offset argument (start of the CCW ray lies strictly left of both
directions and the rays diverge).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

GRID = 8

# widened boundaries of arc 0 = [0, 45] degrees: about -8.1 and 53.1 degrees
_ARC0 = ((7, -1), (3, 4))


def _rot45(v, times):
    x, y = v
    for _ in range(times % 8):
        x, y = x - y, x + y
    return (x, y)


def arc_bounds(i):
    lo, hi = _ARC0
    return _rot45(lo, i), _rot45(hi, i)


def arc_of(d) -> int:
    """Index of the closed-open 45 degree arc [45i, 45i+45) containing direction d."""
    x, y = d
    if x == 0 and y == 0:
        raise ValueError("zero direction")
    if y == 0 and x < 0:
        return 4
    if y >= 0:
        if x > 0 and y < x:
            return 0
        if y >= x and x > 0:
            return 1
        if x <= 0 and y > -x:
            return 2
        return 3
    if x < 0 and -y < -x:
        return 4
    if -y >= -x and x < 0:
        return 5
    if x >= 0 and -y > x:
        return 6
    return 7


def family_of(i, j) -> str:
    k = (j - i) % 8
    if k in (0, 1, 7):
        return "same"
    if k in (2, 6):
        return "right"
    return "opposite"


@dataclass(frozen=True)
class Template:
    family: str
    p1: tuple  # start of ray 1
    p2: tuple  # start of ray 2
    b1: tuple  # blue endpoints
    b2: tuple

    def shifted(self, ox, oy):
        f = lambda p: (p[0] + ox, p[1] + oy)
        return Template(self.family, f(self.p1), f(self.p2), f(self.b1), f(self.b2))


_PTS = np.array([(x, y) for x in range(GRID) for y in range(GRID)], dtype=np.int64)
_PAIRS = np.array(list(combinations(range(GRID * GRID), 2)), dtype=np.int64)
_B1 = _PTS[_PAIRS[:, 0]]
_B2 = _PTS[_PAIRS[:, 1]]


def _cr(ax, ay, bx, by):
    return ax * by - ay * bx


@lru_cache(maxsize=None)
def _crossing_table(dir_x, dir_y):
    """bool[point, pair]: blue pair crosses the ray from point with direction d (ray interior, proper)."""
    out = np.zeros((len(_PTS), len(_PAIRS)), dtype=bool)
    bx, by = _B2[:, 0] - _B1[:, 0], _B2[:, 1] - _B1[:, 1]
    side_d = np.sign(_cr(bx, by, dir_x, dir_y))
    for k, (px, py) in enumerate(_PTS):
        s1 = np.sign(_cr(dir_x, dir_y, _B1[:, 0] - px, _B1[:, 1] - py))
        s2 = np.sign(_cr(dir_x, dir_y, _B2[:, 0] - px, _B2[:, 1] - py))
        sp = np.sign(_cr(bx, by, px - _B1[:, 0], py - _B1[:, 1]))
        out[k] = (s1 * s2 < 0) & (sp != 0) & (side_d == -sp)
    return out


def _robust_cross(bounds):
    t = None
    for d in bounds:
        c = _crossing_table(*d)
        t = c if t is None else (t & c)
    return t


def _normals():
    vs = set()
    for x in range(-4, 5):
        for y in range(-4, 5):
            if (x, y) != (0, 0) and np.gcd(x, y) == 1:
                vs.add((x, y))
    return sorted(vs)


@lru_cache(maxsize=None)
def template_for_arcs(i, j) -> Template:
    """Placement valid for all ray-1 directions in arc i and ray-2 directions in arc j (widened).

    For the ``same`` family the caller guarantees ray 2 is counterclockwise of ray 1.
    """
    fam = family_of(i, j)
    b1 = arc_bounds(i)
    b2 = arc_bounds(j)
    c1 = _robust_cross(b1)
    c2 = _robust_cross(b2)
    n = len(_PTS)
    best = None
    if fam == "same":
        k = (j - i) % 8
        lo = b1[0] if k != 7 else b2[0]
        hi = b2[1] if k != 7 else b1[1]
        sector = (lo, hi)
    normals = [nv for nv in _normals()
               if all(nv[0] * d[0] + nv[1] * d[1] > 0 for d in b1)
               and all(nv[0] * d[0] + nv[1] * d[1] < 0 for d in b2)]
    lengths = (_B2[:, 0] - _B1[:, 0]) ** 2 + (_B2[:, 1] - _B1[:, 1]) ** 2
    for a in range(n):
        pa = _PTS[a]
        for b in range(n):
            if a == b:
                continue
            pb = _PTS[b]
            v = (int(pb[0] - pa[0]), int(pb[1] - pa[1]))
            if fam == "same":
                ok = all(_cr(d[0], d[1], v[0], v[1]) > 0 for d in sector)
            else:
                ok = any(nv[0] * v[0] + nv[1] * v[1] < 0 for nv in normals)
            if not ok:
                continue
            good = c1[a] & c2[b]
            # blue endpoints must differ from the ray starts
            good &= ~((_PAIRS[:, 0] == a) | (_PAIRS[:, 1] == a) | (_PAIRS[:, 0] == b) | (_PAIRS[:, 1] == b))
            if not good.any():
                continue
            idx = np.nonzero(good)[0]
            m = idx[np.argmin(lengths[idx])]
            key = (int(lengths[m]), a, b, int(m))
            if best is None or key < best[0]:
                best = (key, a, b, int(m))
    if best is None:
        raise RuntimeError("no placement for arcs %d, %d" % (i, j))
    _, a, b, m = best
    P = lambda k: (int(_PTS[k][0]), int(_PTS[k][1]))
    return Template(fam, P(a), P(b), P(int(_PAIRS[m, 0])), P(int(_PAIRS[m, 1])))


def endpoint_templates(d1, d2, origin=(0, 0)):
    """Start points for two rays with directions d1, d2 and a blue segment crossing both.

    Returns ``(template, swapped)``; when ``swapped`` is true the template's ray 1 is
    the caller's ray 2 (needed for the ``same`` family, which is ordered by angle).
    """
    i, j = arc_of(d1), arc_of(d2)
    swapped = False
    if family_of(i, j) == "same":
        c = d1[0] * d2[1] - d1[1] * d2[0]
        if c < 0 or (c == 0 and (j - i) % 8 == 7):
            i, j, swapped = j, i, True
    t = template_for_arcs(i, j)
    return t.shifted(*origin), swapped
