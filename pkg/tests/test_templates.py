import math

import pytest
from hypothesis import assume, given, strategies as st

from tricount.geometry import properly_cross
from tricount.templates import GRID, arc_bounds, arc_of, endpoint_templates, family_of, template_for_arcs


def test_arc_of_axes_and_diagonals():
    assert arc_of((1, 0)) == 0
    assert arc_of((1, 1)) == 1
    assert arc_of((0, 1)) == 2
    assert arc_of((-1, 0)) == 4
    assert arc_of((0, -1)) == 6
    assert arc_of((1, -1)) == 7
    with pytest.raises(ValueError):
        arc_of((0, 0))


def test_families():
    assert family_of(0, 0) == family_of(0, 1) == family_of(0, 7) == "same"
    assert family_of(0, 2) == family_of(3, 1) == "right"
    assert family_of(0, 4) == family_of(2, 5) == family_of(6, 3) == "opposite"


def test_arc_bounds_widen_each_arc():
    for i in range(8):
        lo, hi = arc_bounds(i)
        mid = (math.cos(math.radians(45 * i + 22.5)), math.sin(math.radians(45 * i + 22.5)))
        assert lo[0] * mid[1] - lo[1] * mid[0] > 0
        assert mid[0] * hi[1] - mid[1] * hi[0] > 0


def _ray_hits(p, d, a, b, reach=10 ** 4):
    return properly_cross((p, (p[0] + reach * d[0], p[1] + reach * d[1])), (a, b))


def _rays_disjoint(p1, d1, p2, d2, reach=10 ** 4):
    s1 = (p1, (p1[0] + reach * d1[0], p1[1] + reach * d1[1]))
    s2 = (p2, (p2[0] + reach * d2[0], p2[1] + reach * d2[1]))
    return not properly_cross(s1, s2)


direction = st.tuples(st.integers(-30, 30), st.integers(-30, 30)).filter(lambda v: v != (0, 0))


@given(direction, direction)
def test_templates_work_for_any_directions(d1, d2):
    assume(d1[0] * d2[1] - d1[1] * d2[0] != 0 or d1[0] * d2[0] + d1[1] * d2[1] < 0)
    t, swapped = endpoint_templates(d1, d2)
    r1, r2 = (d2, d1) if swapped else (d1, d2)
    for p in (t.p1, t.p2, t.b1, t.b2):
        assert 0 <= p[0] < GRID and 0 <= p[1] < GRID
    assert _ray_hits(t.p1, r1, t.b1, t.b2)
    assert _ray_hits(t.p2, r2, t.b1, t.b2)
    assert _rays_disjoint(t.p1, r1, t.p2, r2)


def test_every_arc_pair_has_a_template():
    for i in range(8):
        for j in range(8):
            if family_of(i, j) == "same" and (j - i) % 8 == 7:
                continue  # ordered by angle, so only (i, i+1) is needed
            t = template_for_arcs(i, j)
            assert t.p1 != t.p2
