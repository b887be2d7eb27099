from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tricount.counting import count_simple, enumerate_bruteforce
from tricount.errors import GadgetDegenerate
from tricount.gadgets import (Params, audit_instance, choose_params, crossing_polygon, lens_Q, measure, pi_S,
                              polygonize, properties_ok, red_red_crossings, scale_formula, validate_properties,
                              x_arrangement)
from tricount.geometry import orient, visible


@pytest.fixture(scope="module")
def xpa():
    return polygonize(x_arrangement(), Params(3, 2))


def test_choose_params():
    assert choose_params(4) == Params(48, 8, 4)
    assert choose_params(36) == Params(3888, 72, 36)
    assert choose_params(4, "test", 1, 1) == Params(1, 1, 4)
    with pytest.raises(ValueError):
        choose_params(4, "test")
    with pytest.raises(ValueError):
        Params(0, 1)


def test_x_polygon_is_clean(xpa):
    rep = validate_properties(xpa, check_visibility=True)
    assert properties_ok(rep) and rep["visibility_checked"]
    assert len(xpa.polygon.holes) == 2
    # each crossing contributes four corners shared by two gadgets
    shared = 4 * len(x_arrangement().points)
    assert len(xpa.polygon) == sum(g.vertex_count() for g in xpa.gadgets.values()) - shared


def test_gadget_shapes(xpa):
    for g in xpa.gadgets.values():
        # reds cross two blues and the other red; blues cross both reds
        assert g.gaps == (3 if g.color == "red" else 2)
        assert len(g.left) == len(g.right) == 2 * g.gaps
        assert g.lens_size == (5 if g.color == "red" else 3)
        P = pi_S(g).validate()
        assert len(P) == 2 * g.lens_size + 4 * g.gaps


def test_lens_vertices_reflex_and_mutually_invisible(xpa):
    for g in xpa.gadgets.values():
        for side in ("a", "b"):
            Q = lens_Q(g, side)
            pts = Q.outer
            # the lens chain bends inward between its two end vertices
            for i in range(2, len(pts) - 2):
                assert orient(pts[i - 1], pts[i], pts[i + 1]) < 0
            assert count_simple(Q) == g.lens_size
        P = pi_S(g)
        k = g.lens_size
        for x in range(k):
            for y in range(x + 2, k):
                assert not visible(P, x, y)


def test_crossing_polygon_twelve_gon(xpa):
    (i, j), = red_red_crossings(x_arrangement())
    C = crossing_polygon(xpa, i, j)
    assert len(C) == 12
    assert count_simple(C) == enumerate_bruteforce(C)


def test_wide_tubes_break_separation():
    # tubes half as wide as the crossing spacing let gadgets see each other
    A = x_arrangement()
    p = Params(1, 1, 2)
    PA = audit_instance(A, p, scale_formula(measure(A), p) * 64, width_factor=Fraction(1, 2))
    assert PA.report["P3"]
    assert not properties_ok(PA.report)


def test_polygonize_records_attempts(xpa):
    assert xpa.attempts[-1] == (xpa.scale, "ok")
    assert all(s < xpa.scale for s, _ in xpa.attempts[:-1])


def test_doubling_budget_exhausted():
    with pytest.raises(GadgetDegenerate):
        polygonize(x_arrangement(), Params(3, 2), max_doublings=2)


@settings(max_examples=8, deadline=None)
@given(st.integers(1, 4), st.integers(1, 3))
def test_test_mode_instances_valid(a, b):
    PA = polygonize(x_arrangement(), Params(a, b))
    assert properties_ok(PA.report)
    for g in PA.gadgets.values():
        assert g.lens_size == (a + b if g.color == "red" else a)
