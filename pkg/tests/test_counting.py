import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from tricount.counting import (CountingConstants, HoleCountStats, alpha_beta, count, count_diagonal_sets, count_lens,
                               count_simple, count_with_holes, enumerate_bruteforce, lens_polygon,
                               lens_triangle_filter, q_value, triangles_of, two_lens_hull_count,
                               two_lens_hull_polygon)
from tricount.errors import BadR, TooLarge
from tricount.fixtures import hole_fixtures, polygon_with_holes, star_polygon
from tricount.gadgets import Params, crossing_polygon, pi_S, polygonize, red_red_crossings, x_arrangement
from tricount.geometry import PolygonWithHoles
from tricount.reduction import lens_ids


def convex(m):
    return PolygonWithHoles.simple([(round(1000 * math.cos(2 * math.pi * i / m)),
                                     round(1000 * math.sin(2 * math.pi * i / m))) for i in range(m)])


def catalan(k):
    return math.comb(2 * k, k) // (k + 1)


@pytest.mark.parametrize("m", range(3, 11))
def test_catalan(m):
    P = convex(m)
    assert count_simple(P) == enumerate_bruteforce(P) == count_diagonal_sets(P) == catalan(m - 2)


def test_listing_matches_count():
    P = convex(6)
    n, sets = enumerate_bruteforce(P, listing=True)
    assert n == len(sets) == 14
    assert all(len(triangles_of(P, d)) == 4 for d in sets)


@pytest.mark.parametrize("k", range(1, 21))
def test_lens_law(k):
    Q = lens_polygon(k)
    assert count_simple(Q) == k
    assert count_lens(Q) == k


@pytest.mark.parametrize("ell", [4, 6, 8, 10])
def test_two_lens_law(ell):
    P = two_lens_hull_polygon(ell)
    assert len(P) == ell
    assert count_simple(P) == two_lens_hull_count(ell) == enumerate_bruteforce(P)


def test_two_lens_rejects_odd():
    with pytest.raises(ValueError):
        two_lens_hull_count(5)


@pytest.fixture(scope="module")
def fixtures():
    return hole_fixtures()


def test_hole_engine_matches_oracles(fixtures):
    assert len(fixtures) >= 20
    for P in fixtures:
        assert len(P) <= 14 and 1 <= len(P.holes) <= 2
        st_ = HoleCountStats()
        got = count_with_holes(P, stats=st_)
        assert got == enumerate_bruteforce(P) == count_diagonal_sets(P)
        assert count(P) == got


def test_hole_engine_parallel_agrees(fixtures):
    for P in fixtures[:4]:
        assert count_with_holes(P, jobs=2) == count_with_holes(P)


def test_brute_cap():
    with pytest.raises(TooLarge):
        enumerate_bruteforce(convex(30))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(4, 11))
def test_simple_dp_matches_bruteforce(seed, n):
    P = PolygonWithHoles.simple(star_polygon(random.Random(seed), n, 30))
    assert count_simple(P) == enumerate_bruteforce(P)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(5, 8))
def test_holes_dp_matches_memo_oracle(seed, n):
    P = polygon_with_holes(random.Random(seed), n, (3,))
    assert count_with_holes(P) == count_diagonal_sets(P)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(5, 10))
def test_filtered_dp_matches_filtered_bruteforce(seed, n):
    # forbid triangles with all corners in a random vertex subset
    rng = random.Random(seed)
    P = PolygonWithHoles.simple(star_polygon(rng, n, 30))
    marked = set(rng.sample(range(n), rng.randint(3, n)))
    f = lens_triangle_filter(marked, n)
    want = enumerate_bruteforce(P, predicate=lambda tris: not any(set(t) <= marked for t in tris))
    assert count_simple(P, f) == want
    assert count_diagonal_sets(P, lambda a, b, c: {a, b, c} <= marked) == want


@pytest.fixture(scope="module")
def small_pa():
    return polygonize(x_arrangement(), Params(1, 1))


def test_alpha_beta_match_filtered_oracle(small_pa):
    for g in small_pa.gadgets.values():
        Pi = pi_S(g)
        ids = set(lens_ids(g))
        total = count_diagonal_sets(Pi)
        avoid = count_diagonal_sets(Pi, lambda a, b, c: {a, b, c} <= ids)
        assert alpha_beta(Pi, sorted(ids)) == total - avoid
        if g.color == "blue":
            # a one-vertex lens pair has too few corners for an all-lens triangle
            assert alpha_beta(Pi, sorted(ids)) == 0


def test_gamma_matches_bruteforce(small_pa):
    (i, j), = red_red_crossings(x_arrangement())
    C = crossing_polygon(small_pa, i, j)
    assert count_simple(C) == enumerate_bruteforce(C) == count_diagonal_sets(C)


def test_q_value():
    c = CountingConstants(n=0, a=3, b=2, alpha=5, beta=7, gamma=11)
    assert q_value(c, 0) == 1
    c = CountingConstants(n=2, a=3, b=2, alpha=5, beta=7, gamma=11)
    assert c.q(0) == 5 ** 2 * 11 * 5 ** 4
    assert c.q(1) == 5 * 7 * 9 * 25 * 8
    for r in (-1, 2):
        with pytest.raises(BadR):
            c.q(r)


def test_constants_json_roundtrip():
    c = CountingConstants(4, 48, 8, 10 ** 40, 3 ** 90, 1168)
    assert CountingConstants.from_json(c.to_json()) == c
    assert all(isinstance(v, str) for v in c.to_json().values())
