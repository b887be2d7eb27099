import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from tricount.errors import NotConnected, NotCubic, NotPlanar, TooLarge
from tricount.graphs import (check_drawing, count_independent_sets, count_vertex_covers, cube, independent_set_histogram,
                             k4, prism, straight_line_draw, validate_graph)


def test_validate_accepts_fixtures():
    for g in (k4(), prism(), cube()):
        assert all(len(a) == 3 for a in g.adj)


def test_validate_json_form():
    g = validate_graph({"n": 4, "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]})
    assert g.n == 4


def test_validate_rejects():
    with pytest.raises(NotPlanar):
        validate_graph(nx.complete_bipartite_graph(3, 3))
    with pytest.raises(NotCubic):
        validate_graph(nx.complete_graph(5))
    with pytest.raises(NotCubic):
        validate_graph(nx.cycle_graph(5))
    with pytest.raises(NotConnected):
        validate_graph(nx.disjoint_union(nx.complete_graph(4), nx.complete_graph(4)))


def test_bipartite_not_required():
    validate_graph(k4().to_networkx())  # K4 has odd cycles


def test_known_independent_set_counts():
    assert independent_set_histogram(k4()) == {0: 1, 1: 4}
    assert independent_set_histogram(prism()) == {0: 1, 1: 6, 2: 6}
    assert count_independent_sets(cube()) == 35


@pytest.mark.parametrize("make", [k4, prism, cube])
def test_two_brute_forces_agree(make):
    # complements of independent sets are exactly the vertex covers
    g = make()
    assert count_independent_sets(g) == count_vertex_covers(g)


def test_caps():
    with pytest.raises(TooLarge):
        independent_set_histogram(cube(), cap=4)


@pytest.mark.parametrize("make", [k4, prism, cube])
def test_drawing_is_plane_and_small(make):
    g = make()
    d = straight_line_draw(g)
    assert check_drawing(d) == []
    assert d.side() <= 2 * g.n


@settings(max_examples=10, deadline=None)
@given(st.integers(3, 8))
def test_prism_family_drawings(k):
    g = validate_graph(nx.circular_ladder_graph(k))
    assert check_drawing(straight_line_draw(g)) == []
