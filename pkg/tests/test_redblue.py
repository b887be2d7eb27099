import pytest
from hypothesis import given, settings, strategies as st

from tricount.errors import Disconnected, ImproperCrossing, TooLarge, WrongBlueDegree, WrongRedDegreeOrOrder
from tricount.graphs import cube, independent_set_histogram, k4, prism, straight_line_draw
from tricount.redblue import (BLUE, RED, alternating_cycles, arrangement_from_json, build_arrangement,
                              count_max_noncrossing, count_noncrossing_subsets_bruteforce, place_guide_disks,
                              validate_arrangement)

X = [((0, 0), (8, 8), "red"), ((0, 8), (8, 0), "red"), ((0, 2), (8, 2), "blue"), ((0, 6), (8, 6), "blue")]


def shifted(segs, dx, dy):
    return [((p[0] + dx, p[1] + dy), (q[0] + dx, q[1] + dy), c) for p, q, c in segs]


def test_x_arrangement_valid():
    A = validate_arrangement(X)
    assert len(A.points) == 5
    assert A.crossings[0] == [2, 1, 3]


def test_clause_violations():
    with pytest.raises(WrongRedDegreeOrOrder):
        validate_arrangement(X[:3])
    with pytest.raises(Disconnected) as e:
        validate_arrangement(X + shifted(X, 100, 0))
    assert e.value.clause == "V4"
    with pytest.raises(ImproperCrossing):
        validate_arrangement(X + [((8, 8), (9, 20), "blue")])  # touches an endpoint
    with pytest.raises(WrongBlueDegree):
        validate_arrangement([((0, 4), (8, 4), "blue"), ((4, 0), (4, 8), "blue")])


def test_three_segments_through_one_point_rejected():
    with pytest.raises(ImproperCrossing):
        validate_arrangement(X + [((4, 0), (4, 8), "blue")])


def test_json_roundtrip():
    A = validate_arrangement(X)
    B = arrangement_from_json(A.to_json())
    assert [(s.p, s.q, s.color) for s in B.segments] == [(s.p, s.q, s.color) for s in A.segments]


def test_x_cycles_and_counts():
    A = validate_arrangement(X)
    cyc = alternating_cycles(A)
    assert len(cyc) == 1 and len(cyc[0]) == 4
    m = count_max_noncrossing(A)
    assert (m.max_size, m.total, m.histogram) == (2, 1, {0: 1})
    b = count_noncrossing_subsets_bruteforce(X)
    assert (b.max_size, b.max_count) == (2, 1)


def test_bruteforce_small_cases():
    b = count_noncrossing_subsets_bruteforce([((0, 0), (2, 2), "red"), ((0, 2), (2, 0), "blue")])
    assert (b.max_size, b.max_count) == (1, 2)
    star = [((0, 0), (4, 4), "red"), ((0, 4), (4, 0), "red"), ((1, -1), (3, 5), "red")]
    b = count_noncrossing_subsets_bruteforce(star)
    assert (b.max_size, b.max_count) == (1, 3)
    with pytest.raises(TooLarge):
        count_noncrossing_subsets_bruteforce(X * 6)


@pytest.fixture(scope="module", params=["k4", "prism", "cube"])
def built(request):
    g = {"k4": k4, "prism": prism, "cube": cube}[request.param]()
    return g, build_arrangement(straight_line_draw(g))


def test_built_counts_and_cycles(built):
    g, A = built
    assert len(A.reds) == len(A.blues) == 6 * g.n
    cyc = alternating_cycles(A)
    assert len(cyc) == g.n
    color = {s.id: s.color for s in A.segments}
    for c in cyc:
        assert len(c) == 12
        assert all(color[a] != color[b] for a, b in zip(c, c[1:] + c[:1]))
    # the six reds of a cycle all belong to one vertex, and each vertex gets one cycle
    owner = A.meta["vertex_of"]
    red_owners = [{owner[s] for s in c if color[s] == RED} for c in cyc]
    assert all(len(o) == 1 for o in red_owners)
    assert sorted(o.pop() for o in red_owners) == list(range(g.n))


def test_built_revalidates(built):
    _, A = built
    validate_arrangement([(s.p, s.q, s.color) for s in A.segments])


def test_parsimony(built):
    g, A = built
    m = count_max_noncrossing(A)
    hist = independent_set_histogram(g)
    assert m.max_size == len(A.reds)
    assert m.histogram == {6 * k: v for k, v in hist.items()}
    assert m.total == sum(hist.values())


def test_guide_disks(built):
    g, _ = built
    lay = place_guide_disks(straight_line_draw(g))
    kinds = [d.kind for d in lay.disks.values()]
    assert kinds.count("edge") == 2 * len(g.edges)
    assert len(kinds) - kinds.count("edge") == 3 * g.n
    assert lay.rho > 0


def test_arrangement_is_deterministic():
    a = build_arrangement(straight_line_draw(k4())).to_json()
    b = build_arrangement(straight_line_draw(k4())).to_json()
    assert a == b


@settings(max_examples=25, deadline=None)
@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 5))
def test_cycle_count_matches_bruteforce_on_shifted_copies(dx, dy, k):
    # scaled, shifted X-arrangements: the cycle enumeration agrees with the raw-subset scan
    segs = [((p[0] * k + dx, p[1] * k + dy), (q[0] * k + dx, q[1] * k + dy), c) for p, q, c in X]
    A = validate_arrangement(segs)
    m = count_max_noncrossing(A)
    b = count_noncrossing_subsets_bruteforce(segs)
    assert (m.max_size, m.total) == (b.max_size, b.max_count)
    assert {s.color for s in A.segments} == {RED, BLUE}
