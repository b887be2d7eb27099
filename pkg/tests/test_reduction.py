import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from tricount.counting import CountingConstants, count_simple, q_value
from tricount.errors import Ambiguous, InconsistentHistogram, NotCubic
from tricount.gadgets import Params, x_arrangement
from tricount.graphs import k4, prism
from tricount.reduction import (calibration_table, compute_constants, decode,
                                decode_independent_sets, encode, end_to_end_verify, forward, forward_arrangement,
                                is_noncrossing, recover_n, small_case, synthetic_instance, valid_r)


def test_valid_r():
    assert valid_r(4) == [2, 1, 0]
    assert valid_r(0) == [0]


def test_decode_roundtrip_fixed():
    c = CountingConstants(4, 2, 1, 3, 5 * 3 * 7 * 9 * 4 ** 8, 7)
    hist = {2: 17, 1: 256, 0: 3}
    N = encode(hist, c, residual=q_value(c, 0) - 1)
    d = decode(N, c)
    assert d.histogram == hist
    assert d.residual == q_value(c, 0) - 1
    assert d.total == 276


def test_decode_zero():
    c = CountingConstants(2, 1, 1, 1, 1, 1)
    d = decode(0, c)
    assert d.total == 0 and d.residual == 0 and set(d.histogram.values()) == {0}


def test_decode_needs_even_n():
    with pytest.raises(ValueError):
        decode(5, CountingConstants(3, 1, 1, 1, 1, 1))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_synthetic_roundtrip(seed):
    c, hist, residual = synthetic_instance(random.Random(seed))
    d = decode(encode(hist, c, residual), c)
    assert d.histogram == hist and d.residual == residual


def test_decode_to_json_is_strings():
    c = CountingConstants(2, 1, 1, 2, 3, 5)
    js = decode(10 ** 30, c).to_json()
    assert json.loads(json.dumps(js)) == js


def test_decode_independent_sets():
    assert decode_independent_sets({0: 1, 6: 4}) == {0: 1, 1: 4}
    assert decode_independent_sets({}) == {}
    with pytest.raises(InconsistentHistogram):
        decode_independent_sets({0: 1, 5: 2})


def test_small_case_counts():
    M, Q = small_case(k4(), force=True)
    assert M == 5 and count_simple(Q) == 5
    M, Q = small_case(x_arrangement(), nprime=10)
    assert M == 1 and count_simple(Q) == 1
    M, Q = small_case(prism(), force=True)
    assert M == 13 and count_simple(Q) == 13
    with pytest.raises(ValueError):
        small_case(k4())


def test_calibration_and_recover_n():
    # alpha and gamma large enough that the brackets of consecutive n do not overlap
    al = ga = 10 ** 12
    cs = {n: CountingConstants(n, 2, 1, al, 2 ** 26 * al * ga * 9, ga) for n in (2, 4, 6)}
    table = calibration_table(cs)
    for n, c in cs.items():
        N = encode({r: 1 for r in valid_r(n)}, c)
        assert recover_n(N, table) == n
    assert recover_n(12345, None, n_meta=8) == 8
    with pytest.raises(Ambiguous):
        recover_n(0, table)
    with pytest.raises(Ambiguous):
        recover_n(1, {})


def test_invalid_graph_rejected():
    import networkx as nx
    with pytest.raises(NotCubic):
        forward(nx.complete_graph(5))


def test_small_case_path_in_forward():
    B = forward(k4(), nprime=100)
    assert B.small_case and B.polygon is None
    assert B.report()["small_case"]


def test_test_mode_requires_a_at_least_b():
    with pytest.raises(ValueError):
        forward_arrangement(x_arrangement(), "test", 1, 2)


def test_sound_params_for_prism():
    B = forward(prism(), nprime=100)
    assert (B.params.a, B.params.b) == (3888, 72)


@pytest.fixture(scope="module")
def k4_bundle():
    return forward(k4(), "test", 3, 2, check_all=True)


def test_k4_forward(k4_bundle):
    B = k4_bundle
    assert B.n == 24
    assert B.polygon.report["visibility_checked"] is False or not B.polygon.report["P3"]
    assert B.constants.n == 24 and B.constants.alpha > 0 and B.constants.gamma > 0
    # every gadget and crossing of K4 gives the constants of the X-arrangement at the same (a, b)
    from tricount.gadgets import polygonize
    cx = compute_constants(polygonize(x_arrangement(), Params(3, 2)))
    assert (cx.alpha, cx.beta, cx.gamma) == (B.constants.alpha, B.constants.beta, B.constants.gamma)


def test_save_is_deterministic(k4_bundle, tmp_path):
    a = k4_bundle.save(tmp_path / "a")
    b = k4_bundle.save(tmp_path / "b")
    names = sorted(p.name for p in a.iterdir())
    assert names == ["arrangement.json", "constants.json", "drawing.json", "graph.json", "polygon.json",
                     "report.json"]
    for name in names:
        assert (a / name).read_text() == (b / name).read_text()


def test_active_sets_on_x():
    A = x_arrangement()
    # at a = 1 blue gadgets cannot be active, so use a = 2 to get a nonzero q
    rep = end_to_end_verify(A, Params(2, 1))
    assert rep["classified_total_matches"]
    assert rep["crossing_active_sets"] == 0
    assert rep["maximum_sets_match_q"]
    (m,) = rep["maximum_sets"]
    assert m["set"] == [2, 3] and int(m["count"]) > 0


def test_is_noncrossing():
    A = x_arrangement()
    assert is_noncrossing(A, [2, 3])
    assert not is_noncrossing(A, [0, 1])
    assert is_noncrossing(A, [])
