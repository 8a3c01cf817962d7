import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _instances import GOLDEN_ROWS, er_graph
from simtruss import (SimplicialComplex, decompose, export_filtration, graph_trussness,
                      joist_stats, skeleton, truss_sizes)
from simtruss.analysis import FiltrationError, format_filtration, is_valid_filtration

complexes = st.lists(st.sets(st.integers(0, 8), min_size=1, max_size=5),
                     min_size=1, max_size=6).map(SimplicialComplex)


def test_filtration_triangle(triangle):
    filt = export_filtration(triangle, decompose(triangle))
    assert filt == [(0, (0,)), (0, (1,)), (0, (2,)), (0, (0, 1)), (0, (0, 2)), (0, (1, 2)),
                    (1, (0, 1, 2))]
    assert format_filtration(triangle, filt).splitlines()[-1] == "1\t0 1 2"


def test_filtration_gadget(gadget_complex):
    filt = export_filtration(gadget_complex, decompose(gadget_complex))
    assert len(filt) == 6 + len(GOLDEN_ROWS)
    assert is_valid_filtration(filt)
    assert filt[6:12] == [(0, e) for e in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]]
    assert filt[-1] == (2, (0, 1, 2, 3))


def test_filtration_empty():
    assert export_filtration(SimplicialComplex(), decompose(SimplicialComplex())) == []


def test_filtration_missing_edge_rejected(triangle):
    dec = decompose(triangle)
    del dec.tr[(0, 1)]
    with pytest.raises(FiltrationError):
        export_filtration(triangle, dec)


def test_invalid_filtration_detected():
    assert not is_valid_filtration([(0, (0,)), (0, (0, 1))])
    assert not is_valid_filtration([(1, (0,)), (0, (1,)), (0, (0, 1))])


@settings(max_examples=80, deadline=None)
@given(complexes)
def test_filtration_always_valid(K):
    filt = export_filtration(K, decompose(K))
    assert is_valid_filtration(filt)
    total = sum(1 for q in range(1, K.max_size + 1) for _ in K.faces(q))
    assert len(filt) == total


def test_stats(k5, gadget_complex, triangle):
    s = joist_stats(k5, decompose(k5))
    assert (s.total_joists, s.open_joists_pct, s.non_trivial_pct) == (10, 100.0, 100.0)
    assert s.open_triangles_pct == 100.0
    s = joist_stats(gadget_complex, decompose(gadget_complex))
    assert (s.total_joists, s.open_joists_pct, s.non_trivial_pct) == (7, 0.0, 0.0)
    s = joist_stats(triangle, decompose(triangle))
    assert (s.total_joists, s.open_joists) == (1, 0)


def test_stats_tsv(k5):
    header, row = joist_stats(k5, decompose(k5)).to_tsv().splitlines()
    cols = dict(zip(header.split("\t"), row.split("\t")))
    assert cols["total_joists"] == "10" and cols["open_joists_pct"] == "100"


def test_truss_sizes(gadget_complex, k5):
    assert truss_sizes(decompose(gadget_complex).tr) == {1: 14, 2: 6}
    assert truss_sizes(decompose(k5).tr) == {1: 10, 2: 10, 3: 10}
    assert truss_sizes({}) == {}


def test_graph_trussness_golden_rows(gadget_complex):
    g = graph_trussness(skeleton(gadget_complex))
    for s, _, _, tr_g in GOLDEN_ROWS:
        if tr_g is not None:
            assert g[tuple(sorted(s))] == tr_g


def test_graph_trussness_simple_cases(k5):
    assert set(graph_trussness(skeleton(k5)).values()) == {3}
    assert set(graph_trussness(nx.balanced_tree(2, 3)).values()) == {0}
    assert graph_trussness(nx.empty_graph(3)) == {}


@pytest.mark.parametrize("i", range(12))
def test_graph_trussness_matches_networkx(i):
    G = er_graph(i)
    g = graph_trussness(G)
    for k in range(0, max(g.values(), default=0) + 2):
        T = nx.k_truss(G, k + 2)
        assert {tuple(sorted(e)) for e in T.edges} == {e for e, t in g.items() if t >= k}
