import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles as O
from gemturan.graph import MAX_ORDER, Graph, GraphError, bitset, disjoint_union, iter_bits, join
from strategies import graphs


def test_bits_helpers():
    assert list(iter_bits(0b101001)) == [0, 3, 5]
    assert bitset([0, 3, 5]) == 0b101001
    assert list(iter_bits(1 << 127)) == [127]


def test_from_edges_and_queries():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
    assert g.m == 4 and g.n == 4
    assert g.degrees() == [2, 2, 3, 1]
    assert g.neighbors(2) == [0, 1, 3]
    assert g.edges() == [(0, 1), (0, 2), (1, 2), (2, 3)]
    assert g.has_edge(3, 2) and not g.has_edge(0, 3)


@pytest.mark.parametrize(
    "n, edges",
    [(3, [(0, 0)]), (3, [(0, 3)]), (MAX_ORDER + 1, []), (-1, [])],
)
def test_from_edges_rejects(n, edges):
    with pytest.raises(GraphError):
        Graph.from_edges(n, edges)


def test_constructor_validates_rows():
    with pytest.raises(GraphError):
        Graph(2, (2, 0))  # asymmetric
    with pytest.raises(GraphError):
        Graph(2, (1, 2))  # loop at 0
    with pytest.raises(GraphError):
        Graph(1, (0, 0))


def test_with_edges_grows_and_checks():
    g = Graph.from_edges(2, [(0, 1)])
    h = g.with_edges(add=[(1, 3)])
    assert h.n == 4 and h.isolated() == [2]
    assert h.remove_isolated().n == 3
    with pytest.raises(GraphError):
        g.with_edges(remove=[(0, 2)] if False else [(1, 0), (0, 1)])
    with pytest.raises(GraphError):
        g.with_edges(add=[(0, 1)])


def test_join_and_union():
    k2 = Graph.from_edges(2, [(0, 1)])
    e3 = Graph.empty(3)
    s = join(k2, e3)
    assert s.m == 1 + 6 and s.degrees() == [4, 4, 2, 2, 2]
    u = disjoint_union(k2, k2)
    assert u.m == 2 and len(u.components()) == 2


def test_numpy_endpoints_do_not_overflow():
    import numpy as np

    g = Graph.from_edges(100, [(np.int64(1), np.int64(90))])
    assert g.has_edge(90, 1)


@given(graphs(max_n=10))
def test_components_match_networkx(g):
    import networkx as nx

    ours = sorted(sorted(c) for c in g.components())
    theirs = sorted(sorted(c) for c in nx.connected_components(O.to_nx(g)))
    assert ours == theirs
    assert g.is_connected() == (g.n == 0 or nx.is_connected(O.to_nx(g)))


@given(graphs(max_n=9), st.randoms())
def test_relabel_preserves_structure(g, rnd):
    order = list(range(g.n))
    rnd.shuffle(order)
    h = g.relabel(order)
    assert sorted(h.degrees()) == sorted(g.degrees())
    for i in range(g.n):
        for j in range(g.n):
            assert h.has_edge(i, j) == g.has_edge(order[i], order[j])


@given(graphs(max_n=9))
def test_matrix_round_trip(g):
    assert Graph.from_matrix(g.adjacency_matrix().astype(int).tolist()) == g


def test_pickle_round_trip():
    import pickle

    g = Graph.from_edges(5, [(0, 4), (1, 2)])
    assert pickle.loads(pickle.dumps(g)) == g
