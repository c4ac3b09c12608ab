import networkx as nx
from hypothesis import given, settings

import oracles as O
from gemturan.families import family
from gemturan.graph import Graph
from gemturan.structure import cut_vertices, second_neighborhood, structure
from strategies import graphs


@settings(max_examples=300)
@given(graphs(max_n=11))
def test_matches_networkx(g):
    h = O.to_nx(g)
    s = structure(g)
    assert s.cut_vertices == set(nx.articulation_points(h))
    ours = sorted(sorted(b.edges) for b in s.blocks)
    theirs = sorted(sorted(tuple(sorted(e)) for e in comp) for comp in nx.biconnected_component_edges(h))
    assert ours == theirs
    assert s.is_connected == (g.n == 0 or nx.is_connected(h))


def test_end_blocks():
    # two triangles sharing vertex 2, plus a pendant at 4
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5)])
    s = structure(g)
    assert cut_vertices(g) == {2, 4}
    ends = sorted(sorted(b.vertices) for b in s.end_blocks)
    assert ends == [[0, 1, 2], [4, 5]]
    assert len(s.blocks_of(2)) == 2


def test_second_neighborhood():
    g = family("Path", 5)
    assert second_neighborhood(g, 0) == [2]
    assert second_neighborhood(g, 2) == [0, 4]
    assert second_neighborhood(family("Snk", 8, 2), 0) == []


@settings(max_examples=200)
@given(graphs(min_n=1, max_n=10))
def test_second_neighborhood_matches_bfs(g):
    h = O.to_nx(g)
    dist = nx.single_source_shortest_path_length(h, 0)
    assert second_neighborhood(g, 0) == sorted(v for v, d in dist.items() if d == 2)
