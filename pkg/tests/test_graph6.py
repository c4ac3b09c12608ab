import io
import itertools

import networkx as nx
import pytest
from hypothesis import given

import oracles as O
from gemturan import graph6
from gemturan.graph import Graph
from gemturan.graph6 import Graph6Error
from strategies import graphs


def test_known_strings():
    assert graph6.encode(Graph.empty(0)) == "?"
    assert graph6.encode(Graph.from_edges(2, [(0, 1)])) == "A_"
    k4 = Graph.from_edges(4, itertools.combinations(range(4), 2))
    assert graph6.encode(k4) == "C~"


@given(graphs(max_n=12))
def test_matches_networkx_encoder(g):
    want = nx.to_graph6_bytes(O.to_nx(g), header=False).decode().strip()
    assert graph6.encode(g) == want


@pytest.mark.parametrize("n", [62, 63, 64, 100, 128])
def test_long_form_round_trip(n):
    g = Graph.from_edges(n, [(i, (i * 7 + 3) % n) for i in range(n) if i != (i * 7 + 3) % n])
    s = graph6.encode(g)
    assert graph6.decode(s) == g
    assert graph6.encode(graph6.decode(s)) == s
    assert s.startswith("~") == (n >= 63)


def test_header_and_whitespace():
    assert graph6.decode(">>graph6<<A_\n") == Graph.from_edges(2, [(0, 1)])


@pytest.mark.parametrize("bad", ["", "A", "A~", "B\x01", "~??~"])
def test_rejects_malformed(bad):
    with pytest.raises(Graph6Error):
        graph6.decode(bad)


def test_rejects_nonzero_padding():
    # n=2 has one data bit; padding bits must be zero
    with pytest.raises(Graph6Error):
        graph6.decode("A`")


def test_stream_round_trip():
    gs = [Graph.from_edges(3, [(0, 1)]), Graph.from_edges(5, [(0, 4), (2, 3)])]
    buf = io.StringIO()
    assert graph6.write_stream(gs, buf) == 2
    assert list(graph6.read_stream(io.StringIO(buf.getvalue()))) == gs
