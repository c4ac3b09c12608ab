"""Independent reference implementations used as test oracles.

Nothing here calls the package's canonical labelling, gem kernels, power
iteration or augmentation code: isomorphism goes through networkx,
spectra through numpy's dense eigensolver, subgraph search through
exhaustive injective maps.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict

import networkx as nx
import numpy as np


def to_nx(g) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def rho_dense(g) -> float:
    if g.n == 0:
        return 0.0
    a = np.zeros((g.n, g.n))
    for u, v in g.edges():
        a[u, v] = a[v, u] = 1.0
    return float(np.linalg.eigvalsh(a)[-1])


def brute_contains(n: int, edges, pattern_n: int, pattern_edges) -> bool:
    """Non-induced subgraph containment by trying injective maps vertex by
    vertex, abandoning a partial map as soon as a pattern edge is missing."""
    es = {frozenset(e) for e in edges}
    back = [[a for a, b in pattern_edges if b == v] + [b for a, b in pattern_edges if a == v] for v in range(pattern_n)]
    img: list[int] = []

    def go(i: int) -> bool:
        if i == pattern_n:
            return True
        for x in range(n):
            if x in img:
                continue
            if all(frozenset((img[j], x)) in es for j in back[i] if j < i):
                img.append(x)
                if go(i + 1):
                    return True
                img.pop()
        return False

    return go(0)


GEM_EDGES = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)]


def brute_has_gem(n: int, edges) -> bool:
    return brute_contains(n, edges, 5, GEM_EDGES)


def _connected_bits(n: int, adj: list[int]) -> bool:
    seen = 1
    todo = [0]
    while todo:
        v = todo.pop()
        new = adj[v] & ~seen
        seen |= new
        while new:
            low = new & -new
            todo.append(low.bit_length() - 1)
            new ^= low
    return seen == (1 << n) - 1


def labeled_count(n: int, m: int, gem_free: bool = True) -> int:
    """Connected labelled graphs on exactly vertex set {0..n-1} with m edges
    (no isolated vertices), optionally gem-free: brute force over edge sets."""
    pairs = list(itertools.combinations(range(n), 2))
    count = 0
    for es in itertools.combinations(pairs, m):
        adj = [0] * n
        for a, b in es:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        if not _connected_bits(n, adj):
            continue
        if gem_free and m >= 7 and max(x.bit_count() for x in adj) >= 4:
            if brute_has_gem(n, es):
                continue
        count += 1
    return count


def automorphism_count(h: nx.Graph) -> int:
    gm = nx.algorithms.isomorphism.GraphMatcher(h, h)
    return sum(1 for _ in gm.isomorphisms_iter())


def naive_classes(m: int, gem_free: bool = True) -> list[nx.Graph]:
    """Connected graphs with m edges up to isomorphism: grow every class by
    one edge in every possible way and deduplicate with networkx."""
    level = [nx.Graph([(0, 1)])]
    for _ in range(m - 1):
        buckets: dict[tuple, list[nx.Graph]] = defaultdict(list)
        out = []
        for h in level:
            n = h.number_of_nodes()
            cands = [(a, b) for a in range(n) for b in range(a + 1, n) if not h.has_edge(a, b)]
            cands += [(a, n) for a in range(n)]
            for a, b in cands:
                k = h.copy()
                k.add_edge(a, b)
                if gem_free and k.number_of_edges() >= 7:
                    edges = list(k.edges())
                    if brute_has_gem(k.number_of_nodes(), edges):
                        continue
                key = (
                    k.number_of_nodes(),
                    tuple(sorted(d for _, d in k.degree())),
                    sum(nx.triangles(k).values()),
                )
                if any(nx.is_isomorphic(k, o) for o in buckets[key]):
                    continue
                buckets[key].append(k)
                out.append(k)
        level = out
    return level


def all_labeled_graphs(n: int):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield [p for i, p in enumerate(pairs) if (mask >> i) & 1]


def snk_rho(n: int) -> float:
    return (1 + math.sqrt(8 * n - 15)) / 2


def brute_gem_through(n: int, edges, a: int, b: int) -> bool:
    """Is there a gem copy using edge ab? Checks every injective map."""
    es = {frozenset(e) for e in edges}
    target = frozenset((a, b))
    for img in itertools.permutations(range(n), 5):
        used = [frozenset((img[x], img[y])) for x, y in GEM_EDGES]
        if target in used and all(e in es for e in used):
            return True
    return False
