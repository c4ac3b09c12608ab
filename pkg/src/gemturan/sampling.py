"""Seeded random instances for property checks (numpy PCG64 streams)."""

from __future__ import annotations

import numpy as np

from .graph import Graph
from .spectral import PerronData, perron
from .transforms import RotationMove, rotation_candidates


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def random_connected_graph(rng: np.random.Generator, n: int, p: float | None = None) -> Graph:
    """Random recursive tree on n vertices plus each other pair with
    probability p (uniform in [0, 0.7] when not given)."""
    if p is None:
        p = float(rng.uniform(0.0, 0.7))
    edges = set()
    for v in range(1, n):
        edges.add((int(rng.integers(v)), v))
    for b in range(n):
        for a in range(b):
            if (a, b) not in edges and rng.random() < p:
                edges.add((a, b))
    return Graph.from_edges(n, sorted(edges))


def random_rotation(
    rng: np.random.Generator, max_n: int = 12, tol: float = 1e-12
) -> tuple[Graph, RotationMove, PerronData]:
    """A connected graph and a rotation v -> u with x_u >= x_v moving a
    random nonempty subset of N(v) minus N[u]."""
    while True:
        n = int(rng.integers(3, max_n + 1))
        g = random_connected_graph(rng, n)
        data = perron(g, tol)
        pairs = []
        for u in range(n):
            for v in range(n):
                if u != v and data.x[u] >= data.x[v] and rotation_candidates(g, u, v):
                    pairs.append((u, v))
        if not pairs:
            continue
        u, v = pairs[int(rng.integers(len(pairs)))]
        cand = rotation_candidates(g, u, v)
        k = int(rng.integers(1, len(cand) + 1))
        moved = rng.choice(cand, size=k, replace=False)
        return g, RotationMove(u, v, [int(w) for w in moved]), data


def star_shaped_instance(
    rng: np.random.Generator, max_leaves: int = 8, max_pendants: int = 3, max_w: int = 4
) -> tuple[Graph, int, int, list[int]]:
    """Hub 0 adjacent to a star centre 1, r common leaves of 0 and 1, t
    pendants at 0, and an independent set W whose members each attach to
    at least two leaves. Returns ``(g, hub, v, w_list)``."""
    r = int(rng.integers(2, max_leaves + 1))
    t = int(rng.integers(0, max_pendants + 1))
    c = int(rng.integers(1, max_w + 1))
    leaves = list(range(2, 2 + r))
    pend = list(range(2 + r, 2 + r + t))
    ws = list(range(2 + r + t, 2 + r + t + c))
    edges = [(0, 1)] + [(0, x) for x in leaves] + [(1, x) for x in leaves] + [(0, p) for p in pend]
    for w in ws:
        d = int(rng.integers(2, r + 1))
        for x in rng.choice(leaves, size=d, replace=False):
            edges.append((int(x), w))
    return Graph.from_edges(2 + r + t + c, edges), 0, 1, ws
