"""Connectivity, cut vertices and block decomposition."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, iter_bits

Edge = tuple[int, int]


@dataclass(frozen=True)
class Block:
    edges: frozenset[Edge]
    vertices: frozenset[int]


@dataclass(frozen=True)
class Structure:
    is_connected: bool
    cut_vertices: frozenset[int]
    blocks: tuple[Block, ...]

    @property
    def end_blocks(self) -> tuple[Block, ...]:
        """Blocks containing at most one cut vertex."""
        return tuple(b for b in self.blocks if len(b.vertices & self.cut_vertices) <= 1)

    def blocks_of(self, v: int) -> list[Block]:
        return [b for b in self.blocks if v in b.vertices]


def structure(g: Graph) -> Structure:
    """Biconnected decomposition (iterative Hopcroft-Tarjan)."""
    n, rows = g.n, g.rows
    disc = [-1] * n
    low = [0] * n
    cuts: set[int] = set()
    blocks: list[Block] = []
    timer = 0
    for root in range(n):
        if disc[root] != -1 or not rows[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        edge_stack: list[Edge] = []
        # frame: (vertex, parent, remaining-neighbour bitset)
        stack = [(root, -1, rows[root])]
        while stack:
            v, parent, todo = stack[-1]
            if todo:
                w = (todo & -todo).bit_length() - 1
                stack[-1] = (v, parent, todo & (todo - 1))
                if disc[w] == -1:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, rows[w]))
                elif w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent != root:
                    cuts.add(parent)
                comp = []
                while True:
                    e = edge_stack.pop()
                    comp.append(e)
                    if e == (parent, v):
                        break
                es = frozenset((min(a, b), max(a, b)) for a, b in comp)
                blocks.append(Block(es, frozenset(x for e in es for x in e)))
        if root_children >= 2:
            cuts.add(root)
    return Structure(g.is_connected(), frozenset(cuts), tuple(blocks))


def cut_vertices(g: Graph) -> frozenset[int]:
    return structure(g).cut_vertices


def second_neighborhood(g: Graph, u: int) -> list[int]:
    """Vertices at distance exactly two from ``u``."""
    closed = g.rows[u] | (1 << u)
    reach = 0
    for v in iter_bits(g.rows[u]):
        reach |= g.rows[v]
    return list(iter_bits(reach & ~closed))
