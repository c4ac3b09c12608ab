"""Compact simple graphs backed by per-vertex bitsets.

Rows are Python ints: bit ``j`` of ``rows[i]`` is set iff ``i ~ j``.
Orders up to 128 are supported, which is two machine words per row in
the compiled kernels.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_ORDER = 128


class GraphError(ValueError):
    """Raised for malformed graphs or invalid graph operations."""


def _bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def iter_bits(x: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``x`` in increasing order."""
    return _bits(x)


def bitset(vertices: Iterable[int]) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


def _rebuild(n: int, rows: tuple[int, ...]) -> Graph:
    return Graph._trusted(n, rows)


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``."""

    n: int
    rows: tuple[int, ...]

    __slots__ = ("n", "rows")

    def __post_init__(self) -> None:
        n, rows = self.n, self.rows
        if not 0 <= n <= MAX_ORDER:
            raise GraphError(f"order {n} outside 0..{MAX_ORDER}")
        if len(rows) != n:
            raise GraphError(f"expected {n} rows, got {len(rows)}")
        full = (1 << n) - 1
        for u, r in enumerate(rows):
            if r & ~full:
                raise GraphError(f"row {u} references a vertex >= {n}")
            if (r >> u) & 1:
                raise GraphError(f"loop at vertex {u}")
            for v in _bits(r):
                if not (rows[v] >> u) & 1:
                    raise GraphError(f"asymmetric adjacency {u}-{v}")

    def __reduce__(self):
        # frozen slots dataclasses do not pickle by default
        return (_rebuild, (self.n, self.rows))

    @classmethod
    def _trusted(cls, n: int, rows: tuple[int, ...]) -> Graph:
        # skips validation; callers guarantee symmetry and no loops
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "rows", rows)
        return g

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, (0,) * n)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if not 0 <= n <= MAX_ORDER:
            raise GraphError(f"order {n} outside 0..{MAX_ORDER}")
        rows = [0] * n
        for u, v in edges:
            # numpy integers would overflow in the shifts below
            u, v = operator.index(u), operator.index(v)
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for order {n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(n, tuple(rows))

    @classmethod
    def from_matrix(cls, a: Sequence[Sequence[int]]) -> Graph:
        n = len(a)
        rows = tuple(bitset(j for j in range(n) if a[i][j]) for i in range(n))
        return cls(n, rows)

    # -- basic queries -------------------------------------------------

    @property
    def m(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def __len__(self) -> int:
        return self.n

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def degree(self, u: int) -> int:
        return self.rows[u].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def neighbors(self, u: int) -> list[int]:
        return list(_bits(self.rows[u]))

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, r in enumerate(self.rows):
            for v in _bits(r >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def isolated(self) -> list[int]:
        return [u for u, r in enumerate(self.rows) if not r]

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.float64)
        for u, v in self.edges():
            a[u, v] = a[v, u] = 1.0
        return a

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- derived graphs ------------------------------------------------

    def with_edges(
        self,
        add: Iterable[tuple[int, int]] = (),
        remove: Iterable[tuple[int, int]] = (),
    ) -> Graph:
        """Return a copy with ``remove`` deleted and then ``add`` inserted.

        Endpoints in ``add`` may equal ``n`` or more; the graph grows to fit.
        """
        rows = list(self.rows)
        for u, v in remove:
            if not (rows[u] >> v) & 1:
                raise GraphError(f"cannot remove missing edge {u}-{v}")
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        for u, v in add:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            top = max(u, v)
            if top >= MAX_ORDER:
                raise GraphError(f"order would exceed {MAX_ORDER}")
            if top >= len(rows):
                rows.extend([0] * (top + 1 - len(rows)))
            if (rows[u] >> v) & 1:
                raise GraphError(f"edge {u}-{v} already present")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph._trusted(len(rows), tuple(rows))

    def add_vertices(self, k: int) -> Graph:
        if self.n + k > MAX_ORDER:
            raise GraphError(f"order would exceed {MAX_ORDER}")
        return Graph._trusted(self.n + k, self.rows + (0,) * k)

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Subgraph induced on ``vertices``, relabelled in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            r = 0
            for w in _bits(self.rows[v]):
                j = index.get(w)
                if j is not None:
                    r |= 1 << j
            rows.append(r)
        return Graph._trusted(len(vertices), tuple(rows))

    def relabel(self, order: Sequence[int]) -> Graph:
        """Graph where new vertex ``i`` is old vertex ``order[i]``."""
        if sorted(order) != list(range(self.n)):
            raise GraphError("relabel order must be a permutation")
        return self.induced(order)

    def remove_isolated(self) -> Graph:
        keep = [u for u, r in enumerate(self.rows) if r]
        if len(keep) == self.n:
            return self
        return self.induced(keep)

    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for s in range(self.n):
            if (seen >> s) & 1:
                continue
            comp = frontier = 1 << s
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.rows[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(list(_bits(comp)))
        return comps

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        comp = frontier = 1
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= self.rows[v]
            frontier = nxt & ~comp
            comp |= frontier
        return comp == (1 << self.n) - 1


def join(g: Graph, h: Graph) -> Graph:
    """Join: disjoint union plus every edge between ``g`` and ``h``.

    Vertices of ``g`` keep their labels; those of ``h`` are shifted by ``g.n``.
    """
    return _combine(g, h, cross=True)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    return _combine(g, h, cross=False)


def _combine(g: Graph, h: Graph, cross: bool) -> Graph:
    n = g.n + h.n
    if n > MAX_ORDER:
        raise GraphError(f"combined order {n} exceeds {MAX_ORDER}")
    hmask = ((1 << h.n) - 1) << g.n if cross else 0
    gmask = (1 << g.n) - 1 if cross else 0
    rows = tuple(r | hmask for r in g.rows) + tuple((r << g.n) | gmask for r in h.rows)
    return Graph._trusted(n, rows)
