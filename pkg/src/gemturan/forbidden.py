"""Forbidden-subgraph (non-induced) detection and neighbourhood classification."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from . import graph6, kernels
from .families import family
from .graph import Graph, GraphError, iter_bits

MAX_PATTERN_ORDER = 8

Edge = tuple[int, int]


@dataclass(frozen=True)
class ForbiddenSpec:
    pattern: Graph
    name: str = ""

    def __post_init__(self) -> None:
        if self.pattern.n > MAX_PATTERN_ORDER:
            raise GraphError(
                f"pattern order {self.pattern.n} exceeds {MAX_PATTERN_ORDER}"
            )
        if self.pattern.isolated():
            raise GraphError("pattern must not have isolated vertices")
        if not self.name:
            object.__setattr__(self, "name", "g6:" + graph6.encode(self.pattern))

    @property
    def is_gem(self) -> bool:
        # 5 vertices, 7 edges, degrees 4,3,3,2,2 pins down K_1 v P_4
        p = self.pattern
        return p.n == 5 and p.m == 7 and sorted(p.degrees()) == [2, 2, 3, 3, 4]

    @classmethod
    def parse(cls, text: str) -> ForbiddenSpec:
        """``gem`` or a graph6 string (optionally prefixed ``g6:``)."""
        if text.lower() in ("gem", "h5"):
            return GEM
        if text.startswith("g6:"):
            text = text[3:]
        return cls(graph6.decode(text))


GEM = ForbiddenSpec(family("Fan", 5), "gem")


# ----------------------------------------------------------------------
# gem fast path


def _gem_witness(g: Graph) -> list[int] | None:
    """Embedding of the gem as [hub, p1, p2, p3, p4] (path order), or None."""
    rows = g.rows
    for h in range(g.n):
        s = rows[h]
        if s.bit_count() < 4:
            continue
        for b in iter_bits(s):
            for c in iter_bits(rows[b] & s):
                if c < b:
                    continue
                a_set = rows[b] & s & ~(1 << c)
                d_set = rows[c] & s & ~(1 << b)
                for a in iter_bits(a_set):
                    rest = d_set & ~(1 << a)
                    if rest:
                        d = (rest & -rest).bit_length() - 1
                        return [h, a, b, c, d]
    return None


# ----------------------------------------------------------------------
# general backtracking


def _pattern_order(f: Graph) -> list[int]:
    """Highest degree first, then greedily stay connected to placed vertices."""
    deg = f.degrees()
    order: list[int] = []
    placed = 0
    remaining = set(range(f.n))
    while remaining:
        attached = [v for v in remaining if f.rows[v] & placed]
        pool = attached or list(remaining)
        v = max(pool, key=lambda x: ((f.rows[x] & placed).bit_count(), deg[x], -x))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def _embed(
    g: Graph,
    f: Graph,
    fixed: dict[int, int] | None = None,
) -> dict[int, int] | None:
    """Backtracking search for an injective map V(f) -> V(g) preserving edges."""
    fixed = fixed or {}
    gdeg = g.degrees()
    fdeg = f.degrees()
    order = [v for v in _pattern_order(f) if v not in fixed]
    full = (1 << g.n) - 1
    deg_ok = [0] * (max(fdeg, default=0) + 1)
    for d in range(len(deg_ok)):
        deg_ok[d] = sum(1 << v for v in range(g.n) if gdeg[v] >= d)
    mapping = dict(fixed)
    used = 0
    for p, v in fixed.items():
        if gdeg[v] < fdeg[p]:
            return None
        used |= 1 << v
    for p, v in fixed.items():
        for q in iter_bits(f.rows[p]):
            if q in fixed and not g.has_edge(v, fixed[q]):
                return None

    def candidates(p: int) -> int:
        cand = full & ~used & deg_ok[fdeg[p]]
        for q in iter_bits(f.rows[p]):
            w = mapping.get(q)
            if w is not None:
                cand &= g.rows[w]
        return cand

    def go(i: int) -> bool:
        nonlocal used
        if i == len(order):
            return True
        p = order[i]
        for v in iter_bits(candidates(p)):
            mapping[p] = v
            used |= 1 << v
            if go(i + 1):
                return True
            used &= ~(1 << v)
            del mapping[p]
        return False

    return mapping if go(0) else None


def contains_subgraph(
    g: Graph, f: ForbiddenSpec, witness: bool = False
) -> bool | tuple[bool, dict[int, int] | None]:
    """Does ``g`` contain ``f.pattern`` as a (not necessarily induced) subgraph?

    With ``witness=True`` returns ``(found, mapping)`` where ``mapping`` sends
    pattern vertices to vertices of ``g``.
    """
    p = f.pattern
    if f.is_gem:
        if not witness:
            return kernels.has_gem(g.n, g.rows)
        w = _gem_witness(g)
        if w is None:
            return False, None
        # match against the pattern's own hub/path labelling
        hub = max(range(5), key=lambda v: p.degree(v))
        path = _pattern_path(p, hub)
        mapping = {hub: w[0]}
        mapping.update(zip(path, w[1:]))
        return True, mapping
    if p.m > g.m or p.n > g.n:
        return (False, None) if witness else False
    mapping = _embed(g, p)
    if witness:
        return mapping is not None, mapping
    return mapping is not None


def _pattern_path(p: Graph, hub: int) -> list[int]:
    rest = [v for v in range(5) if v != hub]
    sub = p.induced(rest)
    start = next(i for i in range(4) if sub.degree(i) == 1)
    path = [start]
    while len(path) < 4:
        nxt = next(v for v in sub.neighbors(path[-1]) if v not in path)
        path.append(nxt)
    return [rest[i] for i in path]


def is_free(g: Graph, f: ForbiddenSpec = GEM) -> bool:
    return not contains_subgraph(g, f)


def _contains_through(g: Graph, f: ForbiddenSpec, edges: Sequence[Edge]) -> bool:
    """Does some copy of ``f`` in ``g`` use at least one of ``edges``?"""
    if f.is_gem:
        return any(kernels.gem_through_edge(g.n, g.rows, a, b) for a, b in edges)
    p = f.pattern
    for a, b in edges:
        for x, y in p.edges():
            for s, t in ((x, y), (y, x)):
                if _embed(g, p, {s: a, t: b}) is not None:
                    return True
    return False


def ffree_after_edit(
    g: Graph,
    f: ForbiddenSpec,
    added_edges: Iterable[Edge] = (),
    removed_edges: Iterable[Edge] = (),
    assume_free: bool = False,
) -> bool:
    """Is ``g - removed + added`` F-free?

    Copies of F avoiding every added edge already live in ``g - removed``;
    pass ``assume_free=True`` when the caller knows that graph is F-free, and
    only copies through an added edge are searched.
    """
    added = list(added_edges)
    removed = list(removed_edges)
    kept = g.with_edges(remove=removed) if removed else g
    if not assume_free and contains_subgraph(kept, f):
        return False
    if not added:
        return True
    edited = kept.with_edges(add=added)
    return not _contains_through(edited, f, added)


# ----------------------------------------------------------------------
# neighbourhood decomposition around a vertex


class ComponentKind(str, Enum):
    TRIANGLE = "Triangle"
    STAR = "Star"
    SINGLETON = "Singleton"
    OTHER = "Other"


@dataclass(frozen=True)
class Component:
    vertices: frozenset[int]
    kind: ComponentKind
    r: int = 0  # leaves of a star; 0 for a singleton (K_{1,0})

    def __str__(self) -> str:
        if self.kind is ComponentKind.STAR:
            return f"Star({self.r})"
        return self.kind.value


@dataclass(frozen=True)
class NeighborhoodDecomposition:
    hub: int
    n_zero: frozenset[int]
    n_plus: frozenset[int]
    w: frozenset[int]
    w_zero: frozenset[int]
    components: tuple[Component, ...] = field(default=())

    @property
    def has_other(self) -> bool:
        return any(c.kind is ComponentKind.OTHER for c in self.components)


def _classify(sub: Graph, verts: list[int]) -> tuple[ComponentKind, int]:
    k = len(verts)
    e = sum(sub.degree(v) for v in verts) // 2
    if k == 1:
        return ComponentKind.SINGLETON, 0
    if k == 3 and e == 3:
        return ComponentKind.TRIANGLE, 0
    if e == k - 1 and any(sub.degree(v) == k - 1 for v in verts):
        return ComponentKind.STAR, k - 1
    return ComponentKind.OTHER, 0


def classify_neighborhood(g: Graph, u: int) -> NeighborhoodDecomposition:
    """Split the graph around ``u`` into N_0(u), N_+(u), W and W_0 and label
    each component of G[N(u)] as a triangle, a star K_{1,r}, a singleton or
    something else."""
    nbrs = g.neighbors(u)
    sub = g.induced(nbrs)
    comps = []
    n_zero = set()
    for comp in sub.components():
        kind, r = _classify(sub, comp)
        vs = frozenset(nbrs[i] for i in comp)
        comps.append(Component(vs, kind, r))
        if kind is ComponentKind.SINGLETON:
            n_zero |= vs
    comps.sort(key=lambda c: (-len(c.vertices), min(c.vertices)))
    closed = g.rows[u] | (1 << u)
    w_mask = ((1 << g.n) - 1) & ~closed
    w_zero = 0
    for v in n_zero:
        w_zero |= g.rows[v] & w_mask
    return NeighborhoodDecomposition(
        hub=u,
        n_zero=frozenset(n_zero),
        n_plus=frozenset(nbrs) - n_zero,
        w=frozenset(iter_bits(w_mask)),
        w_zero=frozenset(iter_bits(w_zero)),
        components=tuple(comps),
    )
