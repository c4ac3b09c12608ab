"""Named graph constructions.

Labelling convention: clique vertices first, then the independent set,
then pendant vertices. Pendants of ``SnkT`` hang off vertex 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb

from .graph import MAX_ORDER, Graph, GraphError


class FamilyKind(str, Enum):
    PATH = "Path"
    CYCLE = "Cycle"
    STAR = "Star"
    COMPLETE_BIPARTITE = "CompleteBipartite"
    COMPLETE = "Complete"
    SNK = "Snk"
    SNKT = "SnkT"
    SNK_MATCHING = "SnK"
    FAN = "Fan"
    SUBDIVIDED_K2T = "SubdividedK2t"
    JOIN_CLIQUE_EMPTY = "JoinCliqueEmpty"


# parameter names per kind, in positional order
PARAMS: dict[FamilyKind, tuple[str, ...]] = {
    FamilyKind.PATH: ("n",),
    FamilyKind.CYCLE: ("n",),
    FamilyKind.STAR: ("n",),
    FamilyKind.COMPLETE_BIPARTITE: ("n", "t"),
    FamilyKind.COMPLETE: ("n",),
    FamilyKind.SNK: ("n", "k"),
    FamilyKind.SNKT: ("n", "k", "t"),
    FamilyKind.SNK_MATCHING: ("n", "k"),
    FamilyKind.FAN: ("n",),
    FamilyKind.SUBDIVIDED_K2T: ("t",),
    FamilyKind.JOIN_CLIQUE_EMPTY: ("k", "q"),
}


@dataclass(frozen=True)
class FamilySpec:
    kind: FamilyKind
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", FamilyKind(self.kind))
        object.__setattr__(self, "params", tuple(int(p) for p in self.params))
        names = PARAMS[self.kind]
        if len(self.params) != len(names):
            raise GraphError(
                f"{self.kind.value} takes parameters ({', '.join(names)}), got {self.params}"
            )
        _check_domain(self)

    def __str__(self) -> str:
        return f"{self.kind.value}({','.join(map(str, self.params))})"

    @property
    def order(self) -> int:
        k, p = self.kind, self.params
        if k is FamilyKind.SUBDIVIDED_K2T:
            return p[0] + 3
        if k is FamilyKind.JOIN_CLIQUE_EMPTY:
            return p[0] + p[1]
        return p[0]

    @property
    def size(self) -> int:
        """Edge count, from the closed-form count for each kind."""
        k, p = self.kind, self.params
        if k is FamilyKind.PATH:
            return max(p[0] - 1, 0)
        if k is FamilyKind.CYCLE:
            return p[0]
        if k is FamilyKind.STAR:
            return p[0] - 1
        if k is FamilyKind.COMPLETE_BIPARTITE:
            return p[1] * (p[0] - p[1])
        if k is FamilyKind.COMPLETE:
            return comb(p[0], 2)
        if k is FamilyKind.SNK:
            n, kk = p
            return comb(kk, 2) + kk * (n - kk)
        if k is FamilyKind.SNKT:
            n, kk, t = p
            return comb(kk, 2) + kk * (n - t - kk) + t
        if k is FamilyKind.SNK_MATCHING:
            return p[0] - 1 + p[1]
        if k is FamilyKind.FAN:
            return 2 * p[0] - 3 if p[0] >= 2 else 0
        if k is FamilyKind.SUBDIVIDED_K2T:
            return 2 * p[0] + 1
        kk, q = p
        return comb(kk, 2) + kk * q


def _check_domain(spec: FamilySpec) -> None:
    k, p = spec.kind, spec.params

    def need(cond: bool, msg: str) -> None:
        if not cond:
            raise GraphError(f"{k.value}{p}: {msg}")

    if k is FamilyKind.PATH:
        need(p[0] >= 1, "requires n >= 1")
    elif k is FamilyKind.CYCLE:
        need(p[0] >= 3, "requires n >= 3")
    elif k is FamilyKind.STAR:
        need(p[0] >= 2, "requires n >= 2")
    elif k is FamilyKind.COMPLETE_BIPARTITE:
        need(1 <= p[1] <= p[0] - 1, "requires 1 <= t <= n - 1")
    elif k is FamilyKind.COMPLETE:
        need(p[0] >= 1, "requires n >= 1")
    elif k is FamilyKind.SNK:
        need(p[0] > p[1] >= 1, "requires n > k >= 1")
    elif k is FamilyKind.SNKT:
        n, kk, t = p
        need(kk >= 1, "requires k >= 1")
        need(t >= 0, "requires t >= 0")
        need(n - t > kk, "requires n - t > k")
    elif k is FamilyKind.SNK_MATCHING:
        need(p[0] >= 2, "requires n >= 2")
        need(p[1] >= 0, "requires k >= 0")
        need(2 * p[1] <= p[0] - 1, "requires 2k <= n - 1")
    elif k is FamilyKind.FAN:
        need(p[0] >= 2, "requires n >= 2")
    elif k is FamilyKind.SUBDIVIDED_K2T:
        need(p[0] >= 1, "requires t >= 1")
    elif k is FamilyKind.JOIN_CLIQUE_EMPTY:
        need(p[0] >= 0 and p[1] >= 0, "requires k, q >= 0")
        need(p[0] + p[1] >= 1, "requires k + q >= 1")


def _clique_plus_independent(k: int, q: int) -> list[tuple[int, int]]:
    edges = [(i, j) for i in range(k) for j in range(i + 1, k)]
    edges += [(i, j) for i in range(k) for j in range(k, k + q)]
    return edges


def build_family(spec: FamilySpec) -> Graph:
    """The labelled graph of ``spec``. Specs larger than the graph order cap
    are valid (their quotient matrices are still available) but cannot be
    built."""
    k, p = spec.kind, spec.params
    n = spec.order
    if n > MAX_ORDER:
        raise GraphError(f"{spec}: order {n} exceeds {MAX_ORDER}")
    if k is FamilyKind.PATH:
        edges = [(i, i + 1) for i in range(n - 1)]
    elif k is FamilyKind.CYCLE:
        edges = [(i, (i + 1) % n) for i in range(n)]
    elif k is FamilyKind.STAR:
        edges = [(0, i) for i in range(1, n)]
    elif k is FamilyKind.COMPLETE_BIPARTITE:
        t = p[1]
        edges = [(i, j) for i in range(t) for j in range(t, n)]
    elif k is FamilyKind.COMPLETE:
        edges = _clique_plus_independent(n, 0)
    elif k is FamilyKind.SNK:
        edges = _clique_plus_independent(p[1], n - p[1])
    elif k is FamilyKind.SNKT:
        _, kk, t = p
        base = n - t
        edges = _clique_plus_independent(kk, base - kk)
        edges += [(0, j) for j in range(base, n)]
    elif k is FamilyKind.SNK_MATCHING:
        edges = [(0, i) for i in range(1, n)]
        edges += [(2 * i + 1, 2 * i + 2) for i in range(p[1])]
    elif k is FamilyKind.FAN:
        edges = [(0, i) for i in range(1, n)]
        edges += [(i, i + 1) for i in range(1, n - 1)]
    elif k is FamilyKind.SUBDIVIDED_K2T:
        # K_{2,t} on {0,1} | {2..t+1}; edge 0-2 subdivided by vertex t+2
        t = p[0]
        edges = [(a, j) for a in (0, 1) for j in range(2, t + 2) if (a, j) != (0, 2)]
        edges += [(0, t + 2), (t + 2, 2)]
    else:
        edges = _clique_plus_independent(p[0], p[1])
    g = Graph.from_edges(n, edges)
    assert g.m == spec.size, (spec, g.m)
    return g


def family(kind: str | FamilyKind, *params: int) -> Graph:
    """Shorthand: ``family("Snk", 13, 2)``."""
    return build_family(FamilySpec(FamilyKind(kind), params))


def extremal_spec(m: int) -> FamilySpec:
    """``S_{(m+3)/2, 2}``, the gem-free maximizer for odd ``m``."""
    if m % 2 == 0 or m < 3:
        raise GraphError(f"S_((m+3)/2,2) needs odd m >= 3, got {m}")
    return FamilySpec(FamilyKind.SNK, ((m + 3) // 2, 2))


def pendant_spec(m: int, t: int) -> FamilySpec:
    """``S^t_{(m+t+3)/2, 2}``: m edges, t pendants at a clique vertex."""
    if (m + t) % 2 == 0 or t < 0:
        raise GraphError(f"m + t must be odd and t >= 0, got m={m}, t={t}")
    return FamilySpec(FamilyKind.SNKT, ((m + t + 3) // 2, 2, t))


def runner_up_spec(m: int) -> FamilySpec:
    return pendant_spec(m, 2)
