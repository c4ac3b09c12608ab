"""Exhaustive generation of non-isomorphic F-free graphs with m edges.

Connected graphs are grown one edge at a time, either between existing
vertices or to a new pendant vertex. Every connected graph with k+1 edges
has an edge whose deletion leaves a connected graph with k edges (after
dropping an isolated endpoint), so the tree reaches every class. A child
is kept only when the new edge could be its canonical deletion edge and
the canonical deletion leads back to the parent, which makes each class
appear exactly once without a global table. F-freeness is closed under
edge deletion, so a child containing F is cut together with its subtree.
"""

from __future__ import annotations

import itertools
import multiprocessing as mp
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from . import kernels
from .canon import CanonicalForm, canonical_form
from .forbidden import GEM, ForbiddenSpec, _contains_through, contains_subgraph
from .graph import Graph, disjoint_union, iter_bits
from .records import ExtremalRecord
from .spectral import DEFAULT_MARGIN, DEFAULT_TOL, perron

DEFAULT_MAX_M = 16
SPLIT_DEPTH = 6


class ResourceGuardError(RuntimeError):
    pass


@dataclass
class EnumStats:
    candidates: int = 0
    forbidden_pruned: int = 0
    key_rejected: int = 0
    parent_rejected: int = 0
    nodes_per_level: dict[int, int] = field(default_factory=dict)

    def merge(self, other: EnumStats) -> None:
        self.candidates += other.candidates
        self.forbidden_pruned += other.forbidden_pruned
        self.key_rejected += other.key_rejected
        self.parent_rejected += other.parent_rejected
        for k, v in other.nodes_per_level.items():
            self.nodes_per_level[k] = self.nodes_per_level.get(k, 0) + v


def _canonical(n: int, rows: Sequence[int]) -> tuple[list[int], tuple[int, ...]]:
    order, cert = kernels.canon_label(n, rows)
    return list(order), tuple(cert)


def _connected(n: int, rows: Sequence[int]) -> bool:
    comp = frontier = 1
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= rows[v]
        frontier = nxt & ~comp
        comp |= frontier
    return comp == (1 << n) - 1


def _deletable(n: int, rows: list[int], x: int, y: int) -> bool:
    """Does removing x-y (and an isolated endpoint) keep the graph connected?"""
    if rows[x] & rows[y]:
        return True  # on a triangle
    if rows[x].bit_count() == 1 or rows[y].bit_count() == 1:
        return True
    rows[x] ^= 1 << y
    rows[y] ^= 1 << x
    ok = _connected(n, rows)
    rows[x] ^= 1 << y
    rows[y] ^= 1 << x
    return ok


def _edge_key(rows: Sequence[int], x: int, y: int) -> tuple[int, int, int]:
    dx, dy = rows[x].bit_count(), rows[y].bit_count()
    return (max(dx, dy), min(dx, dy), (rows[x] & rows[y]).bit_count())


def _delete(n: int, rows: Sequence[int], x: int, y: int) -> tuple[int, tuple[int, ...]]:
    r = list(rows)
    r[x] ^= 1 << y
    r[y] ^= 1 << x
    for z in (y, x) if y > x else (x, y):
        if not r[z]:
            # drop vertex z, shifting higher labels down
            low = (1 << z) - 1
            r = [(q & low) | ((q >> (z + 1)) << z) for q in r]
            del r[z]
            n -= 1
    return n, tuple(r)


def _children(g: Graph, f: ForbiddenSpec | None, stats: EnumStats) -> list[Graph]:
    """Accepted one-edge extensions of the canonical graph ``g``, sorted."""
    n, base = g.n, g.rows
    parent_cert = base
    kids: dict[tuple[int, ...], Graph] = {}
    refused: set[tuple[int, ...]] = set()
    cands = [(a, b) for b in range(n) for a in range(b) if not (base[a] >> b) & 1]
    cands += [(a, n) for a in range(n)]
    gem = f is not None and f.is_gem
    for a, b in cands:
        stats.candidates += 1
        nn = n + (b == n)
        rows = list(base) + [0] * (nn - n)
        rows[a] |= 1 << b
        rows[b] |= 1 << a
        if f is not None:
            if gem:
                if kernels.gem_through_edge(nn, rows, a, b):
                    stats.forbidden_pruned += 1
                    continue
            elif _contains_through(Graph._trusted(nn, tuple(rows)), f, [(a, b)]):
                stats.forbidden_pruned += 1
                continue
        key = _edge_key(rows, a, b)
        ties = []
        rejected = False
        for x in range(nn):
            for y in iter_bits(rows[x] >> (x + 1)):
                y += x + 1
                if (x, y) == (a, b):
                    continue
                k2 = _edge_key(rows, x, y)
                if k2 < key:
                    continue
                if not _deletable(nn, rows, x, y):
                    continue
                if k2 > key:
                    rejected = True
                    break
                ties.append((x, y))
            if rejected:
                break
        if rejected:
            stats.key_rejected += 1
            continue
        order, cert = _canonical(nn, rows)
        if cert in kids or cert in refused:
            continue
        if ties:
            pos = [0] * nn
            for i, v in enumerate(order):
                pos[v] = i
            best = max(ties + [(a, b)], key=lambda e: sorted((pos[e[0]], pos[e[1]]), reverse=True))
            if best != (a, b):
                dn, drows = _delete(nn, rows, *best)
                if _canonical(dn, drows)[1] != parent_cert:
                    stats.parent_rejected += 1
                    refused.add(cert)
                    continue
        kids[cert] = Graph._trusted(nn, cert)
    return [kids[c] for c in sorted(kids, key=lambda c: (len(c), c))]


def _grow(g: Graph, m: int, f: ForbiddenSpec | None, stats: EnumStats) -> Iterator[Graph]:
    k = g.m
    stats.nodes_per_level[k] = stats.nodes_per_level.get(k, 0) + 1
    if k == m:
        yield g
        return
    for child in _children(g, f, stats):
        yield from _grow(child, m, f, stats)


def _frontier(m: int, f: ForbiddenSpec | None, depth: int, stats: EnumStats) -> list[Graph]:
    """Nodes at edge count ``depth``, in DFS order."""
    return list(_grow(Graph._trusted(2, (2, 1)), depth, f, stats))


def _subtree_job(args) -> tuple[list[Graph], EnumStats]:
    g, m, f = args
    stats = EnumStats()
    return list(_grow(g, m, f, stats)), stats


def enumerate_connected(
    m: int,
    f: ForbiddenSpec | None = GEM,
    workers: int = 1,
    stats: EnumStats | None = None,
    max_m: int = DEFAULT_MAX_M,
    split_depth: int = SPLIT_DEPTH,
) -> Iterator[Graph]:
    """Connected F-free graphs with exactly ``m`` edges, one per class.

    Graphs come out canonically labelled. ``f=None`` disables the
    forbidden-subgraph prune. The stream order does not depend on
    ``workers``.
    """
    if m > max_m:
        raise ResourceGuardError(f"m={m} exceeds the enumeration guard {max_m}")
    if m < 1:
        return
    stats = stats if stats is not None else EnumStats()
    root = Graph._trusted(2, (2, 1))
    if workers <= 1 or m <= split_depth:
        yield from _grow(root, m, f, stats)
        return
    front_stats = EnumStats()
    front = _frontier(m, f, split_depth, front_stats)
    # frontier nodes get counted again inside their subtree job
    front_stats.nodes_per_level.pop(split_depth, None)
    stats.merge(front_stats)
    ctx = mp.get_context("fork")
    with ctx.Pool(workers) as pool:
        for graphs, sub in pool.imap(_subtree_job, [(g, m, f) for g in front]):
            stats.merge(sub)
            yield from graphs


def _partitions(m: int, largest: int | None = None) -> Iterator[list[int]]:
    largest = m if largest is None else largest
    if m == 0:
        yield []
        return
    for k in range(min(m, largest), 0, -1):
        for rest in _partitions(m - k, k):
            yield [k] + rest


def enumerate_ffree(
    m: int,
    f: ForbiddenSpec | None = GEM,
    connected_only: bool = True,
    workers: int = 1,
    stats: EnumStats | None = None,
    max_m: int = DEFAULT_MAX_M,
) -> Iterator[Graph]:
    """All F-free graphs with ``m`` edges and no isolated vertices, up to
    isomorphism (connected ones only by default)."""
    if connected_only:
        yield from enumerate_connected(m, f, workers, stats, max_m)
        return
    if m > max_m:
        raise ResourceGuardError(f"m={m} exceeds the enumeration guard {max_m}")
    pool = {k: list(enumerate_connected(k, f, 1, stats, max_m)) for k in range(1, m + 1)}
    check_union = f is not None and len(f.pattern.components()) > 1
    for parts in _partitions(m):
        groups = [(s, len(list(grp))) for s, grp in itertools.groupby(parts)]
        choices = [itertools.combinations_with_replacement(pool[s], r) for s, r in groups]
        for combo in itertools.product(*choices):
            comps = [g for block in combo for g in block]
            u = comps[0]
            for h in comps[1:]:
                u = disjoint_union(u, h)
            if check_union and contains_subgraph(u, f):
                continue
            if len(comps) == 1:
                yield u
            else:
                _, cert = _canonical(u.n, u.rows)
                yield Graph._trusted(u.n, cert)


# ----------------------------------------------------------------------
# extremal scans


def extremal_scan(
    m: int,
    f: ForbiddenSpec = GEM,
    top_k: int = 2,
    tol: float = DEFAULT_TOL,
    margin: float = DEFAULT_MARGIN,
    workers: int = 1,
    max_m: int = DEFAULT_MAX_M,
) -> list[ExtremalRecord]:
    """Rank connected F-free graphs with m edges by spectral radius.

    Each record carries the gap to the next rank; a gap within ``margin``
    is flagged as indistinguishable.
    """
    scored = []
    for g in enumerate_connected(m, f, workers=workers, max_m=max_m):
        scored.append((perron(g, tol).rho, canonical_form(g), g))
    scored.sort(key=lambda t: (-t[0], t[1]))
    return rank_records(scored, m, f, top_k, "exhaustive", margin)


def rank_records(
    scored: list[tuple[float, CanonicalForm, Graph]],
    m: int,
    f: ForbiddenSpec,
    top_k: int,
    method: str,
    margin: float,
) -> list[ExtremalRecord]:
    """Records for the first ``top_k`` entries of a list sorted by rho."""
    out = []
    for i, (rho, form, g) in enumerate(scored[:top_k]):
        gap = rho - scored[i + 1][0] if i + 1 < len(scored) else float("inf")
        out.append(
            ExtremalRecord(
                m=m,
                forbidden=f.name,
                rank=i + 1,
                graph6=str(form),
                rho=rho,
                method=method,
                margin=gap,
                indistinguishable=gap <= margin,
            )
        )
    return out
