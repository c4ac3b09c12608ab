"""Perron-guided hill climbing over connected F-free graphs with m edges.

Randomness comes from numpy's PCG64 bit generator. The root
``SeedSequence(seed)`` is split with ``spawn(restarts)`` so restart ``i``
always sees the same stream, whether restarts run in-process or in a pool.
"""

from __future__ import annotations

import multiprocessing as mp
import time
from dataclasses import asdict, dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .canon import CanonicalForm, canonical_form
from .forbidden import GEM, ForbiddenSpec, _contains_through
from .graph import Graph, iter_bits
from .records import ExtremalRecord
from .spectral import DEFAULT_MARGIN, PerronData, perron

SEARCH_TOL = 1e-11


class InfeasibleStartError(RuntimeError):
    pass


class FeasibilityError(AssertionError):
    pass


@dataclass(frozen=True)
class SearchConfig:
    m: int
    forbidden: ForbiddenSpec = GEM
    excluded: tuple[CanonicalForm, ...] = ()
    restarts: int = 20
    max_steps: int = 10_000
    seed: int = 0
    margin: float = DEFAULT_MARGIN
    workers: int = 1
    debug: bool = False

    def __post_init__(self) -> None:
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def echo(self) -> dict:
        return {
            "m": self.m,
            "forbidden": self.forbidden.name,
            "excluded": [str(c) for c in self.excluded],
            "restarts": self.restarts,
            "max_steps": self.max_steps,
            "seed": self.seed,
            "margin": self.margin,
        }


@dataclass
class RestartResult:
    graph6: str
    rho: float
    steps: int
    evaluated: int


@dataclass
class RunLog:
    config: dict
    restarts: list[RestartResult]
    best: ExtremalRecord
    best_graph: Graph
    wall_time: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "restarts": [asdict(r) for r in self.restarts],
            "best": asdict(self.best),
            "wall_time": self.wall_time,
        }


# ----------------------------------------------------------------------
# feasibility


class _Excluder:
    def __init__(self, forms: Sequence[CanonicalForm]):
        self.forms = set(forms)
        self.signatures = set()
        for c in forms:
            g = c.graph()
            self.signatures.add((g.n, tuple(sorted(g.degrees()))))

    def __contains__(self, g: Graph) -> bool:
        if not self.forms:
            return False
        if (g.n, tuple(sorted(g.degrees()))) not in self.signatures:
            return False
        return canonical_form(g) in self.forms


def _creates_forbidden(g: Graph, f: ForbiddenSpec, added: Sequence[tuple[int, int]]) -> bool:
    if f.is_gem:
        return any(kernels.gem_through_edge(g.n, g.rows, a, b) for a, b in added)
    return _contains_through(g, f, list(added))


def _check_state(g: Graph, cfg: SearchConfig) -> None:
    from .forbidden import contains_subgraph

    if g.m != cfg.m:
        raise FeasibilityError(f"state has {g.m} edges, expected {cfg.m}")
    if g.isolated() or not g.is_connected():
        raise FeasibilityError("state is disconnected or has isolated vertices")
    if contains_subgraph(g, cfg.forbidden):
        raise FeasibilityError("state contains the forbidden graph")


# ----------------------------------------------------------------------
# moves


def _rotation_moves(g: Graph, x: np.ndarray) -> Iterator[tuple[list, list]]:
    """Rotations v -> u with x_u >= x_v: low-weight sources first, then
    high-weight targets; the full move before single-vertex moves."""
    n = g.n
    by_x = sorted(range(n), key=lambda v: (x[v], v))
    for v in by_x:
        for u in reversed(by_x):
            if u == v or x[u] < x[v]:
                continue
            cand = list(iter_bits(g.rows[v] & ~g.rows[u] & ~(1 << u)))
            if not cand:
                continue
            yield [(u, w) for w in cand], [(v, w) for w in cand]
            if len(cand) > 1:
                for w in cand:
                    yield [(u, w)], [(v, w)]


def _swap_moves(g: Graph, x: np.ndarray, rng: np.random.Generator) -> Iterator[tuple[list, list]]:
    """Every (remove one edge, add one non-edge or pendant) pair, most
    promising first by the first-order estimate x_a x_b - x_c x_d; a random
    permutation breaks ties."""
    edges = g.edges()
    n = g.n
    adds = [(a, b) for b in range(n) for a in range(b) if not g.has_edge(a, b)]
    adds += [(a, n) for a in range(n)]
    xe = np.append(np.asarray(x, dtype=float), 0.0)
    gain_add = np.array([xe[a] * xe[b] for a, b in adds])
    loss = np.array([xe[a] * xe[b] for a, b in edges])
    est = (gain_add[None, :] - loss[:, None]).ravel()
    tie = rng.permutation(est.size)
    # round so near-equal estimates fall back to the random order
    order = np.lexsort((tie, -np.round(est, 9)))
    na = len(adds)
    for k in order:
        i, j = divmod(int(k), na)
        yield [adds[j]], [edges[i]]


def _relocation_moves(g: Graph, x: np.ndarray) -> Iterator[tuple[list, list]]:
    """Split moves: strip a vertex w of its d edges and spend them on the two
    leading Perron vertices u1 ~ u2, as k new common neighbours plus d - 2k
    pendants at u1 (largest k first)."""
    n = g.n
    u1 = max(range(n), key=lambda v: (x[v], -v))
    nb = list(iter_bits(g.rows[u1]))
    if not nb:
        return
    u2 = max(nb, key=lambda v: (x[v], -v))
    for w in sorted(range(n), key=lambda v: (x[v], v)):
        if w in (u1, u2):
            continue
        remove = [(w, y) for y in iter_bits(g.rows[w])]
        d = len(remove)
        for k in range(d // 2, -1, -1):
            add, nxt = [], n
            for _ in range(k):
                add += [(u1, nxt), (u2, nxt)]
                nxt += 1
            for _ in range(d - 2 * k):
                add.append((u1, nxt))
                nxt += 1
            yield add, remove


def _random_start(cfg: SearchConfig, rng: np.random.Generator, excluder: _Excluder) -> Graph:
    f = cfg.forbidden
    for _ in range(200):
        p_new = rng.uniform(0.15, 0.85)
        g = Graph.from_edges(2, [(0, 1)])
        stuck = False
        while g.m < cfg.m:
            n = g.n
            if rng.random() < p_new:
                a, b = int(rng.integers(n)), n
            else:
                non = [(a, b) for b in range(n) for a in range(b) if not g.has_edge(a, b)]
                if not non:
                    a, b = int(rng.integers(n)), n
                else:
                    a, b = non[int(rng.integers(len(non)))]
            h = g.with_edges(add=[(a, b)])
            if _creates_forbidden(h, f, [(a, b)]):
                # fall back to a pendant edge, then give up on this attempt
                a, b = int(rng.integers(n)), n
                h = g.with_edges(add=[(a, b)])
                if _creates_forbidden(h, f, [(a, b)]):
                    stuck = True
                    break
            g = h
        if not stuck and g not in excluder:
            return g
    raise InfeasibleStartError("no feasible starting graph found")


def _climb(cfg: SearchConfig, rng: np.random.Generator) -> tuple[Graph, PerronData, int, int]:
    excluder = _Excluder(cfg.excluded)
    g = _random_start(cfg, rng, excluder)
    data = perron(g, SEARCH_TOL)
    steps = evaluated = 0
    while steps < cfg.max_steps:
        if cfg.debug:
            _check_state(g, cfg)
        moved = False
        seen: set[tuple] = set()
        for source in (
            _rotation_moves(g, data.x),
            _swap_moves(g, data.x, rng),
            _relocation_moves(g, data.x),
        ):
            for add, remove in source:
                sig = (tuple(sorted(add)), tuple(sorted(remove)))
                if sig in seen:
                    continue
                seen.add(sig)
                base = g.with_edges(add=add, remove=remove)
                if _creates_forbidden(base, cfg.forbidden, add):
                    continue
                h = base.remove_isolated()
                if not h.is_connected():
                    continue
                keep = [v for v in range(base.n) if base.rows[v]]
                x0 = [data.x[v] if v < g.n else 0.0 for v in keep]
                x0 = [max(t, 1e-3) for t in x0]
                d2 = perron(h, SEARCH_TOL, x0=x0)
                evaluated += 1
                if d2.rho > data.rho + cfg.margin and h not in excluder:
                    g, data = h, d2
                    moved = True
                    break
            if moved:
                break
        if not moved:
            break
        steps += 1
    return g, data, steps, evaluated


def _restart_job(args) -> tuple[str, float, int, int]:
    cfg, child_seed = args
    rng = np.random.Generator(np.random.PCG64(child_seed))
    g, data, steps, evaluated = _climb(cfg, rng)
    # report the final rho at the default solver precision
    rho = perron(g).rho
    return str(canonical_form(g)), rho, steps, evaluated


def local_search(cfg: SearchConfig) -> RunLog:
    """Hill climbing with restarts; the best graph over all restarts wins,
    earlier restarts winning ties.

    The record margin is the gap to the best distinct local optimum seen
    (inf when every restart ended on the same graph).
    """
    t0 = time.perf_counter()
    children = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    jobs = [(cfg, c) for c in children]
    if cfg.workers > 1:
        with mp.get_context("fork").Pool(cfg.workers) as pool:
            results = pool.map(_restart_job, jobs)
    else:
        results = [_restart_job(j) for j in jobs]
    per = [RestartResult(*r) for r in results]
    best_i = 0
    for i, r in enumerate(per):
        if r.rho > per[best_i].rho:
            best_i = i
    best = per[best_i]
    others = [r.rho for r in per if r.graph6 != best.graph6]
    gap = best.rho - max(others) if others else float("inf")
    rec = ExtremalRecord(
        m=cfg.m,
        forbidden=cfg.forbidden.name,
        rank=1 + len(cfg.excluded),
        graph6=best.graph6,
        rho=best.rho,
        method="local-search",
        margin=gap,
        indistinguishable=gap <= cfg.margin,
    )
    best_g = CanonicalForm(best.graph6.encode()).graph()
    return RunLog(cfg.echo(), per, rec, best_g, time.perf_counter() - t0)
