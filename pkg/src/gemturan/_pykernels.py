"""Pure-Python kernels, used when the compiled extension is unavailable.

The compiled module ``_ckernels`` implements the same functions with the
same search order, so canonical labels agree bit-for-bit across backends.
Rows are bitsets given as Python ints.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

BACKEND = "python"


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


# ----------------------------------------------------------------------
# canonical labelling: individualisation/refinement with twin seeding and
# orbit pruning; the canonical relabelling maximises the row tuple


def _refine(rows: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = []
        for c in cells:
            mk = 0
            for v in c:
                mk |= 1 << v
            masks.append(mk)
        out = []
        changed = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            sig = {v: tuple((rows[v] & mk).bit_count() for mk in masks) for v in c}
            keys = sorted(set(sig.values()))
            if len(keys) == 1:
                out.append(c)
                continue
            changed = True
            for key in keys:
                out.append([v for v in c if sig[v] == key])
        cells = out
        if not changed:
            return cells


def _twin_generators(n: int, rows: Sequence[int]) -> list[list[int]]:
    # consecutive transpositions along each twin class: fixing the smallest
    # member still leaves the rest of the class generated
    gens = []
    for closed in (False, True):
        last: dict[int, int] = {}
        for v in range(n):
            key = rows[v] | (1 << v) if closed else rows[v]
            if key in last:
                p = list(range(n))
                a = last[key]
                p[a], p[v] = v, a
                gens.append(p)
            last[key] = v
    return gens


def _orbit_classes(n: int, gens: list[list[int]]) -> list[int]:
    """Orbit representative of every vertex under the group ``gens`` generate."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in gens:
        for x in range(n):
            a, b = find(x), find(p[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]


def canon_label(n: int, rows: Sequence[int]) -> tuple[list[int], tuple[int, ...]]:
    """Return ``(order, cert)``: ``order[i]`` is the vertex placed at
    canonical position ``i`` and ``cert`` the relabelled rows."""
    if n == 0:
        return [], ()
    auts = _twin_generators(n, rows)
    best: list = [None, None]

    def leaf(order: list[int]) -> None:
        pos = [0] * n
        for i, v in enumerate(order):
            pos[v] = i
        cert = []
        for v in order:
            r = 0
            for w in _bits(rows[v]):
                r |= 1 << pos[w]
            cert.append(r)
        cert_t = tuple(cert)
        if best[0] is None or cert_t > best[0]:
            best[0], best[1] = cert_t, order
        elif cert_t == best[0]:
            gamma = [0] * n
            for i, v in enumerate(order):
                gamma[v] = best[1][i]
            auts.append(gamma)

    def search(cells: list[list[int]], fixed: list[int]) -> None:
        target = -1
        size = n + 1
        for i, c in enumerate(cells):
            if 1 < len(c) < size:
                target, size = i, len(c)
        if target < 0:
            leaf([c[0] for c in cells])
            return
        cell = cells[target]
        explored: list[int] = []
        known = -1
        cls: list[int] = []
        for v in cell:
            if explored:
                if known != len(auts):
                    known = len(auts)
                    cls = _orbit_classes(n, [p for p in auts if all(p[x] == x for x in fixed)])
                if any(cls[w] == cls[v] for w in explored):
                    continue
            explored.append(v)
            rest = [w for w in cell if w != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            search(_refine(rows, child), fixed + [v])

    search(_refine(rows, [list(range(n))]), [])
    return best[1], best[0]


# ----------------------------------------------------------------------
# gem (fan H_5) detection: a gem with hub h is a P_4 inside G[N(h)]


def _p4_through_edge(rows: Sequence[int], s: int, p: int, q: int) -> bool:
    """Is there a path on 4 vertices in G[s] using edge p-q?"""
    a = rows[p] & s & ~(1 << q)
    d = rows[q] & s & ~(1 << p)
    # p-q as the middle edge
    if a and d and not (a == d and a & (a - 1) == 0):
        return True
    # p-q as an end edge: p-q-r-x or q-p-r-x
    pq = (1 << p) | (1 << q)
    for r in _bits(d):
        if rows[r] & s & ~pq:
            return True
    for r in _bits(a):
        if rows[r] & s & ~pq:
            return True
    return False


def _has_p4(rows: Sequence[int], s: int) -> bool:
    for b in _bits(s):
        for c in _bits(rows[b] & s & ~((2 << b) - 1)):
            a = rows[b] & s & ~(1 << c)
            d = rows[c] & s & ~(1 << b)
            if a and d and not (a == d and a & (a - 1) == 0):
                return True
    return False


def has_gem(n: int, rows: Sequence[int]) -> bool:
    for h in range(n):
        s = rows[h]
        if s.bit_count() >= 4 and _has_p4(rows, s):
            return True
    return False


def gem_through_edge(n: int, rows: Sequence[int], a: int, b: int) -> bool:
    """Is there a gem using edge a-b (which must be present in ``rows``)?"""
    for hub, other in ((a, b), (b, a)):
        s = rows[hub]
        if s.bit_count() < 4:
            continue
        for y in _bits(rows[other] & s):
            if _p4_through_edge(rows, s, other, y):
                return True
    for h in _bits(rows[a] & rows[b]):
        s = rows[h]
        if s.bit_count() >= 4 and _p4_through_edge(rows, s, a, b):
            return True
    return False


# ----------------------------------------------------------------------
# shifted power iteration for the top eigenpair of a connected graph


def perron_iterate(
    n: int,
    rows: Sequence[int],
    x0: Sequence[float],
    shift: float,
    tol: float,
    maxit: int,
) -> tuple[float, list[float], float, int, bool]:
    a = np.zeros((n, n))
    for u in range(n):
        for v in _bits(rows[u]):
            a[u, v] = 1.0
    x = np.asarray(x0, dtype=np.float64)
    x = x / np.linalg.norm(x)
    best_res = anchor = np.inf
    best = (0.0, x, np.inf)
    stall = 0
    for it in range(1, maxit + 1):
        y = a @ x
        rho = float(x @ y)
        res = float(np.max(np.abs(y - rho * x)))
        if res < best_res:
            # give up only after a long run without halving the residual
            if res < 0.5 * anchor:
                stall = 0
                anchor = res
            best_res = res
            best = (rho, x, res)
        if res <= tol:
            return rho, x.tolist(), res, it, True
        stall += 1
        if stall > 20000:
            break
        z = y + shift * x
        x = z / np.linalg.norm(z)
    rho, x, res = best
    return rho, x.tolist(), res, it, False
