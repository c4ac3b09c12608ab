"""Spectral radius, Perron vectors, quotient-matrix closed forms and the
walk identities used around an extremal vertex."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import kernels
from .families import FamilyKind, FamilySpec, build_family, pendant_spec, runner_up_spec
from .graph import MAX_ORDER, Graph, GraphError, iter_bits
from .structure import second_neighborhood

DEFAULT_TOL = 1e-12
DEFAULT_MARGIN = 1e-9
MAX_ITER = 10**6
SHIFT = 1.0  # A + I breaks the +-rho symmetry of bipartite graphs


@dataclass
class PerronData:
    rho: float
    x: np.ndarray
    residual: float
    iterations: int
    converged: bool = True

    @property
    def extremal_vertex(self) -> int:
        """Lowest-index vertex carrying the largest Perron entry."""
        return int(np.argmax(self.x))


class ConvergenceError(RuntimeError):
    def __init__(self, data: PerronData):
        super().__init__(
            f"power iteration stopped after {data.iterations} iterations "
            f"with residual {data.residual:.3e}"
        )
        self.data = data


def _perron_connected(g: Graph, tol: float, maxit: int, x0) -> PerronData:
    if g.n == 1:
        return PerronData(0.0, np.ones(1), 0.0, 0)
    start = g.degrees() if x0 is None else x0
    rho, x, res, it, ok = kernels.perron_iterate(g.n, g.rows, start, SHIFT, tol, maxit)
    x = np.abs(np.asarray(x, dtype=np.float64))
    return PerronData(rho, x, res, it, ok)


def perron(
    g: Graph,
    tol: float = DEFAULT_TOL,
    maxit: int = MAX_ITER,
    x0: Sequence[float] | None = None,
    strict: bool = True,
) -> PerronData:
    """Top eigenpair of A(g) by shifted power iteration.

    Disconnected graphs are solved per component; the winning component
    keeps its vector and every other entry is zero. ``x0`` (strictly
    positive) overrides the degree-vector start.
    """
    if g.n == 0:
        return PerronData(0.0, np.zeros(0), 0.0, 0)
    comps = g.components()
    if len(comps) == 1:
        data = _perron_connected(g, tol, maxit, x0)
    else:
        best = None
        for comp in comps:
            sub = g.induced(comp)
            start = None if x0 is None else [x0[v] for v in comp]
            d = _perron_connected(sub, tol, maxit, start)
            if best is None or d.rho > best[1].rho:
                best = (comp, d)
        comp, d = best
        x = np.zeros(g.n)
        x[comp] = d.x
        data = PerronData(d.rho, x, d.residual, d.iterations, d.converged)
    if strict and not data.converged:
        raise ConvergenceError(data)
    return data


def spectral_radius(g: Graph, tol: float = DEFAULT_TOL) -> float:
    return perron(g, tol).rho


def compare(a: float, b: float, margin: float = DEFAULT_MARGIN) -> int:
    """Three-way comparison; 0 means indistinguishable within ``margin``."""
    if a - b > margin:
        return 1
    if b - a > margin:
        return -1
    return 0


# ----------------------------------------------------------------------
# equitable partitions


@dataclass(frozen=True)
class QuotientMatrix:
    parts: tuple[tuple[int, ...], ...]
    b: tuple[tuple[int, ...], ...]

    def as_array(self) -> np.ndarray:
        return np.array(self.b, dtype=np.float64)


def quotient_matrix(g: Graph, parts: Sequence[Sequence[int]]) -> QuotientMatrix:
    parts = tuple(tuple(p) for p in parts if len(p))
    seen = sorted(v for p in parts for v in p)
    if seen != list(range(g.n)):
        raise GraphError("parts must partition the vertex set")
    masks = [sum(1 << v for v in p) for p in parts]
    b = []
    for i, p in enumerate(parts):
        row = [(g.rows[p[0]] & mk).bit_count() for mk in masks]
        for v in p[1:]:
            if [(g.rows[v] & mk).bit_count() for mk in masks] != row:
                raise GraphError(f"partition is not equitable at part {i}, vertex {v}")
        b.append(tuple(row))
    return QuotientMatrix(parts, tuple(b))


def family_parts(spec: FamilySpec) -> list[list[int]]:
    k, p = spec.kind, spec.params
    n = spec.order
    if k is FamilyKind.SNK:
        return [list(range(p[1])), list(range(p[1], n))]
    if k is FamilyKind.SNKT:
        _, kk, t = p
        return [[0], list(range(1, kk)), list(range(kk, n - t)), list(range(n - t, n))]
    if k is FamilyKind.JOIN_CLIQUE_EMPTY:
        return [list(range(p[0])), list(range(p[0], n))]
    if k is FamilyKind.STAR:
        return [[0], list(range(1, n))]
    if k is FamilyKind.COMPLETE_BIPARTITE:
        return [list(range(p[1])), list(range(p[1], n))]
    if k in (FamilyKind.COMPLETE, FamilyKind.CYCLE):
        return [list(range(n))]
    raise GraphError(f"no registered equitable partition for {k.value}")


def _quotient_from_params(spec: FamilySpec) -> tuple[tuple[int, ...], ...]:
    """Quotient matrix of the registered partition, from the parameters alone."""
    k, p = spec.kind, spec.params
    n = spec.order
    if k in (FamilyKind.SNK, FamilyKind.JOIN_CLIQUE_EMPTY):
        kk = p[1] if k is FamilyKind.SNK else p[0]
        q = n - kk
        sizes, rows = (kk, q), [(kk - 1, q), (kk, 0)]
    elif k is FamilyKind.SNKT:
        _, kk, t = p
        q = n - t - kk
        sizes = (1, kk - 1, q, t)
        rows = [
            (0, kk - 1, q, t),
            (1, kk - 2, q, 0),
            (1, kk - 1, 0, 0),
            (1, 0, 0, 0),
        ]
    elif k is FamilyKind.STAR:
        sizes, rows = (1, n - 1), [(0, n - 1), (1, 0)]
    elif k is FamilyKind.COMPLETE_BIPARTITE:
        sizes, rows = (p[1], n - p[1]), [(0, n - p[1]), (p[1], 0)]
    elif k is FamilyKind.COMPLETE:
        sizes, rows = (n,), [(n - 1,)]
    elif k is FamilyKind.CYCLE:
        sizes, rows = (n,), [(2,)]
    else:
        raise GraphError(f"no registered equitable partition for {k.value}")
    keep = [i for i, size in enumerate(sizes) if size]
    return tuple(tuple(rows[i][j] for j in keep) for i in keep)


def family_quotient(spec: FamilySpec) -> QuotientMatrix:
    """Quotient matrix of a registered family. Buildable instances are
    checked for equitability on the actual graph; larger ones come from the
    parameters."""
    if spec.order <= MAX_ORDER:
        q = quotient_matrix(build_family(spec), family_parts(spec))
        assert q.b == _quotient_from_params(spec), (spec, q.b)
        return q
    return QuotientMatrix((), _quotient_from_params(spec))


def char_poly(b: Sequence[Sequence[int]]) -> list[Fraction]:
    """Coefficients of det(xI - B), highest degree first (Faddeev-LeVerrier)."""
    k = len(b)
    B = [[Fraction(v) for v in row] for row in b]
    coeffs = [Fraction(1)]
    M = [[Fraction(0)] * k for _ in range(k)]
    for j in range(1, k + 1):
        c_prev = coeffs[-1]
        M = [
            [sum(B[r][s] * M[s][c] for s in range(k)) + (c_prev if r == c else 0) for c in range(k)]
            for r in range(k)
        ]
        BM_trace = sum(sum(B[r][s] * M[s][r] for s in range(k)) for r in range(k))
        coeffs.append(-BM_trace / j)
    return coeffs


def _horner(coeffs: Sequence[float], x: float) -> float:
    acc = 0.0
    for c in coeffs:
        acc = acc * x + c
    return acc


def largest_real_root(coeffs: Sequence[Fraction], hi: float, tol: float = 1e-13) -> float:
    """Largest root of a real-rooted polynomial with positive leading coefficient.

    The largest root of the derivative brackets it from below; ``hi`` must
    be an upper bound on every root.
    """
    deg = len(coeffs) - 1
    if deg == 0:
        raise ValueError("constant polynomial has no roots")
    if deg == 1:
        return float(-coeffs[1] / coeffs[0])
    deriv = [c * (deg - i) for i, c in enumerate(coeffs[:-1])]
    lo = largest_real_root(deriv, hi, tol)
    fc = [float(c) for c in coeffs]
    if _horner(fc, lo) >= 0:
        return lo  # repeated root
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if _horner(fc, mid) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def quotient_rho(q: QuotientMatrix) -> float:
    hi = float(max(sum(row) for row in q.b)) + 1.0
    return largest_real_root(char_poly(q.b), hi)


def rho_exact_family(spec: FamilySpec) -> float:
    """Spectral radius of a registered family from its quotient matrix."""
    return quotient_rho(family_quotient(spec))


def snk_rho_quadratic(n: int) -> float:
    """Closed form for S_{n,2}: root of x^2 - x - 2(n-2)."""
    return (1 + math.sqrt(8 * n - 15)) / 2


def conjecture_bound(m: int, k: int) -> float:
    """(k - 1 + sqrt(4m - k^2 + 1)) / 2, attained by K_k v (m/k - (k-1)/2) K_1."""
    return (k - 1 + math.sqrt(4 * m - k * k + 1)) / 2


# ----------------------------------------------------------------------
# comparison of the pendant family members


@dataclass
class Lemma22Report:
    m: int
    rho_runner_up: float
    lower_bound: float
    bound_margin: float
    dominance: dict[int, tuple[float, float]] = field(default_factory=dict)
    skipped: list[int] = field(default_factory=list)
    flagged: list[str] = field(default_factory=list)
    vacuous: bool = False

    @property
    def ok(self) -> bool:
        return not self.flagged


def check_lemma22(
    m: int,
    t_list: Sequence[int] = (4, 6, 8, 10),
    margin: float = DEFAULT_MARGIN,
    allow_m22: bool = False,
) -> Lemma22Report:
    """rho(S^2_{(m+5)/2,2}) against (1 + sqrt(4m-7))/2 and against the
    members S^t_{(m+t+3)/2,2} with more pendants.

    Margins at or below ``margin`` are flagged, never passed.
    """
    if allow_m22 and m == 22:
        # (m+5)/2 is not an integer, so the family has no member
        return Lemma22Report(m, math.nan, (1 + math.sqrt(4 * m - 7)) / 2, math.nan, vacuous=True)
    if m % 2 == 0 or m < 23:
        raise ValueError(f"m must be odd and >= 23, got {m}")
    for t in t_list:
        if t % 2 or t < 4:
            raise ValueError(f"t must be even and >= 4, got {t}")
    rho2 = rho_exact_family(runner_up_spec(m))
    bound = (1 + math.sqrt(4 * m - 7)) / 2
    rep = Lemma22Report(m, rho2, bound, rho2 - bound)
    if rep.bound_margin <= margin:
        rep.flagged.append(f"bound margin {rep.bound_margin:.3e}")
    for t in t_list:
        if m < t + 3:
            # S_{(m+t+3)/2 - t, 2} would have no common leaves
            rep.skipped.append(t)
            continue
        rho_t = rho_exact_family(pendant_spec(m, t))
        rep.dominance[t] = (rho_t, rho2 - rho_t)
        if rho2 - rho_t <= margin:
            rep.flagged.append(f"t={t} margin {rho2 - rho_t:.3e}")
    return rep


# ----------------------------------------------------------------------
# walk identity around a vertex


def walk_identity_terms(g: Graph, u: int, data: PerronData) -> tuple[float, float]:
    """Both sides of rho^2 x_u = d(u) x_u + sum_{v in N_+(u)} d_{N(u)}(v) x_v
    + sum_{w in N^2(u)} d_{N(u)}(w) x_w."""
    x = data.x
    nu = g.rows[u]
    rhs = g.degree(u) * x[u]
    for v in iter_bits(nu):
        d = (g.rows[v] & nu).bit_count()
        if d:
            rhs += d * x[v]
    for w in second_neighborhood(g, u):
        rhs += (g.rows[w] & nu).bit_count() * x[w]
    return data.rho**2 * x[u], float(rhs)


def walk_identity_residual(g: Graph, u: int, data: PerronData | None = None) -> float:
    """|lhs - rhs| / x_u for the walk identity at ``u``."""
    if data is None:
        data = perron(g)
    lhs, rhs = walk_identity_terms(g, u, data)
    return abs(lhs - rhs) / data.x[u]


@dataclass(frozen=True)
class EdgeBudget:
    """Terms bounding e(W) from above at an extremal vertex."""

    e_w: int
    weighted: float  # sum_{N+}(d_N - 1) x/x_u - e(N+) + 2 - sum_{N0} x/x_u
    combinatorial: float  # e(N+) - |N+| + 2 - sum_{N0} x/x_u


def edge_budget(g: Graph, data: PerronData, u: int | None = None) -> EdgeBudget:
    """Evaluate the e(W) bound at ``u`` (default: the extremal vertex).

    It holds whenever u carries the largest Perron entry and
    rho^2 - rho > m - 2.
    """
    if u is None:
        u = data.extremal_vertex
    x = data.x
    nu = g.rows[u]
    closed = nu | (1 << u)
    wmask = ((1 << g.n) - 1) & ~closed
    n_plus = [v for v in iter_bits(nu) if g.rows[v] & nu]
    n_zero = [v for v in iter_bits(nu) if not g.rows[v] & nu]
    e_plus = sum((g.rows[v] & nu).bit_count() for v in n_plus) // 2
    e_w = sum((g.rows[w] & wmask).bit_count() for w in iter_bits(wmask)) // 2
    zero_term = sum(x[v] for v in n_zero) / x[u]
    weighted = (
        sum(((g.rows[v] & nu).bit_count() - 1) * x[v] for v in n_plus) / x[u]
        - e_plus + 2 - zero_term
    )
    combinatorial = e_plus - len(n_plus) + 2 - zero_term
    return EdgeBudget(e_w, float(weighted), float(combinatorial))
