"""The compiled and pure-Python backends must agree exactly."""

import numpy as np
import pytest

import oracles as O
from gemturan import kernels
from gemturan.sampling import random_connected_graph, rng_for

BACKENDS = kernels.available_backends()
needs_both = pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled extension not built")


def _random_graphs(seed, count, lo, hi, p=None):
    rng = rng_for(seed)
    for _ in range(count):
        n = int(rng.integers(lo, hi + 1))
        yield random_connected_graph(rng, n, p if p is not None else float(rng.uniform(0.02, 0.5)))


def test_selected_backend_is_listed():
    assert kernels.BACKEND in {m.BACKEND for m in BACKENDS.values()}


@needs_both
@pytest.mark.parametrize("lo, hi", [(1, 12), (60, 90), (120, 128)])
def test_canon_identical(lo, hi):
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for g in _random_graphs(lo, 40, lo, hi, 0.05 if lo > 12 else None):
        (po, pc), (co, cc) = py.canon_label(g.n, g.rows), cy.canon_label(g.n, g.rows)
        assert list(po) == list(co)
        assert tuple(pc) == tuple(cc)


@needs_both
def test_gem_identical():
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for g in _random_graphs(3, 300, 2, 70):
        assert py.has_gem(g.n, g.rows) == cy.has_gem(g.n, g.rows)
        for a, b in g.edges()[:5]:
            assert py.gem_through_edge(g.n, g.rows, a, b) == cy.gem_through_edge(g.n, g.rows, a, b)


@needs_both
def test_perron_close():
    py, cy = BACKENDS["python"], BACKENDS["cython"]
    for g in _random_graphs(4, 50, 2, 40):
        a = py.perron_iterate(g.n, g.rows, g.degrees(), 1.0, 1e-12, 100000)
        b = cy.perron_iterate(g.n, g.rows, g.degrees(), 1.0, 1e-12, 100000)
        assert abs(a[0] - b[0]) < 1e-10
        assert np.allclose(a[1], b[1], atol=1e-9)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_gem_against_brute_force(name):
    mod = BACKENDS[name]
    for g in _random_graphs(5, 150, 2, 7):
        assert mod.has_gem(g.n, g.rows) == O.brute_has_gem(g.n, g.edges())


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_gem_through_edge_against_brute_force(name):
    mod = BACKENDS[name]
    for g in _random_graphs(6, 100, 5, 7):
        for a, b in g.edges():
            assert mod.gem_through_edge(g.n, g.rows, a, b) == O.brute_gem_through(g.n, g.edges(), a, b)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_perron_against_dense(name):
    mod = BACKENDS[name]
    for g in _random_graphs(7, 60, 2, 30):
        rho = mod.perron_iterate(g.n, g.rows, g.degrees(), 1.0, 1e-12, 100000)[0]
        assert abs(rho - O.rho_dense(g)) < 1e-9


def test_fallback_selected_by_environment():
    import os
    import subprocess
    import sys

    env = dict(os.environ, GEMTURAN_PURE_PYTHON="1")
    r = subprocess.run(
        [sys.executable, "-c", "from gemturan import kernels; print(kernels.BACKEND)"],
        capture_output=True, text=True, env=env,
    )
    assert r.stdout.strip() == "python"
