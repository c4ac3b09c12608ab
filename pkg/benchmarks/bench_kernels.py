"""Compiled vs pure-Python kernels on canonical labelling, gem detection
and power iteration.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json]
"""

from __future__ import annotations

import argparse
import json
import time

from gemturan import kernels
from gemturan.families import family
from gemturan.sampling import random_connected_graph, rng_for


def _workload(seed: int = 0):
    rng = rng_for(seed)
    small = [random_connected_graph(rng, int(rng.integers(6, 14))) for _ in range(300)]
    sparse = [random_connected_graph(rng, int(rng.integers(60, 100)), 0.04) for _ in range(20)]
    named = [family("Snk", 60, 2), family("SnkT", 80, 2, 6), family("CompleteBipartite", 40, 12)]
    return small, sparse, named


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench(mod, repeat: int) -> dict[str, float]:
    small, sparse, named = _workload()
    graphs = small + sparse + named

    def canon():
        for g in graphs:
            mod.canon_label(g.n, g.rows)

    def gem():
        for g in graphs:
            mod.has_gem(g.n, g.rows)

    def power():
        for g in sparse + named:
            mod.perron_iterate(g.n, g.rows, g.degrees(), 1.0, 1e-12, 10**6)

    return {name: _time(fn, repeat) for name, fn in (("canon", canon), ("gem", gem), ("perron", power))}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    results = {name: bench(mod, args.repeat) for name, mod in kernels.available_backends().items()}
    if args.json:
        print(json.dumps(results, indent=2))
        return
    print(f"{'kernel':<8}" + "".join(f"{b:>12}" for b in results) + ("     speedup" if len(results) > 1 else ""))
    for k in ("canon", "gem", "perron"):
        row = f"{k:<8}" + "".join(f"{results[b][k]:>11.4f}s" for b in results)
        if "cython" in results:
            row += f"{results['python'][k] / results['cython'][k]:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
