"""Command-line front end.

Exit codes: 0 verdict PASS (or nothing to judge), 2 verdict FAIL or
indistinguishable, 1 usage or runtime error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
import time
from typing import Iterable

from . import graph6
from .canon import canonical_form
from .certify import Verdict, certify_theorem
from .enumeration import DEFAULT_MAX_M, EnumStats, enumerate_ffree, extremal_scan
from .families import FamilyKind, FamilySpec, build_family, extremal_spec
from .forbidden import ForbiddenSpec, contains_subgraph
from .graph import Graph, GraphError
from .kernels import BACKEND
from .records import ExtremalRecord, append_records, query_records
from .sampling import random_connected_graph, rng_for
from .search import SearchConfig, local_search
from .spectral import (
    DEFAULT_MARGIN,
    DEFAULT_TOL,
    ConvergenceError,
    check_lemma22,
    perron,
    rho_exact_family,
    walk_identity_terms,
)

EXIT_PASS, EXIT_ERROR, EXIT_FAIL = 0, 1, 2


class CliError(Exception):
    pass


def _emit(args, payload: dict, lines: Iterable[str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, default=_jsonable))
    else:
        for line in lines:
            print(line)


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return str(x)


def _graphs(texts: list[str]) -> list[Graph]:
    if texts == ["-"] or not texts:
        return list(graph6.read_stream(sys.stdin))
    return [graph6.decode(t) for t in texts]


def _kind(text: str) -> FamilyKind:
    for k in FamilyKind:
        if text.lower() in (k.value.lower(), k.name.lower()):
            return k
    raise CliError(f"unknown family {text!r}; choose from {', '.join(k.value for k in FamilyKind)}")


def _record_line(r: ExtremalRecord) -> str:
    margin = "inf" if math.isinf(r.margin) else f"{r.margin:.3e}"
    flag = "  (indistinguishable)" if r.indistinguishable else ""
    return f"m={r.m:<4} rank={r.rank}  rho={r.rho:.12f}  margin={margin}  {r.graph6}{flag}"


def _record_dict(r: ExtremalRecord) -> dict:
    return json.loads(r.to_json())


# ----------------------------------------------------------------------
# subcommands


def cmd_build(args) -> int:
    spec = FamilySpec(_kind(args.kind), tuple(args.params))
    g = build_family(spec)
    text = str(canonical_form(g)) if args.canonical else graph6.encode(g)
    _emit(args, {"family": str(spec), "n": g.n, "m": g.m, "graph6": text}, [text])
    return EXIT_PASS


def cmd_rho(args) -> int:
    out, lines = [], []
    for g in _graphs(args.graphs):
        d = perron(g, args.tol)
        row = {
            "graph6": graph6.encode(g),
            "rho": d.rho,
            "residual": d.residual,
            "iterations": d.iterations,
            "extremal_vertex": d.extremal_vertex,
        }
        if args.vector:
            row["x"] = list(d.x)
        out.append(row)
        lines.append(f"{row['graph6']}  rho={d.rho:.15f}  residual={d.residual:.1e}")
    if args.family:
        spec = FamilySpec(_kind(args.family[0]), tuple(int(p) for p in args.family[1:]))
        exact = rho_exact_family(spec)
        out.append({"family": str(spec), "rho_exact": exact})
        lines.append(f"{spec}  rho_exact={exact:.15f}")
    _emit(args, {"results": out}, lines)
    return EXIT_PASS


def cmd_free(args) -> int:
    f = ForbiddenSpec.parse(args.forbidden)
    out, lines, all_free = [], [], True
    for g in _graphs(args.graphs):
        found, w = contains_subgraph(g, f, witness=True)
        free = not found
        all_free &= free
        out.append({"graph6": graph6.encode(g), "free": free, "witness": w})
        lines.append(f"{graph6.encode(g)}  " + (f"{f.name}-free" if free else f"contains {f.name} at {w}"))
    _emit(args, {"forbidden": f.name, "results": out}, lines)
    return EXIT_PASS if all_free else EXIT_FAIL


def cmd_enum(args) -> int:
    f = None if args.unpruned else ForbiddenSpec.parse(args.forbidden)
    stats = EnumStats()
    t0 = time.perf_counter()
    it = enumerate_ffree(
        args.m, f, connected_only=not args.all, workers=args.workers, stats=stats, max_m=args.max_m
    )
    if args.count:
        count = sum(1 for _ in it)
        _emit(
            args,
            {"m": args.m, "count": count, "seconds": time.perf_counter() - t0, "stats": stats.__dict__},
            [str(count)],
        )
    elif args.json:
        graphs = [graph6.encode(g) for g in it]
        _emit(args, {"m": args.m, "count": len(graphs), "graphs": graphs}, [])
    else:
        graph6.write_stream(it, sys.stdout)
    return EXIT_PASS


def cmd_scan(args) -> int:
    f = ForbiddenSpec.parse(args.forbidden)
    recs = extremal_scan(args.m, f, args.top_k, args.tol, args.margin, args.workers, args.max_m)
    if args.store:
        append_records(args.store, recs)
    _emit(args, {"records": [_record_dict(r) for r in recs]}, [_record_line(r) for r in recs])
    return EXIT_FAIL if recs and recs[0].indistinguishable else EXIT_PASS


def cmd_search(args) -> int:
    f = ForbiddenSpec.parse(args.forbidden)
    excluded = [canonical_form(g) for g in _graphs(args.exclude)] if args.exclude else []
    if args.exclude_extremal:
        excluded.append(canonical_form(build_family(extremal_spec(args.m))))
    cfg = SearchConfig(
        m=args.m,
        forbidden=f,
        excluded=tuple(excluded),
        restarts=args.restarts,
        max_steps=args.max_steps,
        seed=args.seed,
        margin=args.margin,
        workers=args.workers,
        debug=args.debug,
    )
    run = local_search(cfg)
    if args.store:
        append_records(args.store, [run.best])
    lines = [f"restart {i}: rho={r.rho:.12f} steps={r.steps}  {r.graph6}" for i, r in enumerate(run.restarts)]
    lines.append("best: " + _record_line(run.best))
    _emit(args, run.to_dict(), lines)
    return EXIT_PASS


def cmd_certify(args) -> int:
    f = ForbiddenSpec.parse(args.forbidden)
    cert = certify_theorem(
        args.m,
        args.mode,
        f,
        tol=args.tol,
        margin=args.margin,
        seed=args.seed,
        restarts=args.restarts,
        workers=args.workers,
        max_m=args.max_m,
    )
    if args.store:
        append_records(args.store, cert.records)
    lines = [f"m={cert.m} mode={cert.mode} ({cert.label})"]
    if cert.pool_size:
        lines.append(f"pool size {cert.pool_size}")
    lines += [_record_line(r) for r in cert.records]
    lines += [f"note: {n}" for n in cert.notes]
    lines.append(f"verdict: {cert.verdict.value}")
    _emit(args, cert.to_dict(), lines)
    return cert.verdict.exit_code


def cmd_check_lemma22(args) -> int:
    t0 = time.perf_counter()
    reports = []
    for m in range(args.m_min | 1, args.m_max + 1, 2):
        reports.append(check_lemma22(m, tuple(args.t), args.margin))
    bad = [r for r in reports if not r.ok]
    worst_bound = min(r.bound_margin for r in reports) if reports else math.nan
    worst_dom = min((d[1] for r in reports for d in r.dominance.values()), default=math.nan)
    verdict = Verdict.PASS if reports and not bad else Verdict.FAIL
    payload = {
        "checked": len(reports),
        "t": list(args.t),
        "min_bound_margin": worst_bound,
        "min_dominance_margin": worst_dom,
        "flagged": {r.m: r.flagged for r in bad},
        "seconds": time.perf_counter() - t0,
        "verdict": verdict.value,
    }
    lines = [
        f"checked {len(reports)} odd m in [{args.m_min}, {args.m_max}], t in {list(args.t)}",
        f"smallest margin over the bound: {worst_bound:.3e}",
        f"smallest margin over larger t:  {worst_dom:.3e}",
    ]
    lines += [f"m={r.m}: {', '.join(r.flagged)}" for r in bad]
    lines.append(f"verdict: {verdict.value}")
    _emit(args, payload, lines)
    return verdict.exit_code


def cmd_identity_check(args) -> int:
    rng = rng_for(args.seed)
    worst = 0.0
    checked = 0
    for _ in range(args.count):
        n = int(rng.integers(2, args.max_n + 1))
        g = random_connected_graph(rng, n)
        d = perron(g, args.tol)
        for u in range(n):
            lhs, rhs = walk_identity_terms(g, u, d)
            worst = max(worst, abs(lhs - rhs) / (d.rho**2 * d.x[u]))
            checked += 1
    verdict = Verdict.PASS if worst <= args.threshold else Verdict.FAIL
    _emit(
        args,
        {"graphs": args.count, "vertices": checked, "max_relative_residual": worst, "verdict": verdict.value},
        [
            f"{args.count} graphs, {checked} vertices, max relative residual {worst:.3e}",
            f"verdict: {verdict.value}",
        ],
    )
    return verdict.exit_code


def cmd_records(args) -> int:
    recs = query_records(
        args.store, args.m_min, args.m_max, args.method, args.verdict, args.rank, args.forbidden
    )
    _emit(args, {"records": [_record_dict(r) for r in recs]}, [_record_line(r) for r in recs])
    return EXIT_PASS


# ----------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    def globals_(suppress: bool) -> argparse.ArgumentParser:
        # subcommands repeat the global flags without clobbering values
        # given before the subcommand name
        g = argparse.ArgumentParser(add_help=False)

        def d(value):
            return argparse.SUPPRESS if suppress else value

        g.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
        g.add_argument("--seed", type=int, default=d(0), help="RNG seed (PCG64)")
        g.add_argument("--tol", type=float, default=d(DEFAULT_TOL), help="power-iteration residual tolerance")
        g.add_argument("--margin", type=float, default=d(DEFAULT_MARGIN), help="smallest gap counted as a strict win")
        g.add_argument("-v", "--verbose", action="store_true", default=d(False))
        return g

    common = globals_(True)

    p = argparse.ArgumentParser(
        prog="gemturan",
        parents=[globals_(False)],
        description=f"Spectral Turan tools for the gem (kernel backend: {BACKEND}).",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, func, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help, description=help)
        sp.set_defaults(func=func)
        return sp

    def forbidden(sp):
        sp.add_argument("--forbidden", default="gem", help="'gem' or a graph6 pattern")

    def sizes(sp):
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--max-m", type=int, default=DEFAULT_MAX_M, help="enumeration guard override")

    sp = add("build", cmd_build, "build a named construction and print its graph6")
    sp.add_argument("kind")
    sp.add_argument("params", type=int, nargs="*")
    sp.add_argument("--canonical", action="store_true", help="print the canonical form")

    sp = add("rho", cmd_rho, "spectral radius of graph6 inputs ('-' reads stdin)")
    sp.add_argument("graphs", nargs="*")
    sp.add_argument("--vector", action="store_true", help="include the Perron vector")
    sp.add_argument("--family", nargs="+", metavar="KIND", help="also report the exact value for a family")

    sp = add("free", cmd_free, "test graph6 inputs for the forbidden subgraph")
    sp.add_argument("graphs", nargs="*")
    forbidden(sp)

    sp = add("enum", cmd_enum, "enumerate F-free graphs with m edges as graph6")
    sp.add_argument("m", type=int)
    forbidden(sp)
    sizes(sp)
    sp.add_argument("--all", action="store_true", help="include disconnected graphs")
    sp.add_argument("--unpruned", action="store_true", help="no forbidden-subgraph pruning")
    sp.add_argument("--count", action="store_true", help="print only the count")

    sp = add("scan", cmd_scan, "rank connected F-free graphs with m edges by rho")
    sp.add_argument("m", type=int)
    sp.add_argument("--top-k", type=int, default=2)
    sp.add_argument("--store", help="append records to this JSON-lines file")
    forbidden(sp)
    sizes(sp)

    sp = add("search", cmd_search, "hill-climbing search with restarts")
    sp.add_argument("m", type=int)
    sp.add_argument("--restarts", type=int, default=20)
    sp.add_argument("--max-steps", type=int, default=10_000)
    sp.add_argument("--exclude", nargs="*", default=[], metavar="G6", help="graphs banned from the result")
    sp.add_argument("--exclude-extremal", action="store_true", help="ban S_{(m+3)/2,2}")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--debug", action="store_true", help="assert feasibility at every step")
    sp.add_argument("--store")
    forbidden(sp)

    sp = add("certify", cmd_certify, "certify the maximizer and runner-up for m edges")
    sp.add_argument("m", type=int)
    sp.add_argument("--mode", choices=("exhaustive", "pool"), default="exhaustive")
    sp.add_argument("--restarts", type=int, default=20)
    sp.add_argument("--store")
    forbidden(sp)
    sizes(sp)

    sp = add("check-lemma22", cmd_check_lemma22, "runner-up against the bound and larger pendant counts")
    sp.add_argument("--m-min", type=int, default=23)
    sp.add_argument("--m-max", type=int, default=1001)
    sp.add_argument("--t", type=int, nargs="+", default=[4, 6, 8, 10])

    sp = add("identity-check", cmd_identity_check, "walk identity on seeded random connected graphs")
    sp.add_argument("--count", type=int, default=1000)
    sp.add_argument("--max-n", type=int, default=12)
    sp.add_argument("--threshold", type=float, default=1e-6, help="largest accepted relative residual")

    sp = add("records", cmd_records, "query a record store")
    sp.add_argument("store")
    sp.add_argument("--m-min", type=int)
    sp.add_argument("--m-max", type=int)
    sp.add_argument("--method")
    sp.add_argument("--verdict")
    sp.add_argument("--rank", type=int)
    sp.add_argument("--forbidden")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PASS if exc.code == 0 else EXIT_ERROR
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (CliError, GraphError, ValueError, ConvergenceError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
