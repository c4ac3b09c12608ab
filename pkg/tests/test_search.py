import pytest

from gemturan.canon import canonical_form
from gemturan.families import build_family, extremal_spec, runner_up_spec
from gemturan.forbidden import GEM, contains_subgraph
from gemturan.graph6 import decode
from gemturan.search import SearchConfig, local_search


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(m=5, restarts=0)
    with pytest.raises(ValueError):
        SearchConfig(m=0)
    with pytest.raises(ValueError):
        SearchConfig(m=5, seed=-1)


def test_deterministic():
    a = local_search(SearchConfig(m=13, restarts=4, seed=7))
    b = local_search(SearchConfig(m=13, restarts=4, seed=7))
    assert a.restarts == b.restarts
    assert a.best == b.best


def test_workers_do_not_change_result():
    a = local_search(SearchConfig(m=13, restarts=4, seed=3))
    b = local_search(SearchConfig(m=13, restarts=4, seed=3, workers=2))
    assert a.restarts == b.restarts


@pytest.mark.parametrize("m", [11, 13, 15])
def test_finds_extremal_graph(m):
    run = local_search(SearchConfig(m=m, restarts=10, seed=0))
    assert run.best.graph6 == str(canonical_form(build_family(extremal_spec(m))))
    assert run.best.rank == 1 and run.best.method == "local-search"


def test_results_are_feasible_in_debug_mode():
    run = local_search(SearchConfig(m=17, restarts=3, seed=1, debug=True))
    for r in run.restarts:
        g = decode(r.graph6)
        assert g.m == 17 and g.is_connected() and not contains_subgraph(g, GEM)


def test_exclusion():
    m = 23
    s1 = canonical_form(build_family(extremal_spec(m)))
    run = local_search(SearchConfig(m=m, excluded=(s1,), restarts=20, seed=0))
    assert all(r.graph6 != str(s1) for r in run.restarts)
    assert run.best.rank == 2
    assert run.best.graph6 == str(canonical_form(build_family(runner_up_spec(m))))


def test_margin_and_log():
    run = local_search(SearchConfig(m=13, restarts=6, seed=2))
    d = run.to_dict()
    assert d["config"]["m"] == 13 and len(d["restarts"]) == 6
    if run.best.margin != float("inf"):
        others = [r.rho for r in run.restarts if r.graph6 != run.best.graph6]
        assert abs(run.best.margin - (run.best.rho - max(others))) < 1e-12
    assert run.best_graph.m == 13
