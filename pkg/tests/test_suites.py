"""The sweep checkers pass on the real code and catch deliberately broken code."""

import maxpivot.suites as suites
from maxpivot import Graph
from maxpivot.pivot import _pivot_rows
from maxpivot.suites import (
    PropertyResult,
    graphs_up_to,
    lemma_kernel_maximal,
    run_all,
    run_graph_property,
    run_simulation,
)
from reference_graphs import G, make


def test_graphs_up_to_counts():
    assert sum(1 for _ in graphs_up_to(3)) == 1 + 2 + 8 + 64
    assert sum(1 for _ in graphs_up_to(3, min_n=3)) == 64


def test_all_checkers_clean_on_example():
    for name, check, _ in suites.GRAPH_PROPERTIES:
        assert check(G) == [], name


def test_run_all_small():
    results = run_all(max_n=2, strings=30)
    assert all(r.passed for r in results)
    assert len(results) == len(suites.GRAPH_PROPERTIES) + 2


def test_result_line():
    ok = PropertyResult("x", checked=3, seconds=0.5)
    assert ok.line() == "PASS x: 3 checked, 0 failures, 0.50s"
    bad = PropertyResult("y", checked=1, failures=["boom"])
    assert bad.line().startswith("FAIL y") and "boom" in bad.line()


def _flip_last(rows, full, m):
    out = _pivot_rows(rows, full, m)
    if out is None or not m:
        return out
    out = list(out)
    out[-1] ^= 1 << (len(out) - 1)
    return out


def test_tucker_and_partial_inverse_catch_broken_pivot(monkeypatch):
    monkeypatch.setattr(suites, "_pivot_rows", _flip_last)
    assert suites.tucker(G)
    assert suites.partial_inverse(G)


def test_involution_catches_broken_pivot(monkeypatch):
    real = suites.pivot

    def broken(g, x):
        h = real(g, x)
        return Graph(h.labels, [r ^ (1 if i == 0 else 0) for i, r in enumerate(h.rows)])

    monkeypatch.setattr(suites, "pivot", broken)
    assert suites.involution_composition(G)


def test_composition_catches_broken_pivot(monkeypatch):
    monkeypatch.setattr(suites, "_pivot_rows", _flip_last)
    assert suites._compositions(tuple(G.rows), G.full_mask, False)


def test_row_operations_catches_mismatch(monkeypatch):
    monkeypatch.setattr(suites, "dual_pivot_by_row_ops", lambda g, x: g)
    assert suites.row_operations(G)


def test_kernel_invariance_catches_broken_dual(monkeypatch):
    monkeypatch.setattr(suites, "dual_pivot", lambda g, x: make("", "", g.labels))
    assert suites.kernel_invariance(G)


def test_reconstruct_catches_broken_inverse(monkeypatch):
    monkeypatch.setattr(suites, "reconstruct_graph", lambda m: make("", "", m.ground))
    assert suites.reconstruct_roundtrip(G)


def test_maximal_equals_bases_catches_mismatch(monkeypatch):
    monkeypatch.setattr(suites, "bases", lambda g: [])
    assert suites.maximal_equals_bases(G)


def test_orbit_checks_catch_failures(monkeypatch):
    monkeypatch.setattr(suites, "verify_theorem_dual", lambda g: False)
    monkeypatch.setattr(suites, "verify_maximal_contractions", lambda g: False)
    monkeypatch.setattr(suites, "verify_theorem_ga_gnr", lambda g: False)
    assert suites.theorem_dual(G) and suites.maximal_contractions(G) and suites.gnrdom(G)


def test_lemma_pairs_catch_disagreement(monkeypatch):
    graphs = [make("", "", "ab"), make("", "ab", "ab")]
    assert lemma_kernel_maximal(graphs) == []
    real = suites.kernel
    monkeypatch.setattr(suites, "kernel", lambda g: real(make("", "", g.labels)))
    assert lemma_kernel_maximal(graphs)


def test_per_orbit_sweep_counts_every_graph():
    result = run_graph_property("theorem-dual", suites.theorem_dual, True, 3)
    assert result.checked == 1 + 2 + 8 + 64 and result.passed


def test_simulation_is_seeded():
    a = run_simulation(50, seed=7)
    b = run_simulation(50, seed=7)
    assert a.passed and a.checked == b.checked == 51
