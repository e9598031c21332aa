"""Exhaustive property sweeps over all small labeled graphs.

Each property is a function of one graph that returns a list of failure
messages.  Orbit-level properties are checked once per dual orbit, since
the graphs of an orbit all make the same statement.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Callable

from .f2linalg import Graph, VertexSet, add_identity, bases, det_mask, kernel, matvec
from .geneassembly import (
    gnr_exceptions,
    gnrdom_family,
    gnrdom_family_from_maximal,
    parse_legal_string,
    random_legal_string,
    simulation_failures,
    verify_theorem_ga_gnr,
)
from .orbit import all_graphs, dual_orbit, verify_maximal_contractions, verify_theorem_dual
from .pivot import _pivot_rows, dual_pivot, dual_pivot_by_row_ops, pivot, pivot_by_decomposition
from .setsystem import SetSystem, delta_matroid, delta_matroid_masks, maximal_family, reconstruct_graph

LABELS = "abcdefgh"


def graphs_up_to(max_n: int, min_n: int = 0):
    for n in range(min_n, max_n + 1):
        yield from all_graphs(LABELS[:n])


def tucker(g: Graph) -> list[str]:
    out = []
    space = 1 << g.n
    for m in delta_matroid_masks(g):
        h = _pivot_rows(g.rows, g.full_mask, m)
        for y in range(space):
            if det_mask(h, y) != det_mask(g.rows, m ^ y):
                out.append(f"{g!r}: det (g*{VertexSet(g.labels, m)!r})[{VertexSet(g.labels, y)!r}] mismatch")
    return out


def partial_inverse(g: Graph) -> list[str]:
    out = []
    for m in delta_matroid_masks(g):
        h = _pivot_rows(g.rows, g.full_mask, m)
        rest = g.full_mask & ~m
        for v in range(1 << g.n):
            y = matvec(g.rows, v)
            if matvec(h, (y & m) | (v & rest)) != (v & m) | (y & rest):
                out.append(f"{g!r}: partial inverse fails on x={VertexSet(g.labels, m)!r}, probe {v:#x}")
    return out


def _compositions(rows: tuple, full: int, shift: bool) -> list[tuple[int, int]]:
    """(x, y) pairs where (g*x)*y differs from g*(x^y), or where g*(x^y) is undefined.

    With ``shift`` set, pivots are taken on g + I, which is the dual pivot.
    """
    if shift:
        rows = tuple(r ^ (1 << i) for i, r in enumerate(rows))
    table = {}
    for m in range(full + 1):
        h = _pivot_rows(rows, full, m)
        if h is not None:
            table[m] = tuple(h)
    bad = []
    for m, h in table.items():
        for y in range(full + 1):
            hy = _pivot_rows(h, full, y)
            if hy is not None and tuple(hy) != table.get(m ^ y):
                bad.append((m, y))
    return bad


def involution_composition(g: Graph) -> list[str]:
    out = []
    for m in delta_matroid_masks(g):
        x = VertexSet(g.labels, m)
        h = pivot(g, x)
        if pivot(h, x) != g:
            out.append(f"{g!r}: pivot on {x!r} is not an involution")
        if pivot_by_decomposition(g, x) != h:
            out.append(f"{g!r}: elementary decomposition of {x!r} disagrees with the block formula")
    for m, y in _compositions(tuple(g.rows), g.full_mask, False):
        out.append(f"{g!r}: (g*{VertexSet(g.labels, m)!r})*{VertexSet(g.labels, y)!r} != g*(x^y)")
    gi = add_identity(g)
    for m in delta_matroid_masks(gi):
        x = VertexSet(g.labels, m)
        h = dual_pivot(g, x)
        if dual_pivot(h, x) != g:
            out.append(f"{g!r}: dual pivot on {x!r} is not an involution")
    for m, y in _compositions(tuple(g.rows), g.full_mask, True):
        out.append(f"{g!r}: dual pivot composition fails for {VertexSet(g.labels, m)!r}, {VertexSet(g.labels, y)!r}")
    return out


def kernel_invariance(g: Graph) -> list[str]:
    ker = kernel(g)
    return [
        f"{g!r}: kernel changes under dual pivot on {VertexSet(g.labels, m)!r}"
        for m in delta_matroid_masks(add_identity(g))
        if kernel(dual_pivot(g, VertexSet(g.labels, m))) != ker
    ]


def maximal_equals_bases(g: Graph) -> list[str]:
    if maximal_family(g) != SetSystem(g.labels, bases(g)):
        return [f"{g!r}: maximal pivot sets differ from the bases"]
    return []


def reconstruct_roundtrip(g: Graph) -> list[str]:
    if reconstruct_graph(delta_matroid(g)) != g:
        return [f"{g!r}: reconstruction from D_G fails"]
    return []


def row_operations(g: Graph) -> list[str]:
    return [
        f"{g!r}: row operations disagree with dual pivot on {VertexSet(g.labels, m)!r}"
        for m in delta_matroid_masks(add_identity(g))
        if dual_pivot_by_row_ops(g, VertexSet(g.labels, m)) != dual_pivot(g, VertexSet(g.labels, m))
    ]


def theorem_dual(g: Graph) -> list[str]:
    return [] if verify_theorem_dual(g) else [f"{g!r}: maximal pivot sets vary across the dual orbit"]


def maximal_contractions(g: Graph) -> list[str]:
    return [] if verify_maximal_contractions(g) else [f"{g!r}: maximal contractions vary across the dual orbit"]


def gnrdom(g: Graph) -> list[str]:
    out = []
    if not verify_theorem_ga_gnr(g):
        out.append(f"{g!r}: gnrdom families vary across the dual orbit")
    for node in dual_orbit(g).nodes:
        if gnrdom_family(node) != gnrdom_family_from_maximal(node):
            out.append(f"{node!r}: gnrdom family is not the complements of the maximal pivot sets")
    return out


def lemma_kernel_maximal(graphs: list[Graph]) -> list[str]:
    """Equal maximal pivot sets iff equal kernels, over all pairs."""
    keys = [(kernel(g).basis_bits, maximal_family(g).family_bits) for g in graphs]
    out = []
    for i, (k1, f1) in enumerate(keys):
        for j in range(i + 1, len(keys)):
            k2, f2 = keys[j]
            if (k1 == k2) != (f1 == f2):
                out.append(f"{graphs[i]!r} vs {graphs[j]!r}: kernel / maximal-family equality disagree")
    return out


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: {self.checked} checked, {len(self.failures)} failures, {self.seconds:.2f}s"
        if self.failures:
            text += f"\n    first failure: {self.failures[0]}"
        return text


GRAPH_PROPERTIES: list[tuple[str, Callable[[Graph], list[str]], bool]] = [
    ("tucker", tucker, False),
    ("partial-inverse", partial_inverse, False),
    ("involution-composition", involution_composition, False),
    ("kernel-invariance", kernel_invariance, False),
    ("maximal-equals-bases", maximal_equals_bases, False),
    ("theorem-dual", theorem_dual, True),
    ("maximal-contractions", maximal_contractions, True),
    ("gnrdom", gnrdom, True),
    ("reconstruct", reconstruct_roundtrip, False),
    ("row-operations", row_operations, False),
]


def run_graph_property(name: str, check, per_orbit: bool, max_n: int, min_n: int = 0) -> PropertyResult:
    result = PropertyResult(f"{name} (n<={max_n})")
    start = time.perf_counter()
    covered: set[Graph] = set()
    for g in graphs_up_to(max_n, min_n):
        result.checked += 1
        if per_orbit:
            if g in covered:
                continue
            covered.update(dual_orbit(g).nodes)
        result.failures.extend(check(g))
    result.seconds = time.perf_counter() - start
    return result


def run_lemma_pairs(max_n: int = 3) -> PropertyResult:
    result = PropertyResult(f"kernel-iff-maximal pairs (n<={max_n})")
    start = time.perf_counter()
    for n in range(max_n + 1):
        graphs = all_graphs(LABELS[:n])
        result.checked += len(graphs) * (len(graphs) - 1) // 2
        result.failures.extend(lemma_kernel_maximal(graphs))
    result.seconds = time.perf_counter() - start
    return result


def run_simulation(count: int = 1000, seed: int = 0, max_letters: int = 6) -> PropertyResult:
    result = PropertyResult(f"string-graph simulation ({count} strings, seed {seed})")
    start = time.perf_counter()
    rng = random.Random(seed)
    for _ in range(count):
        u = random_legal_string(rng, max_letters)
        result.checked += 1
        result.failures.extend(simulation_failures(u))
    witness = parse_legal_string("x y y x")
    result.checked += 1
    if simulation_failures(witness) or gnr_exceptions(witness) != ["x"]:
        result.failures.append("'x y y x' does not exhibit the gnr exception on x")
    result.seconds = time.perf_counter() - start
    return result


def run_all(max_n: int = 4, seed: int = 0, strings: int = 1000, pair_n: int = 3) -> list[PropertyResult]:
    results = [run_graph_property(name, check, per_orbit, max_n) for name, check, per_orbit in GRAPH_PROPERTIES]
    results.append(run_lemma_pairs(min(pair_n, max_n)))
    results.append(run_simulation(strings, seed))
    return results
