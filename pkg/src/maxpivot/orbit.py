"""Orbits of a graph under pivot and dual pivot, and contraction DAGs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .errors import CapExceededError
from .f2linalg import Graph, VertexSet, add_identity, det_mask, kernel, nullity
from .pivot import (
    apply_elementary,
    contraction,
    dual_pivot,
    elementary_masks,
    pivot,
)
from .setsystem import delta_matroid_masks, maximal_family, maximal_masks

ORBIT_CAP = 16

PIVOT = "pivot"
DUAL = "dual"
CONTRACTION = "contraction"


class OrbitEdge(NamedTuple):
    src: int
    dst: int
    move: VertexSet
    kind: str


@dataclass
class OrbitGraph:
    nodes: list[Graph]
    edges: list[OrbitEdge] = field(default_factory=list)
    root: int = 0

    def index_of(self, g: Graph) -> int | None:
        for i, node in enumerate(self.nodes):
            if node == g:
                return i
        return None

    def __contains__(self, g: Graph) -> bool:
        return self.index_of(g) is not None

    def __len__(self):
        return len(self.nodes)

    def successors(self, i: int) -> list[OrbitEdge]:
        return [e for e in self.edges if e.src == i]

    def sinks(self) -> list[Graph]:
        sources = {e.src for e in self.edges}
        return [g for i, g in enumerate(self.nodes) if i not in sources]

    def undirected_moves(self) -> list[OrbitEdge]:
        """One edge per involutive pair; self-loops kept once."""
        seen = set()
        out = []
        for e in self.edges:
            key = (min(e.src, e.dst), max(e.src, e.dst), e.move, e.kind)
            if key in seen:
                continue
            seen.add(key)
            out.append(e)
        return out

    def replays(self) -> bool:
        """Every recorded move, reapplied, reaches its recorded target."""
        for e in self.edges:
            g = self.nodes[e.src]
            if e.kind == PIVOT:
                target = pivot(g, e.move)
            elif e.kind == DUAL:
                target = dual_pivot(g, e.move)
            else:
                target = contraction(g, e.move)
            if target != self.nodes[e.dst]:
                return False
        return True


def _check_cap(g: Graph, what: str):
    if g.n > ORBIT_CAP:
        raise CapExceededError(what, g.n, ORBIT_CAP)


def _closure(g: Graph, moves: Callable[[Graph], list[int]], step: Callable, kind: str) -> OrbitGraph:
    orbit = OrbitGraph(nodes=[g])
    where = {g: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        node = orbit.nodes[i]
        for m in moves(node):
            move = VertexSet(node.labels, m)
            target = step(node, move)
            j = where.get(target)
            if j is None:
                j = len(orbit.nodes)
                where[target] = j
                orbit.nodes.append(target)
                queue.append(j)
            orbit.edges.append(OrbitEdge(i, j, move, kind))
    return orbit


def pivot_orbit(g: Graph) -> OrbitGraph:
    """Breadth-first closure of g under elementary pivots."""
    _check_cap(g, "pivot_orbit")
    return _closure(g, elementary_masks, apply_elementary, PIVOT)


def _dual_moves(g: Graph) -> list[int]:
    return elementary_masks(add_identity(g))


def _dual_step(g: Graph, move: VertexSet) -> Graph:
    return add_identity(apply_elementary(add_identity(g), move))


def dual_orbit(g: Graph) -> OrbitGraph:
    """Breadth-first closure of g under elementary dual pivots."""
    _check_cap(g, "dual_orbit")
    return _closure(g, _dual_moves, _dual_step, DUAL)


def pivot_orbit_by_enumeration(g: Graph) -> set[Graph]:
    """{g * X : det g[X] = 1}, computed from every pivot set directly."""
    _check_cap(g, "pivot_orbit_by_enumeration")
    return {pivot(g, VertexSet(g.labels, m)) for m in delta_matroid_masks(g)}


def dual_orbit_by_enumeration(g: Graph) -> set[Graph]:
    _check_cap(g, "dual_orbit_by_enumeration")
    h = add_identity(g)
    return {dual_pivot(g, VertexSet(g.labels, m)) for m in delta_matroid_masks(h)}


def verify_theorem_dual(g: Graph) -> bool:
    """All graphs in the dual orbit of g share the family of maximal pivot sets."""
    _check_cap(g, "verify_theorem_dual")
    families = {maximal_family(node) for node in dual_orbit(g).nodes}
    return len(families) == 1


def verify_kernel_invariance(g: Graph) -> bool:
    """Every graph in the dual orbit of g has the kernel of g."""
    ker = kernel(g)
    return all(kernel(node) == ker for node in dual_orbit(g).nodes)


def maximal_contraction_results(g: Graph) -> list[Graph]:
    """Graphs g *\\ X for X maximal in D_G, deduplicated, in family order."""
    _check_cap(g, "maximal_contraction_results")
    out: list[Graph] = []
    for m in maximal_masks(delta_matroid_masks(g)):
        h = contraction(g, VertexSet(g.labels, m))
        if h not in out:
            out.append(h)
    return out


def verify_maximal_contractions(g: Graph) -> bool:
    """Maximal contractions give the same discrete graphs across the dual orbit."""
    _check_cap(g, "verify_maximal_contractions")
    k = nullity(g)
    reference = None
    for node in dual_orbit(g).nodes:
        results = maximal_contraction_results(node)
        if any(not h.is_discrete() or h.n != k for h in results):
            return False
        labels = frozenset(frozenset(h.labels) for h in results)
        if reference is None:
            reference = labels
        elif labels != reference:
            return False
    return True


def contraction_dag(g: Graph) -> OrbitGraph:
    """All graphs reachable by contracting elementary pivot sets."""
    _check_cap(g, "contraction_dag")
    return _closure(g, elementary_masks, contraction, CONTRACTION)


def non_converse_witness(n: int = 2) -> Graph | None:
    """A graph with det 1 other than I; it shares max D_G = {V} with I yet lies outside O_I."""
    labels = tuple(chr(ord("a") + i) for i in range(n))
    identity = Graph._make(labels, [1 << i for i in range(n)])
    orbit_i = dual_orbit(identity)
    full = (1 << n) - 1
    for g in all_graphs(labels):
        if g == identity or not det_mask(g.rows, full):
            continue
        if maximal_family(g) == maximal_family(identity) and g not in orbit_i:
            return g
    return None


def all_graphs(labels) -> list[Graph]:
    """Every labeled graph (loops allowed) on ``labels``, in a fixed order."""
    labels = tuple(labels)
    n = len(labels)
    slots = [(i, j) for i in range(n) for j in range(i, n)]
    out = []
    for code in range(1 << len(slots)):
        rows = [0] * n
        for b, (i, j) in enumerate(slots):
            if (code >> b) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        out.append(Graph._make(labels, rows))
    return out
