"""Set systems over a labeled ground set: twist, D_G, its extremal members.

The independence partition of a matrix (independent sets I, dependent
sets D) has no type of its own; ``is_independent`` and ``bases`` in
``f2linalg`` expose I and max(I), and ``circuits`` below gives min(D).
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import CapExceededError, GroundMismatchError, NotGraphicSystemError
from .f2linalg import Graph, VertexSet, det_mask, kernel, rank_of, bits_of

ENUMERATION_CAP = 20


class SetSystem:
    """A ground set with a family of subsets, kept deduplicated and sorted by bits."""

    __slots__ = ("ground", "_bits")

    def __init__(self, ground: Sequence[str], family: Iterable = ()):
        self.ground = tuple(ground)
        masks = set()
        for member in family:
            if isinstance(member, int):
                if member < 0 or member >> len(self.ground):
                    raise ValueError(f"member {member:#x} outside ground")
                masks.add(member)
            elif isinstance(member, VertexSet) and member.ground == self.ground:
                masks.add(member.bits)
            else:
                masks.add(VertexSet.of(self.ground, member).bits)
        self._bits = tuple(sorted(masks))

    @property
    def family(self) -> list[VertexSet]:
        return [VertexSet(self.ground, m) for m in self._bits]

    @property
    def family_bits(self) -> tuple[int, ...]:
        return self._bits

    def members(self) -> set[frozenset]:
        return {s.members for s in self.family}

    def __len__(self):
        return len(self._bits)

    def __iter__(self):
        return iter(self.family)

    def __contains__(self, item) -> bool:
        if isinstance(item, VertexSet) and item.ground == self.ground:
            m = item.bits
        else:
            m = VertexSet.of(self.ground, item).bits
        return m in self._bits

    def __eq__(self, other):
        if not isinstance(other, SetSystem):
            return NotImplemented
        if self.ground == other.ground:
            return self._bits == other._bits
        return set(self.ground) == set(other.ground) and self.members() == other.members()

    def __hash__(self):
        return hash((frozenset(self.ground), frozenset(self.members())))

    def __repr__(self):
        return "SetSystem(" + ", ".join(repr(s) for s in self.family) + ")"


def twist(m: SetSystem, x) -> SetSystem:
    xm = VertexSet.of(m.ground, x).bits if not isinstance(x, VertexSet) or x.ground != m.ground else x.bits
    return SetSystem(m.ground, (s ^ xm for s in m.family_bits))


def _check_cap(g: Graph, what: str):
    if g.n > ENUMERATION_CAP:
        raise CapExceededError(what, g.n, ENUMERATION_CAP)


def delta_matroid_masks(g: Graph) -> list[int]:
    return [m for m in range(1 << g.n) if det_mask(g.rows, m)]


def delta_matroid(g: Graph) -> SetSystem:
    """All X with det g[X] = 1, by enumeration of every subset."""
    _check_cap(g, "delta_matroid")
    return SetSystem(g.labels, delta_matroid_masks(g))


def maximal_masks(masks: Iterable[int]) -> list[int]:
    by_size: dict[int, list[int]] = {}
    for m in masks:
        by_size.setdefault(bin(m).count("1"), []).append(m)
    sizes = sorted(by_size)
    out = []
    for k in sizes:
        larger = [b for s in sizes if s > k for b in by_size[s]]
        out.extend(m for m in by_size[k] if not any(b & m == m for b in larger))
    return sorted(out)


def minimal_masks(masks: Iterable[int]) -> list[int]:
    by_size: dict[int, list[int]] = {}
    for m in masks:
        if m:
            by_size.setdefault(bin(m).count("1"), []).append(m)
    sizes = sorted(by_size)
    out = []
    for k in sizes:
        smaller = [b for s in sizes if s < k for b in by_size[s]]
        out.extend(m for m in by_size[k] if not any(b & m == b for b in smaller))
    return sorted(out)


def maximal_family(g: Graph) -> SetSystem:
    """Inclusion-maximal members of D_G."""
    _check_cap(g, "maximal_family")
    return SetSystem(g.labels, maximal_masks(delta_matroid_masks(g)))


def minimal_family(g: Graph) -> SetSystem:
    """Inclusion-minimal nonempty members of D_G."""
    _check_cap(g, "minimal_family")
    return SetSystem(g.labels, minimal_masks(delta_matroid_masks(g)))


def circuits(g: Graph) -> SetSystem:
    """Minimal dependent column sets."""
    _check_cap(g, "circuits")
    dependent = [
        m for m in range(1, 1 << g.n)
        if rank_of(g.rows[i] for i in bits_of(m)) < bin(m).count("1")
    ]
    return SetSystem(g.labels, minimal_masks(dependent))


def reconstruct_graph(m: SetSystem) -> Graph:
    """Rebuild the graph whose D_G is ``m``, from its sets of size at most two."""
    bits = set(m.family_bits)
    if 0 not in bits:
        raise NotGraphicSystemError("the empty set is not a member, so the system is not D_G of a graph")
    n = len(m.ground)
    rows = [0] * n
    for i in range(n):
        if (1 << i) in bits:
            rows[i] |= 1 << i
    for i in range(n):
        for j in range(i + 1, n):
            pair = ((1 << i) | (1 << j)) in bits
            both = (1 << i) in bits and (1 << j) in bits
            if pair != both:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    return Graph._make(m.ground, rows)


def kernel_bases_equivalence(g1: Graph, g2: Graph) -> bool:
    """Check that equal kernels coincide with equal families of bases.

    Kernels are compared as subspaces; bases are taken as the maximal
    members of D_G.  Returns whether the two comparisons agree.
    """
    if set(g1.labels) != set(g2.labels) or g1.n != g2.n:
        raise GroundMismatchError(f"{g1.labels} and {g2.labels} have different vertex sets")
    same_kernel = kernel(g1) == kernel(g2)
    same_bases = maximal_family(g1) == maximal_family(g2)
    return same_kernel == same_bases
