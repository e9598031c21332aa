"""Pivot (principal pivot transform) on graphs over F2 and its relatives.

``pivot`` evaluates the block formula directly.  ``decompose_pivot`` splits
a pivot set into elementary pieces (local and edge complementations), which
gives a second, independent route to the same graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DualPivotUndefinedError,
    InvariantViolation,
    NotElementaryError,
    PivotUndefinedError,
)
from .f2linalg import (
    Graph,
    VertexSet,
    add_identity,
    bits_of,
    det_mask,
    matvec,
    rank,
    restrict_rows,
)


@dataclass(frozen=True)
class PivotBlocks:
    """The four blocks of a matrix split along ``inside`` / ``outside``.

    Each block is a tuple of row bit masks over dense column indices.
    """

    inside: tuple[str, ...]
    outside: tuple[str, ...]
    p: tuple[int, ...]
    q: tuple[int, ...]
    r: tuple[int, ...]
    s: tuple[int, ...]

    def reassemble(self) -> Graph:
        labels = self.inside + self.outside
        k = len(self.inside)
        rows = [p | (q << k) for p, q in zip(self.p, self.q)]
        rows += [r | (s << k) for r, s in zip(self.r, self.s)]
        return Graph(labels, rows)


@dataclass(frozen=True)
class NeighborhoodPartition:
    v1: VertexSet
    v2: VertexSet
    v3: VertexSet


def _dense_block(rows, row_positions, col_positions):
    return tuple(
        sum(((rows[i] >> c) & 1) << t for t, c in enumerate(col_positions))
        for i in row_positions
    )


def pivot_blocks(g: Graph, x) -> PivotBlocks:
    m = g.mask(x)
    inside = list(bits_of(m))
    outside = list(bits_of(g.full_mask & ~m))
    return PivotBlocks(
        inside=tuple(g.labels[i] for i in inside),
        outside=tuple(g.labels[i] for i in outside),
        p=_dense_block(g.rows, inside, inside),
        q=_dense_block(g.rows, inside, outside),
        r=_dense_block(g.rows, outside, inside),
        s=_dense_block(g.rows, outside, outside),
    )


def _invert_principal(rows, m: int) -> dict[int, int] | None:
    """Rows of the inverse of the principal submatrix on ``m``.

    Gauss-Jordan on [P | I]; returns None when P is singular.  Row and column
    indices stay in the global numbering.
    """
    idx = list(bits_of(m))
    work = [[rows[i] & m, 1 << i] for i in idx]
    for k, c in enumerate(idx):
        bit = 1 << c
        for j in range(k, len(work)):
            if work[j][0] & bit:
                break
        else:
            return None
        work[k], work[j] = work[j], work[k]
        left, right = work[k]
        for j in range(len(work)):
            if j != k and work[j][0] & bit:
                work[j][0] ^= left
                work[j][1] ^= right
    return {c: work[k][1] for k, c in enumerate(idx)}


def _pivot_rows(rows, full: int, m: int) -> list[int] | None:
    inv = _invert_principal(rows, m)
    if inv is None:
        return None
    rest = full & ~m
    out = list(rows)
    for i, inv_row in inv.items():
        pq = 0
        for k in bits_of(inv_row):
            pq ^= rows[k] & rest
        out[i] = inv_row | pq
    for i in bits_of(rest):
        rp = 0
        for k in bits_of(rows[i] & m):
            rp ^= inv[k]
        s = rows[i] & rest
        for k in bits_of(rp):
            s ^= rows[k] & rest
        out[i] = rp | s
    return out


def pivot(g: Graph, x) -> Graph:
    """g * x; requires det g[x] = 1."""
    m = g.mask(x)
    rows = _pivot_rows(g.rows, g.full_mask, m)
    if rows is None:
        raise PivotUndefinedError(VertexSet(g.labels, m).members)
    return Graph._make(g.labels, rows)


def verify_partial_inverse(g: Graph, x, probe) -> bool:
    """Check that g maps (x1, x2) to (y1, y2) iff g*x maps (y1, x2) to (x1, y2)."""
    m = g.mask(x)
    v = g.mask(probe)
    h = pivot(g, x)
    y = matvec(g.rows, v)
    rest = g.full_mask & ~m
    lhs = matvec(h.rows, (y & m) | (v & rest))
    return lhs == (v & m) | (y & rest)


def tucker_check(g: Graph, x, y) -> bool:
    """det (g*x)[y] == det g[x xor y]."""
    h = pivot(g, x)
    ym = g.mask(y)
    return det_mask(h.rows, ym) == det_mask(g.rows, g.mask(x) ^ ym)


def schur_complement(g: Graph, x) -> Graph:
    """S - R P^-1 Q on the vertices outside x, computed without the full pivot."""
    m = g.mask(x)
    inv = _invert_principal(g.rows, m)
    if inv is None:
        raise PivotUndefinedError(VertexSet(g.labels, m).members)
    rest = g.full_mask & ~m
    rows = list(g.rows)
    for i in bits_of(rest):
        # (R P^-1)_i restricted to x, then times Q
        rp = 0
        for k in bits_of(g.rows[i] & m):
            rp ^= inv[k]
        s = g.rows[i] & rest
        for k in bits_of(rp):
            s ^= g.rows[k] & rest
        rows[i] = s
    labels = tuple(g.labels[i] for i in bits_of(rest))
    return Graph._make(labels, restrict_rows(rows, rest))


def contraction(g: Graph, x) -> Graph:
    """Pivot on x, then delete x."""
    m = g.mask(x)
    h = pivot(g, x)
    rest = g.full_mask & ~m
    return Graph._make(tuple(g.labels[i] for i in bits_of(rest)), restrict_rows(h.rows, rest))


def local_complement(g: Graph, u: str) -> Graph:
    """Complement adjacency and loops inside the open neighbourhood of looped u."""
    i = g.position(u)
    row = g.rows[i]
    if not (row >> i) & 1:
        raise NotElementaryError(f"local complementation needs a loop on {u!r}")
    nbhd = row & ~(1 << i)
    rows = list(g.rows)
    for j in bits_of(nbhd):
        rows[j] ^= nbhd
    return Graph._make(g.labels, rows)


def neighborhood_partition(g: Graph, u: str, v: str) -> NeighborhoodPartition:
    i, j = g.position(u), g.position(v)
    nu = g.rows[i] | (1 << i)
    nv = g.rows[j] | (1 << j)
    return NeighborhoodPartition(
        v1=VertexSet(g.labels, nu & ~nv),
        v2=VertexSet(g.labels, nv & ~nu),
        v3=VertexSet(g.labels, nu & nv),
    )


def edge_complement(g: Graph, u: str, v: str) -> Graph:
    """Toggle every connection between distinct parts of the partition of edge uv."""
    i, j = g.position(u), g.position(v)
    if i == j:
        raise NotElementaryError("edge complementation needs two distinct vertices")
    if not (g.rows[i] >> j) & 1:
        raise NotElementaryError(f"{u!r} and {v!r} are not adjacent")
    if (g.rows[i] >> i) & 1 or (g.rows[j] >> j) & 1:
        raise NotElementaryError(f"edge complementation on {{{u},{v}}} needs loopless endpoints")
    part = neighborhood_partition(g, u, v)
    v1, v2, v3 = part.v1.bits, part.v2.bits, part.v3.bits
    rows = list(g.rows)
    for a, others in ((v1, v2 | v3), (v2, v1 | v3), (v3, v1 | v2)):
        for k in bits_of(a):
            rows[k] ^= others
    return Graph._make(g.labels, rows)


def elementary_masks(g: Graph) -> list[int]:
    """Loops in label order, then edges between loopless vertices."""
    out = []
    loopless = 0
    for i, row in enumerate(g.rows):
        if (row >> i) & 1:
            out.append(1 << i)
        else:
            loopless |= 1 << i
    for i in bits_of(loopless):
        for j in bits_of(g.rows[i] & loopless & ~((2 << i) - 1)):
            out.append((1 << i) | (1 << j))
    return out


def elementary_pivots(g: Graph) -> list[VertexSet]:
    return [VertexSet(g.labels, m) for m in elementary_masks(g)]


def apply_elementary(g: Graph, x) -> Graph:
    """Apply an elementary pivot by its combinatorial rule."""
    labels = VertexSet(g.labels, g.mask(x)).labels()
    if len(labels) == 1:
        return local_complement(g, labels[0])
    if len(labels) == 2:
        return edge_complement(g, *labels)
    raise NotElementaryError(f"{labels} is not an elementary pivot set")


def decompose_pivot(g: Graph, y) -> list[VertexSet]:
    """Split y into disjoint elementary pivots whose composition is g * y.

    Greedy: repeatedly take the first elementary pivot of the current graph
    that fits inside what is left of y.
    """
    remaining = g.mask(y)
    if not det_mask(g.rows, remaining):
        raise PivotUndefinedError(VertexSet(g.labels, remaining).members)
    steps = []
    cur = g
    while remaining:
        for m in elementary_masks(cur):
            if m & remaining == m:
                break
        else:
            raise InvariantViolation(
                f"no elementary pivot inside {VertexSet(g.labels, remaining)!r} of {cur!r}"
            )
        steps.append(VertexSet(g.labels, m))
        cur = apply_elementary(cur, VertexSet(g.labels, m))
        remaining &= ~m
    return steps


def pivot_by_decomposition(g: Graph, y) -> Graph:
    cur = g
    for step in decompose_pivot(g, y):
        cur = apply_elementary(cur, step)
    return cur


def dual_pivot(g: Graph, x) -> Graph:
    """((g + I) * x) + I; requires det (g + I)[x] = 1."""
    m = g.mask(x)
    h = add_identity(g)
    rows = _pivot_rows(h.rows, h.full_mask, m)
    if rows is None:
        raise DualPivotUndefinedError(VertexSet(g.labels, m).members)
    return add_identity(Graph._make(g.labels, rows))


def dual_elementary_pivots(g: Graph) -> list[VertexSet]:
    """Loopless vertices, then edges between looped vertices."""
    return elementary_pivots(add_identity(g))


def dual_pivot_by_row_ops(g: Graph, x) -> Graph:
    """Dual pivot realised by elementary row operations only.

    x is split into elementary dual pivots.  A loopless vertex u adds row u
    to the rows of its neighbours.  An edge uv between looped vertices adds
    row u to the rows of N(v) - u, row v to the rows of N(u) - v, then swaps
    rows u and v.
    """
    m = g.mask(x)
    if not det_mask(add_identity(g).rows, m):
        raise DualPivotUndefinedError(VertexSet(g.labels, m).members)
    rows = list(g.rows)
    for step in decompose_pivot(add_identity(g), VertexSet(g.labels, m)):
        ids = list(bits_of(step.bits))
        if len(ids) == 1:
            (u,) = ids
            nu = rows[u] & ~(1 << u)
            for w in bits_of(nu):
                rows[w] ^= rows[u]
        else:
            u, v = ids
            nu = rows[u] & ~(1 << u)
            nv = rows[v] & ~(1 << v)
            ru, rv = rows[u], rows[v]
            for w in bits_of(nv & ~(1 << u)):
                rows[w] ^= ru
            for w in bits_of(nu & ~(1 << v)):
                rows[w] ^= rv
            rows[u], rows[v] = rows[v], rows[u]
    result = Graph._make(g.labels, rows)
    if not result.is_symmetric():
        raise InvariantViolation(f"row operations left an asymmetric matrix for {x!r}")
    return result


def is_maximal_pivot_set(g: Graph, x) -> bool:
    """x is inclusion-maximal with det g[x] = 1 (equivalently, det 1 and |x| = rank)."""
    m = g.mask(x)
    return bin(m).count("1") == rank(g) and bool(det_mask(g.rows, m))
