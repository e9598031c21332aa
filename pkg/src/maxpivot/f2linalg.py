"""Labeled symmetric matrices over F2 and the linear algebra on them.

A graph is stored as one integer per row: bit ``j`` of ``rows[i]`` is the
adjacency bit between the ``i``-th and ``j``-th label, and the diagonal bit
marks a loop.  Vertex subsets are integers over the same bit positions.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InvalidVertexError, InputError

MAX_VERTICES = 64


@lru_cache(maxsize=1 << 16)
def bits_of(mask: int) -> tuple[int, ...]:
    """Set bit positions of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def parity(x: int) -> int:
    return bin(x).count("1") & 1


class VertexSet:
    """A subset of an ordered ground set of labels, stored as a bit mask.

    Equality and hashing go through the member labels, so sets drawn from
    grounds with different label orders still compare correctly.
    """

    __slots__ = ("ground", "bits", "_members")

    def __init__(self, ground: Sequence[str], bits: int):
        self.ground = tuple(ground)
        if bits < 0 or bits >> len(self.ground):
            raise InputError(f"bit mask {bits:#x} outside ground of size {len(self.ground)}")
        self.bits = bits
        self._members = None

    @classmethod
    def of(cls, ground: Sequence[str], members: Iterable[str]) -> "VertexSet":
        ground = tuple(ground)
        index = {label: i for i, label in enumerate(ground)}
        mask = 0
        for label in members:
            if label not in index:
                raise InvalidVertexError(label)
            mask |= 1 << index[label]
        return cls(ground, mask)

    @property
    def members(self) -> frozenset:
        if self._members is None:
            self._members = frozenset(self.ground[i] for i in bits_of(self.bits))
        return self._members

    def labels(self) -> list[str]:
        """Members in ground order."""
        return [self.ground[i] for i in bits_of(self.bits)]

    def __iter__(self):
        return iter(self.labels())

    def __len__(self):
        return bin(self.bits).count("1")

    def __bool__(self):
        return self.bits != 0

    def __contains__(self, label):
        return label in self.members

    def __eq__(self, other):
        if isinstance(other, VertexSet):
            if self.ground == other.ground:
                return self.bits == other.bits
            return self.members == other.members
        if isinstance(other, (set, frozenset)):
            return self.members == other
        return NotImplemented

    def __hash__(self):
        return hash(self.members)

    def _align(self, other: "VertexSet | Iterable[str]") -> int:
        if isinstance(other, VertexSet) and other.ground == self.ground:
            return other.bits
        return VertexSet.of(self.ground, other).bits

    def __xor__(self, other):
        return VertexSet(self.ground, self.bits ^ self._align(other))

    def __or__(self, other):
        return VertexSet(self.ground, self.bits | self._align(other))

    def __and__(self, other):
        return VertexSet(self.ground, self.bits & self._align(other))

    def __sub__(self, other):
        return VertexSet(self.ground, self.bits & ~self._align(other))

    def __le__(self, other):
        return self.members <= (other.members if isinstance(other, VertexSet) else frozenset(other))

    def __lt__(self, other):
        return self.members < (other.members if isinstance(other, VertexSet) else frozenset(other))

    def complement(self) -> "VertexSet":
        return VertexSet(self.ground, ((1 << len(self.ground)) - 1) & ~self.bits)

    def __repr__(self):
        return "{" + ",".join(self.labels()) + "}"


class Graph:
    """An undirected graph with loops, i.e. a symmetric F2 matrix.

    The label order fixed at construction determines every bit index.
    Two graphs are equal when they have the same labels and the same
    adjacency after aligning rows and columns by label.
    """

    __slots__ = ("labels", "rows", "_index", "_key")

    def __init__(self, labels: Sequence[str], rows: Sequence[int]):
        labels = tuple(str(label) for label in labels)
        rows = tuple(rows)
        n = len(labels)
        if len(set(labels)) != n:
            raise InputError(f"duplicate vertex labels in {labels!r}")
        if n > MAX_VERTICES:
            raise InputError(f"{n} vertices exceeds the {MAX_VERTICES}-vertex limit")
        if len(rows) != n:
            raise InputError(f"expected {n} rows, got {len(rows)}")
        for i, row in enumerate(rows):
            if row < 0 or row >> n:
                raise InputError(f"row {labels[i]!r} has bits outside the vertex set")
            for j in bits_of(row):
                if not (rows[j] >> i) & 1:
                    raise InputError(f"matrix is not symmetric at ({labels[i]}, {labels[j]})")
        self._init(labels, rows)

    def _init(self, labels, rows):
        self.labels = labels
        self.rows = rows
        self._index = None
        self._key = None

    @classmethod
    def _make(cls, labels: tuple, rows) -> "Graph":
        """Unchecked constructor for internal use; caller guarantees symmetry."""
        g = cls.__new__(cls)
        g._init(labels, tuple(rows))
        return g

    @classmethod
    def from_edges(cls, labels: Sequence[str], edges: Iterable = (), loops: Iterable[str] = ()) -> "Graph":
        labels = tuple(str(label) for label in labels)
        index = {label: i for i, label in enumerate(labels)}
        if len(index) != len(labels):
            raise InputError(f"duplicate vertex labels in {labels!r}")
        rows = [0] * len(labels)

        def at(label):
            try:
                return index[label]
            except KeyError:
                raise InvalidVertexError(label) from None

        for a, b in edges:
            i, j = at(a), at(b)
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        for a in loops:
            i = at(a)
            rows[i] |= 1 << i
        return cls(labels, rows)

    @classmethod
    def from_matrix(cls, labels: Sequence[str], matrix: Sequence[Sequence[int]]) -> "Graph":
        rows = []
        for line in matrix:
            if len(line) != len(labels):
                raise InputError("matrix row length does not match the label count")
            rows.append(sum((int(bit) & 1) << j for j, bit in enumerate(line)))
        return cls(labels, rows)

    @classmethod
    def empty(cls) -> "Graph":
        return cls._make((), ())

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    @property
    def index(self) -> dict:
        if self._index is None:
            self._index = {label: i for i, label in enumerate(self.labels)}
        return self._index

    def position(self, label: str) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise InvalidVertexError(label) from None

    def mask(self, members) -> int:
        """Bit mask of ``members`` (a VertexSet or an iterable of labels)."""
        if isinstance(members, VertexSet) and members.ground == self.labels:
            return members.bits
        if isinstance(members, str):
            members = [members]
        m = 0
        for label in members:
            m |= 1 << self.position(label)
        return m

    def vset(self, members=()) -> VertexSet:
        return VertexSet(self.labels, self.mask(members))

    def all_vertices(self) -> VertexSet:
        return VertexSet(self.labels, self.full_mask)

    def has_loop(self, u: str) -> bool:
        i = self.position(u)
        return bool((self.rows[i] >> i) & 1)

    def adjacent(self, u: str, v: str) -> bool:
        return bool((self.rows[self.position(u)] >> self.position(v)) & 1)

    def neighbours(self, u: str) -> VertexSet:
        """Open neighbourhood of ``u``: adjacent vertices other than ``u``."""
        i = self.position(u)
        return VertexSet(self.labels, self.rows[i] & ~(1 << i))

    def loops(self) -> list[str]:
        return [label for i, label in enumerate(self.labels) if (self.rows[i] >> i) & 1]

    def edges(self) -> list[tuple[str, str]]:
        """Non-loop edges as label pairs, ordered by label position."""
        out = []
        for i, row in enumerate(self.rows):
            for j in bits_of(row >> (i + 1)):
                out.append((self.labels[i], self.labels[i + 1 + j]))
        return out

    def matrix(self) -> list[list[int]]:
        return [[(row >> j) & 1 for j in range(self.n)] for row in self.rows]

    def is_symmetric(self) -> bool:
        return all((self.rows[j] >> i) & 1 for i, row in enumerate(self.rows) for j in bits_of(row))

    def is_discrete(self) -> bool:
        """No edges and no loops."""
        return not any(self.rows)

    def canonical_key(self) -> tuple:
        """Label-order independent key: labels sorted, bits realigned."""
        if self._key is None:
            order = sorted(range(self.n), key=lambda i: self.labels[i])
            if order == list(range(self.n)):
                self._key = (self.labels, self.rows)
            else:
                where = {old: new for new, old in enumerate(order)}
                rows = tuple(
                    sum(1 << where[j] for j in bits_of(self.rows[i])) for i in order
                )
                self._key = (tuple(self.labels[i] for i in order), rows)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        if self.labels == other.labels:
            return self.rows == other.rows
        return self.canonical_key() == other.canonical_key()

    def __hash__(self):
        return hash(self.canonical_key())

    def __repr__(self):
        parts = [f"{a}{b}" if len(a) == len(b) == 1 else f"{a}-{b}" for a, b in self.edges()]
        return f"Graph(V={list(self.labels)}, E=[{' '.join(parts)}], loops={self.loops()})"


class Subspace:
    """A subspace of F2^ground given by a canonical basis.

    The basis is the reduced row-echelon form of the spanning vectors with
    pivots taken at the lowest label position, so equal subspaces over the
    same label order have identical basis lists.
    """

    __slots__ = ("ground", "_vectors")

    def __init__(self, ground: Sequence[str], vectors: Iterable[int] = ()):
        self.ground = tuple(ground)
        rows, _ = _rref(list(vectors), len(self.ground))
        self._vectors = tuple(rows)

    @classmethod
    def span(cls, ground: Sequence[str], sets: Iterable) -> "Subspace":
        ground = tuple(ground)
        return cls(ground, (VertexSet.of(ground, s).bits if not isinstance(s, int) else s for s in sets))

    @property
    def basis(self) -> list[VertexSet]:
        return [VertexSet(self.ground, v) for v in self._vectors]

    @property
    def basis_bits(self) -> tuple[int, ...]:
        return self._vectors

    @property
    def dimension(self) -> int:
        return len(self._vectors)

    @property
    def nullity(self) -> int:
        return len(self._vectors)

    @property
    def complement_rank(self) -> int:
        return len(self.ground) - len(self._vectors)

    def _reduce(self, v: int) -> int:
        for row in self._vectors:
            if v & (row & -row):
                v ^= row
        return v

    def __contains__(self, item) -> bool:
        if isinstance(item, int):
            v = item
        elif isinstance(item, VertexSet) and item.ground == self.ground:
            v = item.bits
        else:
            v = VertexSet.of(self.ground, item).bits
        return self._reduce(v) == 0

    def elements(self) -> list[VertexSet]:
        """All 2^dimension members, sorted by bit pattern."""
        found = {0}
        for row in self._vectors:
            found |= {v ^ row for v in found}
        return [VertexSet(self.ground, v) for v in sorted(found)]

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ground == other.ground:
            return self._vectors == other._vectors
        if set(self.ground) != set(other.ground) or len(self.ground) != len(other.ground):
            return False
        return self.dimension == other.dimension and all(v in self for v in other.basis)

    def __hash__(self):
        return hash((frozenset(self.ground), self.dimension))

    def __repr__(self):
        return f"Subspace(dim={self.dimension}, basis={self.basis})"


def _rref(vectors: list[int], width: int) -> tuple[list[int], list[int]]:
    """Reduced row-echelon form over F2, pivot columns in increasing order."""
    rows = list(vectors)
    pivots = []
    r = 0
    for c in range(width):
        bit = 1 << c
        for i in range(r, len(rows)):
            if rows[i] & bit:
                break
        else:
            continue
        rows[r], rows[i] = rows[i], rows[r]
        for j in range(len(rows)):
            if j != r and rows[j] & bit:
                rows[j] ^= rows[r]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank_of(vectors: Iterable[int]) -> int:
    """Rank over F2 of a collection of bit vectors."""
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            low = v & -v
            if low not in basis:
                basis[low] = v
                break
            v ^= basis[low]
    return len(basis)


def det_mask(rows: Sequence[int], mask: int) -> int:
    """Determinant over F2 of the principal submatrix on ``mask``."""
    size = bin(mask).count("1")
    return int(rank_of(rows[i] & mask for i in bits_of(mask)) == size)


def matvec(rows: Sequence[int], v: int) -> int:
    """Matrix-vector product over F2, vectors as bit masks."""
    out = 0
    for i, row in enumerate(rows):
        if parity(row & v):
            out |= 1 << i
    return out


def restrict_rows(rows: Sequence[int], keep: int) -> list[int]:
    """Rows of the principal submatrix on ``keep``, bits renumbered densely."""
    positions = list(bits_of(keep))
    out = []
    for i in positions:
        row = rows[i]
        out.append(sum(((row >> p) & 1) << t for t, p in enumerate(positions)))
    return out


def determinant(g: Graph, x=()) -> int:
    """det g[x] over F2; the empty principal submatrix has determinant 1."""
    return det_mask(g.rows, g.mask(x))


def induced_subgraph(g: Graph, x) -> Graph:
    keep = g.mask(x)
    labels = tuple(g.labels[i] for i in bits_of(keep))
    return Graph._make(labels, restrict_rows(g.rows, keep))


def delete_vertices(g: Graph, x) -> Graph:
    return induced_subgraph(g, VertexSet(g.labels, g.full_mask & ~g.mask(x)))


def add_identity(g: Graph) -> Graph:
    """Toggle every loop."""
    return Graph._make(g.labels, (row ^ (1 << i) for i, row in enumerate(g.rows)))


def rank(g: Graph) -> int:
    return rank_of(g.rows)


def nullity(g: Graph) -> int:
    return g.n - rank_of(g.rows)


def kernel(g: Graph) -> Subspace:
    """Subsets S with g.S = 0, i.e. every vertex sees an even number of S."""
    reduced, pivots = _rref(list(g.rows), g.n)
    pivot_set = set(pivots)
    vectors = []
    for f in range(g.n):
        if f in pivot_set:
            continue
        v = 1 << f
        for row, c in zip(reduced, pivots):
            if (row >> f) & 1:
                v |= 1 << c
        vectors.append(v)
    return Subspace(g.labels, vectors)


def eigenspace_one(g: Graph) -> Subspace:
    """Subsets S with g.S = S."""
    return kernel(add_identity(g))


def is_independent(g: Graph, x) -> bool:
    m = g.mask(x)
    return rank_of(g.rows[i] for i in bits_of(m)) == bin(m).count("1")


def bases(g: Graph) -> list[VertexSet]:
    """Maximal independent column sets, sorted by bit pattern."""
    r = rank(g)
    found = []
    for combo in combinations(range(g.n), r):
        if rank_of(g.rows[i] for i in combo) == r:
            found.append(sum(1 << i for i in combo))
    return [VertexSet(g.labels, m) for m in sorted(found)]
