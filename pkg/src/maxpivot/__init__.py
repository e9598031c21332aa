"""Principal pivot transform, dual pivot and maximal contractions on graphs over F2."""

from .errors import (
    CapExceededError,
    DualPivotUndefinedError,
    GroundMismatchError,
    IllegalStringError,
    InputError,
    InvalidVertexError,
    MathError,
    NotElementaryError,
    NotGraphicSystemError,
    PivotError,
    PivotUndefinedError,
    RuleInapplicableError,
)
from .f2linalg import (
    Graph,
    Subspace,
    VertexSet,
    add_identity,
    bases,
    determinant,
    eigenspace_one,
    induced_subgraph,
    is_independent,
    kernel,
    nullity,
    rank,
)
from .pivot import (
    contraction,
    decompose_pivot,
    dual_pivot,
    dual_pivot_by_row_ops,
    edge_complement,
    elementary_pivots,
    is_maximal_pivot_set,
    local_complement,
    pivot,
    schur_complement,
)
from .setsystem import SetSystem, delta_matroid, maximal_family, minimal_family, reconstruct_graph, twist
from .orbit import OrbitGraph, contraction_dag, dual_orbit, maximal_contraction_results, pivot_orbit
from .geneassembly import LegalString, overlap_graph, parse_legal_string

__version__ = "0.1.0"
