"""Gauge-invariant ideal lattices of higher-rank graph algebras, combinatorially.

Given a finite k-graph, compute its tracing-vertex sets, hereditary and
saturated vertex sets, T-/O-/invariant families of vertices, the lattices
they form, and the extended graphs realizing quotients.
"""

from .errors import (
    AssociativityViolation,
    BudgetExceeded,
    DanglingEndpoint,
    DegreeOutOfRange,
    DuplicateId,
    FormatError,
    GraphSyntaxError,
    InternalValidationFailure,
    KGraphError,
    KindMismatch,
    NotAnInvariantFamily,
    NotATFamily,
    NotComposable,
    NotInLattice,
    SchemaError,
    SquareEndpointMismatch,
    SquareNotBijective,
    ValidationError,
    VersionUnsupported,
)
from .extended import (
    build_extended,
    extended_id,
    parse_extended_id,
    quotient_graph,
    receiving_pattern_check,
)
from .families import (
    Family,
    Kind,
    cnp_family,
    invariant_to_t,
    is_invariant_family,
    is_o_family,
    is_t_family,
    t_to_invariant,
)
from .formats import export_dot, parse_family, parse_graph, serialize_family, serialize_graph
from .kgraph import (
    Degree,
    EdgeSpec,
    KGraph,
    KGraphSpec,
    Path,
    face,
    face_colors,
    format_face,
    isomorphic,
    validate,
)
from .lattice import (
    FamilyLattice,
    SearchLimits,
    brute_force_families,
    enumerate_families,
    hasse,
    join,
    meet,
)
from .vertex_calculus import (
    degree_preimage,
    edge_preimage,
    is_f_saturated,
    is_hereditary,
    is_invariant_set,
    u_set,
    w_set,
)

__version__ = "0.1.0"

__all__ = [
    "AssociativityViolation",
    "BudgetExceeded",
    "DanglingEndpoint",
    "DegreeOutOfRange",
    "DuplicateId",
    "FormatError",
    "GraphSyntaxError",
    "InternalValidationFailure",
    "KGraphError",
    "KindMismatch",
    "NotAnInvariantFamily",
    "NotATFamily",
    "NotComposable",
    "NotInLattice",
    "SchemaError",
    "SquareEndpointMismatch",
    "SquareNotBijective",
    "ValidationError",
    "VersionUnsupported",
    "build_extended",
    "extended_id",
    "parse_extended_id",
    "quotient_graph",
    "receiving_pattern_check",
    "Family",
    "Kind",
    "cnp_family",
    "invariant_to_t",
    "is_invariant_family",
    "is_o_family",
    "is_t_family",
    "t_to_invariant",
    "export_dot",
    "parse_family",
    "parse_graph",
    "serialize_family",
    "serialize_graph",
    "Degree",
    "EdgeSpec",
    "KGraph",
    "KGraphSpec",
    "Path",
    "face",
    "face_colors",
    "format_face",
    "isomorphic",
    "validate",
    "FamilyLattice",
    "SearchLimits",
    "brute_force_families",
    "enumerate_families",
    "hasse",
    "join",
    "meet",
    "degree_preimage",
    "edge_preimage",
    "is_f_saturated",
    "is_hereditary",
    "is_invariant_set",
    "u_set",
    "w_set",
]
