"""Oriented hypergraphs with Property O: constructions, verification, search.

A hypergraph here is an oriented k-graph: edges are ordered k-tuples of
distinct vertices, at most one orientation per underlying k-set.  It has
Property O when every linear order of the vertices is consistent with at
least one edge.  The package bundles the known small constructions with the
machinery to verify them, audit the counting bound on edge numbers, sweep
all k-tournaments on few vertices, and estimate Property O rates by seeded
Monte Carlo, all behind the ``propertyo`` command-line tool.
"""

from .core import (
    AUTO,
    BACKTRACKING,
    EXHAUSTIVE,
    PROPERTY_O,
    STRUCTURED,
    VIOLATED,
    AuditReport,
    BudgetExceededError,
    CoverageHistogram,
    LinearOrder,
    OrientedEdge,
    OrientedHypergraph,
    ValidationResult,
    VerificationCertificate,
    check_property_o,
    count_consistent_orders,
    coverage_histogram,
    find_violating_order_backtracking,
    find_violating_order_exhaustive,
    is_consistent,
    lower_bound_audit,
    relabel,
    reverse,
    support_restriction,
    validate,
)
from .constructions import (
    CaseCoverageReport,
    CaseWitness,
    GeneralLayout,
    ReplacementPlan,
    cyclic_triangle,
    double_cycle_3graph,
    general_construction,
    insert_at,
    merged_ten_edge_3graph,
    min_edges_lower_bound,
    min_edges_upper_bound,
    permutation_at,
    structured_coverage_check,
    ten_edge_3graph,
)
from .fileformat import (
    HypergraphFormatError,
    parse_hypergraph,
    read_hypergraph,
    serialize_hypergraph,
    write_hypergraph,
)
from .montecarlo import TrialSummary, estimate_property_o_rate, random_tournament
from .search import (
    CensusOptions,
    EdgeVerdict,
    MinimalityReport,
    SearchReport,
    census_property_o,
    edge_minimality,
    enumerate_tournaments,
    prove_vertex_lower_bound,
    tournament_census,
)

__version__ = "0.1.0"

__all__ = [
    "AUTO",
    "BACKTRACKING",
    "EXHAUSTIVE",
    "PROPERTY_O",
    "STRUCTURED",
    "VIOLATED",
    "AuditReport",
    "BudgetExceededError",
    "CaseCoverageReport",
    "CaseWitness",
    "CensusOptions",
    "CoverageHistogram",
    "EdgeVerdict",
    "GeneralLayout",
    "HypergraphFormatError",
    "LinearOrder",
    "MinimalityReport",
    "OrientedEdge",
    "OrientedHypergraph",
    "ReplacementPlan",
    "SearchReport",
    "TrialSummary",
    "ValidationResult",
    "VerificationCertificate",
    "census_property_o",
    "check_property_o",
    "count_consistent_orders",
    "coverage_histogram",
    "cyclic_triangle",
    "double_cycle_3graph",
    "edge_minimality",
    "enumerate_tournaments",
    "estimate_property_o_rate",
    "find_violating_order_backtracking",
    "find_violating_order_exhaustive",
    "general_construction",
    "insert_at",
    "is_consistent",
    "lower_bound_audit",
    "merged_ten_edge_3graph",
    "min_edges_lower_bound",
    "min_edges_upper_bound",
    "parse_hypergraph",
    "permutation_at",
    "prove_vertex_lower_bound",
    "random_tournament",
    "read_hypergraph",
    "relabel",
    "reverse",
    "serialize_hypergraph",
    "structured_coverage_check",
    "support_restriction",
    "ten_edge_3graph",
    "tournament_census",
    "validate",
    "write_hypergraph",
]
