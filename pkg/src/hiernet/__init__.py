"""Hierarchical interconnection networks, disjoint Steiner trees and oracles."""

__version__ = "0.1.0"

from .builder import (
    CaseTag,
    TreePacking,
    base_cluster_pack,
    build_disjoint_trees,
    case_same_cluster,
    case_three_clusters,
    case_two_clusters,
    classify_case,
    steiner_tree_connect,
)
from .errors import (
    CompositionError,
    GraphConstructionError,
    HiernetError,
    InvariantViolationError,
    PreconditionError,
    SearchBudgetError,
    SizeBudgetError,
    ValidationError,
)
from .flows import (
    ConnectivityResult,
    CutWitness,
    PathFamily,
    disjoint_paths,
    k_fan,
    vertex_connectivity,
)
from .graph import (
    DegreeProfile,
    Graph,
    degree_profile,
    edge_key,
    is_steiner_tree,
    make_graph,
    remove_vertices,
    shortest_path,
)
from .oracle import (
    Kappa3Certificate,
    KappaSResult,
    PackingReport,
    Violation,
    bound_lower_from_kappa,
    bound_upper_adjacent_min_degree,
    kappa3_exact,
    kappa_s_exact,
    validate_packing,
)
from .topology import (
    HierGraph,
    HnReport,
    cluster_subgraph,
    compose_hierarchical,
    folded_hypercube,
    hierarchical_cubic,
    hierarchical_folded,
    hierarchical_star,
    hypercube,
    star_graph,
    validate_hierarchical,
)

__all__ = [
    "__version__",
    "CaseTag",
    "TreePacking",
    "base_cluster_pack",
    "build_disjoint_trees",
    "case_same_cluster",
    "case_three_clusters",
    "case_two_clusters",
    "classify_case",
    "steiner_tree_connect",
    "CompositionError",
    "GraphConstructionError",
    "HiernetError",
    "InvariantViolationError",
    "PreconditionError",
    "SearchBudgetError",
    "SizeBudgetError",
    "ValidationError",
    "ConnectivityResult",
    "CutWitness",
    "PathFamily",
    "disjoint_paths",
    "k_fan",
    "vertex_connectivity",
    "DegreeProfile",
    "Graph",
    "degree_profile",
    "edge_key",
    "is_steiner_tree",
    "make_graph",
    "remove_vertices",
    "shortest_path",
    "Kappa3Certificate",
    "KappaSResult",
    "PackingReport",
    "Violation",
    "bound_lower_from_kappa",
    "bound_upper_adjacent_min_degree",
    "kappa3_exact",
    "kappa_s_exact",
    "validate_packing",
    "HierGraph",
    "HnReport",
    "cluster_subgraph",
    "compose_hierarchical",
    "folded_hypercube",
    "hierarchical_cubic",
    "hierarchical_folded",
    "hierarchical_star",
    "hypercube",
    "star_graph",
    "validate_hierarchical",
]
