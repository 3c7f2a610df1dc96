"""Optimal and provably-approximate coalition structures for weighted graph games.

Agents are vertices of a weighted graph; a coalition is worth the total
weight of the edges among its members, and the goal is a vertex partition
maximizing the summed worth.  Exact solvers cover small or structured
instances (subset DP, forests, bounded treewidth); covering algorithms
give a value within a reported factor k of the positive weight sum on
sparse or bounded-degree graphs.  All values are exact rationals.
"""

from .decompose import (
    DegeneracyOrdering,
    ForestCover,
    StarUnion,
    TreeDecomposition,
    VertexColoring,
    degeneracy_ordering,
    forest_cover_positive,
    forest_to_star_unions,
    greedy_coloring,
    heuristic_tree_decomposition,
)
from .dispatch import ALGORITHMS, solve_instance
from .exact import (
    BRUTE_FORCE_LIMIT,
    brute_force_opt,
    forest_exact,
    treewidth_exact,
)
from .feasible import (
    EdgeColoring,
    FeasibleSet,
    approx_solve,
    bounded_degree_solve,
    cover_and_pick,
    cover_feasible_sets,
    forest_to_feasible_sets,
    is_feasible,
    matching_to_partition,
    positive_edge_coloring,
    star_union_to_feasible_sets,
)
from .generators import (
    GEN_KINDS,
    GenSpec,
    WeightSpec,
    gen_bounded_degree,
    gen_grid,
    gen_random,
    gen_tree,
    max_independent_set_bf,
    reduce_independent_set,
    reduce_independent_set_unit,
)
from .graphio import (
    GraphParseError,
    load_graph,
    parse_graph_text,
    render_report,
    report_document,
    save_graph,
    serialize_graph,
    verify_report,
)
from .model import (
    CoalitionStructure,
    PreconditionError,
    SolveReport,
    StructureDiagnostics,
    Weight,
    WeightedGraph,
    as_weight,
    coalition_value,
    format_weight,
    make_report,
    normalize_graph,
    positive_weight_sum,
    structure_value,
    validate_structure,
)

__version__ = "0.1.0"

_LAZY = {"CoalitionSolver", "graph_from_weight_matrix"}


def __getattr__(name):
    # The estimator pulls in scikit-learn; defer that so CLI startup and
    # plain solver use stay light.
    if name in _LAZY:
        from . import estimator

        return getattr(estimator, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [
    "ALGORITHMS",
    "BRUTE_FORCE_LIMIT",
    "GEN_KINDS",
    "GenSpec",
    "CoalitionSolver",
    "CoalitionStructure",
    "DegeneracyOrdering",
    "EdgeColoring",
    "FeasibleSet",
    "ForestCover",
    "GraphParseError",
    "PreconditionError",
    "SolveReport",
    "StarUnion",
    "StructureDiagnostics",
    "TreeDecomposition",
    "VertexColoring",
    "Weight",
    "WeightSpec",
    "WeightedGraph",
    "approx_solve",
    "as_weight",
    "bounded_degree_solve",
    "brute_force_opt",
    "coalition_value",
    "cover_and_pick",
    "cover_feasible_sets",
    "degeneracy_ordering",
    "forest_cover_positive",
    "forest_exact",
    "forest_to_feasible_sets",
    "forest_to_star_unions",
    "format_weight",
    "gen_bounded_degree",
    "gen_grid",
    "gen_random",
    "gen_tree",
    "graph_from_weight_matrix",
    "greedy_coloring",
    "heuristic_tree_decomposition",
    "is_feasible",
    "load_graph",
    "make_report",
    "matching_to_partition",
    "max_independent_set_bf",
    "normalize_graph",
    "parse_graph_text",
    "positive_edge_coloring",
    "positive_weight_sum",
    "reduce_independent_set",
    "reduce_independent_set_unit",
    "render_report",
    "report_document",
    "save_graph",
    "serialize_graph",
    "solve_instance",
    "star_union_to_feasible_sets",
    "structure_value",
    "treewidth_exact",
    "validate_structure",
    "verify_report",
]
