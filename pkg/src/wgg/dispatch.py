"""Single entry point mapping algorithm names to solvers."""

from __future__ import annotations

from .exact import brute_force_opt, forest_exact, treewidth_exact
from .feasible import approx_solve
from .model import PreconditionError, SolveReport, WeightedGraph

ALGORITHMS = ("brute", "forest", "treewidth", "cover", "bounded-degree")


def solve_instance(
    graph: WeightedGraph,
    algorithm: str,
    *,
    epsilon=None,
    seed: int = 0,
) -> SolveReport:
    """Run one solver by name; epsilon and seed only matter to bounded-degree."""
    if algorithm == "brute":
        return brute_force_opt(graph)
    if algorithm == "forest":
        return forest_exact(graph)
    if algorithm == "treewidth":
        return treewidth_exact(graph)
    if algorithm in ("cover", "bounded-degree"):
        return approx_solve(graph, algorithm, epsilon=epsilon, seed=seed)
    raise PreconditionError(
        f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}"
    )
