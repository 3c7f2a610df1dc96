"""Scikit-learn estimator facade over the solvers.

``CoalitionSolver`` behaves like a clustering estimator whose input is a
square pairwise-synergy matrix (a precomputed affinity with signed
entries): ``fit(X)`` partitions the agents and exposes ``labels_``, so the
solver drops into pipelines, cross-validation and anything else built on
the estimator protocol.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .dispatch import ALGORITHMS, solve_instance
from .model import PreconditionError, WeightedGraph, as_weight, normalize_graph


def graph_from_weight_matrix(X) -> WeightedGraph:
    """Turn a symmetric weight matrix into a game graph.

    Zero entries mean "no synergy" and produce no edge.  Float entries are
    converted to exact rationals from their binary value, so downstream
    arithmetic stays exact.
    """
    arr = np.asarray(X, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("weight matrix must be finite")
    if not np.array_equal(arr, arr.T):
        raise ValueError("weight matrix must be symmetric")
    if np.any(np.diag(arr) != 0):
        raise ValueError("diagonal must be zero: self-synergy is not modeled")
    n = arr.shape[0]
    edges = [
        (u, v, as_weight(float(arr[u, v])))
        for u in range(n)
        for v in range(u + 1, n)
        if arr[u, v] != 0.0
    ]
    return normalize_graph(edges, n)


class CoalitionSolver(ClusterMixin, BaseEstimator):
    """Partition agents into coalitions maximizing total pairwise synergy.

    Parameters
    ----------
    algorithm : {"brute", "forest", "treewidth", "cover", "bounded-degree"}, default="cover"
        "brute" and "treewidth" are exact (small or structured inputs);
        "forest" is exact on forests; "cover" and "bounded-degree" carry a
        value >= w_plus / k guarantee, with k reported per run.
    epsilon : float or str, default=0.5
        Palette slack for "bounded-degree"; ignored otherwise.  Strings
        such as "1/3" are parsed as exact rationals.
    random_state : int or None, default=None
        Seed for "bounded-degree"; None means seed 0.

    Attributes
    ----------
    labels_ : ndarray of shape (n_agents,)
        Coalition id per agent, canonically numbered.
    value_ : float
        Achieved structure value (float view of the exact value).
    exact_value_ : Fraction
        Achieved structure value, exact.
    report_ : SolveReport
        Full solve report (bounds, realized feasible-set count, timing).

    Examples
    --------
    >>> X = [[0, 2, -4], [2, 0, 3], [-4, 3, 0]]
    >>> CoalitionSolver(algorithm="brute").fit_predict(X)
    array([0, 1, 1])
    """

    def __init__(self, algorithm: str = "cover", epsilon=0.5, random_state=None):
        self.algorithm = algorithm
        self.epsilon = epsilon
        self.random_state = random_state

    def fit(self, X, y=None):
        """Solve the game encoded by the weight matrix (or WeightedGraph) X."""
        if self.algorithm not in ALGORITHMS:
            raise ValueError(
                f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}"
            )
        graph = X if isinstance(X, WeightedGraph) else graph_from_weight_matrix(X)
        seed = 0 if self.random_state is None else int(self.random_state)
        try:
            report = solve_instance(
                graph, self.algorithm, epsilon=self.epsilon, seed=seed
            )
        except PreconditionError as exc:
            raise ValueError(str(exc)) from exc
        self.report_ = report
        self.labels_ = np.asarray(report.structure.assignment, dtype=np.int64)
        self.value_ = float(report.value)
        self.exact_value_ = report.value
        self.n_features_in_ = graph.n
        return self

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.input_tags.pairwise = True
        return tags
