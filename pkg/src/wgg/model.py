"""Core types for weighted graph games.

A game instance is an undirected graph with exact rational edge weights;
agents are vertices and a coalition's worth is the total weight of the
edges it induces.  A solution is a partition of the vertices (a coalition
structure) whose value is the sum of its coalitions' worths.

All arithmetic on weights and values is exact (``fractions.Fraction``),
so optimality comparisons and approximation guarantees are checked
without any tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Weight = Fraction

Edge = tuple[int, int, Weight]


class PreconditionError(ValueError):
    """An operation was invoked on input that violates its contract."""


def as_weight(value) -> Weight:
    """Coerce a number to an exact rational weight.

    Accepts Fraction, int, strings like ``"3"``, ``"-7/2"`` or ``"1.25"``
    (parsed exactly), and floats (converted from their exact binary value).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise PreconditionError(f"not a weight: {value!r}")
    if isinstance(value, (int, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise PreconditionError(f"cannot parse weight {value!r}: {exc}") from exc
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise PreconditionError(f"weight must be finite, got {value!r}")
        return Fraction(value)
    raise PreconditionError(f"unsupported weight type: {type(value).__name__}")


def format_weight(w: Weight) -> str:
    """Render a weight as ``p/q``, or just ``p`` when the denominator is 1."""
    if w.denominator == 1:
        return str(w.numerator)
    return f"{w.numerator}/{w.denominator}"


@dataclass(frozen=True)
class WeightedGraph:
    """An undirected graph with nonzero exact rational edge weights.

    Construct through :func:`normalize_graph`, which merges parallel edges,
    drops zero-weight edges and rejects self-loops.  Instances are immutable;
    ``edges`` holds one ``(u, v, w)`` triple per unordered pair with
    ``u < v``, sorted.
    """

    n: int
    edges: tuple[Edge, ...]
    adj: tuple[tuple[tuple[int, Weight], ...], ...] = field(
        init=False, repr=False, compare=False
    )
    _positive: tuple[Edge, ...] = field(init=False, repr=False, compare=False)
    _negative: tuple[Edge, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        nbrs: list[list[tuple[int, Weight]]] = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            nbrs[u].append((v, w))
            nbrs[v].append((u, w))
        object.__setattr__(
            self, "adj", tuple(tuple(sorted(lst)) for lst in nbrs)
        )
        # Sign of a canonical Fraction is the sign of its numerator; testing
        # it directly keeps this linear pass cheap on large graphs.
        object.__setattr__(
            self, "_positive", tuple(e for e in self.edges if e[2].numerator > 0)
        )
        object.__setattr__(
            self, "_negative", tuple(e for e in self.edges if e[2].numerator < 0)
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def positive_edges(self) -> tuple[Edge, ...]:
        return self._positive

    def negative_edges(self) -> tuple[Edge, ...]:
        return self._negative

    def weight(self, u: int, v: int) -> Optional[Weight]:
        """Weight of edge (u, v), or None if absent."""
        if u == v:
            return None
        for nbr, w in self.adj[u]:
            if nbr == v:
                return w
        return None

    def max_positive_degree(self) -> int:
        deg = [0] * self.n
        for u, v, w in self.edges:
            if w > 0:
                deg[u] += 1
                deg[v] += 1
        return max(deg, default=0)


def normalize_graph(edges: Iterable[Sequence], n: int) -> WeightedGraph:
    """Build a normalized game graph from raw ``(u, v, weight)`` triples.

    Parallel edges are merged by summing their weights; pairs whose merged
    weight is zero are dropped entirely (they cannot affect any coalition's
    value and have no positive/negative class).

    Raises PreconditionError on self-loops or vertex ids outside [0, n).
    """
    if n < 0:
        raise PreconditionError(f"vertex count must be nonnegative, got {n}")
    merged: dict[tuple[int, int], Weight] = {}
    for idx, raw in enumerate(edges):
        try:
            u, v, w = raw
        except (TypeError, ValueError) as exc:
            raise PreconditionError(f"edge #{idx} is not a (u, v, w) triple") from exc
        if not isinstance(u, int) or not isinstance(v, int):
            raise PreconditionError(f"edge #{idx}: vertex ids must be integers")
        if u == v:
            raise PreconditionError(f"edge #{idx}: self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise PreconditionError(
                f"edge #{idx}: vertex id out of range [0, {n}): ({u}, {v})"
            )
        key = (u, v) if u < v else (v, u)
        weight = as_weight(w)
        if key in merged:
            merged[key] = merged[key] + weight
        else:
            merged[key] = weight
    kept = tuple(
        (u, v, w) for (u, v), w in sorted(merged.items()) if w.numerator != 0
    )
    return WeightedGraph(n=n, edges=kept)


@dataclass(frozen=True)
class CoalitionStructure:
    """A partition of the vertices into disjoint coalitions.

    ``assignment[v]`` is the coalition id of vertex ``v``.  Labels are
    canonical: coalitions are numbered by ascending smallest member, so two
    structures describing the same partition compare equal field-by-field.
    """

    assignment: tuple[int, ...]
    num_coalitions: int

    @classmethod
    def from_assignment(cls, labels: Sequence[int]) -> "CoalitionStructure":
        relabel: dict[int, int] = {}
        out = []
        for lab in labels:
            if lab not in relabel:
                relabel[lab] = len(relabel)
            out.append(relabel[lab])
        return cls(assignment=tuple(out), num_coalitions=len(relabel))

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int) -> "CoalitionStructure":
        """Build from explicit coalitions; they must partition range(n)."""
        labels = [-1] * n
        for i, block in enumerate(blocks):
            for v in block:
                if not (0 <= v < n):
                    raise PreconditionError(f"vertex {v} out of range [0, {n})")
                if labels[v] != -1:
                    raise PreconditionError(f"vertex {v} appears in two coalitions")
                labels[v] = i
        missing = [v for v, lab in enumerate(labels) if lab == -1]
        if missing:
            raise PreconditionError(f"vertices not covered by any coalition: {missing}")
        return cls.from_assignment(labels)

    @classmethod
    def singletons(cls, n: int) -> "CoalitionStructure":
        return cls(assignment=tuple(range(n)), num_coalitions=n)

    def blocks(self) -> list[list[int]]:
        """Coalitions as sorted vertex lists, ordered by smallest member."""
        out: list[list[int]] = [[] for _ in range(self.num_coalitions)]
        for v, lab in enumerate(self.assignment):
            out[lab].append(v)
        return out


def sum_weights(weights: Iterable[Weight]) -> Weight:
    """Exact sum over an integer accumulator with a running common denominator.

    Much faster than repeated Fraction addition on long edge lists, where
    denominators are usually all 1.
    """
    num = 0
    den = 1
    for w in weights:
        wd = w.denominator
        if wd == den:
            num += w.numerator
        else:
            g = math.gcd(den, wd)
            lcm = den // g * wd
            num = num * (lcm // den) + w.numerator * (lcm // wd)
            den = lcm
    return Fraction(num, den)


def coalition_value(graph: WeightedGraph, coalition: Iterable[int]) -> Weight:
    """Total weight of the edges induced by a single coalition."""
    members = set(coalition)
    for v in members:
        if not (0 <= v < graph.n):
            raise PreconditionError(f"vertex {v} out of range [0, {graph.n})")
    return sum_weights(
        w
        for v in members
        for nbr, w in graph.adj[v]
        if nbr > v and nbr in members
    )


def structure_value(graph: WeightedGraph, structure: CoalitionStructure) -> Weight:
    """Value of a coalition structure: the sum of its coalitions' values."""
    if len(structure.assignment) != graph.n:
        raise PreconditionError(
            f"structure covers {len(structure.assignment)} vertices, graph has {graph.n}"
        )
    labels = structure.assignment
    return sum_weights(w for u, v, w in graph.edges if labels[u] == labels[v])


def positive_weight_sum(graph: WeightedGraph) -> Weight:
    """Sum of all positive edge weights: an upper bound on any structure's value."""
    return sum_weights(w for _, _, w in graph.positive_edges())


@dataclass(frozen=True)
class StructureDiagnostics:
    """Outcome of validating a raw partition against a game graph."""

    valid: bool
    issues: tuple[str, ...]
    value: Optional[Weight]
    intra_negative_edges: tuple[tuple[int, int, Weight], ...]
    structure: Optional[CoalitionStructure]


def validate_structure(
    graph: WeightedGraph, blocks: Iterable[Iterable[int]]
) -> StructureDiagnostics:
    """Check a raw list of coalitions and report on it.

    Never raises: overlap and coverage violations are reported as issues.
    For valid partitions the diagnostics include the exact value and every
    negative edge kept inside a coalition.
    """
    labels = [-1] * graph.n
    issues: list[str] = []
    for i, block in enumerate(blocks):
        for v in block:
            if not (0 <= v < graph.n):
                issues.append(f"vertex {v} out of range [0, {graph.n})")
            elif labels[v] != -1:
                issues.append(f"overlap: vertex {v} is in more than one coalition")
            else:
                labels[v] = i
    missing = [v for v, lab in enumerate(labels) if lab == -1]
    if missing:
        issues.append(f"not a cover: vertices {missing} are in no coalition")
    if issues:
        return StructureDiagnostics(
            valid=False,
            issues=tuple(issues),
            value=None,
            intra_negative_edges=(),
            structure=None,
        )
    structure = CoalitionStructure.from_assignment(labels)
    intra_negative = tuple(
        (u, v, w)
        for u, v, w in graph.edges
        if w < 0 and structure.assignment[u] == structure.assignment[v]
    )
    return StructureDiagnostics(
        valid=True,
        issues=(),
        value=structure_value(graph, structure),
        intra_negative_edges=intra_negative,
        structure=structure,
    )


@dataclass(frozen=True)
class SolveReport:
    """Result of one solver run.

    ``value`` always equals ``structure_value(graph, structure)``, recomputed
    independently when the report is built, and when ``feasible_set_count``
    is a positive ``k`` the value is guaranteed to be at least
    ``w_plus / k``.
    """

    algorithm: str
    value: Weight
    structure: CoalitionStructure
    w_plus: Weight
    feasible_set_count: Optional[int] = None
    seed: Optional[int] = None
    epsilon: Optional[Weight] = None
    elapsed_ms: float = 0.0


def make_report(
    graph: WeightedGraph,
    algorithm: str,
    structure: CoalitionStructure,
    *,
    feasible_set_count: Optional[int] = None,
    seed: Optional[int] = None,
    epsilon: Optional[Weight] = None,
    elapsed_ms: float = 0.0,
) -> SolveReport:
    """Assemble a report, re-deriving the value and checking its guarantees."""
    value = structure_value(graph, structure)
    w_plus = positive_weight_sum(graph)
    if feasible_set_count is not None and feasible_set_count > 0:
        if value * feasible_set_count < w_plus:
            raise RuntimeError(
                f"internal error: {algorithm} returned value {value} below "
                f"guarantee {w_plus}/{feasible_set_count}"
            )
    return SolveReport(
        algorithm=algorithm,
        value=value,
        structure=structure,
        w_plus=w_plus,
        feasible_set_count=feasible_set_count,
        seed=seed,
        epsilon=epsilon,
        elapsed_ms=elapsed_ms,
    )
