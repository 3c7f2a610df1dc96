"""Seeded instance generators and independent-set hard instances.

Every generator is a pure function of its parameters and seed: the same
call yields the identical instance, byte for byte once serialized.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .model import PreconditionError, Weight, WeightedGraph, normalize_graph

MIS_LIMIT = 24


@dataclass(frozen=True)
class WeightSpec:
    """Sampling recipe: uniform integer magnitude and a negative-sign rate.

    Zero magnitudes are re-drawn so sampled weights are never zero.
    """

    min_abs: int = 1
    max_abs: int = 5
    neg_probability: float = 0.5

    def __post_init__(self):
        if self.min_abs < 0 or self.max_abs < max(self.min_abs, 1):
            raise PreconditionError(
                f"bad magnitude range [{self.min_abs}, {self.max_abs}]"
            )
        if not (0.0 <= self.neg_probability <= 1.0):
            raise PreconditionError(
                f"neg_probability must be in [0, 1], got {self.neg_probability}"
            )

    def sample(self, rng: random.Random) -> Weight:
        mag = rng.randint(self.min_abs, self.max_abs)
        while mag == 0:
            mag = rng.randint(self.min_abs, self.max_abs)
        sign = -1 if rng.random() < self.neg_probability else 1
        return Fraction(sign * mag)


def _weighted(pairs: Iterable[tuple[int, int]], n: int, spec: WeightSpec, rng: random.Random) -> WeightedGraph:
    edges = [(u, v, spec.sample(rng)) for u, v in pairs]
    return normalize_graph(edges, n)


def gen_tree(n: int, spec: WeightSpec, seed: int) -> WeightedGraph:
    """Uniform random labeled tree (decoded Pruefer sequence)."""
    if n < 1:
        raise PreconditionError(f"a tree needs at least one vertex, got n={n}")
    rng = random.Random(seed)
    if n == 1:
        return normalize_graph([], 1)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    pairs: list[tuple[int, int]] = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        pairs.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    pairs.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return _weighted(pairs, n, spec, rng)


def gen_grid(rows: int, cols: int, spec: WeightSpec, seed: int) -> WeightedGraph:
    """Grid graph on rows x cols vertices (planar, degeneracy at most 3)."""
    if rows < 1 or cols < 1:
        raise PreconditionError(f"grid dimensions must be positive, got {rows}x{cols}")
    rng = random.Random(seed)
    pairs = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                pairs.append((v, v + 1))
            if r + 1 < rows:
                pairs.append((v, v + cols))
    return _weighted(pairs, rows * cols, spec, rng)


def gen_bounded_degree(n: int, delta: int, spec: WeightSpec, seed: int) -> WeightedGraph:
    """Near-regular random graph with maximum degree at most delta.

    Configuration model: each vertex gets delta stubs, stubs are paired at
    random, and pairs forming self-loops or parallel edges are thrown back
    and re-paired.  The rare stubs still conflicting after many rounds are
    dropped, which can only lower degrees.
    """
    if delta < 0 or delta >= n:
        raise PreconditionError(f"need 0 <= delta < n, got delta={delta}, n={n}")
    if (n * delta) % 2 != 0:
        raise PreconditionError(f"n * delta must be even, got {n} * {delta}")
    rng = random.Random(seed)
    pairs: set[tuple[int, int]] = set()
    stubs = [v for v in range(n) for _ in range(delta)]
    for _ in range(100):
        if not stubs:
            break
        rng.shuffle(stubs)
        leftover: list[int] = []
        for i in range(0, len(stubs) - 1, 2):
            u, v = stubs[i], stubs[i + 1]
            key = (u, v) if u < v else (v, u)
            if u == v or key in pairs:
                leftover.append(u)
                leftover.append(v)
            else:
                pairs.add(key)
        stubs = leftover
    return _weighted(sorted(pairs), n, spec, rng)


def gen_random(n: int, p: float, spec: WeightSpec, seed: int) -> WeightedGraph:
    """Erdos-Renyi graph: each pair is an edge independently with probability p."""
    if n < 0:
        raise PreconditionError(f"vertex count must be nonnegative, got {n}")
    if not (0.0 <= p <= 1.0):
        raise PreconditionError(f"edge probability must be in [0, 1], got {p}")
    rng = random.Random(seed)
    pairs = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return _weighted(pairs, n, spec, rng)


def _check_simple(n: int, edges: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    seen: set[tuple[int, int]] = set()
    out = []
    for u, v in edges:
        if u == v:
            raise PreconditionError(f"input graph has a self-loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise PreconditionError(f"vertex id out of range [0, {n}): ({u}, {v})")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise PreconditionError(f"input graph has a duplicate edge ({u}, {v})")
        seen.add(key)
        out.append(key)
    return out


def reduce_independent_set(n: int, edges: Sequence[tuple[int, int]]) -> WeightedGraph:
    """Game whose optimum equals the independence number of the input.

    A hub vertex (id n) is linked to every input vertex with weight +1 and
    every input edge gets weight -(n + 1), heavier than all positive weight
    combined, so an optimal structure keeps exactly a maximum independent
    set with the hub.
    """
    pairs = _check_simple(n, edges)
    penalty = Fraction(-(n + 1))
    out = [(u, v, penalty) for u, v in pairs]
    out.extend((v, n, Fraction(1)) for v in range(n))
    return normalize_graph(out, n + 1)


def reduce_independent_set_unit(n: int, edges: Sequence[tuple[int, int]]) -> WeightedGraph:
    """Unit-weight variant: input edges get -1, hub edges +1.

    The optimum k' of this game sandwiches the independence number a of the
    input: a <= k' <= 9 * a.
    """
    pairs = _check_simple(n, edges)
    out = [(u, v, Fraction(-1)) for u, v in pairs]
    out.extend((v, n, Fraction(1)) for v in range(n))
    return normalize_graph(out, n + 1)


GEN_KINDS = ("tree", "grid", "regular", "reduce-is", "reduce-is-pm1")


@dataclass(frozen=True)
class GenSpec:
    """A complete, reproducible instance recipe.

    Identical specs build identical instances.  ``topology`` carries the
    input graph for the reduce kinds as ``(n, edges)``; the other kinds use
    the size fields that apply to them.
    """

    kind: str
    seed: int = 0
    weights: WeightSpec = WeightSpec()
    n: int | None = None
    rows: int | None = None
    cols: int | None = None
    delta: int | None = None
    topology: tuple[int, tuple[tuple[int, int], ...]] | None = None

    def build(self) -> WeightedGraph:
        if self.kind == "tree":
            if self.n is None:
                raise PreconditionError("tree spec needs n")
            return gen_tree(self.n, self.weights, self.seed)
        if self.kind == "grid":
            if self.rows is None or self.cols is None:
                raise PreconditionError("grid spec needs rows and cols")
            return gen_grid(self.rows, self.cols, self.weights, self.seed)
        if self.kind == "regular":
            if self.n is None or self.delta is None:
                raise PreconditionError("regular spec needs n and delta")
            return gen_bounded_degree(self.n, self.delta, self.weights, self.seed)
        if self.kind in ("reduce-is", "reduce-is-pm1"):
            if self.topology is None:
                raise PreconditionError(f"{self.kind} spec needs an input topology")
            n, edges = self.topology
            if self.kind == "reduce-is":
                return reduce_independent_set(n, list(edges))
            return reduce_independent_set_unit(n, list(edges))
        raise PreconditionError(
            f"unknown kind {self.kind!r}; choose from {', '.join(GEN_KINDS)}"
        )


def max_independent_set_bf(n: int, edges: Sequence[tuple[int, int]]) -> int:
    """Exact independence number by branching over adjacency masks (n <= 24)."""
    if n > MIS_LIMIT:
        raise PreconditionError(f"brute-force MIS is limited to {MIS_LIMIT} vertices")
    nbr = [0] * n
    for u, v in _check_simple(n, edges):
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    memo: dict[int, int] = {}

    def rec(cand: int) -> int:
        if cand == 0:
            return 0
        hit = memo.get(cand)
        if hit is not None:
            return hit
        low = cand & -cand
        v = low.bit_length() - 1
        res = max(rec(cand ^ low), 1 + rec(cand & ~(nbr[v] | low)))
        memo[cand] = res
        return res

    return rec((1 << n) - 1)
