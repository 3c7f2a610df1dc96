"""Graph-structural primitives behind the approximation pipeline.

Everything here is combinatorial and weight-agnostic except for the sign
split: the forest cover operates on positive edges only, while the vertex
coloring must be proper on the whole graph (negative edges included) so
that leaves grouped by color are guaranteed non-adjacent.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable

from .model import PreconditionError, WeightedGraph

Pair = tuple[int, int]


def _norm_pair(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class DegeneracyOrdering:
    """Min-degree peeling order.

    ``order[i]`` is the i-th removed vertex; ``residual_degrees[i]`` its
    degree at removal time.  ``degeneracy`` is the maximum residual degree,
    which min-degree peeling makes exactly the graph's degeneracy.
    """

    order: tuple[int, ...]
    degeneracy: int
    residual_degrees: tuple[int, ...]

    def position(self) -> list[int]:
        pos = [0] * len(self.order)
        for i, v in enumerate(self.order):
            pos[v] = i
        return pos


def _peel(n: int, adj: list[set[int]]) -> DegeneracyOrdering:
    # Lazy-deletion heap keyed (degree, vertex id): deterministic smallest-id
    # tie-break among minimum-degree vertices.
    deg = [len(adj[v]) for v in range(n)]
    heap = [(deg[v], v) for v in range(n)]
    heapq.heapify(heap)
    removed = [False] * n
    order: list[int] = []
    residual: list[int] = []
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        residual.append(d)
        for u in adj[v]:
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return DegeneracyOrdering(
        order=tuple(order),
        degeneracy=max(residual, default=0),
        residual_degrees=tuple(residual),
    )


def _adjacency_sets(graph: WeightedGraph, positive_only: bool = False) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(graph.n)]
    for u, v, w in graph.edges:
        if positive_only and w <= 0:
            continue
        adj[u].add(v)
        adj[v].add(u)
    return adj


def degeneracy_ordering(graph: WeightedGraph) -> DegeneracyOrdering:
    """Peel minimum-degree vertices (smallest id first on ties)."""
    return _peel(graph.n, _adjacency_sets(graph))


@dataclass(frozen=True)
class VertexColoring:
    """A proper vertex coloring; ``colors[v]`` in ``[0, num_colors)``."""

    colors: tuple[int, ...]
    num_colors: int

    def is_proper(self, graph: WeightedGraph) -> bool:
        return all(self.colors[u] != self.colors[v] for u, v, _ in graph.edges)


def greedy_coloring(graph: WeightedGraph, ordering: DegeneracyOrdering) -> VertexColoring:
    """Color in reverse peeling order with the smallest free color.

    When a vertex is colored, its already-colored neighbors are exactly the
    ones peeled after it, of which there are at most ``degeneracy``, so at
    most ``degeneracy + 1`` colors are used.
    """
    if len(ordering.order) != graph.n or set(ordering.order) != set(range(graph.n)):
        raise PreconditionError("ordering is not a permutation of the graph's vertices")
    adj = _adjacency_sets(graph)
    colors = [-1] * graph.n
    for v in reversed(ordering.order):
        used = {colors[u] for u in adj[v] if colors[u] >= 0}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return VertexColoring(
        colors=tuple(colors), num_colors=max(colors, default=-1) + 1
    )


@dataclass(frozen=True)
class ForestCover:
    """Disjoint forests whose union is the positive edge set."""

    classes: tuple[frozenset[Pair], ...]


def forest_cover_positive(graph: WeightedGraph) -> ForestCover:
    """Partition the positive edges into at most d+ forests.

    Orient each positive edge from its earlier-peeled endpoint to the later
    one (so out-degrees are bounded by the positive subgraph's degeneracy d+
    and the orientation is acyclic).  Class i collects every vertex's i-th
    out-edge, out-edges ranked by ascending neighbor id; with one out-edge
    per vertex per class and no directed cycle, each class is a forest.
    """
    pos_adj = _adjacency_sets(graph, positive_only=True)
    ordering = _peel(graph.n, pos_adj)
    pos = ordering.position()
    classes: list[set[Pair]] = []
    for v in range(graph.n):
        out = sorted(u for u in pos_adj[v] if pos[u] > pos[v])
        for i, u in enumerate(out):
            while len(classes) <= i:
                classes.append(set())
            classes[i].add(_norm_pair(v, u))
    return ForestCover(classes=tuple(frozenset(c) for c in classes))


@dataclass(frozen=True)
class StarUnion:
    """Vertex-disjoint stars: every edge touches its star's center."""

    stars: tuple[tuple[int, frozenset[int]], ...]

    def edges(self) -> frozenset[Pair]:
        return frozenset(
            _norm_pair(center, leaf)
            for center, leaves in self.stars
            for leaf in leaves
        )


def _forest_components(edges: Iterable[Pair]) -> dict[int, list[int]]:
    """Adjacency of an edge set, raising if it contains a cycle."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    adj: dict[int, list[int]] = {}
    for u, v in edges:
        for x in (u, v):
            if x not in parent:
                parent[x] = x
                adj[x] = []
        ru, rv = find(u), find(v)
        if ru == rv:
            raise PreconditionError(f"edge set contains a cycle through ({u}, {v})")
        parent[ru] = rv
        adj[u].append(v)
        adj[v].append(u)
    return adj


def forest_to_star_unions(edges: Iterable[Pair]) -> tuple[StarUnion, StarUnion]:
    """Split an acyclic edge set into two unions of vertex-disjoint stars.

    Each tree component is rooted at its smallest vertex and edges alternate
    between the two classes by the depth of their deeper endpoint: odd-depth
    edges go to the first class, even-depth to the second.  In either class
    a vertex is the center of at most one star, so no class can contain a
    cycle or a path of three edges.
    """
    adj = _forest_components(edges)
    depth: dict[int, int] = {}
    order: list[int] = []
    for root in sorted(adj):
        if root in depth:
            continue
        depth[root] = 0
        queue = [root]
        while queue:
            nxt: list[int] = []
            for x in queue:
                order.append(x)
                for y in adj[x]:
                    if y not in depth:
                        depth[y] = depth[x] + 1
                        nxt.append(y)
            queue = nxt
    odd_stars: dict[int, set[int]] = {}
    even_stars: dict[int, set[int]] = {}
    for x in order:
        for y in adj[x]:
            if depth[y] != depth[x] + 1:
                continue
            # Edge (x, y) with y the deeper endpoint; center is the parent x.
            target = odd_stars if depth[y] % 2 == 1 else even_stars
            target.setdefault(x, set()).add(y)

    def build(stars: dict[int, set[int]]) -> StarUnion:
        return StarUnion(
            stars=tuple((c, frozenset(ls)) for c, ls in sorted(stars.items()))
        )

    return build(odd_stars), build(even_stars)


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags of vertices arranged in a tree; width is max bag size minus 1."""

    bags: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int], ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def violations(self, graph: WeightedGraph) -> list[str]:
        """All the ways this fails to be a valid decomposition of ``graph``."""
        issues: list[str] = []
        nb = len(self.bags)
        tree_adj: list[list[int]] = [[] for _ in range(nb)]
        for a, b in self.tree_edges:
            if not (0 <= a < nb and 0 <= b < nb):
                issues.append(f"tree edge ({a}, {b}) references a missing bag")
                continue
            tree_adj[a].append(b)
            tree_adj[b].append(a)
        if nb > 0:
            if len(self.tree_edges) != nb - 1:
                issues.append("bag graph is not a tree (wrong edge count)")
            seen = {0}
            stack = [0]
            while stack:
                x = stack.pop()
                for y in tree_adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            if len(seen) != nb:
                issues.append("bag graph is not connected")
        covered = set().union(*self.bags) if self.bags else set()
        if covered != set(range(graph.n)):
            issues.append("union of bags is not the whole vertex set")
        for u, v, _ in graph.edges:
            if not any(u in b and v in b for b in self.bags):
                issues.append(f"edge ({u}, {v}) has no bag containing both endpoints")
        for v in range(graph.n):
            holding = [i for i, b in enumerate(self.bags) if v in b]
            if not holding:
                continue
            seen = {holding[0]}
            stack = [holding[0]]
            holding_set = set(holding)
            while stack:
                x = stack.pop()
                for y in tree_adj[x]:
                    if y in holding_set and y not in seen:
                        seen.add(y)
                        stack.append(y)
            if seen != holding_set:
                issues.append(f"bags containing vertex {v} are not connected")
        return issues


def heuristic_tree_decomposition(graph: WeightedGraph) -> TreeDecomposition:
    """Min-fill elimination ordering turned into a clique tree.

    The produced decomposition is always valid; its width is an upper bound
    on the true treewidth (tight on chordal graphs, trees, and cycles).
    """
    n = graph.n
    if n == 0:
        return TreeDecomposition(bags=(frozenset(),), tree_edges=())
    adj = _adjacency_sets(graph)
    alive = set(range(n))
    bags: list[frozenset[int]] = []
    bag_index: dict[int, int] = {}
    pos: dict[int, int] = {}
    for step in range(n):
        best_v, best_fill = -1, None
        for v in sorted(alive):
            nbrs = [u for u in adj[v] if u in alive]
            fill = 0
            for i in range(len(nbrs)):
                for j in range(i + 1, len(nbrs)):
                    if nbrs[j] not in adj[nbrs[i]]:
                        fill += 1
            if best_fill is None or fill < best_fill:
                best_v, best_fill = v, fill
                if fill == 0:
                    break
        v = best_v
        nbrs = [u for u in adj[v] if u in alive]
        bag_index[v] = len(bags)
        bags.append(frozenset([v] + nbrs))
        pos[v] = step
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                adj[nbrs[i]].add(nbrs[j])
                adj[nbrs[j]].add(nbrs[i])
        alive.remove(v)
    tree_edges: list[tuple[int, int]] = []
    roots: list[int] = []
    for v in range(n):
        later = [u for u in bags[bag_index[v]] if u != v]
        if later:
            parent = min(later, key=lambda u: pos[u])
            tree_edges.append((bag_index[v], bag_index[parent]))
        else:
            roots.append(bag_index[v])
    # Disconnected inputs leave one root per component; chain them so the
    # bag graph is a single tree (the linked bags share no vertices, so
    # per-vertex connectivity is unaffected).
    for extra in roots[1:]:
        tree_edges.append((roots[0], extra))
    return TreeDecomposition(bags=tuple(bags), tree_edges=tuple(tree_edges))
