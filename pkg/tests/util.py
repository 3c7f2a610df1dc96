"""Shared test helpers: tiny fixtures and independent oracles.

The oracles here deliberately re-derive everything from scratch (naive
enumeration, direct summation, structural checks) so they cannot share a
bug with the library code they vet.
"""

from __future__ import annotations

from fractions import Fraction

from wgg import WeightedGraph, normalize_graph


def triangle() -> WeightedGraph:
    """(0,1,+2), (1,2,+3), (0,2,-4): the running example."""
    return normalize_graph([(0, 1, 2), (1, 2, 3), (0, 2, -4)], 3)


def all_partitions(items: list[int]):
    """Every partition of ``items`` as a list of blocks."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in all_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def naive_partition_value(graph: WeightedGraph, blocks) -> Fraction:
    """Value of a partition by direct per-block edge summation."""
    total = Fraction(0)
    for block in blocks:
        members = set(block)
        for u, v, w in graph.edges:
            if u in members and v in members:
                total += w
    return total


def enumerate_optimum(graph: WeightedGraph) -> Fraction:
    """Exhaustive optimum over all partitions (use only for tiny n)."""
    best = Fraction(0)
    for part in all_partitions(list(range(graph.n))):
        value = naive_partition_value(graph, part)
        if value > best:
            best = value
    return best


def edge_set_is_acyclic(pairs) -> bool:
    parent: dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in pairs:
        parent.setdefault(u, u)
        parent.setdefault(v, v)
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def star_union_violations(star_union) -> list[str]:
    """Structural star-union check, independent of how it was built."""
    issues = []
    touched: set[int] = set()
    for center, leaves in star_union.stars:
        vertices = {center} | set(leaves)
        if touched & vertices:
            issues.append(f"stars are not vertex-disjoint near center {center}")
        touched |= vertices
        if center in leaves:
            issues.append(f"center {center} listed among its own leaves")
    pairs = list(star_union.edges())
    if not edge_set_is_acyclic(pairs):
        issues.append("edge set contains a cycle")
    degree: dict[int, int] = {}
    for u, v in pairs:
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    for u, v in pairs:
        if degree[u] >= 2 and degree[v] >= 2:
            issues.append(f"edge ({u}, {v}) lies on a path of three edges")
    return issues
