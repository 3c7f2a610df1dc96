"""Exact solvers: subset-DP brute force, forest solver, treewidth DP.

The brute force is the ground-truth oracle for everything else.  It runs
the classic partition recurrence best[S] = max over coalitions T inside S
containing min(S) of value(T) + best[S without T]; fixing min(S) in T
enumerates each partition exactly once, at O(3^n) total cost.  Weights are
rescaled to integers over a common denominator so the hot loop works on
machine integers while remaining exact.

The treewidth solver runs over a nice form of a tree decomposition with
one state per partition of the current bag, each state holding the best
value over everything already processed.  An edge is credited when its
later endpoint is introduced into a bag block containing the earlier one;
at join nodes both branches have credited the in-bag co-blocked edges, so
their weight is subtracted once.
"""

from __future__ import annotations

import math
import time
from bisect import insort
from fractions import Fraction
from typing import Optional

from .decompose import TreeDecomposition, heuristic_tree_decomposition
from .model import (
    CoalitionStructure,
    PreconditionError,
    SolveReport,
    WeightedGraph,
    make_report,
)

BRUTE_FORCE_LIMIT = 20
BAG_STATE_LIMIT = 1_000_000


def _scaled_integer_weights(graph: WeightedGraph) -> tuple[list[dict[int, int]], int]:
    """Edge weights as integers over one common denominator."""
    den = 1
    for _, _, w in graph.edges:
        den = den * w.denominator // math.gcd(den, w.denominator)
    rows: list[dict[int, int]] = [{} for _ in range(graph.n)]
    for u, v, w in graph.edges:
        iw = w.numerator * (den // w.denominator)
        rows[u][v] = iw
        rows[v][u] = iw
    return rows, den


def brute_force_opt(graph: WeightedGraph) -> SolveReport:
    """Exact optimum by subset dynamic programming (n <= 20).

    Among optimal structures, returns the one whose canonical block list is
    lexicographically smallest.
    """
    n = graph.n
    if n > BRUTE_FORCE_LIMIT:
        raise PreconditionError(
            f"brute force is limited to {BRUTE_FORCE_LIMIT} vertices (got {n}); "
            "use an approximate solver"
        )
    start = time.perf_counter()
    rows, den = _scaled_integer_weights(graph)
    adj_mask = [0] * n
    for u in range(n):
        for v in rows[u]:
            adj_mask[u] |= 1 << v
    full = 1 << n
    val = [0] * full
    for s in range(1, full):
        low = s & -s
        v = low.bit_length() - 1
        rest = s ^ low
        total = val[rest]
        row = rows[v]
        km = rest & adj_mask[v]
        while km:
            ub = km & -km
            total += row[ub.bit_length() - 1]
            km ^= ub
        val[s] = total
    best = [0] * full
    for s in range(1, full):
        low = s & -s
        rest = s ^ low
        b = best[rest]
        t2 = rest
        while t2:
            c = val[low | t2] + best[rest ^ t2]
            if c > b:
                b = c
            t2 = (t2 - 1) & rest
        best[s] = b

    def mask_tuple(mask: int) -> tuple[int, ...]:
        out = []
        while mask:
            ub = mask & -mask
            out.append(ub.bit_length() - 1)
            mask ^= ub
        return tuple(out)

    blocks: list[tuple[int, ...]] = []
    s = full - 1
    while s:
        low = s & -s
        rest = s ^ low
        target = best[s]
        if best[rest] == target:
            # The singleton {min(s)} is always the lexicographically
            # smallest candidate block when it attains the optimum.
            chosen_mask = low
        else:
            chosen: Optional[tuple[int, ...]] = None
            chosen_mask = 0
            t2 = rest
            while t2:
                if val[low | t2] + best[rest ^ t2] == target:
                    cand = mask_tuple(low | t2)
                    if chosen is None or cand < chosen:
                        chosen = cand
                        chosen_mask = low | t2
                t2 = (t2 - 1) & rest
        blocks.append(mask_tuple(chosen_mask))
        s ^= chosen_mask
    structure = CoalitionStructure.from_blocks(blocks, n)
    elapsed = (time.perf_counter() - start) * 1000.0
    report = make_report(graph, "brute", structure, elapsed_ms=elapsed)
    if report.value != Fraction(best[full - 1], den):
        raise RuntimeError("internal error: reconstructed structure misses the optimum")
    return report


def forest_exact(graph: WeightedGraph) -> SolveReport:
    """Linear-time exact solver for forests.

    The connected components of the positive edges, plus singletons, attain
    the positive weight sum exactly: in a forest a negative edge between two
    vertices of one positive component would close a cycle.
    """
    start = time.perf_counter()
    parent = list(range(graph.n))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for u, v, _ in graph.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            raise PreconditionError(f"input contains a cycle through edge ({u}, {v})")
        parent[ru] = rv
    pos_parent = list(range(graph.n))

    def pos_find(x: int) -> int:
        root = x
        while pos_parent[root] != root:
            root = pos_parent[root]
        while pos_parent[x] != root:
            pos_parent[x], x = root, pos_parent[x]
        return root

    for u, v, w in graph.edges:
        if w > 0:
            ru, rv = pos_find(u), pos_find(v)
            if ru != rv:
                pos_parent[ru] = rv
    structure = CoalitionStructure.from_assignment(
        [pos_find(v) for v in range(graph.n)]
    )
    elapsed = (time.perf_counter() - start) * 1000.0
    report = make_report(graph, "forest", structure, elapsed_ms=elapsed)
    if report.value != report.w_plus:
        raise RuntimeError("internal error: forest solver missed the positive weight sum")
    return report


def _bell_number(k: int, cap: int) -> int:
    """Bell(k), saturating at cap + 1 to keep the guard cheap."""
    if k < 1:
        return 1
    row = [1]
    for _ in range(k - 1):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
            if nxt[-1] > cap:
                return cap + 1
        row = nxt
    return row[-1]


def _canon(labels) -> tuple[int, ...]:
    relabel: dict[int, int] = {}
    out = []
    for x in labels:
        if x not in relabel:
            relabel[x] = len(relabel)
        out.append(relabel[x])
    return tuple(out)


def _nice_program(td: TreeDecomposition):
    """Flatten a decomposition into stack-machine ops.

    Ops run bottom-up: ("leaf",) pushes the empty-bag state, ("intro", v,
    bag_after) and ("forget", v, bag_after) transform the top of the stack,
    ("join", None, bag) pops two state dicts over the same bag and pushes
    their combination.  The program ends with an empty root bag.
    """
    nb = len(td.bags)
    adj: list[list[int]] = [[] for _ in range(nb)]
    for a, b in td.tree_edges:
        adj[a].append(b)
        adj[b].append(a)
    root = 0
    children: list[list[int]] = [[] for _ in range(nb)]
    seen = {root}
    queue = [root]
    while queue:
        x = queue.pop()
        for y in sorted(adj[x]):
            if y not in seen:
                seen.add(y)
                children[x].append(y)
                queue.append(y)
    ops: list[tuple] = []

    def chain(src: tuple[int, ...], dst_set: frozenset[int]):
        cur = list(src)
        for v in sorted(set(src) - dst_set):
            cur.remove(v)
            ops.append(("forget", v, tuple(cur)))
        for v in sorted(dst_set - set(src)):
            insort(cur, v)
            ops.append(("intro", v, tuple(cur)))

    finished_children = [0] * nb
    stack: list[tuple[int, object]] = [(root, iter(children[root]))]
    while stack:
        node, it = stack[-1]
        nxt = next(it, None)
        if nxt is not None:
            stack.append((nxt, iter(children[nxt])))
            continue
        stack.pop()
        if not children[node]:
            ops.append(("leaf", None, ()))
            chain((), td.bags[node])
        if stack:
            par = stack[-1][0]
            chain(tuple(sorted(td.bags[node])), td.bags[par])
            finished_children[par] += 1
            if finished_children[par] > 1:
                ops.append(("join", None, tuple(sorted(td.bags[par]))))
    chain(tuple(sorted(td.bags[root])), frozenset())
    return ops


def _run_partition_dp(graph: WeightedGraph, ops) -> tuple[Fraction, list[int]]:
    zero = Fraction(0)
    wmap: dict[tuple[int, int], Fraction] = {}
    for u, v, w in graph.edges:
        wmap[(u, v)] = w
        wmap[(v, u)] = w
    stack: list[dict[tuple[int, ...], Fraction]] = []
    choices: list[Optional[dict]] = []
    for kind, v, bag in ops:
        if kind == "leaf":
            stack.append({(): zero})
            choices.append(None)
        elif kind == "intro":
            states = stack.pop()
            idx = bag.index(v)
            old_bag = bag[:idx] + bag[idx + 1 :]
            wrow = [
                (j, wmap[(v, u)]) for j, u in enumerate(old_bag) if (v, u) in wmap
            ]
            new_states: dict[tuple[int, ...], Fraction] = {}
            for rgs, acc in states.items():
                nblocks = (max(rgs) + 1) if rgs else 0
                for b in range(nblocks + 1):
                    credit = zero
                    if b < nblocks:
                        for j, w in wrow:
                            if rgs[j] == b:
                                credit += w
                    key = _canon(rgs[:idx] + (b,) + rgs[idx:])
                    cand = acc + credit
                    prev = new_states.get(key)
                    if prev is None or cand > prev:
                        new_states[key] = cand
            stack.append(new_states)
            choices.append(None)
        elif kind == "forget":
            states = stack.pop()
            old_bag = sorted(bag + (v,))
            idx = old_bag.index(v)
            new_states = {}
            choice: dict[tuple[int, ...], tuple[int, ...]] = {}
            for rgs, acc in states.items():
                key = _canon(rgs[:idx] + rgs[idx + 1 :])
                prev = new_states.get(key)
                if prev is None or acc > prev:
                    new_states[key] = acc
                    choice[key] = rgs
            stack.append(new_states)
            choices.append(choice)
        else:  # join
            d2 = stack.pop()
            d1 = stack.pop()
            pairs = [
                (i, j, wmap[(bag[i], bag[j])])
                for i in range(len(bag))
                for j in range(i + 1, len(bag))
                if (bag[i], bag[j]) in wmap
            ]
            small, big = (d1, d2) if len(d1) <= len(d2) else (d2, d1)
            merged: dict[tuple[int, ...], Fraction] = {}
            for rgs, acc1 in small.items():
                acc2 = big.get(rgs)
                if acc2 is None:
                    continue
                dup = zero
                for i, j, w in pairs:
                    if rgs[i] == rgs[j]:
                        dup += w
                merged[rgs] = acc1 + acc2 - dup
            stack.append(merged)
            choices.append(None)
    (final,) = stack
    if () not in final:
        raise RuntimeError("internal error: partition DP lost the root state")
    value = final[()]
    assignment = _reconstruct_assignment(graph.n, ops, choices)
    return value, assignment


def _reconstruct_assignment(n: int, ops, choices) -> list[int]:
    assignment = [-1] * n
    next_cid = 0
    # Reverse replay from the root's empty state; entries are
    # (state, bag, block label -> coalition id).
    walk: list[tuple[tuple[int, ...], tuple[int, ...], dict[int, int]]] = [((), (), {})]
    for (kind, v, bag), choice in zip(reversed(ops), reversed(choices)):
        if kind == "leaf":
            walk.pop()
        elif kind == "join":
            state, b, cids = walk.pop()
            walk.append((state, b, cids))
            walk.append((state, b, cids))
        elif kind == "forget":
            state, b, cids = walk.pop()
            pre = choice[state]
            old_bag = tuple(sorted(b + (v,)))
            idx = old_bag.index(v)
            new_cids: dict[int, int] = {}
            for j in range(len(old_bag)):
                if j == idx:
                    continue
                pos = j if j < idx else j - 1
                new_cids[pre[j]] = cids[state[pos]]
            vb = pre[idx]
            if vb not in new_cids:
                new_cids[vb] = next_cid
                next_cid += 1
            assignment[v] = new_cids[vb]
            walk.append((pre, old_bag, new_cids))
        else:  # intro
            state, b, cids = walk.pop()
            idx = b.index(v)
            sub = _canon(state[:idx] + state[idx + 1 :])
            new_bag = b[:idx] + b[idx + 1 :]
            new_cids = {}
            for j in range(len(new_bag)):
                new_cids[sub[j]] = cids[state[j if j < idx else j + 1]]
            walk.append((sub, new_bag, new_cids))
    for v in range(n):
        if assignment[v] == -1:
            assignment[v] = next_cid
            next_cid += 1
    return assignment


def treewidth_exact(
    graph: WeightedGraph, td: Optional[TreeDecomposition] = None
) -> SolveReport:
    """Exact optimum by dynamic programming over a tree decomposition.

    Accepts any valid decomposition (``None`` computes the min-fill
    heuristic one) and rejects when Bell(width + 1), the number of bag
    partitions, exceeds the tractability guard.
    """
    start = time.perf_counter()
    if td is None:
        td = heuristic_tree_decomposition(graph)
    issues = td.violations(graph)
    if issues:
        raise PreconditionError(f"invalid tree decomposition: {issues[0]}")
    if _bell_number(td.width + 1, BAG_STATE_LIMIT) > BAG_STATE_LIMIT:
        raise PreconditionError(
            f"decomposition width {td.width} needs more than "
            f"{BAG_STATE_LIMIT} states per bag"
        )
    ops = _nice_program(td)
    value, assignment = _run_partition_dp(graph, ops)
    structure = CoalitionStructure.from_assignment(assignment)
    elapsed = (time.perf_counter() - start) * 1000.0
    report = make_report(graph, "treewidth", structure, elapsed_ms=elapsed)
    if report.value != value:
        raise RuntimeError(
            "internal error: reconstructed structure does not match the DP value"
        )
    return report
