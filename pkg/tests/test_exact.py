import random
from fractions import Fraction

import pytest

from wgg import (
    CoalitionStructure,
    PreconditionError,
    TreeDecomposition,
    WeightSpec,
    brute_force_opt,
    forest_exact,
    gen_grid,
    gen_random,
    gen_tree,
    heuristic_tree_decomposition,
    normalize_graph,
    positive_weight_sum,
    structure_value,
    treewidth_exact,
)

from util import enumerate_optimum, triangle


class TestBruteForce:
    def test_triangle(self):
        report = brute_force_opt(triangle())
        assert report.value == 3
        assert report.structure.blocks() == [[0], [1, 2]]

    def test_all_negative_clique(self):
        g = normalize_graph(
            [(0, 1, -1), (1, 2, -2), (0, 2, -3)], 3
        )
        report = brute_force_opt(g)
        assert report.value == 0
        assert report.structure == CoalitionStructure.singletons(3)

    def test_all_positive_clique(self):
        g = normalize_graph([(0, 1, 1), (1, 2, 2), (0, 2, 3)], 3)
        report = brute_force_opt(g)
        assert report.value == 6
        assert report.structure.blocks() == [[0, 1, 2]]

    def test_size_guard(self):
        g = normalize_graph([], 21)
        with pytest.raises(PreconditionError, match="approximate"):
            brute_force_opt(g)

    def test_edgeless_ties_break_to_singletons(self):
        g = normalize_graph([], 3)
        report = brute_force_opt(g)
        assert report.structure == CoalitionStructure.singletons(3)

    def test_tie_breaks_lexicographically(self):
        # Optima: {{0},{1,2}}, {{0,1},{2}}, {{0,1,2}} all reach 2; the
        # canonical block list [[0],[1,2]] is lexicographically smallest.
        g = normalize_graph([(0, 1, 2), (1, 2, 2), (0, 2, -2)], 3)
        report = brute_force_opt(g)
        assert report.value == 2
        assert report.structure.blocks() == [[0], [1, 2]]

    def test_matches_partition_enumeration(self):
        for seed in range(25):
            g = gen_random(2 + seed % 6, 0.6, WeightSpec(), seed)
            assert brute_force_opt(g).value == enumerate_optimum(g)

    def test_dominates_random_structures(self):
        rng = random.Random(0)
        for seed in range(5):
            g = gen_random(9, 0.5, WeightSpec(), seed)
            opt = brute_force_opt(g).value
            assert opt >= 0
            for _ in range(1000):
                labels = [rng.randrange(4) for _ in range(g.n)]
                cs = CoalitionStructure.from_assignment(labels)
                assert structure_value(g, cs) <= opt

    def test_fractional_weights(self):
        # Taking both positive edges forces the grand coalition and the
        # -3/4 edge with it, so the optimum is the single 1/2 edge.
        g = normalize_graph(
            [(0, 1, "1/3"), (1, 2, "1/2"), (0, 2, "-3/4")], 3
        )
        report = brute_force_opt(g)
        assert report.value == enumerate_optimum(g) == Fraction(1, 2)


class TestForestExact:
    def test_path_example(self):
        g = normalize_graph([(0, 1, 1), (1, 2, -1)], 3)
        report = forest_exact(g)
        assert report.value == 1
        assert report.structure.blocks() == [[0, 1], [2]]

    def test_all_negative_tree(self):
        g = gen_tree(10, WeightSpec(neg_probability=1.0), 3)
        report = forest_exact(g)
        assert report.value == 0
        assert report.structure == CoalitionStructure.singletons(10)

    def test_all_positive_tree_single_coalition(self):
        g = gen_tree(10, WeightSpec(neg_probability=0.0), 4)
        report = forest_exact(g)
        assert report.value == positive_weight_sum(g)
        assert report.structure.num_coalitions == 1

    def test_cycle_rejected(self):
        g = normalize_graph([(0, 1, 1), (1, 2, 1), (0, 2, 1)], 3)
        with pytest.raises(PreconditionError, match="cycle"):
            forest_exact(g)

    def test_value_is_positive_sum_and_optimal(self):
        for seed in range(20):
            g = gen_tree(2 + seed % 11, WeightSpec(), seed)
            report = forest_exact(g)
            assert report.value == positive_weight_sum(g)
            assert report.value == brute_force_opt(g).value

    def test_forest_with_isolated_vertices(self):
        g = normalize_graph([(1, 3, 2), (4, 5, -1)], 7)
        report = forest_exact(g)
        assert report.value == 2


class TestTreewidthExact:
    def test_triangle_single_bag(self):
        g = triangle()
        td = TreeDecomposition(bags=(frozenset({0, 1, 2}),), tree_edges=())
        report = treewidth_exact(g, td)
        assert report.value == 3

    def test_four_cycle_three_positive_one_negative(self):
        # All three positive edges cannot be achieved together: joining
        # their path closes the cycle and swallows the negative edge, so
        # the optimum is 2, one below the positive weight sum.
        g = normalize_graph([(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, -1)], 4)
        report = treewidth_exact(g)
        assert report.value == 2
        assert report.value == brute_force_opt(g).value

    def test_forest_agrees_with_forest_solver(self):
        for seed in range(10):
            g = gen_tree(12, WeightSpec(), seed)
            td = heuristic_tree_decomposition(g)
            assert td.width == 1
            assert treewidth_exact(g, td).value == forest_exact(g).value

    def test_invalid_decomposition_rejected(self):
        g = triangle()
        td = TreeDecomposition(bags=(frozenset({0, 1}),), tree_edges=())
        with pytest.raises(PreconditionError, match="invalid tree decomposition"):
            treewidth_exact(g, td)

    def test_width_guard(self):
        n = 13
        g = normalize_graph(
            [(u, v, 1) for u in range(n) for v in range(u + 1, n)], n
        )
        with pytest.raises(PreconditionError, match="states per bag"):
            treewidth_exact(g)

    def test_agrees_with_brute_force(self):
        for seed in range(20):
            g = gen_random(2 + seed % 9, 0.5, WeightSpec(), seed)
            assert treewidth_exact(g).value == brute_force_opt(g).value
        for seed in range(5):
            g = gen_grid(3, 4, WeightSpec(), seed)
            assert treewidth_exact(g).value == brute_force_opt(g).value

    def test_structure_value_matches_report(self):
        for seed in range(10):
            g = gen_random(8, 0.4, WeightSpec(), seed)
            report = treewidth_exact(g)
            assert structure_value(g, report.structure) == report.value


class TestTreewidthCustomDecompositions:
    """The DP must accept any valid decomposition, not just min-fill output."""

    def test_star_of_bags_with_many_joins(self):
        # Five triangles sharing vertex 0; a central {0} bag with one child
        # bag per triangle forces a five-way join.
        edges = []
        for i in range(5):
            a, b = 1 + 2 * i, 2 + 2 * i
            edges += [(0, a, 2), (0, b, 2), (a, b, -1 if i % 2 else 3)]
        g = normalize_graph(edges, 11)
        bags = [frozenset({0})] + [
            frozenset({0, 1 + 2 * i, 2 + 2 * i}) for i in range(5)
        ]
        td = TreeDecomposition(
            bags=tuple(bags), tree_edges=tuple((0, i) for i in range(1, 6))
        )
        assert td.violations(g) == []
        assert treewidth_exact(g, td).value == brute_force_opt(g).value

    def test_redundant_duplicate_bags(self):
        g = gen_random(8, 0.5, WeightSpec(), 3)
        base = heuristic_tree_decomposition(g)
        bags = list(base.bags)
        tree = list(base.tree_edges)
        for i in range(len(base.bags)):
            bags.append(base.bags[i])
            tree.append((i, len(bags) - 1))
        td = TreeDecomposition(bags=tuple(bags), tree_edges=tuple(tree))
        assert td.violations(g) == []
        assert treewidth_exact(g, td).value == brute_force_opt(g).value

    def test_single_fat_bag(self):
        for seed in range(5):
            g = gen_random(7, 0.6, WeightSpec(), seed)
            td = TreeDecomposition(
                bags=(frozenset(range(7)),), tree_edges=()
            )
            assert treewidth_exact(g, td).value == brute_force_opt(g).value

    def test_path_decomposition_of_a_path(self):
        g = normalize_graph([(i, i + 1, (-1) ** i * (i + 1)) for i in range(7)], 8)
        bags = tuple(frozenset({i, i + 1}) for i in range(7))
        td = TreeDecomposition(
            bags=bags, tree_edges=tuple((i, i + 1) for i in range(6))
        )
        assert td.violations(g) == []
        assert treewidth_exact(g, td).value == forest_exact(g).value

    def test_shared_separator_join_counts_edges_once(self):
        # Two dense halves glued on a 3-clique separator {0, 1, 2}; both
        # children introduce the separator's edges, so the join must
        # subtract them exactly once per co-blocked pair.
        edges = [(0, 1, 5), (0, 2, -2), (1, 2, 4)]
        edges += [(0, 3, 1), (1, 3, 2), (2, 3, -3), (3, 4, 2), (0, 4, -1)]
        edges += [(0, 5, 3), (1, 5, -4), (2, 5, 1), (5, 6, 2), (1, 6, 1)]
        g = normalize_graph(edges, 7)
        bags = (
            frozenset({0, 1, 2}),
            frozenset({0, 1, 2, 3, 4}),
            frozenset({0, 1, 2, 5, 6}),
        )
        td = TreeDecomposition(bags=bags, tree_edges=((0, 1), (0, 2)))
        assert td.violations(g) == []
        assert treewidth_exact(g, td).value == brute_force_opt(g).value
