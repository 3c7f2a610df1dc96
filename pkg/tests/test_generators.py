from fractions import Fraction

import pytest

from wgg import (
    GenSpec,
    PreconditionError,
    WeightSpec,
    brute_force_opt,
    degeneracy_ordering,
    gen_bounded_degree,
    gen_grid,
    gen_random,
    gen_tree,
    max_independent_set_bf,
    reduce_independent_set,
    reduce_independent_set_unit,
)

from util import edge_set_is_acyclic


def random_topology(n, p, seed):
    g = gen_random(n, p, WeightSpec(), seed)
    return g.n, [(u, v) for u, v, _ in g.edges]


class TestWeightSpec:
    def test_ranges_validated(self):
        with pytest.raises(PreconditionError):
            WeightSpec(min_abs=4, max_abs=2)
        with pytest.raises(PreconditionError):
            WeightSpec(neg_probability=1.5)

    def test_samples_in_range_and_nonzero(self):
        import random

        spec = WeightSpec(0, 3, 0.5)
        rng = random.Random(1)
        for _ in range(200):
            w = spec.sample(rng)
            assert w != 0
            assert 1 <= abs(w) <= 3
            assert w.denominator == 1


class TestGenTree:
    def test_single_vertex(self):
        g = gen_tree(1, WeightSpec(), 0)
        assert (g.n, g.m) == (1, 0)

    def test_deterministic(self):
        assert gen_tree(5, WeightSpec(), 1) == gen_tree(5, WeightSpec(), 1)

    def test_is_a_tree(self):
        for seed in range(10):
            g = gen_tree(5 + seed, WeightSpec(), seed)
            assert g.m == g.n - 1
            assert edge_set_is_acyclic([(u, v) for u, v, _ in g.edges])

    def test_zero_vertices_rejected(self):
        with pytest.raises(PreconditionError):
            gen_tree(0, WeightSpec(), 0)


class TestGenGrid:
    def test_path_grid(self):
        g = gen_grid(1, 6, WeightSpec(), 0)
        assert g.m == 5
        assert edge_set_is_acyclic([(u, v) for u, v, _ in g.edges])

    def test_three_by_three(self):
        g = gen_grid(3, 3, WeightSpec(), 2)
        assert (g.n, g.m) == (9, 12)
        assert all(g.degree(v) <= 4 for v in range(g.n))

    def test_grids_are_three_degenerate(self):
        for seed in range(5):
            g = gen_grid(4, 6, WeightSpec(), seed)
            assert degeneracy_ordering(g).degeneracy <= 3

    def test_bad_dims_rejected(self):
        with pytest.raises(PreconditionError):
            gen_grid(0, 3, WeightSpec(), 0)


class TestGenBoundedDegree:
    def test_delta_one_is_perfect_matching(self):
        g = gen_bounded_degree(10, 1, WeightSpec(), 3)
        assert g.m == 5
        assert all(g.degree(v) == 1 for v in range(g.n))

    def test_degree_bound_holds(self):
        g = gen_bounded_degree(100, 8, WeightSpec(), 0)
        assert max(g.degree(v) for v in range(g.n)) <= 8
        assert g.max_positive_degree() <= 8

    def test_delta_not_below_n_rejected(self):
        with pytest.raises(PreconditionError):
            gen_bounded_degree(3, 3, WeightSpec(), 0)

    def test_odd_stub_count_rejected(self):
        with pytest.raises(PreconditionError):
            gen_bounded_degree(5, 3, WeightSpec(), 0)

    def test_deterministic(self):
        a = gen_bounded_degree(30, 4, WeightSpec(), 9)
        b = gen_bounded_degree(30, 4, WeightSpec(), 9)
        assert a == b


class TestGenRandom:
    def test_extreme_probabilities(self):
        assert gen_random(6, 0.0, WeightSpec(), 0).m == 0
        assert gen_random(6, 1.0, WeightSpec(), 0).m == 15

    def test_deterministic(self):
        assert gen_random(9, 0.4, WeightSpec(), 4) == gen_random(9, 0.4, WeightSpec(), 4)


class TestGenSpec:
    def test_identical_specs_identical_instances(self):
        spec = GenSpec(kind="grid", seed=4, rows=3, cols=5)
        assert spec.build() == spec.build()
        assert spec.build() == gen_grid(3, 5, WeightSpec(), 4)

    def test_dispatches_every_kind(self):
        assert GenSpec(kind="tree", n=6, seed=1).build().n == 6
        assert GenSpec(kind="regular", n=8, delta=2, seed=1).build().n == 8
        reduced = GenSpec(kind="reduce-is", topology=(2, ((0, 1),))).build()
        assert reduced.n == 3
        unit = GenSpec(kind="reduce-is-pm1", topology=(2, ((0, 1),))).build()
        assert unit.weight(0, 1) == -1

    def test_missing_parameters_rejected(self):
        with pytest.raises(PreconditionError):
            GenSpec(kind="tree").build()
        with pytest.raises(PreconditionError):
            GenSpec(kind="reduce-is").build()
        with pytest.raises(PreconditionError):
            GenSpec(kind="mystery", n=3).build()


class TestIndependentSetOracle:
    def test_edgeless(self):
        assert max_independent_set_bf(5, []) == 5

    def test_clique(self):
        edges = [(u, v) for u in range(5) for v in range(u + 1, 5)]
        assert max_independent_set_bf(5, edges) == 1

    def test_five_cycle(self):
        assert max_independent_set_bf(5, [(i, (i + 1) % 5) for i in range(5)]) == 2

    def test_size_guard(self):
        with pytest.raises(PreconditionError):
            max_independent_set_bf(25, [])

    def test_self_loop_rejected(self):
        with pytest.raises(PreconditionError):
            max_independent_set_bf(3, [(1, 1)])


class TestReduction:
    def test_single_edge_instance(self):
        g = reduce_independent_set(2, [(0, 1)])
        assert g.n == 3
        assert g.weight(0, 1) == Fraction(-3)
        assert g.weight(0, 2) == Fraction(1)
        assert g.weight(1, 2) == Fraction(1)
        assert brute_force_opt(g).value == 1

    def test_edgeless_input(self):
        g = reduce_independent_set(3, [])
        assert brute_force_opt(g).value == 3

    def test_triangle_input(self):
        g = reduce_independent_set(3, [(0, 1), (1, 2), (0, 2)])
        assert brute_force_opt(g).value == 1

    def test_round_trip_equals_independence_number(self):
        for seed in range(25):
            n = 2 + seed % 7
            n, edges = random_topology(n, 0.5, seed)
            alpha = max_independent_set_bf(n, edges)
            value = brute_force_opt(reduce_independent_set(n, edges)).value
            assert value == alpha

    def test_duplicate_edge_rejected(self):
        with pytest.raises(PreconditionError, match="duplicate"):
            reduce_independent_set(3, [(0, 1), (1, 0)])


class TestUnitReduction:
    def test_edgeless_input(self):
        g = reduce_independent_set_unit(3, [])
        assert brute_force_opt(g).value == 3

    def test_single_edge(self):
        g = reduce_independent_set_unit(2, [(0, 1)])
        assert brute_force_opt(g).value == 1

    def test_unit_clique(self):
        edges = [(u, v) for u in range(4) for v in range(u + 1, 4)]
        g = reduce_independent_set_unit(4, edges)
        value = brute_force_opt(g).value
        assert 1 <= value <= 9

    def test_sandwich(self):
        for seed in range(25):
            n = 2 + seed % 7
            n, edges = random_topology(n, 0.5, seed + 100)
            alpha = max_independent_set_bf(n, edges)
            value = brute_force_opt(reduce_independent_set_unit(n, edges)).value
            assert alpha <= value <= 9 * alpha
