import itertools
import math
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from helpers import degree_sequences, instances
from wienerqap.core import Sense, Shape, WienerQapInstance, evaluate_objective, is_pyramidal, is_v_shaped
from wienerqap.errors import InstanceTooLarge, InvalidDegreeSequence
from wienerqap.oracle import (
    Tree,
    brute_force,
    brute_force_restricted,
    default_cap,
    distinct_permutations,
    enumerate_caterpillars,
    enumerate_trees_with_degrees,
    prufer_decode,
    prufer_encode,
    pyramidal_permutations,
    v_shaped_permutations,
    wiener_index,
)
from wienerqap.degrees import validate_degree_sequence

SMALL = WienerQapInstance((1, 2, 3), (0, 1, 2))


def path(r):
    return Tree(r, tuple((i, i + 1) for i in range(r - 1)))


def star(r):
    return Tree(r, tuple((0, i) for i in range(1, r)))


class TestBruteForce:
    def test_small_max(self):
        bf = brute_force(SMALL, Sense.MAX)
        assert (bf.optimum, bf.optimal_count) == (34, 2)
        assert evaluate_objective(SMALL, bf.witness) == 34

    def test_small_min(self):
        bf = brute_force(SMALL, Sense.MIN)
        assert (bf.optimum, bf.optimal_count) == (26, 2)

    def test_single(self):
        bf = brute_force(WienerQapInstance((3,), (1,)), Sense.MAX)
        assert (bf.optimum, bf.optimal_count, bf.witness.perm) == (0, 1, (1,))

    @given(instances(max_n=6))
    def test_counts_match_python_enumeration(self, inst):
        values = [evaluate_objective(inst, p) for p in itertools.permutations(range(1, inst.n + 1))]
        for sense, pick in ((Sense.MAX, max), (Sense.MIN, min)):
            bf = brute_force(inst, sense)
            assert bf.optimum == pick(values)
            assert bf.optimal_count == values.count(pick(values))
            assert evaluate_objective(inst, bf.witness) == bf.optimum

    def test_cap(self):
        inst = WienerQapInstance(tuple(range(10)), tuple(range(10)))
        with pytest.raises(InstanceTooLarge):
            brute_force(inst, Sense.MAX)
        with pytest.raises(InstanceTooLarge):
            brute_force(SMALL, Sense.MAX, cap=2)

    def test_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv("WIENERQAP_ORACLE_CAP", "4")
        assert default_cap() == 4
        monkeypatch.setenv("WIENERQAP_ORACLE_CAP", "junk")
        assert default_cap() == 9

    def test_huge_values_use_exact_ints(self):
        inst = WienerQapInstance((2**40, 3, 2**41), (0, 2**25, 2**26))
        want = max(evaluate_objective(inst, p) for p in itertools.permutations((1, 2, 3)))
        assert brute_force(inst, Sense.MAX).optimum == want


class TestRestricted:
    def test_examples(self):
        assert brute_force_restricted(SMALL, Sense.MAX, Shape.V_SHAPED) == 34
        assert brute_force_restricted(SMALL, Sense.MIN, Shape.PYRAMIDAL) == 26

    @given(instances(min_n=2, max_n=2))
    def test_two(self, inst):
        want = 2 * inst.alphas[0] * inst.alphas[1] * (inst.betas[1] - inst.betas[0])
        for shape in (Shape.V_SHAPED, Shape.PYRAMIDAL):
            for sense in Sense:
                assert brute_force_restricted(inst, sense, shape) == want

    @pytest.mark.parametrize("n", range(1, 9))
    def test_enumerations(self, n):
        vs = list(v_shaped_permutations(n))
        ps = list(pyramidal_permutations(n))
        assert len(vs) == len(set(vs)) == 2 ** (n - 1)
        assert len(ps) == len(set(ps)) == 2 ** (n - 1)
        assert all(map(is_v_shaped, vs))
        assert all(map(is_pyramidal, ps))

    @given(instances())
    def test_shape_theorems(self, inst):
        assert brute_force_restricted(inst, Sense.MAX, Shape.V_SHAPED) == brute_force(inst, Sense.MAX).optimum
        assert brute_force_restricted(inst, Sense.MIN, Shape.PYRAMIDAL) == brute_force(inst, Sense.MIN).optimum

    def test_rejects_other_shapes(self):
        with pytest.raises(ValueError):
            brute_force_restricted(SMALL, Sense.MAX, Shape.BOTH)


class TestWienerIndex:
    def test_edge(self):
        assert wiener_index(path(2)) == 1

    def test_single_vertex(self):
        assert wiener_index(Tree(1, ())) == 0

    def test_p4_and_k13(self):
        assert wiener_index(path(4)) == 10
        assert wiener_index(star(4)) == 9

    @pytest.mark.parametrize("r", range(1, 30))
    def test_path_and_star_closed_forms(self, r):
        assert wiener_index(path(r)) == (r**3 - r) // 6
        assert wiener_index(star(r)) == (r - 1) ** 2

    def test_against_networkx(self):
        nx = pytest.importorskip("networkx")
        for seed in range(20):
            g = nx.random_labeled_tree(12, seed=seed) if hasattr(nx, "random_labeled_tree") else nx.random_tree(12, seed=seed)
            t = Tree(12, tuple(g.edges()))
            assert wiener_index(t) == nx.wiener_index(g)

    def test_tree_validation(self):
        with pytest.raises(InvalidDegreeSequence):
            Tree(3, ((0, 1),))
        with pytest.raises(InvalidDegreeSequence):
            Tree(4, ((0, 1), (1, 2), (2, 0)))
        with pytest.raises(InvalidDegreeSequence):
            Tree(2, ((0, 0),))
        with pytest.raises(InvalidDegreeSequence):
            Tree(2, ((0, 5),))


class TestPrufer:
    def test_distinct_permutations(self):
        items = (1, 1, 2, 3, 3)
        got = list(distinct_permutations(items))
        assert got == sorted(set(itertools.permutations(items)))

    @pytest.mark.parametrize("r", range(3, 7))
    def test_all_words_round_trip(self, r):
        seen = set()
        for word in itertools.product(range(r), repeat=r - 2):
            t = prufer_decode(word, r)
            assert prufer_encode(t) == word
            assert prufer_decode(prufer_encode(t), r).canonical_edges() == t.canonical_edges()
            seen.add(t.canonical_edges())
        assert len(seen) == r ** (r - 2)  # Cayley

    def test_edge_and_vertex(self):
        assert list(enumerate_trees_with_degrees((1, 1))) == [Tree(2, ((0, 1),))]
        assert [t.vertex_count for t in enumerate_trees_with_degrees((0,))] == [1]

    def test_p4_family(self):
        trees = list(enumerate_trees_with_degrees((2, 2, 1, 1)))
        assert len(trees) == 2
        assert {wiener_index(t) for t in trees} == {10}
        for t in trees:
            assert t.degrees() == [2, 2, 1, 1]

    def test_double_stars(self):
        trees = list(enumerate_trees_with_degrees((3, 3, 1, 1, 1, 1)))
        assert len(trees) == math.factorial(4) // (2 * 2)
        assert {wiener_index(t) for t in trees} == {29}

    @given(degree_sequences(max_r=8))
    def test_count_is_multinomial(self, raw):
        d = validate_degree_sequence(raw)
        trees = list(enumerate_trees_with_degrees(d))
        want = math.factorial(d.r - 2) if d.r > 2 else 1
        for x in d.degrees:
            want //= math.factorial(x - 1)
        assert len(trees) == want
        assert len({t.canonical_edges() for t in trees}) == want
        for t in trees:
            assert prufer_decode(prufer_encode(t), d.r).canonical_edges() == t.canonical_edges()
            assert Counter(t.degrees()) == Counter(d.degrees)

    def test_cap(self):
        with pytest.raises(InstanceTooLarge):
            list(enumerate_trees_with_degrees([2] * 8 + [1, 1]))
        assert len(list(enumerate_trees_with_degrees([2] * 8 + [1, 1], cap=10))) == math.factorial(8)


class TestCaterpillars:
    def test_three_profiles(self):
        got = dict(enumerate_caterpillars((3, 3, 2, 1, 1, 1, 1)))
        assert got == {(2, 0, 2): 48, (2, 1, 1): 46, (1, 1, 2): 46}

    @pytest.mark.parametrize("r", range(3, 12))
    def test_path(self, r):
        # r = 3 is the star K_{1,2}, a one-vertex backbone
        ell = (2,) if r == 3 else (1,) + (0,) * (r - 4) + (1,)
        assert list(enumerate_caterpillars([2] * (r - 2) + [1, 1])) == [(ell, (r**3 - r) // 6)]

    @pytest.mark.parametrize("r", range(3, 12))
    def test_star(self, r):
        assert list(enumerate_caterpillars([r - 1] + [1] * (r - 1))) == [((r - 1,), (r - 1) ** 2)]

    def test_cap(self):
        with pytest.raises(InstanceTooLarge):
            list(enumerate_caterpillars([2] * 10 + [1, 1]))

    @given(degree_sequences(max_r=9))
    def test_caterpillar_maximum_is_tree_maximum(self, raw):
        best_tree = max(wiener_index(t) for t in enumerate_trees_with_degrees(raw))
        best_cat = max(w for _, w in enumerate_caterpillars(raw))
        assert best_tree == best_cat
