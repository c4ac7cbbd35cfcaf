import logging
from math import comb

import pytest

from premodel.base import (
    InputError,
    InvalidTree,
    NotAChain,
    NotAModelTree,
    NotCompositionClosed,
)
from premodel.orders import StructurePair, is_cc_pair, is_model_pair
from premodel.poset import boolean_lattice, chain
from premodel.transfer import (
    left_class,
    pi_map,
    relation_from_pairs,
    transfer_system,
    trivial_transfer_system,
    weak_equivalences,
)
from premodel.trees import (
    Color,
    admissible_order,
    admissibly_ordered,
    blue_green_swap,
    count_model_trees,
    enumerate_trees,
    has_red_above,
    is_admissible,
    is_model_tree,
    pair_to_tree,
    red_above_blue_by_maps,
    red_above_green_by_maps,
    relabel,
    tree_to_pair,
    tricolored_tree,
    weak_classes,
)
from premodel.workspace import LatticeWorkspace

from .conftest import (
    CC_COUNTS,
    FOURTEEN_TREE_PI,
    FOURTEEN_TREE_PI_PRIME,
    SIX_TREE_EDGES,
    SIX_TREE_PI,
    SIX_TREE_PI_PRIME,
)
from .oracles import equivalence_classes


def _classes_of_pair(P):
    return equivalence_classes(weak_equivalences(P.lattice, P.R, P.R_prime).rel)


class TestTreeConstruction:
    def test_single_node(self):
        T = tricolored_tree(1, [])
        assert T.root == 0
        assert T.canonical == "()"
        assert admissible_order(T) == (0,)

    def test_blue_child_comes_first(self):
        T = tricolored_tree(2, [(0, 1, "blue")])
        assert admissible_order(T) == (1, 0)

    def test_fourteen_node_labels(self, fourteen_tree):
        assert fourteen_tree.root == 7
        assert admissible_order(fourteen_tree) == tuple(range(14))

    @pytest.mark.parametrize(
        "m, edges",
        [
            (2, []),
            (2, [(0, 1, "blue"), (1, 0, "green")]),
            (3, [(0, 1, "blue"), (0, 2, "blue")]),
            (3, [(0, 2, "red"), (1, 2, "green")]),
            (2, [(0, 2, "red")]),
            (2, [(0, 1, "purple")]),
            (0, []),
        ],
    )
    def test_invalid_trees(self, m, edges):
        with pytest.raises(InvalidTree):
            tricolored_tree(m, edges)

    def test_equality_ignores_labels(self, six_tree):
        labels = [6, 5, 4, 3, 2, 1, 0]
        moved = relabel(six_tree, labels)
        assert moved == six_tree
        assert moved.edges() != six_tree.edges()
        assert admissibly_ordered(moved).edges() == six_tree.edges()

    def test_color_parsing(self, six_tree):
        assert six_tree.child(1, "GREEN") == 3
        assert six_tree.child(1, Color.RED) == 4


class TestAdmissibleOrder:
    @pytest.mark.parametrize("m", range(1, 6))
    def test_traversal_is_admissible(self, m):
        for T in enumerate_trees(m):
            assert admissible_order(T) == tuple(range(m))
            assert is_admissible(T, tuple(range(m)))

    def test_unique(self):
        T = tricolored_tree(3, [(0, 1, "green"), (0, 2, "red")])
        assert is_admissible(T, (0, 1, 2))
        assert not is_admissible(T, (0, 2, 1))
        assert not is_admissible(T, (1, 0, 2))

    @pytest.mark.parametrize("m, count", list(enumerate(CC_COUNTS, start=1)))
    def test_counts(self, m, count):
        trees = enumerate_trees(m)
        assert len(trees) == comb(3 * m, m) // (2 * m + 1)
        assert len(trees) == count
        assert len(set(trees)) == len(trees)

    def test_enumerate_rejects_empty(self):
        with pytest.raises(InputError):
            enumerate_trees(0)


class TestTreePairs:
    def test_fourteen_node_tables(self, fourteen_tree):
        P = tree_to_pair(fourteen_tree)
        assert pi_map(P.R_prime) == FOURTEEN_TREE_PI_PRIME
        assert pi_map(P.R) == FOURTEEN_TREE_PI
        assert not is_model_tree(fourteen_tree)
        assert not is_model_pair(P)

    def test_six_node_tables(self, six_tree, six_pair):
        P = tree_to_pair(six_tree)
        assert pi_map(P.R) == SIX_TREE_PI
        assert pi_map(P.R_prime) == SIX_TREE_PI_PRIME
        assert P == six_pair

    def test_six_node_inverse(self, six_pair):
        T = pair_to_tree(six_pair)
        assert T.edges() == sorted(SIX_TREE_EDGES)
        assert T.root == 1

    def test_single_node(self):
        P = tree_to_pair(tricolored_tree(1, []))
        trivial = trivial_transfer_system(chain(0))
        assert P == StructurePair(trivial, trivial)
        assert pair_to_tree(P).m == 1

    def test_not_composition_closed(self, chain2, left_fan):
        R = transfer_system(chain2, relation_from_pairs(chain2, [(0, 1)]))
        with pytest.raises(NotCompositionClosed):
            pair_to_tree(StructurePair(R, left_fan))

    def test_needs_a_chain(self):
        trivial = trivial_transfer_system(boolean_lattice(2))
        with pytest.raises(NotAChain):
            pair_to_tree(StructurePair(trivial, trivial))

    @pytest.mark.parametrize("m", range(1, 7))
    def test_round_trip(self, m):
        for T in enumerate_trees(m):
            P = tree_to_pair(T)
            assert is_cc_pair(P)
            back = pair_to_tree(P)
            assert back.edges() == T.edges()

    @pytest.mark.parametrize("n", range(5))
    def test_bijection_with_cc_pairs(self, n):
        ws = LatticeWorkspace(chain(n))
        from_trees = {tree_to_pair(T) for T in enumerate_trees(n + 1)}
        assert from_trees == set(ws.structures("cc"))


class TestModelTrees:
    def test_six_node_tree(self, six_tree):
        assert is_model_tree(six_tree)
        assert weak_classes(six_tree) == ((0, 1, 2, 3), (4,), (5, 6))
        assert _classes_of_pair(tree_to_pair(six_tree)) == weak_classes(six_tree)

    def test_single_node(self):
        assert is_model_tree(tricolored_tree(1, []))

    @pytest.mark.parametrize("m", range(1, 7))
    def test_matches_pair_predicate(self, m):
        for T in enumerate_trees(m):
            assert is_model_tree(T) == is_model_pair(tree_to_pair(T))

    @pytest.mark.parametrize("m", range(1, 7))
    def test_counts(self, m):
        assert count_model_trees(m) == comb(2 * m - 1, m - 1)

    @pytest.mark.parametrize("m", range(1, 6))
    def test_weak_classes_match_pair(self, m):
        for T in enumerate_trees(m):
            if is_model_tree(T):
                assert weak_classes(T) == _classes_of_pair(tree_to_pair(T))

    def test_weak_classes_need_model_tree(self, fourteen_tree):
        with pytest.raises(NotAModelTree):
            weak_classes(fourteen_tree)

    def test_red_above(self, fourteen_tree, six_tree):
        assert has_red_above(fourteen_tree, "blue")
        assert has_red_above(fourteen_tree, Color.GREEN)
        assert not has_red_above(six_tree, "blue")
        assert not has_red_above(six_tree, "green")
        with pytest.raises(InputError):
            has_red_above(six_tree, "red")

    @pytest.mark.parametrize("m", range(1, 7))
    def test_red_above_matches_maps(self, m):
        for T in enumerate_trees(m):
            P = tree_to_pair(T)
            assert has_red_above(T, "blue") == red_above_blue_by_maps(P)
            assert has_red_above(T, "green") == red_above_green_by_maps(P)
            assert is_model_tree(T) == (
                not has_red_above(T, "blue") and not has_red_above(T, "green")
            )


class TestBlueGreenSwap:
    @pytest.mark.parametrize("m", range(1, 6))
    def test_model_trees(self, m):
        for T in enumerate_trees(m):
            if not is_model_tree(T):
                continue
            S = blue_green_swap(T)
            assert not S.flagged
            assert is_model_tree(S)
            assert blue_green_swap(S) == T
            assert weak_classes(S) == weak_classes(T)

    @pytest.mark.parametrize("m", range(1, 7))
    def test_involution_on_all_trees(self, m):
        for T in enumerate_trees(m):
            assert blue_green_swap(blue_green_swap(T)) == T

    @pytest.mark.parametrize("m", range(1, 6))
    def test_swap_reverses_left_classes(self, m):
        # inside a weak class the swapped right classes are the original
        # left classes, read in reverse order
        for T in enumerate_trees(m):
            if not is_model_tree(T):
                continue
            P = tree_to_pair(T)
            swapped = tree_to_pair(blue_green_swap(T))
            L = P.lattice
            left = left_class(L, P.R).rel
            left_prime = left_class(L, P.R_prime).rel
            for S in weak_classes(T):
                lo, hi = S[0], S[-1]
                for x in S:
                    for y in S:
                        if x > y:
                            continue
                        rx, ry = lo + hi - x, lo + hi - y
                        assert swapped.R_prime.rel[x, y] == left[ry, rx]
                        assert swapped.R.rel[x, y] == left_prime[ry, rx]

    def test_six_node_tree(self, six_tree):
        swapped = blue_green_swap(six_tree)
        assert swapped.child(1, "blue") == 3
        assert swapped.child(1, "green") == 0
        assert weak_classes(swapped) == weak_classes(six_tree)

    def test_non_model_tree_is_flagged(self, fourteen_tree, caplog):
        with caplog.at_level(logging.WARNING, logger="premodel.trees"):
            swapped = blue_green_swap(fourteen_tree)
        assert swapped.flagged
        assert "not a model tree" in caplog.text

    def test_strict(self, fourteen_tree):
        with pytest.raises(NotAModelTree):
            blue_green_swap(fourteen_tree, strict=True)
