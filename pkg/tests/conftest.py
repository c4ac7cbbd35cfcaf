import numpy as np
import pytest

from premodel.orders import StructurePair
from premodel.poset import boolean_lattice, chain, divisor_lattice
from premodel.transfer import relation_from_pairs, transfer_from_pi, transfer_system
from premodel.trees import tricolored_tree

CATALAN = [1, 1, 2, 5, 14, 42, 132, 429, 1430]
PREMODEL_COUNTS = [1, 3, 13, 68, 399, 2530]
CC_COUNTS = [1, 3, 12, 55, 273, 1428]
MODEL_COUNTS = [1, 3, 10, 35, 126, 462]

# bottom 0 below three pairwise incomparable maximal elements
FORK_LEQ = [
    [True, True, True, True],
    [False, True, False, False],
    [False, False, True, False],
    [False, False, False, True],
]

SIX_TREE_EDGES = [
    (1, 0, "blue"),
    (1, 3, "green"),
    (1, 4, "red"),
    (3, 2, "blue"),
    (4, 6, "red"),
    (6, 5, "blue"),
]
SIX_TREE_PI = (0, 3, 2, 3, 4, 5, 6)
SIX_TREE_PI_PRIME = (0, 6, 2, 6, 6, 5, 6)

FOURTEEN_TREE_EDGES = [
    (1, 0, "blue"),
    (1, 2, "green"),
    (1, 3, "red"),
    (3, 4, "green"),
    (4, 5, "green"),
    (3, 6, "red"),
    (7, 1, "blue"),
    (7, 8, "green"),
    (8, 9, "green"),
    (8, 10, "red"),
    (7, 13, "red"),
    (13, 11, "blue"),
    (11, 12, "green"),
]
FOURTEEN_TREE_PI = (0, 2, 2, 5, 5, 5, 6, 10, 9, 9, 10, 12, 12, 13)
FOURTEEN_TREE_PI_PRIME = (0, 6, 6, 6, 6, 6, 6, 13, 13, 13, 13, 12, 12, 13)


@pytest.fixture()
def chain2():
    return chain(2)


@pytest.fixture()
def chain3():
    return chain(3)


@pytest.fixture()
def b2():
    return boolean_lattice(2)


@pytest.fixture()
def b3():
    return boolean_lattice(3)


@pytest.fixture()
def div12():
    return divisor_lattice(12)


@pytest.fixture()
def fork_leq():
    return np.array(FORK_LEQ, dtype=bool)


@pytest.fixture()
def left_fan(chain2):
    """0 R 1 and 0 R 2 on chain(2)"""
    return transfer_system(chain2, relation_from_pairs(chain2, [(0, 1), (0, 2)]))


@pytest.fixture()
def six_tree():
    return tricolored_tree(7, SIX_TREE_EDGES)


@pytest.fixture()
def six_pair():
    return StructurePair(
        transfer_from_pi(SIX_TREE_PI), transfer_from_pi(SIX_TREE_PI_PRIME)
    )


@pytest.fixture()
def fourteen_tree():
    return tricolored_tree(14, FOURTEEN_TREE_EDGES)
