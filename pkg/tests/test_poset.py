import networkx as nx
import numpy as np
import pytest

from premodel.base import (
    DimensionMismatch,
    ElementOutOfRange,
    InputError,
    NotALattice,
    NotAPartialOrder,
)
from premodel.poset import (
    Interval,
    build_lattice,
    chain,
    covers,
    interval_order,
    intervals,
    is_lattice_poset,
    is_partial_order,
    join,
    meet,
    poset,
    product_lattice,
)
from premodel.render import cover_graph


def _assert_lattice_axioms(L):
    idx = np.arange(L.size)
    m = L.meet_table
    j = L.join_table
    assert L.leq[m, idx[:, None]].all()
    assert L.leq[m, idx[None, :]].all()
    assert L.leq[idx[:, None], j].all()
    assert L.leq[idx[None, :], j].all()
    assert (m == m.T).all()
    assert (j == j.T).all()
    assert (m[idx, idx] == idx).all()
    # absorption: x ^ (x v y) = x
    assert (m[idx[:, None], j] == idx[:, None]).all()
    # greatest lower bound and least upper bound
    lower = L.leq[:, :, None] & L.leq[:, None, :]
    assert (L.leq[:, m] | ~lower).all()
    upper = L.leq.T[:, :, None] & L.leq.T[:, None, :]
    assert (np.moveaxis(L.leq[j, :], 2, 0) | ~upper).all()


class TestChains:
    def test_chain_zero(self):
        L = chain(0)
        assert L.size == 1
        assert L.bottom == L.top == 0
        assert L.is_chain

    def test_chain_order(self, chain2):
        assert chain2.comparable_pairs(strict=True) == [(0, 1), (0, 2), (1, 2)]
        assert chain2.name == "[2]"

    @pytest.mark.parametrize("n", range(7))
    def test_meet_and_join(self, n):
        L = chain(n)
        for x in range(n + 1):
            for y in range(n + 1):
                assert meet(L, x, y) == min(x, y)
                assert join(L, x, y) == max(x, y)

    def test_negative_length(self):
        with pytest.raises(ValueError):
            chain(-1)

    def test_build_matches_chain(self, chain2):
        assert build_lattice(3, chain2.leq) == chain2

    def test_element_out_of_range(self, chain2):
        with pytest.raises(ElementOutOfRange):
            meet(chain2, 0, 3)
        with pytest.raises(IndexError):
            join(chain2, -1, 0)


class TestBuildLattice:
    def test_boolean_lattice(self, b2):
        assert b2.size == 4
        assert meet(b2, 1, 2) == 0
        assert join(b2, 1, 2) == 3
        assert (b2.bottom, b2.top) == (0, 3)
        assert not b2.is_chain

    def test_divisor_lattice(self, div12):
        # divisors 1, 2, 3, 4, 6, 12
        assert div12.size == 6
        assert meet(div12, 3, 4) == 1
        assert join(div12, 1, 2) == 4
        assert join(div12, 2, 3) == 5

    @pytest.mark.parametrize("fixture", ["b2", "b3", "div12", "chain3"])
    def test_lattice_axioms(self, fixture, request):
        _assert_lattice_axioms(request.getfixturevalue(fixture))

    def test_product(self, chain2):
        L = product_lattice(chain(1), chain2)
        assert L.size == 6
        assert L.name == "[1]x[2]"
        _assert_lattice_axioms(L)
        # (1, 0) v (0, 2) = (1, 2)
        assert join(L, 3, 2) == 5

    def test_fork_is_not_a_lattice(self, fork_leq):
        with pytest.raises(NotALattice) as excinfo:
            build_lattice(4, fork_leq)
        assert excinfo.value.pair == (1, 2)
        assert isinstance(excinfo.value, InputError)

    def test_not_antisymmetric(self):
        with pytest.raises(NotAPartialOrder):
            build_lattice(2, [[True, True], [True, True]])

    def test_not_transitive(self):
        leq = np.eye(3, dtype=bool)
        leq[0, 1] = leq[1, 2] = True
        assert not is_partial_order(leq)
        with pytest.raises(NotAPartialOrder):
            poset(leq)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatch):
            build_lattice(3, np.eye(2, dtype=bool))

    def test_matrices_are_read_only(self, chain2):
        with pytest.raises(ValueError):
            chain2.leq[0, 0] = False


class TestPosetTools:
    @pytest.mark.parametrize("n", range(8))
    def test_chains_are_lattices(self, n):
        assert is_lattice_poset(chain(n))

    def test_fork_poset(self, fork_leq):
        assert not is_lattice_poset(poset(fork_leq))

    def test_intervals(self):
        ivs = intervals(chain(1))
        assert ivs == [Interval(0, 0), Interval(0, 1), Interval(1, 1)]

    @pytest.mark.parametrize("fixture", ["chain3", "b2", "div12"])
    def test_interval_count(self, fixture, request):
        L = request.getfixturevalue(fixture)
        expected = sum(
            1 for i in range(L.size) for j in range(L.size) if L.leq[i, j]
        )
        assert len(intervals(L)) == expected

    def test_interval_order(self):
        ivs, P = interval_order(chain(1))
        assert P.size == 3
        assert is_partial_order(P.leq)
        a, b = ivs.index(Interval(0, 0)), ivs.index(Interval(1, 1))
        assert P.leq[a, b] and not P.leq[b, a]

    def test_covers(self, chain3, b2):
        expected = np.zeros((4, 4), dtype=bool)
        expected[[0, 1, 2], [1, 2, 3]] = True
        assert (covers(chain3) == expected).all()
        assert covers(b2).sum() == 4
        assert not covers(b2)[0, 3]

    @pytest.mark.parametrize("fixture", ["b3", "div12"])
    def test_cover_graph_is_transitive_reduction(self, fixture, request):
        L = request.getfixturevalue(fixture)
        g = cover_graph(L)
        rows, cols = np.nonzero(covers(L))
        assert sorted(g.edges()) == sorted(zip(rows.tolist(), cols.tolist()))
        full = nx.DiGraph(list(zip(*np.nonzero(L.lt()))))
        assert sorted(g.edges()) == sorted(nx.transitive_reduction(full).edges())
        assert g.number_of_nodes() == L.size
