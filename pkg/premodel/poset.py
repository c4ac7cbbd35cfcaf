"""Finite posets and lattices stored as dense boolean relation matrices.

Elements are the integers ``0..size-1``. ``leq[i, j]`` is True iff ``i <= j``.
Every matrix held by a value object is read-only, so values can be shared
freely between threads.
"""
import logging

import attrs
import numpy as np

from .base import (
    DimensionMismatch,
    ElementOutOfRange,
    NotALattice,
    NotAPartialOrder,
)

logger = logging.getLogger(__name__)


def _readonly(arr, dtype=bool):
    out = np.array(arr, dtype=dtype, copy=True)
    out.flags.writeable = False
    return out


def is_partial_order(rel):
    """Check if the given relation is reflexive, antisymmetric and transitive"""
    rel = np.asarray(rel, dtype=bool)
    if rel.ndim != 2 or rel.shape[0] != rel.shape[1]:
        return False
    if not rel[np.diag_indices_from(rel)].all():
        return False
    if (rel & rel.T).sum() > len(rel):
        return False
    rel2 = np.matmul(rel.astype(np.int64), rel.astype(np.int64)) > 0
    if ((~rel) & rel2).any():
        return False
    return True


@attrs.define(frozen=True, eq=False)
class PosetRelation:
    """A finite partial order on ``range(size)``.

    Used for the ambient lattice's order as well as for derived posets such as
    the transfer systems of a lattice under one of their three orderings.
    """

    size: int
    leq: np.ndarray = attrs.field(converter=_readonly)

    def __attrs_post_init__(self):
        if self.leq.shape != (self.size, self.size):
            raise DimensionMismatch(
                f"leq has shape {self.leq.shape}, expected ({self.size}, {self.size})"
            )

    @property
    def key(self):
        return (self.size, np.packbits(self.leq, axis=None).tobytes())

    def __eq__(self, other):
        if not isinstance(other, PosetRelation):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"{type(self).__name__}(size={self.size}, relations={int(self.leq.sum())})"

    def lt(self):
        out = self.leq.copy()
        out[np.diag_indices_from(out)] = False
        return out


@attrs.define(frozen=True, eq=False, repr=False)
class FiniteLattice(PosetRelation):
    """A finite lattice: a poset with total meet and join tables"""

    meet_table: np.ndarray = attrs.field(
        converter=lambda a: _readonly(a, dtype=np.int64), kw_only=True
    )
    join_table: np.ndarray = attrs.field(
        converter=lambda a: _readonly(a, dtype=np.int64), kw_only=True
    )
    bottom: int = attrs.field(kw_only=True)
    top: int = attrs.field(kw_only=True)
    name: str = attrs.field(default=None, kw_only=True)
    is_chain: bool = attrs.field(default=False, kw_only=True)

    def __repr__(self):
        label = self.name if self.name is not None else "lattice"
        return f"FiniteLattice({label}, size={self.size})"

    def comparable_pairs(self, strict=False):
        """Morphisms of the lattice viewed as a category, lexicographic order"""
        rel = self.lt() if strict else self.leq
        return [(int(x), int(y)) for x, y in np.argwhere(rel)]


@attrs.define(frozen=True, order=True)
class Interval:
    lo: int
    hi: int


def poset(leq):
    """Build a PosetRelation, rejecting relations that are not partial orders"""
    leq = np.asarray(leq, dtype=bool)
    if leq.ndim != 2 or leq.shape[0] != leq.shape[1]:
        raise DimensionMismatch(f"relation must be square, got shape {leq.shape}")
    if not is_partial_order(leq):
        raise NotAPartialOrder("relation is not reflexive, antisymmetric and transitive")
    return PosetRelation(size=leq.shape[0], leq=leq)


def _bound_table(leq, upper=True):
    """Least upper (or greatest lower) bound table.

    Returns ``(table, None)`` on success or ``(None, (i, j))`` naming the
    first pair, in lexicographic order, that has no such bound. A bound exists
    iff the set of common bounds equals the principal up-set (down-set) of
    some element.
    """
    n = leq.shape[0]
    rows = leq if upper else leq.T
    packed = np.packbits(rows, axis=1)
    index = {packed[k].tobytes(): k for k in range(n)}
    table = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        common = np.packbits(rows[i] & rows, axis=1)
        for j in range(i, n):
            k = index.get(common[j].tobytes())
            if k is None:
                return None, (i, j)
            table[i, j] = table[j, i] = k
    return table, None


def build_lattice(size, leq, name=None):
    """Build a FiniteLattice from an order relation

    Parameters
    ----------
    size : int
        Number of elements.
    leq : array-like of bool
        ``size`` x ``size`` relation matrix, ``leq[i][j]`` iff i <= j.
    name : str, optional
        Display label.

    Returns
    -------
    FiniteLattice

    Raises
    ------
    DimensionMismatch
        If the matrix is not ``size`` x ``size``.
    NotAPartialOrder
        If the relation is not a partial order.
    NotALattice
        If some pair lacks a glb or a lub; ``.pair`` names it.
    """
    leq = np.asarray(leq, dtype=bool)
    if leq.shape != (size, size):
        raise DimensionMismatch(f"leq has shape {leq.shape}, expected ({size}, {size})")
    if not is_partial_order(leq):
        raise NotAPartialOrder("relation is not reflexive, antisymmetric and transitive")
    join_table, bad = _bound_table(leq, upper=True)
    if bad is not None:
        raise NotALattice(bad, f"Not a lattice: {bad[0]} and {bad[1]} have no least upper bound")
    meet_table, bad = _bound_table(leq, upper=False)
    if bad is not None:
        raise NotALattice(bad, f"Not a lattice: {bad[0]} and {bad[1]} have no greatest lower bound")
    if size == 0:
        raise NotALattice((0, 0), "Not a lattice: the empty poset has no bottom")
    bottom = int(np.flatnonzero(leq.all(axis=1))[0])
    top = int(np.flatnonzero(leq.all(axis=0))[0])
    total = bool((leq | leq.T).all())
    return FiniteLattice(
        size=size,
        leq=leq,
        meet_table=meet_table,
        join_table=join_table,
        bottom=bottom,
        top=top,
        name=name,
        is_chain=total,
    )


def chain(n):
    """The total order [n] = {0 < 1 < ... < n} as a lattice on n+1 elements"""
    if n < 0:
        raise ValueError(f"chain length must be non-negative, got {n}")
    idx = np.arange(n + 1)
    return FiniteLattice(
        size=n + 1,
        leq=idx[:, None] <= idx[None, :],
        meet_table=np.minimum(idx[:, None], idx[None, :]),
        join_table=np.maximum(idx[:, None], idx[None, :]),
        bottom=0,
        top=n,
        name=f"[{n}]",
        is_chain=True,
    )


def boolean_lattice(k):
    """Subsets of a k-element set, elements numbered by bitmask"""
    n = 2**k
    idx = np.arange(n)
    leq = (idx[:, None] & idx[None, :]) == idx[:, None]
    return build_lattice(n, leq, name=f"B{k}")


def divisor_lattice(n):
    """Divisors of n ordered by divisibility, listed in increasing order"""
    if n < 1:
        raise ValueError(f"divisor lattice needs a positive integer, got {n}")
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    leq = [[b % a == 0 for b in divisors] for a in divisors]
    return build_lattice(len(divisors), leq, name=f"Div({n})")


def product_lattice(first, second):
    """Componentwise order on first x second; (i, j) has index i*second.size+j"""
    leq = np.kron(first.leq.astype(np.int64), second.leq.astype(np.int64)) > 0
    name = None
    if first.name and second.name:
        name = f"{first.name}x{second.name}"
    return build_lattice(first.size * second.size, leq, name=name)


def _check_element(L, *elements):
    for x in elements:
        if not 0 <= x < L.size:
            raise ElementOutOfRange(f"element {x} is not in a lattice of size {L.size}")


def meet(L, x, y):
    _check_element(L, x, y)
    return int(L.meet_table[x, y])


def join(L, x, y):
    _check_element(L, x, y)
    return int(L.join_table[x, y])


def is_lattice_poset(P):
    """True iff every pair of elements of P has both a lub and a glb"""
    if P.size == 0:
        return True
    upper, bad = _bound_table(P.leq, upper=True)
    if bad is not None:
        logger.debug(f"no least upper bound for {bad}")
        return False
    lower, bad = _bound_table(P.leq, upper=False)
    if bad is not None:
        logger.debug(f"no greatest lower bound for {bad}")
        return False
    return True


def intervals(P):
    """All intervals (lo <= hi) of P in lexicographic order of (lo, hi)"""
    return [Interval(int(lo), int(hi)) for lo, hi in np.argwhere(P.leq)]


def interval_order(P):
    """The poset of intervals of P, ordered componentwise

    Returns
    -------
    (list of Interval, PosetRelation)
        The intervals, in the order of :func:`intervals`, and their order.
    """
    ivs = intervals(P)
    lo = np.array([iv.lo for iv in ivs], dtype=np.int64)
    hi = np.array([iv.hi for iv in ivs], dtype=np.int64)
    leq = P.leq[lo[:, None], lo[None, :]] & P.leq[hi[:, None], hi[None, :]]
    return ivs, PosetRelation(size=len(ivs), leq=leq)


def covers(P):
    """Cover relation: out[i, j] iff j covers i"""
    lt = P.lt()
    lt_int = lt.astype(np.int64)
    any_inbetween = np.matmul(lt_int, lt_int) > 0
    return lt & ~any_inbetween

