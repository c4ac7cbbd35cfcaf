"""Premodel structures and the three orderings on transfer systems.

A premodel structure is a pair ``R <= R'`` of transfer systems on one
lattice. Its weak equivalences are ``W = R o L'``: a map is in W when it
factors as a left map of ``R'`` followed by a map of ``R``. The structure is
composition closed when W is, and a model structure when W has 2-out-of-3.
"""
import enum
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import attrs
import numpy as np
import pandas as pd

from .base import InputError, NotAPremodelPair, ensure
from .config import DEFAULT_REPORT_MAX_N, resolve_max_workers
from .poset import PosetRelation, is_partial_order
from .timeit import TimeIt
from .transfer import (
    TransferSystem,
    compose,
    enumerate_transfer_systems,
    left_class,
)

logger = logging.getLogger(__name__)


class PairKind(enum.Enum):
    PREMODEL = "premodel"
    COMPOSITION_CLOSED = "cc"
    MODEL = "model"
    COMPATIBLE = "compatible"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        aliases = {"composition_closed": cls.COMPOSITION_CLOSED}
        try:
            return aliases.get(value) or cls(value)
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise InputError(f"unknown kind {value!r}, expected one of {choices}")


class OrderKind(enum.Enum):
    INCLUSION = "inclusion"
    COMPOSITION_CLOSED = "cc"
    MODEL = "model"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise InputError(f"unknown order {value!r}, expected one of {choices}")


def _check_pair(instance, attribute, value):
    R = instance.R
    if R.lattice != value.lattice:
        raise NotAPremodelPair("R and R' live on different lattices")
    if not R.issubset(value):
        raise NotAPremodelPair("R must be contained in R'")


@attrs.define(frozen=True)
class StructurePair:
    """A premodel structure (R, R')"""

    R: TransferSystem
    R_prime: TransferSystem = attrs.field(validator=_check_pair)

    @property
    def lattice(self):
        return self.R.lattice


def _cc_criterion(R, left_prime):
    """``R o`` then ``L'`` lands in ``L'`` then ``R``"""
    w = np.matmul(left_prime.astype(np.int64), R.astype(np.int64)) > 0
    swapped = np.matmul(R.astype(np.int64), left_prime.astype(np.int64)) > 0
    return not (swapped & ~w).any()


def _two_of_three(leq, w):
    chain3 = leq[:, :, None] & leq[None, :, :]
    a = w[:, :, None]
    b = w[None, :, :]
    c = w[:, None, :]
    broken = (a & b & ~c) | (a & c & ~b) | (b & c & ~a)
    return not (chain3 & broken).any()


def _compatible(L, R, R_prime):
    # axes are (x, y, z) with y, z <= x
    idx = np.arange(L.size)
    restricted = R_prime[L.meet_table, idx[:, None]]
    hypothesis = R.T[:, :, None] & L.leq.T[:, None, :] & restricted[None, :, :]
    return not (hypothesis & ~R_prime.T[:, None, :]).any()


def _pair_weak_equivalences(P, left_prime=None):
    if left_prime is None:
        left_prime = left_class(P.lattice, P.R_prime)
    return compose(left_prime, P.R)


def is_cc_pair(P, left_prime=None):
    """Check if the weak equivalences of P are closed under composition

    Uses the criterion that every ``x R z L' y`` must also factor as
    ``x L' w R y``.

    Parameters
    ----------
    P : StructurePair
    left_prime : MorphismClass, optional
        Precomputed left class of ``P.R_prime``.

    Returns
    -------
    bool
    """
    if left_prime is None:
        left_prime = left_class(P.lattice, P.R_prime)
    return _cc_criterion(P.R.rel, left_prime.rel)


def is_model_pair(P, left_prime=None):
    """Check if the weak equivalences of P satisfy 2-out-of-3"""
    w = _pair_weak_equivalences(P, left_prime)
    return _two_of_three(P.lattice.leq, w.rel)


def is_compatible_pair(P):
    """For every x and y, z <= x: ``y R x`` and ``(y ^ z) R' y`` give ``z R' x``"""
    return _compatible(P.lattice, P.R.rel, P.R_prime.rel)


def classify(P, left_prime=None):
    """The four kind flags of a premodel structure

    Returns
    -------
    dict
        Keys ``premodel``, ``cc``, ``model`` and ``compatible``.
    """
    if left_prime is None:
        left_prime = left_class(P.lattice, P.R_prime)
    model = is_model_pair(P, left_prime)
    cc = is_cc_pair(P, left_prime)
    ensure(cc or not model, "model structure that is not composition closed")
    return {
        "premodel": True,
        "cc": cc,
        "model": model,
        "compatible": is_compatible_pair(P),
    }


def cc_leq(R1, R2, left_prime=None):
    """R1 is below R2 in the composition-closed order"""
    if not R1.issubset(R2):
        return False
    return is_cc_pair(StructurePair(R1, R2), left_prime)


def model_leq(R1, R2, left_prime=None):
    """R1 is below R2 in the model order"""
    if not R1.issubset(R2):
        return False
    return is_model_pair(StructurePair(R1, R2), left_prime)


def is_right_quillen(P1, P2):
    """P1 sits below P2 in the interval order: ``R1 <= R2`` and ``R1' <= R2'``"""
    return P1.R.issubset(P2.R) and P1.R_prime.issubset(P2.R_prime)


def is_restricted_right_quillen(P1, P2):
    """Componentwise composition-closed comparison of two structures"""
    return cc_leq(P1.R, P2.R) and cc_leq(P1.R_prime, P2.R_prime)


_PAIR_TESTS = {
    PairKind.PREMODEL: lambda L, R, Rp, lp: True,
    PairKind.COMPOSITION_CLOSED: lambda L, R, Rp, lp: _cc_criterion(R, lp),
    PairKind.MODEL: lambda L, R, Rp, lp: _two_of_three(
        L.leq, np.matmul(lp.astype(np.int64), R.astype(np.int64)) > 0
    ),
    PairKind.COMPATIBLE: lambda L, R, Rp, lp: _compatible(L, R, Rp),
}


def inclusion_matrix(systems):
    """``out[i, j]`` iff ``systems[i]`` is contained in ``systems[j]``"""
    if not systems:
        return np.zeros((0, 0), dtype=bool)
    flat = np.stack([R.rel.ravel() for R in systems]).astype(np.int64)
    return np.matmul(flat, (1 - flat).T) == 0


def _kind_matrix(L, systems, left_classes, kind, workers):
    """``out[i, j]`` iff ``(systems[i], systems[j])`` is a structure of the kind"""
    sub = inclusion_matrix(systems)
    test = _PAIR_TESTS[kind]

    def column(j):
        rp = systems[j].rel
        lp = left_classes[j].rel
        return [bool(sub[i, j]) and test(L, systems[i].rel, rp, lp) for i in range(len(systems))]

    if workers == 1:
        cols = [column(j) for j in range(len(systems))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            cols = list(ex.map(column, range(len(systems))))
    return np.array(cols, dtype=bool).T.reshape(len(systems), len(systems))


def _sweep_inputs(L, systems, left_classes, max_workers):
    workers = resolve_max_workers(max_workers)
    if systems is None:
        systems = enumerate_transfer_systems(L, max_workers=workers)
    if left_classes is None:
        left_classes = [left_class(L, R) for R in systems]
    return systems, left_classes, workers


def order_poset(L, kind, systems=None, left_classes=None, max_workers=None):
    """One of the three orderings on the transfer systems of L

    Parameters
    ----------
    L : FiniteLattice
    kind : {'inclusion', 'cc', 'model'} or OrderKind
    systems : list of TransferSystem, optional
        The canonical enumeration of L, if already computed.
    left_classes : list of MorphismClass, optional
        Left classes matching ``systems``.
    max_workers : int or None, optional

    Returns
    -------
    PosetRelation
        Indexed by canonical enumeration order.
    """
    kind = OrderKind.parse(kind)
    systems, left_classes, workers = _sweep_inputs(L, systems, left_classes, max_workers)
    with TimeIt(f"{kind.value} order", systems=len(systems)):
        if kind is OrderKind.INCLUSION:
            rel = inclusion_matrix(systems)
        elif kind is OrderKind.COMPOSITION_CLOSED:
            rel = _kind_matrix(L, systems, left_classes, PairKind.COMPOSITION_CLOSED, workers)
        else:
            rel = _kind_matrix(L, systems, left_classes, PairKind.MODEL, workers)
    ensure(is_partial_order(rel), f"the {kind.value} relation is not a partial order")
    return PosetRelation(size=len(systems), leq=rel)


def cc_join(L, R1, R2, systems=None, left_classes=None):
    """Least upper bound of R1 and R2 in the composition-closed order

    The intersection of all common upper bounds.
    """
    if systems is None:
        systems = enumerate_transfer_systems(L)
    if left_classes is None:
        left_classes = [left_class(L, R) for R in systems]
    upper = [
        R
        for R, lp in zip(systems, left_classes)
        if cc_leq(R1, R, lp) and cc_leq(R2, R, lp)
    ]
    ensure(len(upper) > 0, "no common upper bound; the maximal system should be one")
    rel = np.logical_and.reduce([R.rel for R in upper])
    joined = TransferSystem(lattice=L, rel=rel)
    ensure(
        cc_leq(R1, joined) and cc_leq(R2, joined),
        "intersection of upper bounds is not an upper bound",
    )
    return joined


def enumerate_structures(L, kind, systems=None, left_classes=None, max_workers=None):
    """All premodel structures of the given kind on L

    Returns
    -------
    list of StructurePair
        Ordered by the pair of canonical indices ``(i, j)`` of ``(R, R')``.
    """
    kind = PairKind.parse(kind)
    systems, left_classes, workers = _sweep_inputs(L, systems, left_classes, max_workers)
    with TimeIt(f"enumerate {kind.value} structures", systems=len(systems)):
        rel = _kind_matrix(L, systems, left_classes, kind, workers)
    found = [StructurePair(systems[i], systems[j]) for i, j in np.argwhere(rel)]
    logger.info(f"{len(found)} {kind.value} structures")
    return found


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


def closed_form_count(n, kind):
    """Number of structures of the given kind on chain(n), from its closed form

    Parameters
    ----------
    n : int
        Chain length, at least 0.
    kind : str or PairKind

    Returns
    -------
    int
    """
    kind = PairKind.parse(kind)
    if n < 0:
        raise InputError(f"n must be non-negative, got {n}")
    if kind is PairKind.PREMODEL:
        value = Fraction(2, (n + 1) * (n + 2)) * math.comb(4 * n + 5, n)
    elif kind is PairKind.MODEL:
        value = Fraction(math.comb(2 * n + 1, n))
    else:
        value = Fraction(1, 2 * n + 3) * math.comb(3 * n + 3, n + 1)
    ensure(value.denominator == 1, f"closed form for {kind.value} at n={n} is not an integer")
    return value.numerator


def count_table(max_n=DEFAULT_REPORT_MAX_N):
    """Closed-form counts for n = 0..max_n

    Returns
    -------
    pandas.DataFrame
        Indexed by n with columns ``transfer``, ``premodel``, ``cc``,
        ``model`` and ``compatible``.
    """
    rows = []
    for n in range(max_n + 1):
        row = {"n": n, "transfer": catalan(n + 1)}
        for kind in PairKind:
            row[kind.value] = closed_form_count(n, kind)
        rows.append(row)
    return pd.DataFrame(rows).set_index("n")


def ratio_table(max_n=DEFAULT_REPORT_MAX_N):
    """Exact ratios between the closed-form counts

    Returns
    -------
    pandas.DataFrame
        Indexed by n with ``Fraction`` columns ``Q/C``, ``C/P`` and ``Q/P``
        where Q counts model, C composition-closed and P premodel structures.
    """
    counts = count_table(max_n)
    out = pd.DataFrame(index=counts.index)
    out["Q/C"] = [Fraction(q, c) for q, c in zip(counts["model"], counts["cc"])]
    out["C/P"] = [Fraction(c, p) for c, p in zip(counts["cc"], counts["premodel"])]
    out["Q/P"] = [Fraction(q, p) for q, p in zip(counts["model"], counts["premodel"])]
    return out
