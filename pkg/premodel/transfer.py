"""Transfer systems on finite lattices.

A transfer system is a partial order ``R`` refining the lattice order and
closed under restriction: ``x R y`` and ``z <= y`` give ``(x ^ z) R z``. On a
finite lattice it is the right class of a unique weak factorization system,
whose left class is recovered with :func:`left_class`.

All relations are ``size`` x ``size`` boolean matrices with identities
included.
"""
import logging
from concurrent.futures import ThreadPoolExecutor

import attrs
import numpy as np

from .base import (
    DimensionMismatch,
    ElementOutOfRange,
    InputError,
    NoFactorization,
    NotAChain,
    NotAPremodelPair,
    ensure,
)
from .config import resolve_max_workers
from .poset import _readonly, chain
from .timeit import TimeIt

logger = logging.getLogger(__name__)


@attrs.define(frozen=True, eq=False)
class MorphismClass:
    """A set of comparable pairs of a lattice, identities included"""

    lattice: object
    rel: np.ndarray = attrs.field(converter=_readonly)

    def __attrs_post_init__(self):
        n = self.lattice.size
        if self.rel.shape != (n, n):
            raise DimensionMismatch(
                f"relation has shape {self.rel.shape}, expected ({n}, {n})"
            )

    @property
    def key(self):
        """Row-major bit string; sorting by it gives the canonical order"""
        return self.rel.tobytes()

    def __eq__(self, other):
        if not isinstance(other, MorphismClass):
            return NotImplemented
        return self.lattice == other.lattice and self.key == other.key

    def __hash__(self):
        return hash((self.lattice.key, self.key))

    def __contains__(self, pair):
        x, y = pair
        return bool(self.rel[x, y])

    def __repr__(self):
        return f"{type(self).__name__}({self.pairs()})"

    def pairs(self):
        """Non-identity pairs in lexicographic order"""
        off = self.rel.copy()
        np.fill_diagonal(off, False)
        return [(int(x), int(y)) for x, y in np.argwhere(off)]

    def issubset(self, other):
        return not (self.rel & ~other.rel).any()


class TransferSystem(MorphismClass):
    """The right class R of a weak factorization system.

    Construct through :func:`transfer_system` or :func:`transfer_closure`
    unless the relation is already known to be valid.
    """


def _as_matrix(L, rel):
    rel = np.asarray(rel, dtype=bool)
    if rel.shape != (L.size, L.size):
        raise DimensionMismatch(
            f"relation has shape {rel.shape}, expected ({L.size}, {L.size})"
        )
    return rel


def relation_from_pairs(L, pairs):
    """Identity relation plus the given (x, y) pairs"""
    rel = np.eye(L.size, dtype=bool)
    for x, y in pairs:
        if not (0 <= x < L.size and 0 <= y < L.size):
            raise ElementOutOfRange(f"pair ({x}, {y}) is outside a lattice of size {L.size}")
        rel[x, y] = True
    return rel


def _transitive_closure(rel):
    closed = rel.copy()
    while True:
        as_int = closed.astype(np.int64)
        nxt = closed | (np.matmul(as_int, as_int) > 0)
        if (nxt == closed).all():
            return closed
        closed = nxt


def _restriction_image(L, rel):
    """Pairs ``(x ^ z, z)`` demanded by restriction from ``rel``"""
    mask = rel[:, :, None] & L.leq.T[None, :, :]
    xs, _, zs = np.nonzero(mask)
    out = np.zeros_like(rel)
    out[L.meet_table[xs, zs], zs] = True
    return out


def is_transfer_system(L, rel):
    """Check if rel is a transfer system on L

    Parameters
    ----------
    L : FiniteLattice
    rel : array-like of bool
        Relation matrix of the same size as L.

    Returns
    -------
    bool

    Raises
    ------
    DimensionMismatch
        If rel does not match the size of L.
    """
    rel = _as_matrix(L, rel)
    if (rel & ~L.leq).any():
        return False
    if not rel[np.diag_indices_from(rel)].all():
        return False
    as_int = rel.astype(np.int64)
    if ((np.matmul(as_int, as_int) > 0) & ~rel).any():
        return False
    return not (_restriction_image(L, rel) & ~rel).any()


def transfer_system(L, rel):
    """Wrap a relation matrix as a TransferSystem after validating it"""
    rel = _as_matrix(L, rel)
    if not is_transfer_system(L, rel):
        raise InputError("relation is not a transfer system on this lattice")
    return TransferSystem(lattice=L, rel=rel)


def _close(L, rel):
    rel = rel | np.eye(L.size, dtype=bool)
    steps = 0
    while True:
        steps += 1
        rel = _transitive_closure(rel)
        nxt = rel | _restriction_image(L, rel)
        if (nxt == rel).all():
            logger.debug(f"closure settled after {steps} rounds")
            return rel
        rel = nxt


def transfer_closure(L, rel):
    """Smallest transfer system containing rel

    Alternates transitive closure and restriction closure until the relation
    stops growing.

    Raises
    ------
    InputError
        If rel relates elements that are not comparable in L.
    """
    rel = _as_matrix(L, rel)
    if (rel & ~L.leq).any():
        raise InputError("relation does not refine the lattice order")
    return TransferSystem(lattice=L, rel=_close(L, rel))


def trivial_transfer_system(L):
    return TransferSystem(lattice=L, rel=np.eye(L.size, dtype=bool))


def maximal_transfer_system(L):
    return TransferSystem(lattice=L, rel=L.leq)


def transfer_meet(R1, R2):
    """Meet in (Tr(L), <=): intersection"""
    return TransferSystem(lattice=R1.lattice, rel=R1.rel & R2.rel)


def transfer_join(R1, R2):
    """Join in (Tr(L), <=): closure of the union"""
    L = R1.lattice
    return TransferSystem(lattice=L, rel=_close(L, R1.rel | R2.rel))


def _search(L, pairs, start, rel, excluded, sink):
    """Depth-first include/exclude search from ``pairs[start:]``"""
    stack = [(start, rel, excluded)]
    pruned = 0
    while stack:
        i, rel, excluded = stack.pop()
        if i == len(pairs):
            sink.append(rel)
            continue
        x, y = pairs[i]
        if rel[x, y]:
            stack.append((i + 1, rel, excluded))
            continue
        grown = rel.copy()
        grown[x, y] = True
        grown = _close(L, grown)
        if (grown & excluded).any():
            pruned += 1
        else:
            stack.append((i + 1, grown, excluded))
        skipped = excluded.copy()
        skipped[x, y] = True
        stack.append((i + 1, rel, skipped))
    logger.debug(f"search from pair {start}: {pruned} branches pruned")
    return sink


def _frontier(L, pairs, depth):
    """Expand the first ``depth`` decisions into independent subproblems"""
    states = [(0, np.eye(L.size, dtype=bool), np.zeros((L.size, L.size), dtype=bool))]
    for _ in range(depth):
        nxt = []
        for i, rel, excluded in states:
            if i == len(pairs):
                nxt.append((i, rel, excluded))
                continue
            x, y = pairs[i]
            if rel[x, y]:
                nxt.append((i + 1, rel, excluded))
                continue
            skipped = excluded.copy()
            skipped[x, y] = True
            nxt.append((i + 1, rel, skipped))
            grown = rel.copy()
            grown[x, y] = True
            grown = _close(L, grown)
            if not (grown & excluded).any():
                nxt.append((i + 1, grown, excluded))
        states = nxt
    return states


def enumerate_transfer_systems(L, max_workers=None):
    """All transfer systems on L in canonical order

    Parameters
    ----------
    L : FiniteLattice
    max_workers : int or None, optional
        Worker threads for the search. Defaults to
        :func:`premodel.config.resolve_max_workers`.

    Returns
    -------
    list of TransferSystem
        Sorted by the row-major bit string of the relation.
    """
    workers = resolve_max_workers(max_workers)
    pairs = L.comparable_pairs(strict=True)
    with TimeIt("enumerate transfer systems", size=L.size, workers=workers):
        if workers == 1 or len(pairs) < 4:
            found = _search(
                L,
                pairs,
                0,
                np.eye(L.size, dtype=bool),
                np.zeros((L.size, L.size), dtype=bool),
                [],
            )
        else:
            states = _frontier(L, pairs, min(len(pairs), 3))
            with ThreadPoolExecutor(max_workers=workers) as ex:
                chunks = ex.map(lambda s: _search(L, pairs, s[0], s[1], s[2], []), states)
                found = [rel for chunk in chunks for rel in chunk]
        seen = {}
        for rel in found:
            seen.setdefault(rel.tobytes(), rel)
    ensure(len(seen) == len(found), "transfer system search produced duplicates")
    logger.info(f"{len(seen)} transfer systems on a lattice of size {L.size}")
    return [TransferSystem(lattice=L, rel=seen[k]) for k in sorted(seen)]


def left_lifting_class(L, T):
    """Maps with the left lifting property against every pair of T

    In a poset, ``(x, y)`` lifts against ``(a, b)`` iff ``x <= a`` and
    ``y <= b`` imply ``y <= a``.
    """
    T = _as_matrix(L, getattr(T, "rel", T))
    leq = L.leq.astype(np.int64)
    bad = np.einsum("xa,yb,ab,ya->xy", leq, leq, T.astype(np.int64), (~L.leq).astype(np.int64)) > 0
    return MorphismClass(lattice=L, rel=L.leq & ~bad)


def right_lifting_class(L, S):
    """Maps with the right lifting property against every pair of S"""
    S = _as_matrix(L, getattr(S, "rel", S))
    leq = L.leq.astype(np.int64)
    bad = np.einsum("xy,xa,yb,ya->ab", S.astype(np.int64), leq, leq, (~L.leq).astype(np.int64)) > 0
    return MorphismClass(lattice=L, rel=L.leq & ~bad)


def left_class(L, R):
    """The left class of the weak factorization system with right class R"""
    return left_lifting_class(L, R)


def compose(first, second):
    """``x (first) z (second) y``, as a MorphismClass on the shared lattice"""
    rel = np.matmul(first.rel.astype(np.int64), second.rel.astype(np.int64)) > 0
    return MorphismClass(lattice=first.lattice, rel=rel)


def factorize(L, R, x, y, left=None):
    """Factor ``x <= y`` as ``x L z R y``

    Parameters
    ----------
    L : FiniteLattice
    R : TransferSystem
    x, y : int
        Elements with ``x <= y``.
    left : MorphismClass, optional
        Precomputed left class of R.

    Returns
    -------
    int
        The least index z with ``(x, z)`` in the left class and ``(z, y)`` in R.

    Raises
    ------
    NoFactorization
        If no such z exists, which means R is not a transfer system.
    """
    for e in (x, y):
        if not 0 <= e < L.size:
            raise ElementOutOfRange(f"element {e} is not in a lattice of size {L.size}")
    if not L.leq[x, y]:
        raise InputError(f"{x} is not below {y}")
    if left is None:
        left = left_class(L, R)
    candidates = np.flatnonzero(left.rel[x] & R.rel[:, y])
    if len(candidates) == 0:
        raise NoFactorization(f"no factorization of ({x}, {y})")
    return int(candidates[0])


def weak_equivalences(L, R, R_prime):
    """Weak equivalences ``W = R o L'`` of the premodel structure (R, R')

    ``(x, y)`` is in W iff some z has ``(x, z)`` in the left class of R' and
    ``(z, y)`` in R.

    Raises
    ------
    NotAPremodelPair
        If R is not contained in R'.
    """
    if not R.issubset(R_prime):
        raise NotAPremodelPair("R must be contained in R'")
    return compose(left_class(L, R_prime), R)


def chain_length(L):
    """n for a lattice equal to chain(n) with its natural labelling"""
    idx = np.arange(L.size)
    if not (L.leq == (idx[:, None] <= idx[None, :])).all():
        raise NotAChain(f"{L!r} is not a chain in index order")
    return L.size - 1


def pi_map(R):
    """pi_R(i): the largest j with i R j

    pi_R is inflationary and idempotent but not monotone in general.
    """
    n = chain_length(R.lattice)
    last = n - np.argmax(R.rel[:, ::-1], axis=1)
    return tuple(int(v) for v in last)


def theta_map(R):
    """theta_R(i) = max{j < i : j R i} + 1, with max of nothing taken as -1

    This is the least y with ``(y, i)`` in the left class of R.
    """
    chain_length(R.lattice)
    out = []
    for i in range(R.lattice.size):
        below = np.flatnonzero(R.rel[:i, i])
        out.append(int(below[-1]) + 1 if len(below) else 0)
    return tuple(out)


def transfer_from_pi(pi, lattice=None):
    """The transfer system on a chain with ``i R j`` iff ``i <= j <= pi[i]``

    The chain defaults to chain(len(pi) - 1).

    Raises
    ------
    InputError
        If pi(i) < i, or pi(j) > pi(i) for some i <= j <= pi(i).
    """
    L = lattice if lattice is not None else chain(len(pi) - 1)
    n = chain_length(L)
    pi = np.asarray(pi, dtype=np.int64)
    if pi.shape != (n + 1,):
        raise DimensionMismatch(f"pi needs {n + 1} values, got {pi.shape}")
    idx = np.arange(n + 1)
    if (pi < idx).any() or (pi > n).any():
        raise InputError("pi must satisfy i <= pi(i) <= n")
    rel = (idx[:, None] <= idx[None, :]) & (idx[None, :] <= pi[:, None])
    if ((pi[None, :] > pi[:, None]) & rel).any():
        raise InputError("pi(j) may not exceed pi(i) when i <= j <= pi(i)")
    return TransferSystem(lattice=L, rel=rel)
