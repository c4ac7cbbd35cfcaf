"""Noncrossing partitions and the Kreweras order on transfer systems of a chain.

The nonempty fibers of ``pi_R`` form a noncrossing partition of ``{0..n}``
and every noncrossing partition arises from exactly one transfer system.
"""
import logging

import attrs
import numpy as np

from .base import CrossingPartition, DimensionMismatch, NotAPartition
from .poset import chain
from .transfer import chain_length, pi_map, transfer_from_pi

logger = logging.getLogger(__name__)


def _normal_form(blocks):
    return tuple(sorted((tuple(sorted(int(e) for e in b)) for b in blocks), key=lambda b: b[0]))


def _block_labels(blocks, n=None):
    """Block index of every element, checking that blocks partition 0..n"""
    if any(len(b) == 0 for b in blocks):
        raise NotAPartition("blocks must be nonempty")
    elements = sorted(e for b in blocks for e in b)
    if n is None:
        n = elements[-1] if elements else -1
    if elements != list(range(n + 1)):
        raise NotAPartition(f"blocks do not partition 0..{n}")
    labels = np.empty(n + 1, dtype=np.int64)
    for k, b in enumerate(blocks):
        labels[list(b)] = k
    return labels


def _crosses(blocks):
    """True if some a < b < c < d has a, c in one block and b, d in another"""
    opened = []
    last = {max(b): k for k, b in enumerate(blocks)}
    first = {min(b): k for k, b in enumerate(blocks)}
    labels = _block_labels(blocks)
    for i, k in enumerate(labels):
        if first.get(i) == k:
            if last.get(i) != k:
                opened.append(k)
            continue
        if not opened or opened[-1] != k:
            return True
        if last.get(i) == k:
            opened.pop()
    return False


def is_noncrossing(blocks):
    """Check if a set partition of 0..n is noncrossing

    Raises
    ------
    NotAPartition
        If the blocks are empty, overlap or miss an element of 0..n.
    """
    blocks = [list(b) for b in blocks]
    _block_labels(blocks)
    return not _crosses(blocks)


@attrs.define(frozen=True)
class NoncrossingPartition:
    """A noncrossing partition of ``{0..n}``, blocks sorted by minimum"""

    n: int
    blocks: tuple = attrs.field(converter=_normal_form)

    def __attrs_post_init__(self):
        _block_labels(self.blocks, self.n)
        if _crosses(self.blocks):
            raise CrossingPartition(f"blocks {self.blocks} cross")

    def block_of(self, i):
        for b in self.blocks:
            if i in b:
                return b
        raise NotAPartition(f"{i} is not in any block")


def partition_of(R):
    """The noncrossing partition formed by the nonempty fibers of pi_R"""
    n = chain_length(R.lattice)
    pi = pi_map(R)
    fibers = {}
    for i, p in enumerate(pi):
        fibers.setdefault(p, []).append(i)
    return NoncrossingPartition(n=n, blocks=fibers.values())


def transfer_of(P, lattice=None):
    """The transfer system whose pi-fibers are the blocks of P

    ``pi(i)`` is the largest element of the block containing ``i``.
    """
    if lattice is None:
        lattice = chain(P.n)
    pi = [0] * (P.n + 1)
    for b in P.blocks:
        for e in b:
            pi[e] = b[-1]
    return transfer_from_pi(pi, lattice)


def kreweras_leq(R, R_prime):
    """R is below R' in the Kreweras order: ``pi_R' o pi_R == pi_R'``"""
    pi = pi_map(R)
    pi_prime = pi_map(R_prime)
    if len(pi) != len(pi_prime):
        raise DimensionMismatch("transfer systems live on chains of different lengths")
    return all(pi_prime[pi[i]] == pi_prime[i] for i in range(len(pi)))


def refines(P, Q):
    """Every block of P lies inside one block of Q"""
    labels = _block_labels(Q.blocks, Q.n)
    return all(len({int(labels[e]) for e in b}) == 1 for b in P.blocks)


def _restricted_growth(m):
    """Block labels of every set partition of range(m)"""
    if m == 0:
        yield []
        return
    labels = [0] * m

    def extend(i, top):
        if i == m:
            yield list(labels)
            return
        for k in range(top + 2):
            labels[i] = k
            yield from extend(i + 1, max(top, k))

    yield from extend(1, 0)


def enumerate_partitions(n):
    """All noncrossing partitions of {0..n}, sorted by their block tuples"""
    found = []
    for labels in _restricted_growth(n + 1):
        blocks = {}
        for e, k in enumerate(labels):
            blocks.setdefault(k, []).append(e)
        blocks = list(blocks.values())
        if not _crosses(blocks):
            found.append(NoncrossingPartition(n=n, blocks=blocks))
    logger.info(f"{len(found)} noncrossing partitions of 0..{n}")
    return sorted(found, key=lambda p: p.blocks)
