"""Slow reference implementations used to cross-check the fast predicates."""
from itertools import product

import numpy as np


def left_class_by_loops(L, R):
    n = L.size
    out = np.zeros((n, n), dtype=bool)
    for x, y in product(range(n), repeat=2):
        if not L.leq[x, y]:
            continue
        out[x, y] = all(
            L.leq[y, a]
            for a, b in product(range(n), repeat=2)
            if R.rel[a, b] and L.leq[x, a] and L.leq[y, b]
        )
    return out


def weak_equivalences_by_loops(P):
    L = P.lattice
    n = L.size
    left = left_class_by_loops(L, P.R_prime)
    w = np.zeros((n, n), dtype=bool)
    for x, z, y in product(range(n), repeat=3):
        if left[x, z] and P.R.rel[z, y]:
            w[x, y] = True
    return w


def composition_closed_by_loops(P):
    w = weak_equivalences_by_loops(P)
    n = len(w)
    return all(
        w[x, z] for x, y, z in product(range(n), repeat=3) if w[x, y] and w[y, z]
    )


def two_of_three_by_loops(P):
    w = weak_equivalences_by_loops(P)
    leq = P.lattice.leq
    n = len(w)
    for x, y, z in product(range(n), repeat=3):
        if not (leq[x, y] and leq[y, z]):
            continue
        if sum((bool(w[x, y]), bool(w[y, z]), bool(w[x, z]))) == 2:
            return False
    return True


def composition_closed_by_splitting(P):
    """Every square from an R map to an R' map splits through R then R'"""
    leq = P.lattice.leq
    R = P.R.rel
    Rp = P.R_prime.rel
    # split[z, w, z', w']: z' <= z, w' <= w, z' R w' and w' R' w
    split = (
        leq.T[:, None, :, None]
        & leq.T[None, :, None, :]
        & R[None, None, :, :]
        & Rp.T[None, :, None, :]
    ).astype(np.int64)
    reach = np.einsum("xp,zwpq->xzwq", leq.astype(np.int64), split)
    reach = np.einsum("yq,xzwq->xyzw", leq.astype(np.int64), reach) > 0
    square = (
        R[:, :, None, None]
        & Rp[None, None, :, :]
        & leq[:, None, :, None]
        & leq[None, :, None, :]
    )
    return not (square & ~reach).any()


def equivalence_classes(w):
    """Classes of the equivalence generated by a relation on 0..n"""
    n = len(w)
    sym = w | w.T
    classes = []
    seen = set()
    for x in range(n):
        if x in seen:
            continue
        cls = {x}
        frontier = [x]
        while frontier:
            y = frontier.pop()
            for z in np.flatnonzero(sym[y]):
                z = int(z)
                if z not in cls:
                    cls.add(z)
                    frontier.append(z)
        seen |= cls
        classes.append(tuple(sorted(cls)))
    return tuple(sorted(classes))


def crosses_by_quadruples(labels):
    n = len(labels)
    for a, b, c, d in product(range(n), repeat=4):
        if a < b < c < d and labels[a] == labels[c] and labels[b] == labels[d]:
            if labels[a] != labels[b]:
                return True
    return False
