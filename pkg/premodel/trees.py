"""Tricolored trees and composition-closed premodel structures on chains.

A tricolored tree is a rooted tree in which every node has at most one blue,
one green and one red child. Labelling the nodes by the traversal (blue
subtree, node, green subtree, red subtree) gives the unique admissible order,
and an admissibly ordered tree on m nodes encodes one composition-closed pair
on chain(m - 1):

* ``pi_R'(x)`` is the largest node in the red-green component of x;
* ``pi_R(x)`` is x when x has no green child, otherwise the rightmost
  descendant of that child.
"""
import enum
import logging
from itertools import product

import attrs
import cachetools
import networkx as nx

from .base import (
    InputError,
    InvalidTree,
    NotAModelTree,
    NotCompositionClosed,
    ensure,
)
from .orders import StructurePair, is_cc_pair
from .poset import chain
from .timeit import TimeIt
from .transfer import chain_length, pi_map, theta_map, transfer_from_pi

logger = logging.getLogger(__name__)


class Color(enum.Enum):
    BLUE = "blue"
    GREEN = "green"
    RED = "red"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise InvalidTree(f"unknown branch color {value!r}")


# child slots, in canonical left-to-right order
COLORS = (Color.BLUE, Color.GREEN, Color.RED)
_SLOT = {c: k for k, c in enumerate(COLORS)}


@attrs.define(frozen=True, eq=False)
class TricoloredTree:
    """A rooted tree with at most one child of each color per node

    Build with :func:`tricolored_tree`. Two trees compare equal when they
    have the same shape, see :attr:`canonical`.
    """

    m: int
    root: int
    parent: tuple
    children: tuple
    flagged: bool = False

    def child(self, x, color):
        return self.children[x][_SLOT[Color.parse(color)]]

    def edges(self):
        """``(parent, child, color)`` triples sorted by parent, then child"""
        out = []
        for x in range(self.m):
            for color, c in zip(COLORS, self.children[x]):
                if c is not None:
                    out.append((x, c, color.value))
        return sorted(out)

    def preorder(self, start=None):
        start = self.root if start is None else start
        out = []
        stack = [start]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(c for c in reversed(self.children[x]) if c is not None)
        return out

    def descendants(self, x):
        """x and everything below it"""
        return self.preorder(x)

    def ancestors(self, x):
        out = []
        while self.parent[x] is not None:
            x = self.parent[x][0]
            out.append(x)
        return out

    def _shape(self, x):
        parts = [
            color.value[0] + self._shape(c)
            for color, c in zip(COLORS, self.children[x])
            if c is not None
        ]
        return "(" + "".join(parts) + ")"

    @property
    def canonical(self):
        """Preorder serialization with color tags, blind to node ids"""
        return self._shape(self.root)

    def __eq__(self, other):
        if not isinstance(other, TricoloredTree):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)


def tricolored_tree(m, edges, flagged=False):
    """Build and validate a TricoloredTree

    Parameters
    ----------
    m : int
        Number of nodes, labelled 0..m-1.
    edges : iterable of (parent, child, color)
        Colors are 'blue', 'green' or 'red'.

    Raises
    ------
    InvalidTree
        If the edges do not form a tree with one child per color slot.
    """
    if m < 1:
        raise InvalidTree("a tree needs at least one node")
    parent = [None] * m
    children = [[None, None, None] for _ in range(m)]
    edges = list(edges)
    for p, c, color in edges:
        color = Color.parse(color)
        if not (0 <= p < m and 0 <= c < m):
            raise InvalidTree(f"edge ({p}, {c}) names a node outside 0..{m - 1}")
        if p == c:
            raise InvalidTree(f"node {p} cannot be its own child")
        if parent[c] is not None:
            raise InvalidTree(f"node {c} has two parents")
        if children[p][_SLOT[color]] is not None:
            raise InvalidTree(f"node {p} has two {color.value} children")
        parent[c] = (p, color)
        children[p][_SLOT[color]] = c
    roots = [x for x in range(m) if parent[x] is None]
    if len(roots) != 1:
        raise InvalidTree(f"expected exactly one root, found {len(roots)}")
    tree = TricoloredTree(
        m=m,
        root=roots[0],
        parent=tuple(parent),
        children=tuple(tuple(c) for c in children),
        flagged=flagged,
    )
    if len(tree.preorder()) != m:
        raise InvalidTree("edges contain a cycle")
    return tree


def relabel(T, labels):
    """Rename node x to labels[x]"""
    return tricolored_tree(
        T.m,
        [(labels[p], labels[c], color) for p, c, color in T.edges()],
        flagged=T.flagged,
    )


def admissible_order(T):
    """Position of every node in the traversal (blue, node, green, red)

    Returns
    -------
    tuple of int
        ``labels[x]`` is the admissible label of node x.
    """
    labels = [None] * T.m
    counter = 0
    # (node, expanded) frames; an expanded node is labelled when popped
    stack = [(T.root, False)]
    while stack:
        x, expanded = stack.pop()
        blue, green, red = T.children[x]
        if expanded:
            labels[x] = counter
            counter += 1
            continue
        for c in (red, green):
            if c is not None:
                stack.append((c, False))
        stack.append((x, True))
        if blue is not None:
            stack.append((blue, False))
    labels = tuple(labels)
    ensure(is_admissible(T, labels), "traversal labelling breaks the admissibility rules")
    return labels


def is_admissible(T, labels):
    """Check the three placement rules for a labelling of T

    Blue subtrees sit left of their parent, green subtrees right of it, and
    red subtrees right of the parent and of the parent's whole green subtree.
    """
    if sorted(labels) != list(range(T.m)):
        return False
    for x in range(T.m):
        blue, green, red = T.children[x]
        here = labels[x]
        if blue is not None and any(labels[d] >= here for d in T.descendants(blue)):
            return False
        green_labels = [labels[d] for d in T.descendants(green)] if green is not None else []
        if any(g <= here for g in green_labels):
            return False
        if red is not None:
            floor = max(green_labels + [here])
            if any(labels[d] <= floor for d in T.descendants(red)):
                return False
    return True


def admissibly_ordered(T):
    return relabel(T, admissible_order(T))


def _color_graph(T, colors):
    g = nx.Graph()
    g.add_nodes_from(range(T.m))
    g.add_edges_from((p, c) for p, c, color in T.edges() if Color(color) in colors)
    return g


def tree_to_pair(T):
    """The composition-closed pair on chain(m - 1) encoded by T

    T is first relabelled admissibly.

    Returns
    -------
    StructurePair
    """
    T = admissibly_ordered(T)
    pi_prime = [None] * T.m
    for comp in nx.connected_components(_color_graph(T, {Color.RED, Color.GREEN})):
        top = max(comp)
        for x in comp:
            pi_prime[x] = top
    pi = []
    for x in range(T.m):
        green = T.child(x, Color.GREEN)
        pi.append(x if green is None else max(T.descendants(green)))
    L = chain(T.m - 1)
    return StructurePair(transfer_from_pi(pi, L), transfer_from_pi(pi_prime, L))


def pair_to_tree(P):
    """The admissibly ordered tree encoding a composition-closed pair

    Parameters
    ----------
    P : StructurePair
        A pair on a chain.

    Returns
    -------
    TricoloredTree

    Raises
    ------
    NotAChain
        If P does not live on a chain.
    NotCompositionClosed
        If P is not composition closed.
    """
    n = chain_length(P.lattice)
    if not is_cc_pair(P):
        raise NotCompositionClosed("only composition-closed pairs correspond to trees")
    pi = pi_map(P.R)
    pi_prime = pi_map(P.R_prime)
    components = {}
    for x, top in enumerate(pi_prime):
        components.setdefault(top, []).append(x)

    edges = []
    red_parent = {}
    for x in range(n + 1):
        comp = components[pi_prime[x]]
        green = [y for y in comp if x < y <= pi[x]]
        if green:
            edges.append((x, green[0], "green"))
        later = [y for y in comp if y > pi[x]]
        if later and later[0] not in red_parent:
            red_parent[later[0]] = x
            edges.append((x, later[0], "red"))
    for top, comp in components.items():
        if top != n:
            edges.append((top + 1, comp[0], "blue"))

    T = tricolored_tree(n + 1, edges)
    ensure(
        tree_to_pair(T) == P and admissible_order(T) == tuple(range(n + 1)),
        "rebuilt tree does not encode the pair",
    )
    return T


def _red_spine(T):
    spine = {T.root}
    x = T.child(T.root, Color.RED)
    while x is not None:
        spine.add(x)
        x = T.child(x, Color.RED)
    return spine


def is_model_tree(T):
    """No red branch descends from a blue or green branch

    Equivalently, every red branch starts on the all-red path from the root.
    """
    spine = _red_spine(T)
    return all(p in spine for p, c, color in T.edges() if color == Color.RED.value)


def has_red_above(T, color):
    """Some red branch starts in the subtree below a branch of ``color``"""
    color = Color.parse(color)
    if color is Color.RED:
        raise InputError("has_red_above compares red branches with blue or green ones")
    red_sources = {p for p, c, col in T.edges() if col == Color.RED.value}
    for p, c, col in T.edges():
        if col == color.value and red_sources.intersection(T.descendants(c)):
            return True
    return False


def red_above_blue_by_maps(P):
    """Some x has ``pi_R(x) < pi_R'(x) < n``"""
    n = chain_length(P.lattice)
    pi = pi_map(P.R)
    pi_prime = pi_map(P.R_prime)
    return any(pi[x] < pi_prime[x] < n for x in range(n + 1))


def red_above_green_by_maps(P):
    """Some z has ``0 < theta_R(z) < theta_R'(z)``"""
    theta = theta_map(P.R)
    theta_prime = theta_map(P.R_prime)
    return any(0 < t < tp for t, tp in zip(theta, theta_prime))


def blue_green_swap(T, strict=False):
    """Recolor blue branches green and green branches blue

    For a model tree the result is again a model tree with the same weak
    equivalence classes. Other trees are still swapped, but the result has
    ``flagged`` set and a warning is logged.

    Parameters
    ----------
    T : TricoloredTree
    strict : bool, optional
        Raise NotAModelTree instead of flagging. Default False.
    """
    model = is_model_tree(T)
    if not model:
        if strict:
            raise NotAModelTree("blue-green swap is only meaningful on model trees")
        logger.warning("swapping blue and green on a tree that is not a model tree")
    swap = {"blue": "green", "green": "blue", "red": "red"}
    return tricolored_tree(
        T.m,
        [(p, c, swap[color]) for p, c, color in T.edges()],
        flagged=not model,
    )


def weak_classes(T):
    """Blue-green components of an admissibly ordered model tree

    Returns
    -------
    tuple of tuple of int
        Consecutive intervals of labels, in increasing order.

    Raises
    ------
    NotAModelTree
    """
    if not is_model_tree(T):
        raise NotAModelTree("weak classes are read off model trees only")
    T = admissibly_ordered(T)
    comps = nx.connected_components(_color_graph(T, {Color.BLUE, Color.GREEN}))
    classes = tuple(sorted(tuple(sorted(c)) for c in comps))
    ensure(
        all(c[-1] - c[0] + 1 == len(c) for c in classes),
        "blue-green components are not intervals",
    )
    return classes


@cachetools.cached(cachetools.LRUCache(maxsize=16))
def _shapes(m):
    """Every shape with m nodes as nested (blue, green, red) triples"""
    if m == 0:
        return (None,)
    out = []
    for b in range(m):
        for g in range(m - b):
            r = m - 1 - b - g
            for shape in product(_shapes(b), _shapes(g), _shapes(r)):
                out.append(shape)
    return tuple(out)


def _shape_to_tree(shape, m):
    edges = []
    counter = [0]

    def place(node):
        blue, green, red = node
        below = place(blue) if blue is not None else None
        here = counter[0]
        counter[0] += 1
        if below is not None:
            edges.append((here, below, "blue"))
        if green is not None:
            edges.append((here, place(green), "green"))
        if red is not None:
            edges.append((here, place(red), "red"))
        return here

    place(shape)
    return tricolored_tree(m, edges)


def enumerate_trees(m):
    """All tricolored trees on m nodes, admissibly labelled, in canonical order"""
    if m < 1:
        raise InputError(f"trees need at least one node, got {m}")
    with TimeIt("enumerate trees", m=m):
        trees = [_shape_to_tree(s, m) for s in _shapes(m)]
    logger.info(f"{len(trees)} tricolored trees on {m} nodes")
    return sorted(trees, key=lambda t: t.canonical)


def count_model_trees(m):
    return sum(1 for T in enumerate_trees(m) if is_model_tree(T))
