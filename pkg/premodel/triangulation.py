"""Stacked triangulations and their tricolored trees.

A stacked triangulation starts from a triangle whose corners are colored red,
blue and green and repeatedly inserts a vertex into a face. Every face carries
one color per corner. Inserting w into a face with corners x, y, z joins w to
each corner by an edge of that corner's color; each of the three new faces
gives w the color of the corner it replaced.

The triangulation only stores its insertion history. Corners are named by
internal vertex index (order of insertion) or one of ``EXTERNAL``.
"""
import logging

import attrs

from .base import InvalidTree, InvalidTriangulation, ensure
from .trees import Color, tricolored_tree

logger = logging.getLogger(__name__)

EXTERNAL = ("X_red", "X_blue", "X_green")
_OUTER = tuple(zip(EXTERNAL, (Color.RED, Color.BLUE, Color.GREEN)))


def _corner(value):
    if isinstance(value, str):
        if value not in EXTERNAL:
            raise InvalidTriangulation(f"unknown external corner {value!r}")
        return value
    return int(value)


def _as_insertions(value):
    return tuple(tuple(_corner(c) for c in face) for face in value)


@attrs.define(frozen=True)
class StackedTriangulation:
    """Insertion history: ``insertions[k]`` is the face split by vertex k"""

    insertions: tuple = attrs.field(converter=_as_insertions)

    @property
    def size(self):
        return len(self.insertions)


def _split(faces, k, w):
    """Replace faces[k] by the three faces around the new vertex w"""
    face = faces[k]
    added = []
    for i in range(3):
        added.append(tuple((w, c) if j == i else face[j] for j, (v, c) in enumerate(face)))
    return faces[:k] + faces[k + 1 :] + added


def _find_face(faces, corners):
    wanted = set(corners)
    for k, face in enumerate(faces):
        if {v for v, _ in face} == wanted:
            return k
    return None


def replay(S):
    """Faces after every insertion, and the colored edges added

    Returns
    -------
    faces : list of tuple
        Each face is three ``(corner, color)`` pairs.
    edges : list of (int, corner, Color)
        ``(w, corner, color)`` for every inserted edge.

    Raises
    ------
    InvalidTriangulation
        If an insertion names a face that does not exist at that step.
    """
    faces = [_OUTER]
    edges = []
    for w, corners in enumerate(S.insertions):
        if len(set(corners)) != 3:
            raise InvalidTriangulation(f"insertion {w} must name three distinct corners")
        for c in corners:
            if not isinstance(c, str) and not 0 <= c < w:
                raise InvalidTriangulation(f"insertion {w} uses vertex {c} before it exists")
        k = _find_face(faces, corners)
        if k is None:
            raise InvalidTriangulation(f"insertion {w}: {corners} is not a face")
        edges.extend((w, v, color) for v, color in faces[k])
        faces = _split(faces, k, w)
    return faces, edges


def triangulation_to_tree(S):
    """The tricolored tree of a stacked triangulation

    The first internal vertex is the root. Every later vertex hangs from the
    highest internal corner of the face it splits, by a branch of that
    corner's color.

    Raises
    ------
    InvalidTriangulation
    """
    if S.size == 0:
        raise InvalidTriangulation("a stacked triangulation needs an internal vertex")
    replay(S)
    faces = [_OUTER]
    depth = {}
    tree_edges = []
    for w, corners in enumerate(S.insertions):
        k = _find_face(faces, corners)
        internal = [(v, c) for v, c in faces[k] if not isinstance(v, str)]
        if not internal:
            if w != 0:
                raise InvalidTriangulation("only the first vertex may split the outer face")
            depth[w] = 0
        else:
            highest = max(depth[v] for v, _ in internal)
            tops = [(v, c) for v, c in internal if depth[v] == highest]
            if len(tops) != 1:
                raise InvalidTriangulation(f"insertion {w}: no unique highest corner")
            parent, color = tops[0]
            depth[w] = highest + 1
            tree_edges.append((parent, w, color))
        faces = _split(faces, k, w)
    try:
        return tricolored_tree(S.size, tree_edges)
    except InvalidTree as e:
        raise InvalidTriangulation(f"triangulation does not give a tricolored tree: {e}") from e


def _candidates(faces, T, node, inserted):
    parent, color = T.parent[node]
    above = set(T.ancestors(parent))
    out = []
    for k, face in enumerate(faces):
        if (inserted[parent], color) not in face:
            continue
        others = [v for v, _ in face if not isinstance(v, str) and v != inserted[parent]]
        if all(v in {inserted[a] for a in above} for v in others):
            out.append(k)
    return out


def tree_to_triangulation(T):
    """A stacked triangulation whose tree is T

    Nodes are inserted parent before child. A node hanging from p by a branch
    of color c splits a face in which p is the highest internal corner and has
    color c. Should several faces qualify, each is tried until the
    triangulation maps back to T.

    Returns
    -------
    StackedTriangulation
        Internal vertex k is the k-th node of T in preorder.
    """
    order = T.preorder()

    def search(i, faces, inserted, insertions):
        if i == len(order):
            S = StackedTriangulation(insertions)
            return S if triangulation_to_tree(S) == T else None
        node = order[i]
        w = len(insertions)
        if T.parent[node] is None:
            options = [0]
        else:
            options = _candidates(faces, T, node, inserted)
        for k in options:
            corners = tuple(v for v, _ in faces[k])
            found = search(
                i + 1,
                _split(faces, k, w),
                {**inserted, node: w},
                insertions + [corners],
            )
            if found is not None:
                return found
        return None

    S = search(0, [_OUTER], {}, [])
    ensure(S is not None, "no stacked triangulation replays this tree")
    return S


def edge_colors(S):
    """Color of every inserted edge as ``{(w, corner): color}``"""
    _, edges = replay(S)
    return {(w, v): color.value for w, v, color in edges}


def corner_colors():
    """External corner names and their colors, in drawing order"""
    return [(name, color.value) for name, color in _OUTER]

