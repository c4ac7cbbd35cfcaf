"""Presentation output: Hasse diagrams as DOT and triangulations as SVG."""
import logging

import networkx as nx
import numpy as np

from .poset import covers
from .triangulation import EXTERNAL, edge_colors, replay

logger = logging.getLogger(__name__)

_SVG_COLORS = {"red": "#c0392b", "blue": "#2e6bd1", "green": "#2f9e44"}
_CORNER_XY = {
    "X_red": (300.0, 30.0),
    "X_blue": (30.0, 500.0),
    "X_green": (570.0, 500.0),
}


def cover_graph(P, labels=None):
    """Directed cover graph of a poset, one node per canonical index"""
    g = nx.DiGraph()
    for i in range(P.size):
        g.add_node(i, label=f'"{labels[i] if labels is not None else i}"')
    rows, cols = np.nonzero(covers(P))
    g.add_edges_from(zip(rows.tolist(), cols.tolist()))
    return g


def hasse_dot(P, labels=None):
    """DOT text for the Hasse diagram of P, drawn bottom to top

    Parameters
    ----------
    P : PosetRelation
    labels : list of str, optional
        Node labels; canonical indices by default.

    Returns
    -------
    str
    """
    g = cover_graph(P, labels)
    dot = nx.nx_pydot.to_pydot(g)
    dot.set_rankdir("BT")
    dot.set_name("hasse")
    logger.debug(f"hasse diagram with {g.number_of_nodes()} nodes and {g.number_of_edges()} edges")
    return dot.to_string()


def legend(systems):
    """Canonical index to non-identity pairs, for the DOT legend file"""
    return {i: [list(p) for p in R.pairs()] for i, R in enumerate(systems)}


def vertex_positions(S):
    """Every internal vertex at the barycenter of the face it split"""
    pos = dict(_CORNER_XY)
    for w, corners in enumerate(S.insertions):
        xs, ys = zip(*(pos[c] for c in corners))
        pos[w] = (sum(xs) / 3, sum(ys) / 3)
    return pos


def _line(a, b, color, width=2):
    return (
        f'<line x1="{a[0]:.2f}" y1="{a[1]:.2f}" x2="{b[0]:.2f}" y2="{b[1]:.2f}" '
        f'stroke="{color}" stroke-width="{width}" stroke-linecap="round"/>'
    )


def _dot(p, color, r=5):
    return f'<circle cx="{p[0]:.2f}" cy="{p[1]:.2f}" r="{r}" fill="{color}"/>'


def triangulation_svg(S):
    """SVG drawing of a stacked triangulation with colored edges

    Returns
    -------
    str
    """
    replay(S)
    pos = vertex_positions(S)
    body = []
    for a, b in ((EXTERNAL[0], EXTERNAL[1]), (EXTERNAL[1], EXTERNAL[2]), (EXTERNAL[2], EXTERNAL[0])):
        body.append(_line(pos[a], pos[b], "#333333", width=3))
    for (w, v), color in sorted(edge_colors(S).items(), key=lambda kv: (kv[0][0], str(kv[0][1]))):
        body.append(_line(pos[w], pos[v], _SVG_COLORS[color]))
    for name in EXTERNAL:
        body.append(_dot(pos[name], _SVG_COLORS[name[2:]], r=7))
    for w in range(S.size):
        body.append(_dot(pos[w], "#111111"))
        x, y = pos[w]
        body.append(f'<text x="{x + 6:.2f}" y="{y - 6:.2f}" font-size="11" fill="#111111">{w}</text>')
    inner = "\n  ".join(body)
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 600 530" '
        f'role="img" aria-label="stacked triangulation with {S.size} internal vertices">\n'
        f"  {inner}\n</svg>\n"
    )
