"""Vertex-set calculus: preimages, pre-CNP and tracing sets, invariance tests.

All vertex sets are bitmasks over ``g.vertices``; faces are bitmasks over
the colors (see :mod:`kgideals.kgraph`).
"""

from __future__ import annotations

from .kgraph import Degree, FaceSet, KGraph, VertexSet, face_colors, iter_bits

# Above this many vertices preimage tables would be too large to memoize.
_TABLE_LIMIT = 12


def edge_preimage(g: KGraph, V: VertexSet, color: int) -> VertexSet:
    """Vertices all of whose ``color``-edges have source in ``V``.

    Vertices receiving no edge of that color belong to every preimage.
    """
    if not 1 <= color <= g.rank:
        raise ValueError(f"color {color} outside 1..{g.rank}")
    if g.num_vertices <= _TABLE_LIMIT:
        table = g._memo.get(("pre", color))
        if table is None:
            table = g._memo[("pre", color)] = {}
        hit = table.get(V)
        if hit is None:
            hit = table[V] = _preimage(g, V, color)
        return hit
    return _preimage(g, V, color)


def _preimage(g: KGraph, V: VertexSet, color: int) -> VertexSet:
    out = 0
    outside = ~V
    for v, srcs in enumerate(g._in_src[color - 1]):
        if not srcs & outside:
            out |= 1 << v
    return out


def degree_preimage(g: KGraph, V: VertexSet, m: Degree) -> VertexSet:
    """Vertices all of whose degree-``m`` paths have source in ``V``.

    The zero degree gives ``V`` back.
    """
    for color in m.colors():
        V = edge_preimage(g, V, color)
    return V


def w_set(g: KGraph, F: FaceSet) -> VertexSet:
    """Vertices receiving at least one edge with color in ``F``."""
    out = 0
    for c in face_colors(F):
        out |= g.receivers(c)
    return out


def u_set(g: KGraph, F: FaceSet) -> VertexSet:
    """The F-tracing vertices.

    ``v`` is F-tracing when every vertex reachable from ``v`` along colors
    outside ``F`` receives some edge with color in ``F``.
    """
    key = ("u", F)
    if key in g._memo:
        return g._memo[key]
    W = w_set(g, F)
    rest = g.full_face & ~F
    out = 0
    for v in iter_bits(W):
        if not g.reachable(v, rest) & ~W:
            out |= 1 << v
    g._memo[key] = out
    return out


def is_hereditary(g: KGraph, V: VertexSet) -> bool:
    return all(
        (V >> s) & 1 or not (V >> r) & 1
        for r, s in zip(g.range_of, g.source_of)
    )


def is_f_saturated(g: KGraph, V: VertexSet) -> bool:
    """Every F-tracing vertex whose F-colored edges all come from ``V`` is in ``V``."""
    for F in range(1, 1 << g.rank):
        S = u_set(g, F) & ~V
        for c in face_colors(F):
            if not S:
                break
            S &= edge_preimage(g, V, c)
        if S:
            return False
    return True


def is_invariant_set(g: KGraph, V: VertexSet) -> bool:
    return is_hereditary(g, V) and is_f_saturated(g, V)
