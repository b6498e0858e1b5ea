"""The extended k-graph of an invariant family, and quotient graphs.

For an invariant family ``W`` the extended graph has one copy ``v@F`` of
each vertex ``v`` outside ``W^F``, and one copy ``e@F`` of each edge ``e``
whose source lies outside ``W^F``.  The copy ``e@F`` has source
``s(e)@F`` and range ``r(e)@(F minus color(e))``.  A base square
``e f = f' e'`` (colors ``i < j``) is copied for every label ``F`` at which
``f`` has a copy, as ``e@(F-j) f@F = f'@(F-i) e'@F``.
"""

from __future__ import annotations

import re

from .errors import InternalValidationFailure, NotAnInvariantFamily, ValidationError
from .families import Family, is_invariant_family, t_to_invariant
from .kgraph import (
    EdgeSpec,
    FaceSet,
    KGraph,
    KGraphSpec,
    face,
    format_face,
    validate,
)

_LABEL = re.compile(r"^(?P<base>.*)@\{(?P<colors>[0-9,]*)\}$")


def extended_id(base: str, F: FaceSet) -> str:
    return f"{base}@{format_face(F)}"


def parse_extended_id(name: str) -> tuple[str, FaceSet]:
    """Inverse of :func:`extended_id`."""
    m = _LABEL.match(name)
    if m is None:
        raise ValueError(f"{name!r} is not an extended id")
    colors = m["colors"]
    return m["base"], face(int(c) for c in colors.split(",")) if colors else 0


def build_extended(g: KGraph, W: Family) -> KGraph:
    if not is_invariant_family(g, W):
        raise NotAnInvariantFamily("argument is not an invariant family")
    vertices = []
    for F in g.faces():
        for v in range(g.num_vertices):
            if not (W[F] >> v) & 1:
                vertices.append(extended_id(g.vertices[v], F))

    def keep(e: int, F: FaceSet) -> bool:
        return not (W[F] >> g.source_of[e]) & 1

    edges = []
    for F in g.faces():
        for e, spec in enumerate(g.edges):
            if keep(e, F):
                below = F & ~(1 << (spec.color - 1))
                edges.append(
                    EdgeSpec(
                        extended_id(spec.id, F),
                        spec.color,
                        extended_id(spec.range, below),
                        extended_id(spec.source, F),
                    )
                )

    squares = []
    for (e, f), (f2, e2) in g.spec.squares:
        i = g.color[g.edge(e)]
        j = g.color[g.edge(f)]
        for F in g.faces():
            if not keep(g.edge(f), F):
                continue
            squares.append(
                (
                    (extended_id(e, F & ~(1 << (j - 1))), extended_id(f, F)),
                    (extended_id(f2, F & ~(1 << (i - 1))), extended_id(e2, F)),
                )
            )

    try:
        return validate(KGraphSpec(g.rank, tuple(vertices), tuple(edges), tuple(squares)))
    except ValidationError as exc:
        raise InternalValidationFailure(
            f"extended graph failed validation: {exc}"
        ) from exc


def receiving_pattern_check(g: KGraph, W: Family, extended: KGraph) -> bool:
    """Each ``v@G`` receives some color-i edge exactly when ``i`` is not in ``G``."""
    for k, name in enumerate(extended.vertices):
        _, G = parse_extended_id(name)
        for i in range(1, g.rank + 1):
            receives = bool(extended.edges_into(k, i))
            if receives == bool((G >> (i - 1)) & 1):
                return False
    return True


def quotient_graph(g: KGraph, V: Family) -> KGraph:
    """Extended graph of the invariant family matching the T-family ``V``."""
    return build_extended(g, t_to_invariant(g, V))
