"""Families of vertex sets indexed by the faces of [n].

A :class:`Family` stores one vertex bitmask per face ``F``, at position
``F`` (faces in binary order).  T-families and invariant families are in
inclusion-preserving bijection via :func:`t_to_invariant` and
:func:`invariant_to_t`; O-families are the T-families lying above
:func:`cnp_family`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional

from .errors import KindMismatch, NotAnInvariantFamily, NotATFamily
from .kgraph import Degree, FaceSet, KGraph, VertexSet, format_face
from .vertex_calculus import degree_preimage, edge_preimage, u_set


class Kind(str, Enum):
    T = "t"
    O = "o"
    INVARIANT = "invariant"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Family:
    """A total map from faces to vertex sets.

    ``kind`` is an optional tag recording which predicate the family is
    known to satisfy; it does not take part in equality.
    """

    entries: tuple[VertexSet, ...]
    kind: Optional[Kind] = field(default=None, compare=False)

    def __post_init__(self):
        size = len(self.entries)
        if size == 0 or size & (size - 1):
            raise ValueError(f"a family needs 2^n entries, got {size}")
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def rank(self) -> int:
        return len(self.entries).bit_length() - 1

    def __getitem__(self, F: FaceSet) -> VertexSet:
        return self.entries[F]

    def __le__(self, other: Family) -> bool:
        """Componentwise inclusion."""
        _same_shape(self, other)
        return all(a & ~b == 0 for a, b in zip(self.entries, other.entries))

    def __lt__(self, other: Family) -> bool:
        return self <= other and self != other

    def key(self) -> tuple[VertexSet, ...]:
        return self.entries

    def tagged(self, kind: Optional[Kind]) -> Family:
        return Family(self.entries, kind)

    @classmethod
    def constant(cls, n: int, V: VertexSet, kind: Optional[Kind] = None) -> Family:
        return cls((V,) * (1 << n), kind)

    @classmethod
    def from_ids(cls, g: KGraph, entries: Mapping[FaceSet, Iterable[str]]) -> Family:
        return cls(tuple(g.mask(entries[F]) for F in g.faces()))

    def describe(self, g: KGraph) -> str:
        return " ".join(
            f"{format_face(F)}:[{','.join(g.ids(V))}]" for F, V in enumerate(self.entries)
        )


def _same_shape(a: Family, b: Family) -> None:
    if len(a.entries) != len(b.entries):
        raise KindMismatch("families over different ranks")


def _check_rank(g: KGraph, V: Family) -> None:
    if V.rank != g.rank:
        raise ValueError(f"family of rank {V.rank} on a rank-{g.rank} graph")


def _missing(F: FaceSet, n: int) -> list[int]:
    return [i for i in range(1, n + 1) if not (F >> (i - 1)) & 1]


def is_t_family(g: KGraph, V: Family) -> bool:
    _check_rank(g, V)
    for F in g.faces():
        for i in _missing(F, g.rank):
            if edge_preimage(g, V[F], i) & V[F | 1 << (i - 1)] != V[F]:
                return False
    return True


def is_o_family(g: KGraph, V: Family) -> bool:
    return is_t_family(g, V) and all(
        u_set(g, F) & ~V[F] == 0 for F in g.faces()
    )


def is_invariant_family(g: KGraph, W: Family) -> bool:
    _check_rank(g, W)
    for G in g.faces():
        for i in _missing(G, g.rank):
            if edge_preimage(g, W[G] & W[G | 1 << (i - 1)], i) != W[G]:
                return False
    return True


def t_to_invariant(g: KGraph, V: Family) -> Family:
    """W^F = preimage of V^F under paths of degree 1 - 1_F."""
    if not is_t_family(g, V):
        raise NotATFamily("argument is not a T-family")
    top = g.full_face
    return Family(
        tuple(
            degree_preimage(g, V[F], Degree.indicator(g.rank, top & ~F))
            for F in g.faces()
        ),
        Kind.INVARIANT,
    )


def invariant_to_t(g: KGraph, W: Family) -> Family:
    """V^F = intersection of W^G over all G containing F (G = F included)."""
    if not is_invariant_family(g, W):
        raise NotAnInvariantFamily("argument is not an invariant family")
    out = []
    for F in g.faces():
        acc = g.all_vertices
        for G in g.faces():
            if G & F == F:
                acc &= W[G]
        out.append(acc)
    return Family(tuple(out), Kind.T)


def cnp_family(g: KGraph) -> Family:
    """The family of F-tracing sets, the least O-family."""
    return Family(tuple(u_set(g, F) for F in g.faces()), Kind.O)


def family_kind_check(g: KGraph, family: Family, kind: Kind) -> bool:
    kind = Kind(kind)
    if kind is Kind.T:
        return is_t_family(g, family)
    if kind is Kind.O:
        return is_o_family(g, family)
    return is_invariant_family(g, family)
