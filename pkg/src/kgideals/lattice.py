"""Enumeration of T-, O- and invariant families and their lattices.

:func:`enumerate_families` fixes the component at the full face first and
then works down through faces of decreasing size.  The defining equations
tie a component ``S = V^F`` only to components at strictly larger faces,
so once those are fixed the admissible ``S`` are fixed points of the
monotone operator

    phi(S) = meet over i not in F of  op_i(S)

with ``op_i(S) = pre_i(S) & V^{F+i}`` for T-families and
``op_i(S) = pre_i(S & W^{F+i})`` for invariant families.  Each admissible
``S`` satisfies ``op_i(S) == S`` for every ``i``; in particular it is a fixed
point of ``phi`` and so lies between the least and greatest fixed points.
Only that interval is searched.

:func:`brute_force_families` is the exhaustive oracle.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, Optional, Sequence

from .errors import BudgetExceeded, KindMismatch, NotInLattice
from .families import (
    Family,
    Kind,
    family_kind_check,
    u_set,
)
from .kgraph import FaceSet, KGraph, VertexSet, format_face, iter_bits
from .vertex_calculus import edge_preimage


@dataclass(frozen=True)
class SearchLimits:
    max_candidates: int = 1 << 22
    time_budget: Optional[float] = None

    def __post_init__(self):
        if self.max_candidates <= 0:
            raise ValueError("max_candidates must be positive")
        if self.time_budget is not None and self.time_budget <= 0:
            raise ValueError("time_budget must be positive")


class FamilyLattice:
    """A finite set of families ordered by componentwise inclusion."""

    def __init__(self, kind: Kind, elements: Sequence[Family]):
        self.kind = Kind(kind)
        unique = {f.key(): f for f in elements}
        self.elements: tuple[Family, ...] = tuple(
            Family(k, self.kind) for k in sorted(unique, key=_sort_key)
        )
        self._index = {f.key(): k for k, f in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Family]:
        return iter(self.elements)

    def __contains__(self, f: Family) -> bool:
        return f.key() in self._index

    def __repr__(self) -> str:
        return f"FamilyLattice(kind={self.kind.value}, size={len(self)})"

    def keys(self) -> set[tuple[int, ...]]:
        return set(self._index)

    def index(self, f: Family) -> int:
        try:
            return self._index[f.key()]
        except KeyError:
            raise NotInLattice("family is not an element of the lattice") from None

    def bottom(self) -> Family:
        return self.elements[0]

    def top(self) -> Family:
        return self.elements[-1]

    def join(self, f1: Family, f2: Family) -> Family:
        return join(f1, f2, self)

    def hasse(self) -> list[tuple[Family, Family]]:
        return hasse(self)


def _sort_key(entries: tuple[int, ...]) -> tuple:
    # linear extension of the order: sizes first, then the bitmasks
    return (sum(V.bit_count() for V in entries), entries)


def _missing(F: FaceSet, n: int) -> list[int]:
    return [i for i in range(1, n + 1) if not (F >> (i - 1)) & 1]


def _faces_top_down(n: int) -> list[FaceSet]:
    return sorted(range(1 << n), key=lambda F: (-F.bit_count(), F))


def _submasks_between(low: int, high: int) -> Iterator[int]:
    free = high & ~low
    sub = free
    while True:
        yield low | sub
        if sub == 0:
            return
        sub = (sub - 1) & free


def _operators(
    g: KGraph, kind: Kind, F: FaceSet, upper: Sequence[Optional[VertexSet]]
) -> list[Callable[[VertexSet], VertexSet]]:
    ops = []
    for i in _missing(F, g.rank):
        bigger = upper[F | 1 << (i - 1)]
        if kind is Kind.INVARIANT:
            ops.append(lambda S, i=i, B=bigger: edge_preimage(g, S & B, i))
        else:
            ops.append(lambda S, i=i, B=bigger: edge_preimage(g, S, i) & B)
    return ops


def least_fixed_point(ops, full: int) -> int:
    S = 0
    while True:
        nxt = full
        for op in ops:
            nxt &= op(S)
        if nxt == S:
            return S
        S = nxt


def greatest_fixed_point(ops, full: int) -> int:
    S = full
    while True:
        nxt = full
        for op in ops:
            nxt &= op(S)
        if nxt == S:
            return S
        S = nxt


def component_fixed_points(
    g: KGraph, kind: Kind, F: FaceSet, upper: Sequence[Optional[VertexSet]]
) -> tuple[int, int, list[int]]:
    """Search one component given all components at larger faces.

    Returns ``(lfp, gfp, solutions)`` where ``solutions`` are the admissible
    values of the component at ``F``.
    """
    kind = Kind(kind)
    full = g.all_vertices
    ops = _operators(g, kind, F, upper)
    lo = least_fixed_point(ops, full)
    hi = greatest_fixed_point(ops, full)
    floor = u_set(g, F) if kind is Kind.O else 0
    sols = [
        S
        for S in _submasks_between(lo, hi)
        if S & floor == floor and all(op(S) == S for op in ops)
    ]
    return lo, hi, sols


class _Budget:
    def __init__(self, limits: SearchLimits):
        self.limits = limits
        self.used = 0
        self.deadline = (
            time.monotonic() + limits.time_budget if limits.time_budget else None
        )

    def spend(self, count: int, component: str) -> None:
        self.used += count
        if self.used > self.limits.max_candidates:
            raise BudgetExceeded(
                f"candidate budget {self.limits.max_candidates} exceeded "
                f"while searching component {component}",
                component,
            )
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceeded(
                f"time budget exceeded while searching component {component}",
                component,
            )


def _search(g: KGraph, kind: Kind, top_values: Sequence[int], limits: SearchLimits):
    n = g.rank
    order = _faces_top_down(n)[1:]
    budget = _Budget(limits)
    full = g.all_vertices
    found: list[tuple[int, ...]] = []
    comps: list[Optional[int]] = [None] * (1 << n)

    def descend(depth: int) -> None:
        if depth == len(order):
            found.append(tuple(comps))
            return
        F = order[depth]
        ops = _operators(g, kind, F, comps)
        lo = least_fixed_point(ops, full)
        hi = greatest_fixed_point(ops, full)
        budget.spend(1 << (hi & ~lo).bit_count(), format_face(F))
        floor = u_set(g, F) if kind is Kind.O else 0
        for S in _submasks_between(lo, hi):
            if S & floor != floor:
                continue
            if all(op(S) == S for op in ops):
                comps[F] = S
                descend(depth + 1)
        comps[F] = None

    top = g.full_face
    for value in top_values:
        budget.spend(1, format_face(top))
        comps[top] = value
        descend(0)
    return found


def _top_values(g: KGraph, kind: Kind) -> list[int]:
    floor = u_set(g, g.full_face) if kind is Kind.O else 0
    return list(_submasks_between(floor, g.all_vertices))


def _search_chunk(args):
    g, kind, values, limits = args
    return _search(g, kind, values, limits)


def enumerate_families(
    g: KGraph,
    kind: Kind | str,
    limits: SearchLimits = SearchLimits(),
    threads: int = 1,
) -> FamilyLattice:
    """All families of the given kind, by component-wise fixed-point search.

    With ``threads > 1`` the choices of the top component are split across
    worker processes; the result does not depend on ``threads``.  The
    candidate budget applies per worker.
    """
    kind = Kind(kind)
    values = _top_values(g, kind)
    if threads <= 1 or len(values) < 2:
        found = _search(g, kind, values, limits)
    else:
        workers = min(threads, len(values))
        chunks = [values[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(_search_chunk, [(g, kind, c, limits) for c in chunks])
            found = [f for part in parts for f in part]
    return FamilyLattice(kind, [Family(f) for f in found])


def brute_force_families(
    g: KGraph, kind: Kind | str, limits: SearchLimits = SearchLimits()
) -> FamilyLattice:
    """Test every map from faces to vertex sets against the kind's predicate."""
    kind = Kind(kind)
    total = (1 << g.num_vertices) ** (1 << g.rank)
    if total > limits.max_candidates:
        raise BudgetExceeded(
            f"{total} candidate families exceed the budget {limits.max_candidates}",
            "all",
        )
    masks = range(1 << g.num_vertices)
    found = []
    for entries in product(masks, repeat=1 << g.rank):
        f = Family(entries)
        if family_kind_check(g, f, kind):
            found.append(f)
    return FamilyLattice(kind, found)


def meet(f1: Family, f2: Family) -> Family:
    """Componentwise intersection."""
    if f1.kind is not None and f2.kind is not None and f1.kind != f2.kind:
        raise KindMismatch(f"cannot meet a {f1.kind} family with a {f2.kind} family")
    if len(f1.entries) != len(f2.entries):
        raise KindMismatch("families over different ranks")
    return Family(
        tuple(a & b for a, b in zip(f1.entries, f2.entries)), f1.kind or f2.kind
    )


def join(f1: Family, f2: Family, lattice: FamilyLattice) -> Family:
    """Least upper bound of two elements inside ``lattice``."""
    lattice.index(f1)
    lattice.index(f2)
    result = None
    for f in lattice:
        if f1 <= f and f2 <= f:
            result = f if result is None else meet(result, f)
    assert result is not None, "a family lattice always has a top element"
    return lattice.elements[lattice.index(result)]


def up_sets(families: Sequence[Family]) -> list[int]:
    """For each family, the bitmask of indices of the families above it."""
    k = len(families)
    if k == 0:
        return []
    everyone = (1 << k) - 1
    width = len(families[0].entries)
    # holders[F][v]: families whose component at F contains vertex v
    holders: list[dict[int, int]] = [{} for _ in range(width)]
    for idx, f in enumerate(families):
        bit = 1 << idx
        for F, V in enumerate(f.entries):
            row = holders[F]
            while V:
                low = V & -V
                row[low] = row.get(low, 0) | bit
                V ^= low
    ups = []
    for f in families:
        acc = everyone
        for F, V in enumerate(f.entries):
            row = holders[F]
            while V and acc:
                low = V & -V
                acc &= row[low]
                V ^= low
        ups.append(acc)
    return ups


def hasse(lattice: FamilyLattice) -> list[tuple[Family, Family]]:
    """Covering pairs ``(a, b)`` with ``a < b`` and nothing strictly between."""
    elems = lattice.elements
    strict = [u & ~(1 << k) for k, u in enumerate(up_sets(elems))]
    covers = []
    for a, ups in enumerate(strict):
        beyond = 0
        for c in iter_bits(ups):
            beyond |= strict[c]
        for b in iter_bits(ups & ~beyond):
            covers.append((elems[a], elems[b]))
    return covers


def default_threads() -> int:
    return os.cpu_count() or 1
