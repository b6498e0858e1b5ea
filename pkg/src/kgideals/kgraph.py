"""Finite k-graphs given as a colored 1-skeleton plus commuting squares.

A k-graph of rank ``n`` is encoded by its vertices, its edges (each carrying a
color in ``1..n``, a range and a source) and, for every pair of colors
``i < j``, a bijection between the bicolored paths ``e f`` (``e`` of color
``i`` at the range end) and the paths ``f' e'``.  Each such identification
``e f = f' e'`` is a *square*.

Internally vertices and edges are dense integer indices.  Vertex sets and
color sets (faces) are plain ``int`` bitmasks: vertex ``k`` is bit ``k`` and
color ``i`` is bit ``i - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

from .errors import (
    AssociativityViolation,
    DanglingEndpoint,
    DegreeOutOfRange,
    DuplicateId,
    NotComposable,
    SquareEndpointMismatch,
    SquareNotBijective,
    ValidationError,
)

VertexSet = int
FaceSet = int
Vertex = Union[int, str]


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def face(colors: Iterable[int]) -> FaceSet:
    """Bitmask of a set of 1-based colors."""
    mask = 0
    for c in colors:
        mask |= 1 << (c - 1)
    return mask


def face_colors(F: FaceSet) -> list[int]:
    return [b + 1 for b in iter_bits(F)]


def full_face(n: int) -> FaceSet:
    return (1 << n) - 1


def format_face(F: FaceSet) -> str:
    """Render a face as ``{1,3}``; the empty face is ``{}``."""
    return "{" + ",".join(str(c) for c in face_colors(F)) + "}"


@dataclass(frozen=True)
class Degree:
    """An element of N^n with the coordinatewise partial order."""

    coords: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.coords):
            raise ValueError(f"negative degree {self.coords}")

    @classmethod
    def zero(cls, n: int) -> Degree:
        return cls((0,) * n)

    @classmethod
    def indicator(cls, n: int, F: FaceSet) -> Degree:
        """The characteristic vector 1_F."""
        return cls(tuple((F >> k) & 1 for k in range(n)))

    @classmethod
    def unit(cls, n: int, color: int) -> Degree:
        return cls.indicator(n, 1 << (color - 1))

    @classmethod
    def of_colors(cls, n: int, colors: Iterable[int]) -> Degree:
        coords = [0] * n
        for c in colors:
            coords[c - 1] += 1
        return cls(tuple(coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def total(self) -> int:
        return sum(self.coords)

    def supp(self) -> FaceSet:
        return face(k + 1 for k, c in enumerate(self.coords) if c)

    def perp(self, other: Degree) -> bool:
        return not (self.supp() & other.supp())

    def colors(self) -> list[int]:
        """The color word of this degree in non-decreasing order."""
        return [k + 1 for k, c in enumerate(self.coords) for _ in range(c)]

    def __add__(self, other: Degree) -> Degree:
        return Degree(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: Degree) -> Degree:
        if not other <= self:
            raise DegreeOutOfRange(f"{other.coords} is not below {self.coords}")
        return Degree(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __le__(self, other: Degree) -> bool:
        return all(a <= b for a, b in zip(self.coords, other.coords))

    def __lt__(self, other: Degree) -> bool:
        return self <= other and self != other

    def __ge__(self, other: Degree) -> bool:
        return other <= self

    def __gt__(self, other: Degree) -> bool:
        return other < self

    def join(self, other: Degree) -> Degree:
        return Degree(tuple(map(max, self.coords, other.coords)))

    def meet(self, other: Degree) -> Degree:
        return Degree(tuple(map(min, self.coords, other.coords)))


class EdgeSpec(NamedTuple):
    id: str
    color: int
    range: str
    source: str


Square = tuple[tuple[str, str], tuple[str, str]]


@dataclass(frozen=True)
class KGraphSpec:
    """Unvalidated presentation of a k-graph, as read from a file."""

    rank: int
    vertices: tuple[str, ...] = ()
    edges: tuple[EdgeSpec, ...] = ()
    squares: tuple[Square, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(EdgeSpec(*e) for e in self.edges))
        object.__setattr__(
            self,
            "squares",
            tuple((tuple(a), tuple(b)) for a, b in self.squares),
        )

    def canonical(self) -> KGraphSpec:
        """Same presentation with ids and squares in sorted order."""
        return KGraphSpec(
            self.rank,
            tuple(sorted(self.vertices)),
            tuple(sorted(self.edges, key=lambda e: e.id)),
            tuple(sorted(self.squares)),
        )


@dataclass(frozen=True)
class Path:
    """A path in color-normal form.

    ``edges`` lists edge indices from the range end to the source end with
    non-decreasing colors.  An empty ``edges`` is the vertex (degree-0 path)
    ``range == source``.
    """

    range: int
    source: int
    degree: Degree
    edges: tuple[int, ...] = ()

    def __len__(self) -> int:
        return len(self.edges)


class KGraph:
    """A validated, immutable k-graph with incidence indices.

    Build instances with :func:`validate`.
    """

    def __init__(self, spec: KGraphSpec):
        # Only validate() calls this; it checks the spec first.
        self.spec = spec
        self.rank = n = spec.rank
        self.vertices: tuple[str, ...] = spec.vertices
        self.edges: tuple[EdgeSpec, ...] = spec.edges
        self._vindex = {v: k for k, v in enumerate(self.vertices)}
        self._eindex = {e.id: k for k, e in enumerate(self.edges)}
        self.color = tuple(e.color for e in self.edges)
        self.range_of = tuple(self._vindex[e.range] for e in self.edges)
        self.source_of = tuple(self._vindex[e.source] for e in self.edges)

        nv = len(self.vertices)
        ins: list[list[list[int]]] = [[[] for _ in range(nv)] for _ in range(n)]
        outs: list[list[list[int]]] = [[[] for _ in range(nv)] for _ in range(n)]
        for k, c in enumerate(self.color):
            ins[c - 1][self.range_of[k]].append(k)
            outs[c - 1][self.source_of[k]].append(k)
        self._in = tuple(tuple(tuple(x) for x in per) for per in ins)
        self._out = tuple(tuple(tuple(x) for x in per) for per in outs)
        self._in_src = tuple(
            tuple(_mask(self.source_of[k] for k in per[v]) for v in range(nv))
            for per in self._in
        )
        self._receivers = tuple(
            _mask(v for v in range(nv) if per[v]) for per in self._in
        )
        self._flip: dict[tuple[int, int], tuple[int, int]] = {}
        self._memo: dict = {}

    # -- ids and masks ----------------------------------------------------

    def __repr__(self) -> str:
        return (
            f"KGraph(rank={self.rank}, vertices={len(self.vertices)}, "
            f"edges={len(self.edges)}, squares={len(self.spec.squares)})"
        )

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def all_vertices(self) -> VertexSet:
        return (1 << len(self.vertices)) - 1

    @property
    def full_face(self) -> FaceSet:
        return full_face(self.rank)

    def faces(self) -> range:
        """All faces F of [n], in binary order."""
        return range(1 << self.rank)

    def vertex(self, v: Vertex) -> int:
        if isinstance(v, str):
            try:
                return self._vindex[v]
            except KeyError:
                raise KeyError(f"unknown vertex {v!r}") from None
        if not 0 <= v < len(self.vertices):
            raise KeyError(f"vertex index {v} out of range")
        return v

    def edge(self, e: Union[int, str]) -> int:
        if isinstance(e, str):
            try:
                return self._eindex[e]
            except KeyError:
                raise KeyError(f"unknown edge {e!r}") from None
        return e

    def mask(self, ids: Iterable[Vertex]) -> VertexSet:
        return _mask(self.vertex(v) for v in ids)

    def ids(self, mask: VertexSet) -> list[str]:
        return [self.vertices[k] for k in iter_bits(mask)]

    # -- incidence ---------------------------------------------------------

    def edges_into(self, v: Vertex, color: int) -> tuple[int, ...]:
        return self._in[color - 1][self.vertex(v)]

    def edges_out_of(self, v: Vertex, color: int) -> tuple[int, ...]:
        return self._out[color - 1][self.vertex(v)]

    def sources_into(self, v: int, color: int) -> VertexSet:
        """Mask of sources of the color-``color`` edges with range ``v``."""
        return self._in_src[color - 1][v]

    def receivers(self, color: int) -> VertexSet:
        """Mask of vertices receiving at least one edge of ``color``."""
        return self._receivers[color - 1]

    def flip(self, a: int, b: int) -> tuple[int, int]:
        """Rewrite the bicolored path ``a b`` with its colors exchanged."""
        try:
            return self._flip[(a, b)]
        except KeyError:
            raise NotComposable(
                f"no square for ({self.edges[a].id}, {self.edges[b].id})"
            ) from None

    # -- paths ---------------------------------------------------------------

    def vertex_path(self, v: Vertex) -> Path:
        v = self.vertex(v)
        return Path(v, v, Degree.zero(self.rank))

    def edge_path(self, e: Union[int, str]) -> Path:
        e = self.edge(e)
        return Path(
            self.range_of[e],
            self.source_of[e],
            Degree.unit(self.rank, self.color[e]),
            (e,),
        )

    def path(self, edges: Sequence[Union[int, str]]) -> Path:
        """Normal-form path of a composable edge sequence (any color order)."""
        if not edges:
            raise ValueError("use vertex_path for degree-0 paths")
        seq = [self.edge(e) for e in edges]
        for a, b in zip(seq, seq[1:]):
            if self.source_of[a] != self.range_of[b]:
                raise NotComposable(
                    f"s({self.edges[a].id}) != r({self.edges[b].id})"
                )
        return self._make(seq)

    def _make(self, seq: list[int]) -> Path:
        self._normalize(seq)
        return Path(
            self.range_of[seq[0]],
            self.source_of[seq[-1]],
            Degree.of_colors(self.rank, (self.color[e] for e in seq)),
            tuple(seq),
        )

    def _normalize(self, seq: list[int]) -> None:
        # insertion sort by color; every transposition is a square
        color = self.color
        for k in range(1, len(seq)):
            j = k
            while j > 0 and color[seq[j - 1]] > color[seq[j]]:
                seq[j - 1], seq[j] = self.flip(seq[j - 1], seq[j])
                j -= 1

    def _rewrite(self, seq: list[int], word: Sequence[int]) -> None:
        """Rewrite ``seq`` in place to the representative with color word ``word``."""
        color = self.color
        for k, want in enumerate(word):
            j = k
            while color[seq[j]] != want:
                j += 1
            while j > k:
                seq[j - 1], seq[j] = self.flip(seq[j - 1], seq[j])
                j -= 1

    def compose(self, p: Path, q: Path) -> Path:
        if p.source != q.range:
            raise NotComposable(
                f"source {self.vertices[p.source]} != range {self.vertices[q.range]}"
            )
        if not p.edges:
            return q
        if not q.edges:
            return p
        return self._make(list(p.edges + q.edges))

    def factor(self, p: Path, m: Degree) -> tuple[Path, Path]:
        """Split ``p`` into (head, tail) with ``d(head) == m``."""
        if m.rank != self.rank or not m <= p.degree:
            raise DegreeOutOfRange(f"{m.coords} is not below {p.degree.coords}")
        rest = p.degree - m
        seq = list(p.edges)
        self._rewrite(seq, m.colors() + rest.colors())
        cut = m.total
        head, tail = seq[:cut], seq[cut:]
        mid = self.source_of[head[-1]] if head else p.range
        return (
            Path(p.range, mid, m, tuple(head)),
            Path(mid, p.source, rest, tuple(tail)),
        )

    def paths_into(self, v: Vertex, m: Degree) -> list[Path]:
        """All paths of degree ``m`` with range ``v``."""
        v = self.vertex(v)
        word = m.colors()
        out: list[Path] = []
        if not word:
            return [self.vertex_path(v)]

        def walk(k: int, at: int, acc: list[int]) -> None:
            if k == len(word):
                out.append(Path(v, at, m, tuple(acc)))
                return
            for e in self._in[word[k] - 1][at]:
                acc.append(e)
                walk(k + 1, self.source_of[e], acc)
                acc.pop()

        walk(0, v, [])
        return out

    def reachable(self, v: Vertex, colors: FaceSet) -> VertexSet:
        """Sources of all paths into ``v`` whose degree is supported in ``colors``."""
        v = self.vertex(v)
        seen = 1 << v
        stack = [v]
        allowed = face_colors(colors)
        while stack:
            x = stack.pop()
            for c in allowed:
                fresh = self._in_src[c - 1][x] & ~seen
                seen |= fresh
                stack.extend(iter_bits(fresh))
        return seen


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for k in indices:
        m |= 1 << k
    return m


def validate(spec: KGraphSpec) -> KGraph:
    """Check the k-graph axioms of ``spec`` and return the indexed graph."""
    n = spec.rank
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"rank must be a positive integer, got {n!r}")
    _check_unique("vertex", spec.vertices)
    _check_unique("edge", [e.id for e in spec.edges])
    vset = set(spec.vertices)
    for e in spec.edges:
        if not 1 <= e.color <= n:
            raise ValidationError(f"edge {e.id}: color {e.color} outside 1..{n}")
        for end in (e.range, e.source):
            if end not in vset:
                raise DanglingEndpoint(f"edge {e.id}: unknown vertex {end!r}")

    g = KGraph(spec)
    col, rng, src = g.color, g.range_of, g.source_of
    flips = g._flip
    for (e_id, f_id), (f2_id, e2_id) in spec.squares:
        label = f"square ({e_id},{f_id})=({f2_id},{e2_id})"
        try:
            e, f, f2, e2 = (g._eindex[x] for x in (e_id, f_id, f2_id, e2_id))
        except KeyError as exc:
            raise DanglingEndpoint(f"{label}: unknown edge {exc.args[0]!r}") from None
        if not (col[e] == col[e2] < col[f] == col[f2]):
            raise SquareEndpointMismatch(
                f"{label}: expected colors i,j / j,i with i < j"
            )
        if not (
            src[e] == rng[f]
            and src[f2] == rng[e2]
            and rng[e] == rng[f2]
            and src[f] == src[e2]
        ):
            raise SquareEndpointMismatch(f"{label}: endpoints do not match")
        if (e, f) in flips:
            raise SquareNotBijective(f"{label}: pair ({e_id},{f_id}) used twice", (e_id, f_id))
        if (f2, e2) in flips:
            raise SquareNotBijective(f"{label}: pair ({f2_id},{e2_id}) used twice", (f2_id, e2_id))
        flips[(e, f)] = (f2, e2)
        flips[(f2, e2)] = (e, f)

    # completeness: every composable bicolored pair lies in exactly one square
    ids = spec.edges
    for a in range(len(ids)):
        for c in range(1, n + 1):
            if c == col[a]:
                continue
            for b in g._in[c - 1][src[a]]:
                if (a, b) not in flips:
                    pair = (ids[a].id, ids[b].id)
                    raise SquareNotBijective(
                        f"composable pair ({pair[0]},{pair[1]}) lies in no square", pair
                    )

    if n >= 3:
        _check_associativity(g)
    return g


def _check_unique(kind: str, values: Sequence[str]) -> None:
    seen: set[str] = set()
    for x in values:
        if x in seen:
            raise DuplicateId(f"duplicate {kind} id {x!r}")
        seen.add(x)


def _check_associativity(g: KGraph) -> None:
    n = g.rank
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                for x in range(len(g.edges)):
                    if g.color[x] != i:
                        continue
                    for y in g._in[j - 1][g.source_of[x]]:
                        for z in g._in[k - 1][g.source_of[y]]:
                            a = _swaps(g, [x, y, z], (1, 0, 1))
                            b = _swaps(g, [x, y, z], (0, 1, 0))
                            if a != b:
                                trip = tuple(g.edges[t].id for t in (x, y, z))
                                raise AssociativityViolation(
                                    f"triple {trip} rewrites to "
                                    f"{[g.edges[t].id for t in a]} and "
                                    f"{[g.edges[t].id for t in b]}",
                                    trip,
                                )


def _swaps(g: KGraph, seq: list[int], positions: Iterable[int]) -> list[int]:
    seq = list(seq)
    for p in positions:
        seq[p], seq[p + 1] = g.flip(seq[p], seq[p + 1])
    return seq


def empty_graph(rank: int) -> KGraph:
    return validate(KGraphSpec(rank))


def isomorphic(g: KGraph, h: KGraph) -> bool:
    """Exhaustive k-graph isomorphism test (colors, incidence and squares).

    Exponential; meant for desk-scale graphs.
    """
    if (
        g.rank != h.rank
        or g.num_vertices != h.num_vertices
        or len(g.edges) != len(h.edges)
        or len(g.spec.squares) != len(h.spec.squares)
        or sorted(g.color) != sorted(h.color)
    ):
        return False
    nv = g.num_vertices
    h_squares = {
        (h._eindex[a], h._eindex[b], h._eindex[c], h._eindex[d])
        for (a, b), (c, d) in h.spec.squares
    }
    g_squares = [
        (g._eindex[a], g._eindex[b], g._eindex[c], g._eindex[d])
        for (a, b), (c, d) in g.spec.squares
    ]

    def edge_class(graph: KGraph, e: int, vmap=None) -> tuple[int, int, int]:
        r, s = graph.range_of[e], graph.source_of[e]
        if vmap is not None:
            r, s = vmap[r], vmap[s]
        return (graph.color[e], r, s)

    h_classes: dict[tuple[int, int, int], list[int]] = {}
    for e in range(len(h.edges)):
        h_classes.setdefault(edge_class(h, e), []).append(e)

    for perm in permutations(range(nv)):
        g_classes: dict[tuple[int, int, int], list[int]] = {}
        for e in range(len(g.edges)):
            g_classes.setdefault(edge_class(g, e, perm), []).append(e)
        if {k: len(v) for k, v in g_classes.items()} != {
            k: len(v) for k, v in h_classes.items()
        }:
            continue
        keys = list(g_classes)
        choices = [permutations(h_classes[k]) for k in keys]
        for combo in product(*choices):
            emap = {}
            for k, image in zip(keys, combo):
                emap.update(zip(g_classes[k], image))
            if all(tuple(emap[t] for t in sq) in h_squares for sq in g_squares):
                return True
    return False
