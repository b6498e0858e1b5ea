"""Desk-scale fixtures and random valid k-graphs.

Random graphs come from three constructions, all of which satisfy the
factorization property by design:

* rank-2 graphs whose color adjacency matrices commute (the second is a
  polynomial in the first), with an arbitrary bijection chosen at random for
  every pair of endpoints;
* cartesian products of lower-rank graphs;
* extended graphs of random invariant families.

Rank-3 graphs with twisted squares are produced by rejection: random
bijections are drawn until the associativity check passes.
"""

from __future__ import annotations

import random

from .errors import ValidationError
from .kgraph import EdgeSpec, KGraph, KGraphSpec, validate


def g_loop() -> KGraph:
    return validate(KGraphSpec(1, ("v",), (("e", 1, "v", "v"),)))


def g_edge() -> KGraph:
    return validate(KGraphSpec(1, ("v", "w"), (("e", 1, "v", "w"),)))


def torus_spec() -> KGraphSpec:
    return KGraphSpec(
        2,
        ("v",),
        (("e", 1, "v", "v"), ("f", 2, "v", "v")),
        ((("e", "f"), ("f", "e")),),
    )


def g_torus() -> KGraph:
    return validate(torus_spec())


def broken_torus_spec() -> KGraphSpec:
    spec = torus_spec()
    return KGraphSpec(spec.rank, spec.vertices, spec.edges, ())


def mix_spec() -> KGraphSpec:
    return KGraphSpec(
        2,
        ("u", "v"),
        (("a", 1, "v", "v"), ("c", 1, "u", "u"), ("b", 2, "v", "u")),
        ((("a", "b"), ("b", "c")),),
    )


def g_mix() -> KGraph:
    return validate(mix_spec())


def fixtures() -> dict[str, KGraph]:
    return {"loop": g_loop(), "edge": g_edge(), "torus": g_torus(), "mix": g_mix()}


def loops_spec(counts: tuple[int, ...], twists: dict | None = None) -> KGraphSpec:
    """One vertex with ``counts[c-1]`` loops of color ``c``.

    Squares commute (``x y = y x``) unless ``twists`` maps a color pair
    ``(i, j)`` to a function ``(a, b) -> (b', a')`` on loop indices.
    """
    n = len(counts)
    names = [[f"{chr(ord('a') + c)}{k}" for k in range(counts[c])] for c in range(n)]
    edges = [
        EdgeSpec(names[c][k], c + 1, "v", "v") for c in range(n) for k in range(counts[c])
    ]
    squares = []
    twists = twists or {}
    for i in range(n):
        for j in range(i + 1, n):
            rule = twists.get((i + 1, j + 1), lambda a, b: (b, a))
            for a in range(counts[i]):
                for b in range(counts[j]):
                    b2, a2 = rule(a, b)
                    squares.append(((names[i][a], names[j][b]), (names[j][b2], names[i][a2])))
    return KGraphSpec(n, ("v",), tuple(edges), tuple(squares))


# -- constructions ----------------------------------------------------------


def relabel(g: KGraph, rng: random.Random | None = None) -> KGraph:
    """Rename vertices ``v0..`` and edges ``e0..``, optionally in shuffled order."""
    vorder = list(range(g.num_vertices))
    eorder = list(range(len(g.edges)))
    if rng is not None:
        rng.shuffle(vorder)
        rng.shuffle(eorder)
    vname = {g.vertices[k]: f"v{pos}" for pos, k in enumerate(vorder)}
    ename = {g.edges[k].id: f"e{pos}" for pos, k in enumerate(eorder)}
    edges = tuple(
        EdgeSpec(ename[e.id], e.color, vname[e.range], vname[e.source])
        for e in (g.edges[k] for k in eorder)
    )
    squares = tuple(
        ((ename[a], ename[b]), (ename[c], ename[d])) for (a, b), (c, d) in g.spec.squares
    )
    if rng is not None:
        squares = tuple(rng.sample(squares, len(squares)))
    return validate(KGraphSpec(g.rank, tuple(vname[g.vertices[k]] for k in vorder), edges, squares))


def cartesian_product(g: KGraph, h: KGraph) -> KGraph:
    """The product k-graph; colors of ``h`` are shifted past those of ``g``."""
    shift = g.rank

    def vid(a: str, b: str) -> str:
        return f"({a},{b})"

    vertices = tuple(vid(a, b) for a in g.vertices for b in h.vertices)
    edges = []
    for e in g.edges:
        for w in h.vertices:
            edges.append(EdgeSpec(vid(e.id, w), e.color, vid(e.range, w), vid(e.source, w)))
    for v in g.vertices:
        for f in h.edges:
            edges.append(
                EdgeSpec(vid(v, f.id), f.color + shift, vid(v, f.range), vid(v, f.source))
            )
    squares = []
    for (a, b), (c, d) in g.spec.squares:
        for w in h.vertices:
            squares.append(((vid(a, w), vid(b, w)), (vid(c, w), vid(d, w))))
    for (a, b), (c, d) in h.spec.squares:
        for v in g.vertices:
            squares.append(((vid(v, a), vid(v, b)), (vid(v, c), vid(v, d))))
    for e in g.edges:
        for f in h.edges:
            squares.append(
                (
                    (vid(e.id, f.range), vid(e.source, f.id)),
                    (vid(e.range, f.id), vid(e.id, f.source)),
                )
            )
    return validate(KGraphSpec(g.rank + h.rank, vertices, tuple(edges), tuple(squares)))


def _matrix_edges(rng, nv, color, A, prefix):
    edges = []
    for u in range(nv):
        for w in range(nv):
            for k in range(A[u][w]):
                edges.append(EdgeSpec(f"{prefix}{u}_{w}_{k}", color, f"v{u}", f"v{w}"))
    return edges


def _random_squares(rng, edges, n):
    by_color = {c: [e for e in edges if e.color == c] for c in range(1, n + 1)}
    squares = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            left: dict = {}
            right: dict = {}
            for e in by_color[i]:
                for f in by_color[j]:
                    if e.source == f.range:
                        left.setdefault((e.range, f.source), []).append((e.id, f.id))
                    if f.source == e.range:
                        right.setdefault((f.range, e.source), []).append((f.id, e.id))
            for key, pairs in left.items():
                outs = right.get(key, [])
                if len(outs) != len(pairs):
                    return None
                outs = list(outs)
                rng.shuffle(outs)
                squares.extend(zip(pairs, outs))
    return squares


def _matmul(A, B):
    n = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _random_matrix(rng, nv, density):
    return [[1 if rng.random() < density else 0 for _ in range(nv)] for _ in range(nv)]


def _polynomial(rng, A, cap=2):
    nv = len(A)
    ident = [[int(i == j) for j in range(nv)] for i in range(nv)]
    A2 = _matmul(A, A)
    while True:
        c0, c1, c2 = rng.choice(
            [(1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1), (0, 0, 0), (0, 2, 0), (1, 0, 1)]
        )
        P = [
            [c0 * ident[i][j] + c1 * A[i][j] + c2 * A2[i][j] for j in range(nv)]
            for i in range(nv)
        ]
        if max(max(row) for row in P) <= cap:
            return P


def random_rank1(rng: random.Random, nv: int, density: float = 0.4) -> KGraph:
    A = [[rng.choice([0, 0, 1, 1, 2]) if rng.random() < density else 0 for _ in range(nv)] for _ in range(nv)]
    edges = _matrix_edges(rng, nv, 1, A, "e")
    return validate(KGraphSpec(1, tuple(f"v{k}" for k in range(nv)), tuple(edges)))


def random_commuting(rng: random.Random, nv: int, rank: int, attempts: int = 30) -> KGraph | None:
    """Rank-``rank`` graph whose color matrices are polynomials in one matrix.

    Returns ``None`` if no associative choice of squares was found.
    """
    A = _random_matrix(rng, nv, rng.choice([0.2, 0.35, 0.5]))
    mats = [A] + [_polynomial(rng, A) for _ in range(rank - 1)]
    rng.shuffle(mats)
    edges = []
    for c, M in enumerate(mats, start=1):
        edges += _matrix_edges(rng, nv, c, M, chr(ord("a") + c - 1))
    vertices = tuple(f"v{k}" for k in range(nv))
    for _ in range(attempts):
        squares = _random_squares(rng, edges, rank)
        if squares is None:
            return None
        try:
            return validate(KGraphSpec(rank, vertices, tuple(edges), tuple(squares)))
        except ValidationError:
            continue
    return None


def random_extended(rng: random.Random, g: KGraph, max_vertices: int) -> KGraph | None:
    from .extended import build_extended
    from .families import Kind
    from .lattice import enumerate_families

    lattice = enumerate_families(g, Kind.INVARIANT)
    picks = [W for W in lattice if sum(g.num_vertices - W[F].bit_count() for F in g.faces()) <= max_vertices]
    picks = [W for W in picks if any(W[F] != g.all_vertices for F in g.faces())]
    if not picks:
        return None
    return build_extended(g, rng.choice(picks))


def random_graph(rng: random.Random, max_vertices: int = 6, max_rank: int = 3) -> KGraph:
    """A random valid k-graph with at most ``max_vertices`` vertices."""
    while True:
        rank = rng.randint(1, max_rank)
        how = rng.random()
        g = None
        if rank == 1:
            g = random_rank1(rng, rng.randint(1, max_vertices))
        elif how < 0.5:
            g = random_commuting(rng, rng.randint(1, max_vertices), rank)
        elif how < 0.8:
            split = rng.randint(1, rank - 1)
            a = rng.randint(1, max(1, min(3, max_vertices)))
            b = rng.randint(1, max(1, max_vertices // a))
            g = cartesian_product(
                random_graph(rng, a, split) if split > 1 else random_rank1(rng, a),
                random_graph(rng, b, rank - split) if rank - split > 1 else random_rank1(rng, b),
            )
            if g.rank != rank:
                g = None
        else:
            base = random_graph(rng, max(1, max_vertices // 2), rank)
            if base.num_vertices <= 3:
                g = random_extended(rng, base, max_vertices)
        if g is not None and g.num_vertices <= max_vertices and g.rank <= max_rank:
            return relabel(g, rng)


def random_corpus(seed: int, size: int, max_vertices: int = 6, max_rank: int = 3) -> list[KGraph]:
    rng = random.Random(seed)
    return [random_graph(rng, max_vertices, max_rank) for _ in range(size)]


def random_spec(rng: random.Random) -> KGraphSpec:
    """A schema-valid presentation that need not satisfy the k-graph axioms."""
    rank = rng.randint(1, 4)
    vertices = [f"x{k}" for k in rng.sample(range(50), rng.randint(0, 6))]
    edges = []
    if vertices:
        for k in rng.sample(range(100), rng.randint(0, 8)):
            edges.append(
                EdgeSpec(f"y{k}", rng.randint(1, rank), rng.choice(vertices), rng.choice(vertices))
            )
    squares = []
    ids = [e.id for e in edges]
    if ids:
        for _ in range(rng.randint(0, 4)):
            a, b, c, d = (rng.choice(ids) for _ in range(4))
            squares.append(((a, b), (c, d)))
    rng.shuffle(vertices)
    return KGraphSpec(rank, tuple(vertices), tuple(edges), tuple(squares))
