from __future__ import annotations

import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kgideals.corpus import random_graph
from kgideals.kgraph import Degree, face
from kgideals.vertex_calculus import (
    degree_preimage,
    edge_preimage,
    is_f_saturated,
    is_hereditary,
    is_invariant_set,
    u_set,
    w_set,
)

from oracles import degrees_up_to, path_preimage, to_mask, to_set

seeds = st.integers(min_value=0, max_value=10**6)


def S(g, *ids):
    return g.mask(ids)


class TestPreimages:
    def test_edge_preimage_examples(self, G, edge, mix):
        for g in G.values():
            for i in range(1, g.rank + 1):
                assert edge_preimage(g, g.all_vertices, i) == g.all_vertices
        assert edge_preimage(edge, 0, 1) == S(edge, "w")
        assert edge_preimage(mix, S(mix, "u"), 2) == S(mix, "u", "v")

    def test_degree_preimage_examples(self, G, loop, mix):
        for g in G.values():
            for V in range(1 << g.num_vertices):
                assert degree_preimage(g, V, Degree.zero(g.rank)) == V
        assert degree_preimage(loop, 0, Degree((1,))) == 0
        assert degree_preimage(mix, S(mix, "v"), Degree((1, 1))) == S(mix, "u")
        assert path_preimage(mix, {mix.vertex("v")}, (1, 1)) == {mix.vertex("u")}

    def test_bad_color(self, loop):
        with pytest.raises(ValueError):
            edge_preimage(loop, 0, 2)

    @settings(max_examples=50, deadline=None)
    @given(seeds, st.data())
    def test_q1_preimage_laws(self, seed, data):
        g = random_graph(random.Random(seed), 5, 3)
        full = g.all_vertices
        V = data.draw(st.integers(0, full))
        V2 = data.draw(st.integers(0, full))
        m = Degree(tuple(data.draw(st.integers(0, 2)) for _ in range(g.rank)))
        k = Degree(tuple(data.draw(st.integers(0, 2)) for _ in range(g.rank)))
        assert degree_preimage(g, V, m + k) == degree_preimage(g, degree_preimage(g, V, k), m)
        for word in set(permutations(m.colors())):
            acc = V
            for c in word:
                acc = edge_preimage(g, acc, c)
            assert acc == degree_preimage(g, V, m)
        assert degree_preimage(g, V & V2, m) == degree_preimage(g, V, m) & degree_preimage(g, V2, m)
        assert degree_preimage(g, V & V2, m) & ~degree_preimage(g, V, m) == 0
        assert degree_preimage(g, V, m) == to_mask(path_preimage(g, to_set(V), m.coords))


class TestTracingSets:
    def test_w_set_examples(self, G, edge, mix):
        for g in G.values():
            assert w_set(g, 0) == 0
        assert w_set(edge, face([1])) == S(edge, "v")
        assert w_set(mix, face([2])) == S(mix, "v")
        assert w_set(mix, face([1])) == S(mix, "u", "v")

    def test_u_set_examples(self, G, mix):
        for g in G.values():
            assert u_set(g, 0) == 0
            assert u_set(g, g.full_face) == w_set(g, g.full_face)
        assert u_set(mix, face([2])) == S(mix, "v")
        assert u_set(mix, face([1])) == S(mix, "u", "v")

    @settings(max_examples=50, deadline=None)
    @given(seeds)
    def test_q3_sandwiches(self, seed):
        g = random_graph(random.Random(seed), 6, 3)
        for F in g.faces():
            assert u_set(g, F) & ~w_set(g, F) == 0
            for G_ in g.faces():
                if F & G_ == F:
                    assert w_set(g, F) & ~w_set(g, G_) == 0
        assert u_set(g, g.full_face) == w_set(g, g.full_face)


class TestPredicates:
    def test_hereditary_examples(self, G, edge, mix):
        for g in G.values():
            assert is_hereditary(g, 0) and is_hereditary(g, g.all_vertices)
        assert not is_hereditary(edge, S(edge, "v"))
        assert is_hereditary(mix, S(mix, "u"))

    def test_saturation_examples(self, G, edge, mix):
        for g in G.values():
            assert is_f_saturated(g, g.all_vertices)
        assert not is_f_saturated(mix, S(mix, "u"))
        assert not is_f_saturated(edge, S(edge, "w"))

    def test_invariant_examples(self, G, edge, mix):
        for g in G.values():
            assert is_invariant_set(g, 0)
        assert not is_invariant_set(mix, S(mix, "u"))
        verdicts = {V: is_invariant_set(edge, V) for V in range(4)}
        assert verdicts == {0: True, S(edge, "v"): False, S(edge, "w"): False, 3: True}

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_q2_q4_hereditary_equivalences(self, seed):
        g = random_graph(random.Random(seed), 5, 2)
        bound = (2,) * g.rank
        for V in range(1 << g.num_vertices):
            edge_level = is_hereditary(g, V)
            by_preimage = all(
                V & ~degree_preimage(g, V, Degree(m)) == 0 for m in degrees_up_to(bound)
            )
            by_paths = all(
                p.source in to_set(V)
                for v in to_set(V)
                for m in degrees_up_to(bound)
                for p in g.paths_into(v, Degree(m))
            )
            by_colors = all(
                V & ~edge_preimage(g, V, i) == 0 for i in range(1, g.rank + 1)
            )
            assert edge_level == by_preimage == by_paths == by_colors

    @settings(max_examples=40, deadline=None)
    @given(seeds)
    def test_q5_rank_one_saturation(self, seed):
        g = random_graph(random.Random(seed), 6, 1)
        for V in range(1 << g.num_vertices):
            katsura = edge_preimage(g, V, 1) & u_set(g, 1) & ~V == 0
            assert is_f_saturated(g, V) == katsura
