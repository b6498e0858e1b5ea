from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kgideals.corpus import random_graph
from kgideals.errors import NotAnInvariantFamily, NotATFamily
from kgideals.extended import (
    build_extended,
    extended_id,
    parse_extended_id,
    quotient_graph,
    receiving_pattern_check,
)
from kgideals.families import Family, Kind, t_to_invariant
from kgideals.kgraph import KGraphSpec, face, isomorphic, validate
from kgideals.lattice import enumerate_families

from conftest import fam
from oracles import check_path_closure

seeds = st.integers(min_value=0, max_value=10**6)


def shape(g):
    """Vertices and (color, range, source) of every edge, by id."""
    return (
        sorted(g.vertices),
        sorted((e.id, e.color, e.range, e.source) for e in g.edges),
    )


class TestIds:
    def test_roundtrip(self):
        assert extended_id("v", 0) == "v@{}"
        assert extended_id("v", face([1, 3])) == "v@{1,3}"
        assert parse_extended_id("v@{1,3}") == ("v", face([1, 3]))
        assert parse_extended_id("a@b@{}") == ("a@b", 0)
        with pytest.raises(ValueError):
            parse_extended_id("v")


class TestBuild:
    def test_full_family_gives_empty_graph(self, G):
        for g in G.values():
            ext = build_extended(g, Family.constant(g.rank, g.all_vertices))
            assert ext.num_vertices == 0 and not ext.edges

    def test_edge_example(self, edge):
        ext = build_extended(edge, fam(edge, ["w"], ["v"]))
        assert shape(ext) == (["v@{}", "w@{1}"], [("e@{1}", 1, "v@{}", "w@{1}")])

    def test_loop_example(self, loop):
        ext = build_extended(loop, fam(loop, [], ["v"]))
        assert shape(ext) == (["v@{}"], [("e@{}", 1, "v@{}", "v@{}")])
        assert isomorphic(ext, loop)

    def test_precondition(self, edge):
        with pytest.raises(NotAnInvariantFamily):
            build_extended(edge, fam(edge, ["v"], ["v"]))

    def test_receiving_pattern_examples(self, G, loop, edge):
        W = fam(loop, [], ["v"])
        assert receiving_pattern_check(loop, W, build_extended(loop, W))
        W = fam(edge, ["w"], ["v"])
        assert receiving_pattern_check(edge, W, build_extended(edge, W))
        for g in G.values():
            top = Family.constant(g.rank, g.all_vertices)
            assert receiving_pattern_check(g, top, build_extended(g, top))

    def test_receiving_pattern_detects_a_wrong_graph(self, loop):
        W = fam(loop, [], ["v"])
        assert not receiving_pattern_check(loop, W, validate(KGraphSpec(1, ("v@{}",))))


class TestQuotient:
    def test_full_family(self, G):
        for g in G.values():
            assert quotient_graph(g, Family.constant(g.rank, g.all_vertices)).num_vertices == 0

    def test_loop_zero_family(self, loop):
        ext = quotient_graph(loop, fam(loop, [], []))
        assert shape(ext) == (
            ["v@{1}", "v@{}"],
            [("e@{1}", 1, "v@{}", "v@{1}"), ("e@{}", 1, "v@{}", "v@{}")],
        )

    def test_edge(self, edge):
        assert shape(quotient_graph(edge, fam(edge, [], ["v"]))) == shape(
            build_extended(edge, fam(edge, ["w"], ["v"]))
        )

    def test_precondition(self, loop):
        with pytest.raises(NotATFamily):
            quotient_graph(loop, fam(loop, ["v"], []))


class TestProperties:
    @settings(max_examples=20, deadline=None)
    @given(seeds)
    def test_e1_e2_e3(self, seed):
        g = random_graph(random.Random(seed), 3, 2)
        for W in list(enumerate_families(g, Kind.INVARIANT))[:15]:
            ext = build_extended(g, W)
            assert receiving_pattern_check(g, W, ext)
            check_path_closure(g, W, ext, (1,) * g.rank)

    @settings(max_examples=20, deadline=None)
    @given(seeds)
    def test_e4_exclusion_is_monotone(self, seed):
        g = random_graph(random.Random(seed), 4, 2)
        ws = list(enumerate_families(g, Kind.INVARIANT))[:30]
        sizes = {W.key(): build_extended(g, W).num_vertices for W in ws}
        for W1, W2 in product(ws, repeat=2):
            if W1 <= W2:
                assert sizes[W2.key()] <= sizes[W1.key()]

    def test_e5_rank_one(self, loop, edge):
        # hand-built two-component extended graphs
        expected_loop = {
            (): (["v@{1}", "v@{}"], [("e@{1}", 1, "v@{}", "v@{1}"), ("e@{}", 1, "v@{}", "v@{}")]),
            ("v",): (["v@{}"], [("e@{}", 1, "v@{}", "v@{}")]),
        }
        for V in enumerate_families(loop, Kind.T):
            W = t_to_invariant(loop, V)
            ext = build_extended(loop, W)
            if V == fam(loop, [], []):
                assert shape(ext) == expected_loop[()]
            elif V == fam(loop, [], ["v"]):
                assert shape(ext) == expected_loop[("v",)]
            else:
                assert ext.num_vertices == 0
            for name in ext.vertices:
                if parse_extended_id(name)[1] == 1:
                    assert not ext.edges_into(name, 1)
        W0 = t_to_invariant(edge, fam(edge, [], []))
        assert W0 == fam(edge, ["w"], [])
        assert shape(build_extended(edge, W0)) == (
            ["v@{1}", "v@{}", "w@{1}"],
            [("e@{1}", 1, "v@{}", "w@{1}")],
        )
