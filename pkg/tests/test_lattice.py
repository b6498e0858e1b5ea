from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kgideals.corpus import random_graph
from kgideals.errors import BudgetExceeded, KindMismatch, NotInLattice
from kgideals.families import Family, Kind, cnp_family, t_to_invariant
from kgideals.lattice import (
    FamilyLattice,
    SearchLimits,
    brute_force_families,
    component_fixed_points,
    enumerate_families,
    hasse,
    join,
    meet,
    up_sets,
)

from conftest import fam

seeds = st.integers(min_value=0, max_value=10**6)


def naive_covers(lattice):
    els = list(lattice)
    return {
        (a.key(), b.key())
        for a in els
        for b in els
        if a < b and not any(a < c < b for c in els)
    }


class TestEnumeration:
    def test_loop(self, loop):
        t = brute_force_families(loop, Kind.T)
        assert set(t) == {fam(loop, [], []), fam(loop, [], ["v"]), fam(loop, ["v"], ["v"])}
        o = brute_force_families(loop, Kind.O)
        assert set(o) == {fam(loop, [], ["v"]), fam(loop, ["v"], ["v"])}
        assert enumerate_families(loop, Kind.T).keys() == t.keys()

    def test_torus(self, torus):
        assert len(brute_force_families(torus, Kind.T)) == 6
        assert len(brute_force_families(torus, Kind.O)) == 2
        o = enumerate_families(torus, Kind.O)
        assert set(o) == {
            fam(torus, [], ["v"], ["v"], ["v"]),
            fam(torus, ["v"], ["v"], ["v"], ["v"]),
        }

    def test_torus_t_families_are_the_monotone_ones(self, torus):
        expected = {
            Family(e)
            for e in product(range(2), repeat=4)
            if e[0] <= min(e[1], e[2]) and max(e[1], e[2]) <= e[3]
        }
        assert set(enumerate_families(torus, Kind.T)) == expected

    def test_mix_matches_oracle(self, mix):
        for kind in Kind:
            assert enumerate_families(mix, kind).keys() == brute_force_families(mix, kind).keys()

    def test_budgets(self, mix):
        with pytest.raises(BudgetExceeded):
            brute_force_families(mix, Kind.T, SearchLimits(max_candidates=10))
        with pytest.raises(BudgetExceeded) as info:
            enumerate_families(mix, Kind.T, SearchLimits(max_candidates=3))
        assert info.value.component is not None
        with pytest.raises(ValueError):
            SearchLimits(max_candidates=0)

    def test_threads_do_not_change_the_result(self):
        g = random_graph(random.Random(8), 4, 2)
        serial = enumerate_families(g, Kind.INVARIANT)
        parallel = enumerate_families(g, Kind.INVARIANT, threads=3)
        assert serial.elements == parallel.elements

    def test_s1_oracle_equivalence(self, oracle_corpus):
        for g in oracle_corpus:
            for kind in Kind:
                assert enumerate_families(g, kind).keys() == brute_force_families(g, kind).keys()

    @settings(max_examples=30, deadline=None)
    @given(seeds)
    def test_s2_kind_nesting(self, seed):
        g = random_graph(random.Random(seed), 5, 3)
        t = enumerate_families(g, Kind.T)
        o = enumerate_families(g, Kind.O)
        inv = enumerate_families(g, Kind.INVARIANT)
        assert o.keys() <= t.keys()
        assert len(inv) == len(t)
        assert {t_to_invariant(g, V).key() for V in t} == inv.keys()

    @settings(max_examples=30, deadline=None)
    @given(seeds)
    def test_s4_fixed_point_sandwich(self, seed):
        g = random_graph(random.Random(seed), 5, 3)
        for kind in Kind:
            for f in list(enumerate_families(g, kind))[:20]:
                for F in g.faces():
                    if F == g.full_face:
                        continue
                    upper = [f[G_] if G_ & F == F and G_ != F else None for G_ in g.faces()]
                    lo, hi, sols = component_fixed_points(g, kind, F, upper)
                    assert lo & ~hi == 0
                    assert f[F] in sols
                    for S in sols:
                        assert lo & ~S == 0 and S & ~hi == 0

    def test_s5_rank_one(self, loop):
        assert len(enumerate_families(loop, Kind.T)) == 3
        assert len(enumerate_families(loop, Kind.O)) == 2


class TestLatticeOps:
    def test_meet_examples(self, loop):
        t = enumerate_families(loop, Kind.T)
        top = t.top()
        for f in t:
            assert meet(f, f) == f
            assert meet(top, f) == f
        assert meet(fam(loop, [], ["v"]), fam(loop, ["v"], ["v"])) == fam(loop, [], ["v"])

    def test_meet_kind_mismatch(self, loop):
        with pytest.raises(KindMismatch):
            meet(Family((0, 1), Kind.T), Family((0, 1), Kind.INVARIANT))
        with pytest.raises(KindMismatch):
            meet(Family((0, 1)), Family((0, 1, 1, 1)))

    def test_join_examples(self, loop):
        t = enumerate_families(loop, Kind.T)
        for f in t:
            assert join(f, f, t) == f
            assert join(t.bottom(), f, t) == f
        assert join(fam(loop, [], ["v"]), fam(loop, ["v"], ["v"]), t) == fam(loop, ["v"], ["v"])
        with pytest.raises(NotInLattice):
            join(fam(loop, ["v"], []), t.top(), t)

    def test_o_lattice_bounds(self, mix):
        o = enumerate_families(mix, Kind.O)
        assert o.bottom() == cnp_family(mix)
        assert o.top() == Family.constant(2, mix.all_vertices)

    def test_hasse_examples(self, loop, torus):
        single = FamilyLattice(Kind.T, [Family((0, 0))])
        assert hasse(single) == []
        chain = hasse(enumerate_families(loop, Kind.T))
        assert [(a.key(), b.key()) for a, b in chain] == [((0, 0), (0, 1)), ((0, 1), (1, 1))]
        t = enumerate_families(torus, Kind.T)
        assert {(a.key(), b.key()) for a, b in hasse(t)} == naive_covers(t)
        # 0000<0001, 0001<0011, 0001<0101, 0011<0111, 0101<0111, 0111<1111
        assert len(hasse(t)) == 6

    @settings(max_examples=15, deadline=None)
    @given(seeds)
    def test_s3_lattice_axioms(self, seed):
        g = random_graph(random.Random(seed), 4, 2)
        for kind in (Kind.T, Kind.O, Kind.INVARIANT):
            lat = enumerate_families(g, kind)
            els = list(lat)[:12]
            for a, b in product(els, repeat=2):
                assert meet(a, b) in lat and join(a, b, lat) in lat
                assert meet(a, b) == meet(b, a) and join(a, b, lat) == join(b, a, lat)
                assert meet(a, join(a, b, lat)) == a
                assert join(a, meet(a, b), lat) == a
                assert meet(a, a) == a and join(a, a, lat) == a
                for c in els[:4]:
                    assert meet(meet(a, b), c) == meet(a, meet(b, c))
                    assert join(join(a, b, lat), c, lat) == join(a, join(b, c, lat), lat)

    @settings(max_examples=25, deadline=None)
    @given(seeds)
    def test_up_sets_and_hasse_match_naive(self, seed):
        g = random_graph(random.Random(seed), 4, 2)
        lat = enumerate_families(g, Kind.T)
        els = list(lat)[:60]
        ups = up_sets(els)
        for i, a in enumerate(els):
            assert ups[i] == sum(1 << j for j, b in enumerate(els) if a <= b)
        small = FamilyLattice(Kind.T, els)
        assert {(a.key(), b.key()) for a, b in hasse(small)} == naive_covers(small)
