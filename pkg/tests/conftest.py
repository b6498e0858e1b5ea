from __future__ import annotations

import pytest

from kgideals.corpus import fixtures as _fixtures
from kgideals.corpus import random_corpus
from kgideals.families import Family, Kind
from kgideals.lattice import enumerate_families

# Graphs whose T-lattice is larger than this are left out of the
# all-pairs corpus checks (pairwise order checks are quadratic).
LATTICE_CAP = 4000


def fam(g, *entries):
    """Family from per-face vertex-id lists, faces in binary order."""
    return Family(tuple(g.mask(ids) for ids in entries))


@pytest.fixture(scope="session")
def G():
    return _fixtures()


@pytest.fixture
def loop(G):
    return G["loop"]


@pytest.fixture
def edge(G):
    return G["edge"]


@pytest.fixture
def torus(G):
    return G["torus"]


@pytest.fixture
def mix(G):
    return G["mix"]


def build_corpus(seed: int, size: int, max_vertices: int, max_rank: int, cap=LATTICE_CAP):
    """Random valid graphs plus their T-lattices, skipping oversized lattices."""
    out = []
    attempt = 0
    while len(out) < size:
        for g in random_corpus(seed + attempt, size, max_vertices, max_rank):
            lattice = enumerate_families(g, Kind.T)
            if len(lattice) <= cap:
                out.append((g, lattice))
                if len(out) == size:
                    break
        attempt += 1000
    return out


@pytest.fixture(scope="session")
def wide_corpus():
    """At least 200 graphs, up to 6 vertices and rank 3."""
    return build_corpus(2024, 200, 6, 3)


@pytest.fixture(scope="session")
def small_corpus(G):
    """Graphs with at most 4 vertices and rank at most 2, fixtures included."""
    graphs = list(G.values()) + [g for g, _ in build_corpus(11, 40, 4, 2)]
    return graphs


@pytest.fixture(scope="session")
def oracle_corpus(G):
    """Graphs on which the exhaustive family oracle is affordable."""
    rank2 = [g for g, _ in build_corpus(31, 20, 4, 2)]
    rank3 = [g for g, _ in build_corpus(47, 200, 2, 3) if g.rank == 3][:8]
    return list(G.values()) + rank2 + rank3


# -- acceptance reporting ---------------------------------------------------------

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s[1:])):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{name} {'PASS' if ok else 'FAIL'}  {detail}")
