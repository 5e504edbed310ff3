import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from spexlab.graph import Graph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=12):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, chosen) if keep])


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def gnp(n: int, p: float, rng: np.random.Generator) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def naive_cycles(g: Graph, length: int) -> list[frozenset]:
    """Vertex sets of every length-cycle, by permutation enumeration."""
    found = set()
    for combo in itertools.combinations(range(g.n), length):
        first, rest = combo[0], combo[1:]
        for perm in itertools.permutations(rest):
            seq = (first, *perm)
            if all(g.has_edge(a, b) for a, b in zip(seq, seq[1:] + seq[:1])):
                found.add(frozenset(combo))
                break
    return list(found)


def naive_has_packing(g: Graph, t: int, length: int) -> bool:
    cycles = naive_cycles(g, length)
    return any(
        all(not (a & b) for a, b in itertools.combinations(choice, 2))
        for choice in itertools.combinations(cycles, t)
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20241016)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
