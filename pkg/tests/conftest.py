from __future__ import annotations

import os

import networkx as nx
import pytest
from hypothesis import HealthCheck, settings

from koenigtype.graphs import SimpleGraph
from koenigtype.hibi import Poset

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def connected_graphs(max_n: int = 7) -> list[SimpleGraph]:
    """Every connected graph on 1..max_n vertices, up to isomorphism."""
    out = []
    for g in nx.graph_atlas_g()[1:]:
        n = g.number_of_nodes()
        if n <= max_n and nx.is_connected(g):
            out.append(SimpleGraph.from_edges(n, [(a + 1, b + 1) for a, b in g.edges()]))
    return out


ALL_CONNECTED = connected_graphs(7)


def graph_id(G: SimpleGraph) -> str:
    return f"n{G.n}-" + "_".join(f"{a}{b}" for a, b in G.edges)


# 5-cycle 1..5 with whiskers 5-6 and 3-7
WHISKERED_PENTAGON = SimpleGraph.from_edges(7, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (5, 6), (3, 7)])
# triangle 2, 3, 5 with whiskers 1-2, 3-4, 5-6
WHISKERED_TRIANGLE = SimpleGraph.from_edges(6, [(2, 3), (3, 5), (2, 5), (1, 2), (3, 4), (5, 6)])

# a < c, b < c, b < d
FOUR_POSET = Poset(4, ((1, 3), (2, 3), (2, 4)), ("a", "b", "c", "d"))
# the eight-element pure poset with two chains of rank three
EIGHT_POSET = Poset(8, ((1, 3), (2, 3), (2, 4), (3, 5), (4, 5), (4, 6), (5, 7), (5, 8), (6, 8)))


def comb_poset(d: int) -> Poset:
    """Chain x_0 < ... < x_d (elements 1..d+1) with y_i covering x_{i-1} (element d+1+i)."""
    covers = [(i, i + 1) for i in range(1, d + 1)] + [(i, d + 1 + i) for i in range(1, d + 1)]
    return Poset(2 * d + 1, tuple(covers))


@pytest.fixture(scope="session")
def connected_graphs_7() -> list[SimpleGraph]:
    return ALL_CONNECTED


# PASS/FAIL lines from the acceptance suite, repeated at the end of the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
