from __future__ import annotations

from itertools import combinations, permutations

import pytest

from conftest import ALL_CONNECTED, WHISKERED_PENTAGON, WHISKERED_TRIANGLE, graph_id
from koenigtype import binomial_edge as be
from koenigtype.algebra import LinearForm
from koenigtype.graphs import SimpleGraph, complete_graph, path_graph
from koenigtype.groebner import buchberger
from koenigtype.koenig import PreconditionError
from oracles import dim_binomial_edge, has_spanning_paths, is_linear_forest


def form_strings(n, forms):
    names = be.variable_names(n)
    return [f.to_string(names) for f in forms]


class TestGenerators:
    def test_variables_and_minor(self):
        assert be.variable_names(2) == ["x1", "x2", "y1", "y2"]
        g = be.f(3, 1, 3)
        assert g.to_string(be.variable_names(3)) == "x1*y3 - x3*y1"
        assert g.initial_term(be.standard_order(3)).to_string(be.variable_names(3)) == "x1*y3"

    def test_relabeled_order(self):
        order = be.relabeled_order(3, [2, 1, 3])
        assert be.f(3, 1, 2).initial_term(order).to_string(be.variable_names(3)) == "x2*y1"


class TestCutSets:
    def test_complete_graph(self):
        assert [r.T for r in be.cut_sets(complete_graph(4))] == [()]

    def test_path(self):
        Ts = [r.T for r in be.cut_sets(path_graph(4))]
        assert Ts == [(), (2,), (3,)]

    def test_prime_components(self):
        P = be.prime_component(path_graph(4), (2,))
        assert P.blocks == ((1,), (3, 4)) and P.height == 3
        assert P.to_string() == "(x2, y2, J_K{3,4})"

    @pytest.mark.parametrize("G", [G for G in ALL_CONNECTED if G.n <= 5], ids=graph_id)
    def test_primes_contain_ideal_and_are_incomparable(self, G):
        J = be.binomial_edge_ideal(G)
        primes = be.minimal_primes_JG(G)
        order = be.standard_order(G.n)
        bases = [buchberger(p.generators(G.n), order) for p in primes]
        for gb in bases:
            assert all(gb.normal_form(g) is None for g in J.generators)
        for (p, gp), (q, gq) in permutations(list(zip(primes, bases)), 2):
            # P_T inside P_T' would make P_T' redundant
            assert not all(gq.normal_form(g) is None for g in p.generators(G.n).generators)


class TestWhiskeredGraphs:
    def test_whiskered_pentagon(self):
        G = WHISKERED_PENTAGON
        assert be.dim_quotient(G) == 9 == be.dim_via_groebner(G)
        assert be.max_semipath(G).length == 5 == 2 * G.n - 9
        assert be.is_traceable(G) is None
        assert not be.is_unmixed_JG(G)
        cert = be.koenig_JG(G)
        edges = sorted(G.edges[i] for i in cert.generator_indices)
        assert edges == [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]
        assert len(cert.C) == 9

    def test_whiskered_pentagon_sop(self):
        sop = be.special_sop_JG(WHISKERED_PENTAGON)
        assert sop.zero_dimensional and len(sop.forms) == 9
        assert form_strings(7, sop.forms) == [
            "y2 - x1", "y3 - x2", "y4 - x3", "y5 - x4", "y6 - x5", "x6", "y1", "x7", "y7",
        ]

    def test_whiskered_pentagon_not_cm(self):
        verdict = be.cm_verdict_JG(WHISKERED_PENTAGON)
        assert verdict.cm is False

    def test_whiskered_triangle(self):
        G = WHISKERED_TRIANGLE
        assert be.dim_quotient(G) == 7 == be.dim_via_groebner(G)
        sp = be.max_semipath(G)
        assert sp.length == 4 < 2 * G.n - 7
        assert sp.edges == [(1, 2), (2, 3), (3, 4), (5, 6)]
        assert be.koenig_JG(G) is None
        with pytest.raises(PreconditionError):
            be.special_sop_JG(G)


class TestSemiPaths:
    def test_from_edges(self):
        sp = be.semipath_from_edges([(3, 2), (1, 2), (5, 6)])
        assert sp.paths == ((1, 2, 3), (5, 6))
        assert sp.length == 3

    @pytest.mark.parametrize("edges", [[(1, 2), (2, 3), (1, 3)], [(1, 2), (1, 3), (1, 4)]])
    def test_rejects_cycles_and_branching(self, edges):
        assert not be.is_semipath(edges)

    def test_small_path_sop(self):
        sop = be.special_sop_JG(path_graph(3))
        assert form_strings(3, sop.forms) == ["y2 - x1", "y3 - x2", "x3", "y1"]
        assert sop.zero_dimensional

    def test_complete_intersection_exactly_for_semipaths(self):
        # every edge subset of K5, every relabeling: coprime initials exist iff linear forest
        n = 5
        all_edges = list(combinations(range(1, n + 1), 2))
        orders = [be.relabeled_order(n, p) for p in permutations(range(1, n + 1))]
        for mask in range(1 << len(all_edges)):
            E = [e for k, e in enumerate(all_edges) if mask >> k & 1]
            gens = [be.f(n, i, j) for i, j in E]
            coprime_somewhere = False
            for order in orders:
                used = 0
                ok = True
                for g in gens:
                    m = g.initial_term(order).support_mask
                    if m & used:
                        ok = False
                        break
                    used |= m
                if ok:
                    coprime_somewhere = True
                    break
            assert coprime_somewhere == is_linear_forest(E) == be.is_semipath(E)
            # height of J_P equals its number of generators exactly for linear forests
            H = SimpleGraph.from_edges(n, E)
            assert (2 * n - be.dim_quotient(H) == len(E)) == is_linear_forest(E)


@pytest.mark.parametrize("G", ALL_CONNECTED, ids=graph_id)
def test_binomial_edge_properties(G):
    n = G.n
    d = be.dim_quotient(G)
    assert d == dim_binomial_edge(n, G.edges)
    assert d == be.dim_via_groebner(G)
    sp = be.max_semipath(G)
    assert is_linear_forest(sp.edges) and all(G.has_edge(*e) for e in sp.edges)
    assert sp.length <= 2 * n - d
    cert = be.koenig_JG(G, d)
    assert (cert is not None) == (sp.length == 2 * n - d)
    traceable = be.is_traceable(G) is not None
    assert traceable == has_spanning_paths(n, G.edges)
    if traceable:
        assert cert is not None
    if cert is not None:
        chosen = [G.edges[i] for i in cert.generator_indices]
        assert is_linear_forest(chosen) and len(chosen) == 2 * n - d
        used = 0
        for u in cert.initials:
            assert not u.support_mask & used
            used |= u.support_mask
        if be.is_unmixed_JG(G):
            assert traceable
    # coprime standard initials only ever come from linear forests
    if len(G.edges) <= 10:
        std = be.standard_order(n)
        masks = [be.f(n, i, j).initial_term(std).support_mask for i, j in G.edges]
        for sel in range(1, 1 << len(G.edges)):
            idx = [k for k in range(len(G.edges)) if sel >> k & 1]
            used, ok = 0, True
            for k in idx:
                if masks[k] & used:
                    ok = False
                    break
                used |= masks[k]
            if ok:
                assert is_linear_forest([G.edges[k] for k in idx])


KOENIG_SMALL = [G for G in ALL_CONNECTED if 2 <= G.n <= 6 and be.koenig_JG(G) is not None]


@pytest.mark.parametrize("G", KOENIG_SMALL, ids=graph_id)
def test_special_sop_is_zero_dimensional(G):
    sop = be.special_sop_JG(G)
    assert sop.zero_dimensional and len(sop.forms) == sop.dimension
    assert all(isinstance(fm, LinearForm) for fm in sop.forms)
    verdict = be.cm_verdict_JG(G)
    if verdict.cm:
        assert be.is_unmixed_JG(G)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_paths_and_complete_graphs_are_cm(n):
    assert be.cm_verdict_JG(path_graph(n)).cm
    assert be.cm_verdict_JG(complete_graph(n)).cm


@pytest.mark.parametrize(
    "n, expected",
    [(3, [(2,)]), (4, [(2,), (3,)]), (5, [(2,), (3,), (4,), (2, 4)])],
)
def test_canonical_components_of_complete_graphs(n, expected):
    comps = be.canonical_components_JG(complete_graph(n))
    assert comps.path == (tuple(range(1, n + 1)),)
    assert [c.T for c in comps.components] == expected


def test_canonical_components_need_traceable():
    with pytest.raises(PreconditionError):
        be.canonical_components_JG(WHISKERED_PENTAGON)
