from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from koenigtype.algebra import IdealPresentation, Monomial, parse_ideal
from koenigtype.simplicial import (
    SimplicialComplex,
    face_count,
    height_monomial,
    independence_complex,
    is_unmixed,
    min_cover_size,
    minimal_covers,
    multiplicity,
    polarize,
    reduced_betti_numbers,
    reisner_cm_oracle,
    stanley_reisner_complex,
    to_mask,
)
from oracles import all_minimal_covers

supports = st.lists(st.sets(st.integers(0, 6), min_size=1, max_size=3), min_size=1, max_size=6)


def edge_ideal(n, edges):
    return IdealPresentation.monomial_ideal(n, [Monomial.from_support(n, (a - 1, b - 1)) for a, b in edges])


class TestCovers:
    @given(supports)
    def test_minimal_covers_match_subset_scan(self, sups):
        assert minimal_covers(sups) == all_minimal_covers(7, sups)

    @given(supports)
    def test_min_cover_size(self, sups):
        expected = min(len(c) for c in all_minimal_covers(7, sups))
        assert min_cover_size([to_mask(s) for s in sups]) == expected

    def test_empty_input(self):
        assert minimal_covers([]) == [()]

    def test_height_of_cycle(self):
        assert height_monomial(edge_ideal(4, [(1, 2), (2, 3), (3, 4), (1, 4)])) == 2


class TestPolarization:
    def test_polarize(self):
        I = parse_ideal("x1^2*x2, x2^2")
        P = polarize(I).ideal
        assert P.n == 4
        assert all(m.is_squarefree() for m in P.monomials())
        assert P.var_names == ["x1_1", "x1_2", "x2_1", "x2_2"]

    def test_embedded_prime_detected(self):
        # (x1^2, x1*x2) = (x1) cap (x1^2, x2) has an embedded component
        assert not is_unmixed(parse_ideal("x1^2, x1*x2"))
        assert is_unmixed(parse_ideal("x1^2, x2^3"))

    def test_multiplicity(self):
        # C4: two minimal covers {1,3}, {2,4}
        assert multiplicity(edge_ideal(4, [(1, 2), (2, 3), (3, 4), (1, 4)])) == 2
        assert multiplicity(parse_ideal("x1^2, x2^3")) == 6


class TestComplexes:
    def test_stanley_reisner_of_path(self):
        cx = stanley_reisner_complex(edge_ideal(4, [(1, 2), (2, 3), (3, 4)]))
        assert cx.facets == ((0, 2), (0, 3), (1, 3))
        assert face_count(cx) == 8

    def test_betti_numbers_of_circle(self):
        circle = SimplicialComplex(4, ((0, 1), (1, 2), (2, 3), (0, 3)))
        assert reduced_betti_numbers(circle) == {-1: 0, 0: 0, 1: 1}

    def test_reisner_oracle(self):
        # two disjoint edges: disconnected 1-dimensional complex, not CM
        assert not reisner_cm_oracle(SimplicialComplex(4, ((0, 2), (1, 3))))
        # path: connected 1-dimensional complex, CM
        assert reisner_cm_oracle(SimplicialComplex(4, ((0, 2), (0, 3), (1, 3))))

    def test_empty_complex_dimension(self):
        assert SimplicialComplex(3, ()).dimension == -2

    def test_independence_complex(self):
        cx = independence_complex(3, [(0, 1), (1, 2)])
        assert cx.facets == ((0, 2), (1,))

    @given(st.integers(3, 7), st.data())
    def test_betti_euler_characteristic(self, n, data):
        edges = data.draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] < e[1]), max_size=8))
        cx = independence_complex(n, edges)
        faces = cx.face_masks()
        euler = sum((-1) ** (f.bit_count() - 1) for f in faces)
        assert euler == sum((-1) ** k * b for k, b in reduced_betti_numbers(cx).items())

    @given(st.integers(3, 7), st.data())
    def test_independence_faces_are_independent_sets(self, n, data):
        edges = data.draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] < e[1]), max_size=8))
        G = nx.Graph()
        G.add_nodes_from(range(n))
        G.add_edges_from(edges)
        faces = independence_complex(n, edges).face_masks()
        expected = {
            to_mask(s)
            for k in range(n + 1)
            for s in combinations(range(n), k)
            if not any(G.has_edge(a, b) for a, b in combinations(s, 2))
        }
        assert faces == expected


def test_reisner_rejects_large_complexes():
    with pytest.raises(ValueError):
        reisner_cm_oracle(SimplicialComplex(20, (tuple(range(20)),)))
