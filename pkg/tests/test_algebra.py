from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from koenigtype.algebra import (
    AmbientMismatchError,
    Binomial,
    IdealPresentation,
    LinearForm,
    Monomial,
    MonomialOrder,
    ParseError,
    WeightOrder,
    minimalize_monomials,
    monomials_regular_sequence,
    parse_ideal,
)

exps = st.lists(st.integers(0, 3), min_size=4, max_size=4)


def M(*e):
    return Monomial(e)


class TestMonomial:
    def test_arithmetic(self):
        a, b = M(1, 2, 0), M(0, 1, 1)
        assert a * b == M(1, 3, 1)
        assert (a * b) / b == a
        assert a.lcm(b) == M(1, 2, 1)
        assert a.gcd(b) == M(0, 1, 0)
        assert a.degree == 3 and a.support == {0, 1}
        assert not a.is_coprime(b)
        assert M(1, 0, 0).is_coprime(M(0, 0, 2))

    def test_division_requires_divisibility(self):
        with pytest.raises(ValueError):
            M(1, 0) / M(0, 1)

    def test_ambient_mismatch(self):
        with pytest.raises(AmbientMismatchError):
            M(1, 0) * M(1, 0, 0)

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            Monomial((1, -1))

    def test_substitute(self):
        assert M(1, 2, 0).substitute({1: 0}) == M(3, 0, 0)
        assert M(1, 2, 0).substitute({1: None}) is None
        assert M(1, 0, 0).substitute({1: None}) == M(1, 0, 0)

    @given(exps, exps)
    def test_lcm_gcd_product(self, a, b):
        a, b = Monomial(a), Monomial(b)
        assert a.lcm(b) * a.gcd(b) == a * b
        assert a.divides(a.lcm(b)) and a.gcd(b).divides(a)
        assert a.is_coprime(b) == (a.gcd(b).degree == 0)


class TestOrders:
    def test_lex_and_degrevlex(self):
        lex = MonomialOrder.lex(3)
        drl = MonomialOrder.degrevlex(3)
        assert lex.compare(M(1, 0, 0), M(0, 5, 0)) == 1
        assert drl.compare(M(1, 0, 0), M(0, 5, 0)) == -1
        # degrevlex: x1*x3 < x2^2 since x3 is the smallest variable
        assert drl.compare(M(1, 0, 1), M(0, 2, 0)) == -1
        assert lex.compare(M(1, 0, 1), M(0, 2, 0)) == 1

    def test_priority(self):
        o = MonomialOrder.lex(2, [1, 0])
        assert o.compare(M(0, 1), M(5, 0)) == 1
        with pytest.raises(ValueError):
            MonomialOrder.lex(3, [0, 0, 1])

    def test_weight_order(self):
        w = WeightOrder((1, 2, 2), MonomialOrder.degrevlex(3))
        assert w.compare(M(0, 1, 0), M(1, 0, 0)) == 1
        with pytest.raises(ValueError):
            WeightOrder((0, 1, 1), MonomialOrder.degrevlex(3))

    @given(exps, exps, exps, st.permutations(range(4)), st.sampled_from(["lex", "degrevlex"]))
    def test_order_axioms(self, a, b, c, perm, kind):
        o = MonomialOrder(kind, tuple(perm))
        a, b, c = Monomial(a), Monomial(b), Monomial(c)
        assert o.compare(a, b) == -o.compare(b, a)
        assert (o.compare(a, b) == 0) == (a == b)
        # multiplicative
        assert o.compare(a * c, b * c) == o.compare(a, b)
        # well-order: 1 is the smallest monomial
        assert o.compare(Monomial.one(4), a) <= 0


class TestBinomialAndForms:
    def test_initial_and_normalize(self):
        f = Binomial(M(0, 2), M(1, 1))
        lex = MonomialOrder.lex(2)
        assert f.initial_term(lex) == M(1, 1)
        assert f.normalized(lex).lead == M(1, 1)
        assert f.same_element(Binomial(M(1, 1), M(0, 2)))
        assert f.is_homogeneous()

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            Binomial(M(1, 1), M(1, 1))

    def test_linear_form(self):
        f = LinearForm(2, 0)
        assert f.to_string(["x1", "x2", "x3"]) == "x3 - x1"
        assert f.as_binomial(3).terms == (M(0, 0, 1), M(1, 0, 0))
        with pytest.raises(ValueError):
            LinearForm(0, 2)

    def test_dict_round_trip(self):
        I = parse_ideal("x1*x2 - x2^2, x1*x3")
        assert IdealPresentation.from_dict(I.to_dict()) == I


class TestParser:
    def test_basic(self):
        I = parse_ideal("x1*x2 - x2*x3, x1*x3 - x3^2")
        assert I.n == 3
        assert I.generators[1] == Binomial(M(1, 0, 1), M(0, 0, 2))
        assert I.to_text() == "x1*x2 - x2*x3, x1*x3 - x3^2"

    def test_natural_name_order(self):
        I = parse_ideal("x10*x2 - x1^2")
        assert I.var_names == ["x1", "x2", "x10"]

    def test_sign_forms(self):
        assert parse_ideal("-x1 + x2^2").generators[0] == Binomial(M(0, 2), M(1, 0))

    @pytest.mark.parametrize(
        "text, pos",
        [("x1 + x2", 0), ("x1*x2 - 2*x3", 8), ("x1 - x2 - x3", 8), ("x1 # x2", 3), ("x1 - x1", 0)],
    )
    def test_errors_carry_positions(self, text, pos):
        with pytest.raises(ParseError) as exc:
            parse_ideal(text)
        assert exc.value.position == pos

    def test_duplicate_generator(self):
        with pytest.raises(ParseError):
            parse_ideal("x1 - x2, x2 - x1")

    @given(st.lists(st.tuples(exps, exps), min_size=1, max_size=4))
    def test_print_parse_round_trip(self, pairs):
        gens = []
        for a, b in pairs:
            a, b = Monomial(a), Monomial(b)
            g = Binomial(a) if a == b else Binomial(a, b)
            if not any(g.same_element(h) for h in gens):
                gens.append(g)
        I = IdealPresentation(4, tuple(gens), ("x1", "x2", "x3", "x4"))
        assert parse_ideal(I.to_text(), I.var_names) == I


def test_minimalize_and_regular_sequence():
    ms = [M(1, 1, 0), M(1, 0, 0), M(0, 1, 1), M(1, 0, 0)]
    assert minimalize_monomials(ms) == [M(1, 0, 0), M(0, 1, 1)]
    assert monomials_regular_sequence([M(2, 0, 0), M(0, 1, 1)])
    assert not monomials_regular_sequence([M(1, 1, 0), M(0, 1, 1)])
