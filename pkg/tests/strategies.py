"""Hypothesis strategies shared by the property suites."""

from __future__ import annotations

from hypothesis import strategies as st

from koenigtype.algebra import Binomial, IdealPresentation, Monomial, MonomialOrder


def _monomial(draw, n: int, d: int) -> Monomial:
    e = [0] * n
    for i in draw(st.lists(st.integers(0, n - 1), min_size=d, max_size=d)):
        e[i] += 1
    return Monomial(e)


@st.composite
def binomial_ideals(draw, homogeneous: bool = False):
    """Up to 5 generators in at most 5 variables, degrees at most 3."""
    n = draw(st.integers(2, 5))
    k = draw(st.integers(1, 5))
    gens: list[Binomial] = []
    for _ in range(k):
        a = _monomial(draw, n, draw(st.integers(1, 3)))
        if not homogeneous and draw(st.booleans()):
            b = None
        else:
            b = _monomial(draw, n, a.degree if homogeneous else draw(st.integers(0, 3)))
            if b == a:
                b = None
        g = Binomial(a, b)
        if not any(g.same_element(h) for h in gens):
            gens.append(g)
    return IdealPresentation(n, tuple(gens))


@st.composite
def orders(draw, n: int):
    kind = draw(st.sampled_from(["lex", "degrevlex"]))
    return MonomialOrder(kind, tuple(draw(st.permutations(range(n)))))


def pure_difference(g: Binomial, order) -> bool:
    if any(e < 0 for e in g.lead):
        return False
    if g.trail is None:
        return True
    return all(e >= 0 for e in g.trail) and g.trail != g.lead and order.compare(g.lead, g.trail) > 0
