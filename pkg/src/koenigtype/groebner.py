"""Binomial division, S-polynomials and Buchberger's algorithm.

Dividing a pure-difference binomial by another one replaces a term ``w*u``
by ``w*v``; the result is again a pure-difference binomial (or a monomial,
or zero).  Buchberger's algorithm therefore never leaves the class of
binomials and never performs any field arithmetic.
"""

from __future__ import annotations

import heapq
import os
from dataclasses import dataclass, field
from typing import Sequence

from .algebra import Binomial, IdealPresentation, Monomial, Order, minimalize_monomials
from .simplicial import height_monomial

MAX_REDUCTION_STEPS = 10**6
MAX_PAIRS = 10**5


class BudgetExceeded(RuntimeError):
    """A step budget ran out; on desk-scale inputs this signals a bug."""


def budget_scale() -> float:
    try:
        return float(os.environ.get("KOENIG_BUDGET", "1"))
    except ValueError:
        return 1.0


@dataclass(frozen=True)
class ReductionStep:
    divisor: int
    multiplier: Monomial
    term: str  # "lead" or "trail": which term of the current remainder was divided


@dataclass(frozen=True)
class ReductionTrace:
    start: Binomial
    steps: tuple[ReductionStep, ...]
    result: Binomial | None  # None is the zero polynomial

    @property
    def is_zero(self) -> bool:
        return self.result is None

    def replay(self, divisors: Sequence[Binomial], order: Order) -> Binomial | None:
        f: Binomial | None = self.start.normalized(order)
        for step in self.steps:
            if f is None:
                raise ValueError("trace continues after reaching zero")
            g = divisors[step.divisor].normalized(order)
            term = f.lead if step.term == "lead" else f.trail
            if term is None or step.multiplier * g.lead != term:
                raise ValueError("trace step does not match the remainder")
            divided, f = divide_once(f, g, order, prefer=step.term)
            if not divided:
                raise ValueError("trace step is not a division")
        return f


def _divides(a: Sequence[int], b: Sequence[int]) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _make(a: Monomial | None, b: Monomial | None, order: Order) -> Binomial | None:
    """Binomial a - b (either may be None for zero), normalized."""
    if a is None and b is None:
        return None
    if a is None:
        return Binomial(b)
    if b is None:
        return Binomial(a)
    if a == b:
        return None
    return Binomial(a, b) if order.compare(a, b) > 0 else Binomial(b, a)


def divide_once(
    f: Binomial, g: Binomial, order: Order, prefer: str = "lead"
) -> tuple[bool, Binomial | None]:
    """One division step of ``f`` by ``g``.

    Returns ``(False, f)`` when neither term of ``f`` is divisible by the
    initial term of ``g``; otherwise ``(True, remainder)`` where a remainder of
    None is zero.
    """
    g = g.normalized(order)
    f = f.normalized(order)
    u, v = g.lead, g.trail
    slots = ("lead", "trail") if prefer == "lead" else ("trail", "lead")
    for slot in slots:
        term = f.lead if slot == "lead" else f.trail
        if term is None or not _divides(u, term):
            continue
        w = term / u
        replaced = None if v is None else w * v
        other = f.trail if slot == "lead" else f.lead
        return True, _make(replaced, other, order)
    return False, f


def reduce(f: Binomial, divisors: Sequence[Binomial], order: Order, max_steps: int | None = None) -> ReductionTrace:
    """Divide repeatedly, always by the first divisor that applies, lead term first."""
    limit = int((max_steps or MAX_REDUCTION_STEPS) * budget_scale())
    gs = [g.normalized(order) for g in divisors]
    start = f
    cur: Binomial | None = f.normalized(order)
    steps: list[ReductionStep] = []
    while cur is not None:
        progressed = False
        for slot in ("lead", "trail"):
            term = cur.lead if slot == "lead" else cur.trail
            if term is None:
                continue
            for idx, g in enumerate(gs):
                if _divides(g.lead, term):
                    steps.append(ReductionStep(idx, term / g.lead, slot))
                    _, cur = divide_once(cur, g, order, prefer=slot)
                    progressed = True
                    break
            if progressed:
                break
        if not progressed:
            break
        if len(steps) > limit:
            raise BudgetExceeded(f"reduction exceeded {limit} steps")
    return ReductionTrace(start, tuple(steps), cur)


def s_polynomial(f: Binomial, g: Binomial, order: Order) -> Binomial | None:
    """``v*trail(g) - u*trail(f)`` where ``u*ini(f) = v*ini(g) = lcm``."""
    f = f.normalized(order)
    g = g.normalized(order)
    lcm = f.lead.lcm(g.lead)
    u = lcm / f.lead
    v = lcm / g.lead
    a = None if g.trail is None else v * g.trail
    b = None if f.trail is None else u * f.trail
    return _make(a, b, order)


# -- Buchberger ----------------------------------------------------------------


class _Engine:
    """Tuple-level reduction used inside Buchberger; same strategy as ``reduce``."""

    def __init__(self, order: Order, limit: int):
        self.order = order
        self.key = order.key
        self.leads: list[tuple[int, ...]] = []
        self.trails: list[tuple[int, ...] | None] = []
        self.masks: list[int] = []
        self.steps = 0
        self.limit = limit

    @staticmethod
    def mask(t: Sequence[int]) -> int:
        m = 0
        for i, e in enumerate(t):
            if e:
                m |= 1 << i
        return m

    def add(self, lead, trail) -> None:
        self.leads.append(tuple(lead))
        self.trails.append(None if trail is None else tuple(trail))
        self.masks.append(self.mask(lead))

    def find_divisor(self, term, skip: int = -1) -> int:
        tm = self.mask(term)
        for idx, (gl, gm) in enumerate(zip(self.leads, self.masks)):
            if idx == skip or gm & ~tm:
                continue
            if _divides(gl, term):
                return idx
        return -1

    def normalize(self, a, b):
        if a is None and b is None:
            return None
        if a is None:
            return (b, None)
        if b is None:
            return (a, None)
        if a == b:
            return None
        return (a, b) if self.key(a) > self.key(b) else (b, a)

    def reduce(self, pair):
        while pair is not None:
            a, b = pair
            idx = self.find_divisor(a)
            slot = 0
            if idx < 0 and b is not None:
                idx = self.find_divisor(b)
                slot = 1
            if idx < 0:
                return pair
            self.steps += 1
            if self.steps > self.limit:
                raise BudgetExceeded(f"Buchberger exceeded {self.limit} reduction steps")
            term = a if slot == 0 else b
            gl, gt = self.leads[idx], self.trails[idx]
            replaced = None if gt is None else tuple(t - l + r for t, l, r in zip(term, gl, gt))
            pair = self.normalize(replaced, b if slot == 0 else a)
        return None


@dataclass(frozen=True)
class GroebnerBasis:
    order: Order
    elements: tuple[Binomial, ...]
    source: IdealPresentation
    provenance: tuple[tuple, ...] = field(default=(), compare=False)
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def n(self) -> int:
        return self.source.n

    def leading_monomials(self) -> list[Monomial]:
        return [g.lead for g in self.elements]

    def initial_ideal(self) -> IdealPresentation:
        return initial_ideal(self)

    def is_groebner(self) -> bool:
        """Buchberger's criterion, checked exhaustively on every pair."""
        els = list(self.elements)
        for i in range(len(els)):
            for j in range(i + 1, len(els)):
                s = s_polynomial(els[i], els[j], self.order)
                if s is not None and not reduce(s, els, self.order).is_zero:
                    return False
        return True

    def normal_form(self, f: Binomial) -> Binomial | None:
        return reduce(f, self.elements, self.order).result

    def to_dict(self) -> dict:
        names = self.source.var_names
        return {
            "order": self.order.to_dict(),
            "elements": [g.to_string(names) for g in self.elements],
            "initial_ideal": [m.to_string(names) for m in self.initial_ideal().monomials()],
        }


def _check_binomial(lead, trail) -> None:
    if any(e < 0 for e in lead) or (trail is not None and (any(e < 0 for e in trail) or trail == lead)):
        raise AssertionError("Buchberger produced something other than a pure-difference binomial")


def buchberger(
    ideal: IdealPresentation,
    order: Order,
    reduced: bool = True,
    coprime_criterion: bool = True,
) -> GroebnerBasis:
    """Close the generators under S-polynomial remainders.

    Pairs are processed by increasing lcm (degree first, then the order).
    Every element ever created is checked to be a monomial or a
    pure-difference binomial.
    """
    if order.n != ideal.n:
        raise ValueError(f"order on {order.n} variables, ideal in {ideal.n}")
    scale = budget_scale()
    engine = _Engine(order, int(MAX_REDUCTION_STEPS * scale))
    max_pairs = int(MAX_PAIRS * scale)
    provenance: list[tuple] = []
    key = order.key

    heap: list = []
    counter = 0

    def push_pairs(new: int) -> None:
        nonlocal counter
        nl = engine.leads[new]
        for i in range(new):
            lcm = tuple(max(a, b) for a, b in zip(engine.leads[i], nl))
            heapq.heappush(heap, (sum(lcm), key(lcm), i, new, counter))
            counter += 1

    for idx, g in enumerate(ideal.generators):
        g = g.normalized(order)
        _check_binomial(g.lead, g.trail)
        engine.add(g.lead, g.trail)
        provenance.append(("input", idx))
        push_pairs(len(engine.leads) - 1)

    processed = skipped = 0
    while heap:
        _, _, i, j, _ = heapq.heappop(heap)
        processed += 1
        if processed > max_pairs:
            raise BudgetExceeded(f"Buchberger exceeded {max_pairs} S-pairs")
        li, lj = engine.leads[i], engine.leads[j]
        if coprime_criterion and not (engine.masks[i] & engine.masks[j]):
            skipped += 1
            continue
        lcm = tuple(max(a, b) for a, b in zip(li, lj))
        ti, tj = engine.trails[i], engine.trails[j]
        a = None if tj is None else tuple(l - x + t for l, x, t in zip(lcm, lj, tj))
        b = None if ti is None else tuple(l - x + t for l, x, t in zip(lcm, li, ti))
        pair = engine.reduce(engine.normalize(a, b))
        if pair is None:
            continue
        _check_binomial(*pair)
        engine.add(*pair)
        provenance.append(("spair", i, j))
        push_pairs(len(engine.leads) - 1)

    added = len(engine.leads) - len(ideal.generators)
    elements = [
        Binomial(Monomial._raw(l), None if t is None else Monomial._raw(t))
        for l, t in zip(engine.leads, engine.trails)
    ]
    stats = {"pairs": processed, "coprime_skipped": skipped, "added": added, "reduction_steps": engine.steps}
    if reduced:
        elements = _reduce_basis(elements, order)
        provenance = [("reduced",)] * len(elements)
    return GroebnerBasis(order, tuple(elements), ideal, tuple(provenance), stats)


def _reduce_basis(elements: list[Binomial], order: Order) -> list[Binomial]:
    """Minimal, then fully interreduced basis, sorted by initial term."""
    minimal: list[Binomial] = []
    for i, g in enumerate(elements):
        dominated = False
        for j, h in enumerate(elements):
            if i == j:
                continue
            if _divides(h.lead, g.lead) and (h.lead != g.lead or j < i):
                dominated = True
                break
        if not dominated:
            minimal.append(g)
    engine = _Engine(order, int(MAX_REDUCTION_STEPS * budget_scale()))
    for g in minimal:
        engine.add(g.lead, g.trail)
    out = []
    for idx, g in enumerate(minimal):
        trail = g.trail
        while trail is not None:
            d = engine.find_divisor(trail, skip=idx)
            if d < 0:
                break
            gt = engine.trails[d]
            trail = None if gt is None else Monomial._raw(t - l + r for t, l, r in zip(trail, engine.leads[d], gt))
            engine.steps += 1
            if engine.steps > engine.limit:
                raise BudgetExceeded("interreduction exceeded the step budget")
        _check_binomial(g.lead, trail)
        out.append(Binomial(g.lead, trail))
    out.sort(key=lambda b: order.key(b.lead))
    return out


def initial_ideal(gb: GroebnerBasis) -> IdealPresentation:
    """Minimal monomial generators of the initial ideal."""
    mons = minimalize_monomials(gb.leading_monomials())
    mons.sort(key=gb.order.key)
    return IdealPresentation.monomial_ideal(gb.n, mons, gb.source.names)


def _initial(ideal: IdealPresentation, order: Order) -> IdealPresentation:
    if ideal.is_monomial:
        mons = minimalize_monomials(ideal.monomials())
        return IdealPresentation.monomial_ideal(ideal.n, mons, ideal.names)
    return initial_ideal(buchberger(ideal, order))


def count_standard_monomials(generators: Sequence[Monomial], n: int, degree: int) -> int:
    """Number of degree-``degree`` monomials divisible by none of ``generators``."""
    gens = [tuple(g) for g in generators]
    if any(sum(g) == 0 for g in gens):
        return 0
    exps = [0] * n

    def blocked(upto: int) -> bool:
        # a generator supported on variables < upto that divides the partial monomial
        for g in gens:
            ok = True
            for i in range(n):
                if g[i] > exps[i] or (g[i] and i >= upto):
                    ok = False
                    break
            if ok:
                return True
        return False

    def rec(i: int, remaining: int) -> int:
        if i == n - 1:
            exps[i] = remaining
            hit = blocked(n)
            exps[i] = 0
            return 0 if hit else 1
        total = 0
        for e in range(remaining + 1):
            exps[i] = e
            if not blocked(i + 1):
                total += rec(i + 1, remaining - e)
        exps[i] = 0
        return total

    if n == 0:
        return 1 if degree == 0 else 0
    return rec(0, degree)


def hilbert_function(ideal: IdealPresentation, order: Order, max_degree: int) -> list[int]:
    """h(0), ..., h(max_degree) of S/I, counted on S/ini(I)."""
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    ini = _initial(ideal, order).monomials()
    return [count_standard_monomials(ini, ideal.n, k) for k in range(max_degree + 1)]


def quotient_dimension(ideal: IdealPresentation, order: Order) -> int:
    """Krull dimension of S/I, as n - height(ini(I)); -1 for the unit ideal."""
    if ideal.is_zero:
        return ideal.n
    ini = _initial(ideal, order)
    if any(m.degree == 0 for m in ini.monomials()):
        return -1
    return ideal.n - height_monomial(ini)


def is_zero_dimensional(ideal: IdealPresentation, order: Order) -> bool:
    """True iff ini(I) contains a pure power of every variable."""
    ini = _initial(ideal, order).monomials()
    if any(m.degree == 0 for m in ini):
        return True
    pure = set()
    for m in ini:
        supp = m.support
        if len(supp) == 1:
            pure |= supp
    return len(pure) == ideal.n


def standard_monomials(ideal: IdealPresentation, order: Order) -> list[Monomial]:
    """All standard monomials of a zero-dimensional quotient."""
    if not is_zero_dimensional(ideal, order):
        raise ValueError("quotient is not zero-dimensional")
    ini = _initial(ideal, order).monomials()
    n = ideal.n
    if any(m.degree == 0 for m in ini):
        return []
    seen = {Monomial.one(n)}
    frontier = [Monomial.one(n)]
    while frontier:
        nxt = []
        for m in frontier:
            for i in range(n):
                c = Monomial._raw(e + (k == i) for k, e in enumerate(m))
                if c in seen or any(g.divides(c) for g in ini):
                    continue
                seen.add(c)
                nxt.append(c)
        frontier = nxt
    return sorted(seen, key=lambda m: (m.degree, order.key(m)))


def quotient_length(ideal: IdealPresentation, order: Order) -> int:
    """K-dimension of a zero-dimensional S/I."""
    return len(standard_monomials(ideal, order))
