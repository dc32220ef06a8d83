"""König-type detection, attached sequences and Cohen-Macaulay tests.

An ideal of height h is of König type when h members of a minimal generating
set have pairwise coprime initial terms u_1..u_h.  The certificate records
those terms together with the attached linear sequence C: every variable
dividing no u_j, and for each u_j the differences x_k - x_i between each
variable of supp(u_j) and the smallest one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Mapping, Sequence

from .algebra import (
    Binomial,
    IdealPresentation,
    LinearForm,
    Monomial,
    MonomialOrder,
    Order,
    WeightOrder,
    minimalize_monomials,
    monomials_regular_sequence,
)
from .groebner import buchberger, initial_ideal, is_zero_dimensional, quotient_dimension, quotient_length
from .simplicial import (
    alexander_dual_generators,
    bits,
    height_monomial,
    is_unmixed,
    minimal_cover_masks,
    minimal_covers,
    multiplicity,
    polarize,
    radical_supports,
)

MAX_MODIFICATION_FORMS = 20


class PreconditionError(ValueError):
    """Input outside the class an operation is defined for."""


@dataclass(frozen=True)
class KoenigCertificate:
    n: int
    generator_indices: tuple[int, ...]
    generators: tuple[Binomial, ...]
    order: Order
    initials: tuple[Monomial, ...]
    A: tuple[int, ...]
    B: tuple[tuple[int, ...], ...]
    anchors: tuple[int, ...]
    C: tuple[LinearForm, ...]
    verified_minimal: bool = False

    @property
    def height(self) -> int:
        return len(self.initials)

    def to_dict(self, names: Sequence[str] | None = None) -> dict:
        names = list(names) if names is not None else [f"x{i + 1}" for i in range(self.n)]
        return {
            "generator_indices": list(self.generator_indices),
            "generators": [g.normalized(self.order).to_string(names) for g in self.generators],
            "order": self.order.to_dict(),
            "initials": [u.to_string(names) for u in self.initials],
            "A": [names[i] for i in self.A],
            "B": [[names[i] for i in b] for b in self.B],
            "anchors": [names[i] for i in self.anchors],
            "C": [c.to_string(names) for c in self.C],
            "verified_minimal": self.verified_minimal,
        }


def ideal_height(ideal: IdealPresentation, order: Order | None = None) -> int:
    if ideal.is_monomial:
        if ideal.is_zero:
            return 0
        return height_monomial(ideal)
    order = order or MonomialOrder.degrevlex(ideal.n)
    return ideal.n - quotient_dimension(ideal, order)


def _initials_minimal(ideal: IdealPresentation, order: Order) -> bool:
    ins = [g.initial_term(order) for g in ideal.generators]
    for i, u in enumerate(ins):
        for j, v in enumerate(ins):
            if i != j and u.divides(v):
                return False
    return True


def certificate_from_family(
    n: int, family: Sequence[Binomial], order: Order, indices: Sequence[int] = (), verified_minimal: bool = False
) -> KoenigCertificate:
    """Build A, B_j, anchors and C for a family with pairwise coprime initials."""
    initials = [g.initial_term(order) for g in family]
    used = 0
    for u in initials:
        if u.degree == 0:
            raise PreconditionError("a unit initial term")
        if u.support_mask & used:
            raise PreconditionError("initial terms are not pairwise coprime")
        used |= u.support_mask
    B = tuple(tuple(sorted(u.support)) for u in initials)
    anchors = tuple(b[0] for b in B)
    A = tuple(i for i in range(n) if not used >> i & 1)
    C = [LinearForm(a) for a in A]
    for b, i in zip(B, anchors):
        C.extend(LinearForm(k, i) for k in b if k != i)
    return KoenigCertificate(
        n=n,
        generator_indices=tuple(indices),
        generators=tuple(family),
        order=order,
        initials=tuple(initials),
        A=A,
        B=B,
        anchors=anchors,
        C=tuple(C),
        verified_minimal=verified_minimal,
    )


def attached_sequence(
    ideal: IdealPresentation, gens: Sequence[int], order: Order, height: int | None = None
) -> KoenigCertificate:
    """Certificate for the chosen generators; checks coprimality and the count."""
    h = ideal_height(ideal, order) if height is None else height
    if len(gens) != h:
        raise PreconditionError(f"{len(gens)} generators chosen but the height is {h}")
    family = [ideal.generators[i] for i in gens]
    return certificate_from_family(ideal.n, family, order, gens, _initials_minimal(ideal, order))


def _coprime_families(masks: Sequence[int], h: int, limit: int = 1):
    """Index sets of size h with pairwise disjoint masks, in scan order."""
    out: list[tuple[int, ...]] = []
    chosen: list[int] = []
    nonzero = [m for m in masks if m]
    smallest = min((m.bit_count() for m in nonzero), default=0)
    universe = 0
    for m in nonzero:
        universe |= m

    def rec(start: int, used: int) -> bool:
        if len(chosen) == h:
            out.append(tuple(chosen))
            return len(out) >= limit
        # each further member needs `smallest` fresh variables
        if (universe & ~used).bit_count() < (h - len(chosen)) * smallest:
            return False
        for i in range(start, len(masks)):
            if len(masks) - i < h - len(chosen):
                break
            m = masks[i]
            if m == 0 or m & used:
                continue
            chosen.append(i)
            if rec(i + 1, used | m):
                return True
            chosen.pop()
        return False

    rec(0, 0)
    return out


def koenig_monomial(ideal: IdealPresentation) -> KoenigCertificate | None:
    """Search the minimal generators for height-many pairwise coprime ones."""
    if not ideal.is_monomial:
        raise PreconditionError("koenig_monomial needs a monomial ideal")
    n = ideal.n
    order = MonomialOrder.lex(n)
    if ideal.is_zero:
        return certificate_from_family(n, [], order, [], True)
    mons = ideal.monomials()
    minimal = set(minimalize_monomials(mons))
    idx = [i for i, m in enumerate(mons) if m in minimal]
    h = height_monomial(ideal)
    found = _coprime_families([mons[i].support_mask for i in idx], h)
    if not found:
        return None
    chosen = [idx[i] for i in found[0]]
    return attached_sequence(ideal, chosen, order, height=h)


# -- realizability of a selection of initial terms ------------------------------


@dataclass(frozen=True)
class Realizability:
    feasible: bool
    order: WeightOrder | None
    rows: tuple[tuple[int, ...], ...]  # chosen - other, one per constrained generator
    conflict: tuple[int, ...] = ()  # rows whose positive combination is 0 > 0

    def inequalities(self, which: Sequence[int] | None = None) -> list[str]:
        rows = self.rows if which is None else [self.rows[i] for i in which]
        return [format_inequality(r) for r in rows]

    def conflict_inequalities(self) -> list[str]:
        return self.inequalities(self.conflict)

    def __bool__(self) -> bool:
        return self.feasible


def format_inequality(row: Sequence[int], var: str = "w") -> str:
    """``(1, 0, -1)`` -> ``"w1 > w3"``."""

    def side(terms):
        parts = [(f"{c}*" if c != 1 else "") + f"{var}{i + 1}" for i, c in terms]
        return " + ".join(parts) if parts else "0"

    pos = [(i, c) for i, c in enumerate(row) if c > 0]
    neg = [(i, -c) for i, c in enumerate(row) if c < 0]
    return f"{side(pos)} > {side(neg)}"


def _normalize_row(row: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    for c in row:
        if c:
            s = abs(c)
            return tuple(x / s for x in row)
    return row


def strict_feasibility(rows: Sequence[Sequence[int]], n: int):
    """Decide a.w > 0 for all rows together with w_i > 0, by Fourier-Motzkin.

    Returns ``(weights, None)`` when feasible and ``(None, conflict)`` otherwise,
    where ``conflict`` lists the input rows whose positive combination collapses
    to ``0 > 0`` (positivity constraints are not listed).
    """
    m = len(rows)
    system: dict[tuple[Fraction, ...], frozenset[int]] = {}

    def add(sys, row, prov):
        row = _normalize_row(row)
        old = sys.get(row)
        if old is None or (len(prov), sorted(prov)) < (len(old), sorted(old)):
            sys[row] = prov

    for k, r in enumerate(rows):
        add(system, tuple(Fraction(c) for c in r), frozenset([k]))
    for i in range(n):
        add(system, tuple(Fraction(int(j == i)) for j in range(n)), frozenset([m + i]))

    stages: list[list[tuple[Fraction, ...]]] = []
    for j in range(n):
        zero = [(r, p) for r, p in system.items() if not any(r)]
        if zero:
            break
        pos = [(r, p) for r, p in system.items() if r[j] > 0]
        neg = [(r, p) for r, p in system.items() if r[j] < 0]
        rest = {r: p for r, p in system.items() if r[j] == 0}
        stages.append([r for r, _ in pos] + [r for r, _ in neg])
        for rp, pp in pos:
            for rn, pn in neg:
                comb = tuple(-rn[j] * a + rp[j] * b for a, b in zip(rp, rn))
                add(rest, comb, pp | pn)
        system = rest
    zero = [(r, p) for r, p in system.items() if not any(r)]
    if zero:
        best = min((p for _, p in zero), key=lambda p: (len(p), sorted(p)))
        return None, tuple(sorted(k for k in best if k < m))

    w = [Fraction(0)] * n
    for j in reversed(range(n)):
        lo: Fraction | None = None
        hi: Fraction | None = None
        for r in stages[j]:
            rest_val = sum((r[k] * w[k] for k in range(j + 1, n)), Fraction(0))
            bound = -rest_val / r[j]
            if r[j] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is None and hi is None:
            w[j] = Fraction(1)
        elif hi is None:
            w[j] = lo + 1
        elif lo is None:
            w[j] = hi - 1
        else:
            w[j] = (lo + hi) / 2
    scale = lcm(*(x.denominator for x in w))
    w = [x * scale for x in w]
    for r in rows:
        assert sum(c * x for c, x in zip(r, w)) > 0
    assert all(x > 0 for x in w)
    return tuple(w), None


def check_realizability(
    ideal: IdealPresentation, choices: Mapping[int, Monomial] | Sequence[Monomial | None]
) -> Realizability:
    """Can one monomial order pick ``choices[i]`` as the initial term of generator i?"""
    if not isinstance(choices, Mapping):
        choices = {i: c for i, c in enumerate(choices) if c is not None}
    rows = []
    for i, chosen in sorted(choices.items()):
        g = ideal.generators[i]
        if chosen not in g.terms:
            raise PreconditionError(f"{chosen} is not a term of generator {i}")
        if g.trail is None:
            continue
        other = g.trail if chosen == g.lead else g.lead
        rows.append(tuple(a - b for a, b in zip(chosen, other)))
    weights, conflict = strict_feasibility(rows, ideal.n)
    if weights is None:
        return Realizability(False, None, tuple(rows), conflict)
    order = WeightOrder(weights, MonomialOrder.degrevlex(ideal.n))
    return Realizability(True, order, tuple(rows))


def realizable_initial_selection(
    ideal: IdealPresentation, choices: Mapping[int, Monomial] | Sequence[Monomial | None]
) -> WeightOrder | None:
    return check_realizability(ideal, choices).order


# -- König-type search for binomial ideals ---------------------------------------


@dataclass(frozen=True)
class KoenigSearch:
    certificate: KoenigCertificate | None
    height: int
    rejected: tuple[Realizability, ...] = field(default=())  # coprime selections no order realizes

    @property
    def is_koenig(self) -> bool:
        return self.certificate is not None


def _is_graded(ideal: IdealPresentation) -> bool:
    return all(g.is_homogeneous() for g in ideal.generators)


def search_koenig(ideal: IdealPresentation, order: Order | None = None, height: int | None = None) -> KoenigSearch:
    """König-type search, keeping the selections rejected as unrealizable.

    ``height`` overrides the computed height; it exists for exploring claims
    about a particular sequence length and is never needed for correctness.
    """
    n = ideal.n
    h = ideal_height(ideal, order) if height is None else height
    if h == 0:
        o = order or MonomialOrder.lex(n)
        return KoenigSearch(certificate_from_family(n, [], o, [], True), 0)
    gens = list(ideal.generators)
    if order is not None:
        cands = list(gens)
        origin = list(range(len(gens)))
        if _is_graded(ideal) and not ideal.is_monomial:
            # degree-d0 elements of I with distinct initials extend to a minimal generating set
            d0 = min(g.degree for g in gens)
            for g in buchberger(ideal, order).elements:
                if g.degree == d0 and g.is_homogeneous() and not any(g.same_element(c) for c in cands):
                    cands.append(g)
                    origin.append(-1)
        ins = [c.initial_term(order) for c in cands]
        found = _coprime_families([u.support_mask for u in ins], h)
        if not found:
            return KoenigSearch(None, h)
        fam = found[0]
        cert = certificate_from_family(
            n, [cands[i] for i in fam], order, [origin[i] for i in fam], _initials_minimal(ideal, order)
        )
        return KoenigSearch(cert, h)

    # no order given: try term selections over the given generators
    terms = [[(i, t) for t in g.terms if t.degree > 0] for i, g in enumerate(gens)]
    flat = [it for ts in terms for it in ts]
    rejected: list[Realizability] = []
    chosen: list[tuple[int, Monomial]] = []

    def rec(start: int, used: int, gen_used: set[int]) -> KoenigCertificate | None:
        if len(chosen) == h:
            rz = check_realizability(ideal, dict(chosen))
            if not rz.feasible:
                rejected.append(rz)
                return None
            idx = [i for i, _ in chosen]
            return certificate_from_family(n, [gens[i] for i in idx], rz.order, idx, _initials_minimal(ideal, rz.order))
        for k in range(start, len(flat)):
            i, t = flat[k]
            if i in gen_used or t.support_mask & used:
                continue
            chosen.append((i, t))
            gen_used.add(i)
            res = rec(k + 1, used | t.support_mask, gen_used)
            gen_used.discard(i)
            chosen.pop()
            if res is not None:
                return res
        return None

    return KoenigSearch(rec(0, 0, set()), h, tuple(rejected))


def koenig_graded(
    ideal: IdealPresentation, order: Order | None = None, height: int | None = None
) -> KoenigCertificate | None:
    return search_koenig(ideal, order, height).certificate


# -- modifications and Cohen-Macaulay tests ----------------------------------------


@dataclass(frozen=True)
class Modification:
    B: tuple[LinearForm, ...]
    substitution: dict

    @classmethod
    def of(cls, forms: Sequence[LinearForm]) -> "Modification":
        sub: dict[int, int | None] = {}
        for f in forms:
            sub.update(f.substitution())
        return cls(tuple(forms), sub)


def modify(ideal: IdealPresentation, cert: KoenigCertificate, B: Sequence[LinearForm]) -> IdealPresentation:
    """Substitute x_k -> x_i for each x_k - x_i in B and x_i -> 0 for each x_i in B."""
    if not ideal.is_monomial:
        raise PreconditionError("modifications are defined for monomial ideals")
    for f in B:
        if f not in cert.C:
            raise PreconditionError(f"{f} is not in the attached sequence")
    mod = Modification.of(B)
    images = []
    for m in ideal.monomials():
        img = m.substitute(mod.substitution)
        if img is not None:
            images.append(img)
    return IdealPresentation.monomial_ideal(ideal.n, minimalize_monomials(images), ideal.names)


@dataclass(frozen=True)
class CMVerdict:
    cm: bool | None
    method: str
    failing: tuple[LinearForm, ...] | None = None
    checked: int = 0
    multiplicity: int | None = None
    length: int | None = None
    zero_dimensional: bool | None = None

    def to_dict(self, names: Sequence[str] | None = None) -> dict:
        out: dict = {"cm": self.cm, "method": self.method}
        if self.failing is not None:
            out["failing_B"] = [f.to_string(names) for f in self.failing]
        if self.method == "modifications":
            out["checked"] = self.checked
        if self.multiplicity is not None:
            out["multiplicity"] = self.multiplicity
        if self.length is not None:
            out["length"] = self.length
        if self.zero_dimensional is not None:
            out["zero_dimensional"] = self.zero_dimensional
        return out


def cm_test_IB(ideal: IdealPresentation, cert: KoenigCertificate) -> CMVerdict:
    """CM iff every modification I_B is unmixed; subsets scanned by size, then position."""
    C = cert.C
    if len(C) > MAX_MODIFICATION_FORMS:
        raise PreconditionError(f"{len(C)} attached forms exceed the limit of {MAX_MODIFICATION_FORMS}")
    checked = 0
    for size in range(len(C) + 1):
        for B in combinations(C, size):
            checked += 1
            if not is_unmixed(modify(ideal, cert, B)):
                return CMVerdict(False, "modifications", tuple(B), checked)
    return CMVerdict(True, "modifications", None, checked)


def cm_test_multiplicity(ideal: IdealPresentation, cert: KoenigCertificate, order: Order | None = None) -> CMVerdict:
    """Compare e(S/I) with the length of S/(I + C)."""
    order = order or cert.order
    if ideal.is_monomial:
        e = multiplicity(ideal)
    else:
        e = multiplicity(initial_ideal(buchberger(ideal, order)))
    gens = list(ideal.generators)
    for f in cert.C:
        b = f.as_binomial(ideal.n)
        if not any(b.same_element(g) for g in gens):
            gens.append(b)
    joined = ideal.with_generators(gens)
    if not is_zero_dimensional(joined, order):
        return CMVerdict(None, "multiplicity", multiplicity=e, zero_dimensional=False)
    length = quotient_length(joined, order)
    return CMVerdict(e == length, "multiplicity", multiplicity=e, length=length, zero_dimensional=True)


def very_well_covered_check(ideal: IdealPresentation) -> bool:
    """|union of supports of the polarization| == height * d."""
    mons = ideal.monomials()
    degrees = {m.degree for m in mons}
    if len(degrees) != 1:
        raise PreconditionError(f"generators of mixed degrees {sorted(degrees)}")
    d = degrees.pop()
    pol = polarize(ideal).ideal
    union = 0
    for m in pol.monomials():
        union |= m.support_mask
    return union.bit_count() == height_monomial(pol) * d


# -- linkage -------------------------------------------------------------------------


@dataclass(frozen=True)
class LinkageReport:
    colon_components: tuple  # min(J) minus min(I): the primes cut out by J : I
    unmixed_components: tuple  # min(J) intersected with min(I)
    colon_generators: tuple[Monomial, ...] | None = None


def linkage_components(primes_J: Sequence, primes_I: Sequence) -> tuple[list, list]:
    """Split the minimal primes of J by membership in min(I)."""
    inside = set(primes_I)
    return [p for p in primes_J if p not in inside], [p for p in primes_J if p in inside]


def intersect_variable_primes(primes: Sequence[Sequence[int]], n: int) -> list[Monomial]:
    """Minimal generators of the intersection of primes generated by variables."""
    if not primes:
        return [Monomial.one(n)]
    if any(len(p) == 0 for p in primes):
        raise PreconditionError("the zero ideal is not a prime generated by variables here")
    return alexander_dual_generators(minimal_covers(primes), n)


def unmixed_part_via_linkage(ideal: IdealPresentation, J: IdealPresentation) -> LinkageReport:
    """Monomial case: J generated by a regular sequence inside I of the same height."""
    if not (ideal.is_monomial and J.is_monomial):
        raise PreconditionError("only the monomial case is handled here")
    jm = J.monomials()
    if jm and not all(any(g.divides(u) for g in ideal.monomials()) for u in jm):
        raise PreconditionError("J is not contained in I")
    if jm and not all(len(set(u.support)) == u.degree for u in jm):
        # squarefree initials keep the minimal primes of J combinatorial
        raise PreconditionError("J must be generated by squarefree monomials")
    if jm and not monomials_regular_sequence(jm):
        raise PreconditionError("J is not generated by a regular sequence")
    if ideal_height(J) != ideal_height(ideal):
        raise PreconditionError("J and I have different heights")
    min_J = [tuple(bits(c)) for c in minimal_cover_masks(radical_supports(J))] if jm else [()]
    min_I = [tuple(bits(c)) for c in minimal_cover_masks(radical_supports(ideal))]
    colon, unmixed = linkage_components(min_J, min_I)
    return LinkageReport(tuple(colon), tuple(unmixed), tuple(intersect_variable_primes(colon, ideal.n)))
