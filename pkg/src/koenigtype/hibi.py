"""Posets, distributive lattices of poset ideals and Hibi ideals.

Poset elements are numbered 1..m in every public interface. Lattice elements
are poset ideals stored as bitsets (bit ``k`` is poset element ``k + 1``) and
listed in a canonical order: by cardinality, then by bitset value. Lattice
element number ``i`` (1-based) carries the variable ``x_i``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx

from .algebra import Binomial, IdealPresentation, Monomial, MonomialOrder
from .graphs import SimpleGraph, tau
from .groebner import buchberger, initial_ideal
from .koenig import (
    KoenigCertificate,
    PreconditionError,
    certificate_from_family,
    ideal_height,
    intersect_variable_primes,
    koenig_graded,
)
from .simplicial import bits

MAX_POSET = 20
MAX_CELL_LATTICE = 16


class PosetFormatError(ValueError):
    pass


class NotPureError(PreconditionError):
    pass


# -- posets --------------------------------------------------------------------------


@dataclass(frozen=True)
class Poset:
    """Finite poset given by its cover pairs ``(lower, upper)``."""

    m: int
    covers: tuple[tuple[int, int], ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.m < 0:
            raise PosetFormatError("negative element count")
        covers = tuple(sorted({(int(b), int(a)) for b, a in self.covers}))
        for b, a in covers:
            if not (1 <= a <= self.m and 1 <= b <= self.m) or a == b:
                raise PosetFormatError(f"bad cover pair ({b}, {a})")
        object.__setattr__(self, "covers", covers)
        if self.names is not None:
            if len(self.names) != self.m:
                raise PosetFormatError("one name per element is required")
            object.__setattr__(self, "names", tuple(self.names))
        below = self._strictly_below  # raises on cycles
        for b, a in covers:
            # a cover may not be implied by a longer path
            for c in bits(below[a - 1]):
                if below[c] >> (b - 1) & 1:
                    raise PosetFormatError(f"({b}, {a}) is not a cover relation")

    @cached_property
    def _strictly_below(self) -> list[int]:
        lower: list[list[int]] = [[] for _ in range(self.m)]
        for b, a in self.covers:
            lower[a - 1].append(b - 1)
        below: list[int | None] = [None] * self.m
        state = [0] * self.m

        def visit(v: int) -> int:
            if state[v] == 2:
                return below[v]
            if state[v] == 1:
                raise PosetFormatError("cover relation has a cycle")
            state[v] = 1
            mask = 0
            for u in lower[v]:
                mask |= (1 << u) | visit(u)
            below[v] = mask
            state[v] = 2
            return mask

        for v in range(self.m):
            visit(v)
        return below  # type: ignore[return-value]

    def label(self, k: int) -> str:
        return self.names[k - 1] if self.names else str(k)

    def less(self, a: int, b: int) -> bool:
        return bool(self._strictly_below[b - 1] >> (a - 1) & 1)

    def comparable(self, a: int, b: int) -> bool:
        return a == b or self.less(a, b) or self.less(b, a)

    def down_mask(self, a: int) -> int:
        """Bitset of the principal ideal generated by ``a``."""
        return self._strictly_below[a - 1] | (1 << (a - 1))

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        lower: list[list[int]] = [[] for _ in range(self.m + 1)]
        for b, a in self.covers:
            lower[a].append(b)
        return tuple(tuple(x) for x in lower)

    @cached_property
    def ranks(self) -> tuple[int, ...]:
        """rank(x) = length of the longest chain ending at x (index 0 unused)."""
        r = [0] * (self.m + 1)
        for v in self._topological():
            r[v] = max((r[u] + 1 for u in self.lower_covers[v]), default=0)
        return tuple(r)

    def _topological(self) -> list[int]:
        return sorted(range(1, self.m + 1), key=lambda v: self._strictly_below[v - 1].bit_count())

    @property
    def rank(self) -> int:
        return max(self.ranks[1:], default=-1)

    def levels(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.rank + 1)]
        for v in range(1, self.m + 1):
            out[self.ranks[v]].append(v)
        return out

    def maximal_elements(self) -> list[int]:
        has_upper = {b for b, _ in self.covers}
        return [v for v in range(1, self.m + 1) if v not in has_upper]

    def is_pure(self) -> bool:
        """All maximal chains have the same length."""
        shortest = [0] * (self.m + 1)
        for v in self._topological():
            shortest[v] = min((shortest[u] + 1 for u in self.lower_covers[v]), default=0)
        d = self.rank
        return all(shortest[v] == d and self.ranks[v] == d for v in self.maximal_elements())

    def to_dict(self) -> dict:
        out: dict = {"elements": self.m, "covers": [list(c) for c in self.covers]}
        if self.names:
            out["names"] = list(self.names)
        return out


def parse_poset(text: str) -> Poset:
    """Read ``{"elements": m, "covers": [[b, a], ...]}`` where each pair means b < a."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PosetFormatError(f"invalid JSON at position {exc.pos}: {exc.msg}") from exc
    if not isinstance(data, dict) or "elements" not in data:
        raise PosetFormatError('expected an object with "elements" and "covers"')
    try:
        m = int(data["elements"])
        covers = [(int(p[0]), int(p[1])) for p in data.get("covers", [])]
    except (TypeError, ValueError, IndexError) as exc:
        raise PosetFormatError(f"malformed poset: {exc}") from exc
    return Poset(m, tuple(covers), data.get("names"))


def chain_poset(k: int, start: int = 1) -> list[tuple[int, int]]:
    return [(start + i, start + i + 1) for i in range(k - 1)]


def chain(k: int) -> Poset:
    return Poset(k, tuple(chain_poset(k)))


def antichain(k: int) -> Poset:
    return Poset(k, ())


def two_chains(a: int, b: int) -> Poset:
    """Disjoint union of a chain with a elements and a chain with b elements."""
    return Poset(a + b, tuple(chain_poset(a) + chain_poset(b, a + 1)))


# -- thinness, incomparability and the Dilworth conditions ----------------------------


def incomparability_graph(P: Poset) -> SimpleGraph:
    edges = [(a, b) for a, b in combinations(range(1, P.m + 1), 2) if not P.comparable(a, b)]
    return SimpleGraph.from_edges(P.m, edges)


@dataclass(frozen=True)
class ThinCheck:
    thin: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.thin


def is_thin(P: Poset) -> ThinCheck:
    """Look for an antichain of three elements."""
    for t in combinations(range(1, P.m + 1), 3):
        if not any(P.comparable(a, b) for a, b in combinations(t, 2)):
            return ThinCheck(False, t)
    return ThinCheck(True)


def chain_cover_number(P: Poset) -> int:
    """Fewest chains covering P, via a maximum matching in the comparability split graph."""
    if P.m == 0:
        return 0
    B = nx.Graph()
    left = [("lo", v) for v in range(1, P.m + 1)]
    B.add_nodes_from(left, bipartite=0)
    B.add_nodes_from((("hi", v) for v in range(1, P.m + 1)), bipartite=1)
    for a in range(1, P.m + 1):
        for b in range(1, P.m + 1):
            if P.less(a, b):
                B.add_edge(("lo", a), ("hi", b))
    matching = nx.bipartite.hopcroft_karp_matching(B, top_nodes=left)
    return P.m - len(matching) // 2


def _nx_graph(G: SimpleGraph) -> nx.Graph:
    H = nx.Graph()
    H.add_nodes_from(G.vertices)
    H.add_edges_from(G.edges)
    return H


def _require_pure(P: Poset) -> None:
    if not P.is_pure():
        raise NotPureError("the poset is not pure")


@dataclass(frozen=True)
class TauReport:
    exhaustive: int
    formula: int

    @property
    def agree(self) -> bool:
        return self.exhaustive == self.formula


def tau_incom(P: Poset) -> TauReport:
    """Vertex cover number of incom(P) by search and by n - (rank + 1)."""
    _require_pure(P)
    return TauReport(tau(incomparability_graph(P)), P.m - (P.rank + 1))


@dataclass(frozen=True)
class DilworthReport:
    thin: bool
    small_levels: bool
    two_chains: bool
    bipartite_incom: bool

    @property
    def agree(self) -> bool:
        return len({self.thin, self.small_levels, self.two_chains, self.bipartite_incom}) == 1

    def to_dict(self) -> dict:
        return {
            "thin": self.thin,
            "levels_at_most_2": self.small_levels,
            "at_most_two_chains": self.two_chains,
            "bipartite_incom": self.bipartite_incom,
            "agree": self.agree,
        }


def dilworth_equivalences(P: Poset) -> DilworthReport:
    _require_pure(P)
    return DilworthReport(
        thin=is_thin(P).thin,
        small_levels=all(len(level) <= 2 for level in P.levels()),
        two_chains=chain_cover_number(P) <= 2,
        bipartite_incom=nx.is_bipartite(_nx_graph(incomparability_graph(P))),
    )


# -- distributive lattices -----------------------------------------------------------


def _canonical_key(mask: int) -> tuple[int, int]:
    return (mask.bit_count(), mask)


@dataclass(frozen=True)
class DistributiveLattice:
    """J(P): the poset ideals of P ordered by inclusion."""

    base: Poset
    elements: tuple[int, ...]
    index: dict = field(compare=False, repr=False)

    @classmethod
    def of(cls, base: Poset, masks: Iterable[int]) -> "DistributiveLattice":
        elems = tuple(sorted(set(masks), key=_canonical_key))
        return cls(base, elems, {m: i + 1 for i, m in enumerate(elems)})

    @property
    def size(self) -> int:
        return len(self.elements)

    def mask(self, i: int) -> int:
        return self.elements[i - 1]

    def leq(self, i: int, j: int) -> bool:
        a, b = self.mask(i), self.mask(j)
        return a & b == a

    def comparable(self, i: int, j: int) -> bool:
        return self.leq(i, j) or self.leq(j, i)

    def meet(self, i: int, j: int) -> int:
        return self.index[self.mask(i) & self.mask(j)]

    def join(self, i: int, j: int) -> int:
        return self.index[self.mask(i) | self.mask(j)]

    def covers(self, i: int, j: int) -> bool:
        """True when j covers i."""
        return self.leq(i, j) and self.mask(j).bit_count() == self.mask(i).bit_count() + 1

    def rank_of(self, i: int) -> int:
        return self.mask(i).bit_count()

    @property
    def rank(self) -> int:
        return self.base.m

    def cover_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(1, self.size + 1) for j in range(1, self.size + 1) if self.covers(i, j)]

    def as_poset(self) -> Poset:
        return Poset(self.size, tuple(self.cover_pairs()))

    def join_irreducibles(self) -> list[int]:
        """Elements covering exactly one element."""
        count = [0] * (self.size + 1)
        for _, j in self.cover_pairs():
            count[j] += 1
        return [j for j in range(1, self.size + 1) if count[j] == 1]

    def incomparable_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in combinations(range(1, self.size + 1), 2) if not self.comparable(i, j)]

    def element_label(self, i: int) -> list[str]:
        return [self.base.label(k + 1) for k in bits(self.mask(i))]

    def labeling(self) -> list[dict]:
        return [{"index": i, "ideal": self.element_label(i)} for i in range(1, self.size + 1)]

    def variable_names(self) -> list[str]:
        return [f"x{i}" for i in range(1, self.size + 1)]


def poset_ideals(P: Poset) -> DistributiveLattice:
    if P.m > MAX_POSET:
        raise PreconditionError(f"{P.m} poset elements exceed the limit of {MAX_POSET}")
    order = P._topological()
    found: list[int] = []

    def rec(k: int, mask: int) -> None:
        if k == len(order):
            found.append(mask)
            return
        v = order[k]
        rec(k + 1, mask)
        below = P._strictly_below[v - 1]
        if below & mask == below:
            rec(k + 1, mask | (1 << (v - 1)))

    rec(0, 0)
    return DistributiveLattice.of(P, found)


def boolean_lattice(n: int) -> DistributiveLattice:
    return poset_ideals(antichain(n))


def chain_lattice(k: int) -> DistributiveLattice:
    """A chain with k + 1 elements."""
    return poset_ideals(chain(k))


def segre_lattice(n: int, m: int) -> DistributiveLattice:
    """Ideals of a chain with n - 1 elements beside a chain with m - 1 elements."""
    if n < 2 or m < 2:
        raise PreconditionError("segre_lattice needs n, m >= 2")
    return poset_ideals(two_chains(n - 1, m - 1))


# -- Hibi ideals ---------------------------------------------------------------------


@dataclass(frozen=True)
class HibiIdeal:
    lattice: DistributiveLattice
    ideal: IdealPresentation
    order: MonomialOrder
    pairs: tuple[tuple[int, int], ...]

    def generator(self, i: int, j: int) -> Binomial:
        return self.ideal.generators[self.pairs.index((min(i, j), max(i, j)))]


def reverse_order(L: DistributiveLattice) -> MonomialOrder:
    """degrevlex in which lattice-larger elements give larger variables."""
    return MonomialOrder.degrevlex(L.size, tuple(range(L.size - 1, -1, -1)))


def hibi_ideal(L: DistributiveLattice) -> HibiIdeal:
    n = L.size
    pairs = tuple(L.incomparable_pairs())
    gens = []
    for i, j in pairs:
        lead = Monomial.variable(n, i - 1) * Monomial.variable(n, j - 1)
        trail = Monomial.variable(n, L.meet(i, j) - 1) * Monomial.variable(n, L.join(i, j) - 1)
        gens.append(Binomial(lead, trail))
    ideal = IdealPresentation(n, tuple(gens), tuple(L.variable_names()))
    return HibiIdeal(L, ideal, reverse_order(L), pairs)


def hibi_height(L: DistributiveLattice) -> int:
    return L.size - L.rank - 1


def verify_hibi_gb(L: DistributiveLattice) -> bool:
    """The generators f_ij form the reduced Gröbner basis with initials x_i x_j."""
    H = hibi_ideal(L)
    if not H.pairs:
        return True
    for (i, j), g in zip(H.pairs, H.ideal.generators):
        expected = Monomial.variable(L.size, i - 1) * Monomial.variable(L.size, j - 1)
        if g.initial_term(H.order) != expected:
            return False
    closure = buchberger(H.ideal, H.order, reduced=False)
    if closure.stats["added"] != 0:
        return False
    reduced = buchberger(H.ideal, H.order).elements
    return len(reduced) == len(H.pairs) and all(
        any(r.same_element(g) for g in H.ideal.generators) for r in reduced
    )


def revlex_witness(L: DistributiveLattice) -> KoenigCertificate | None:
    """The family f_{r, r'} over the two-element levels, when L is thin."""
    P = L.as_poset()
    if not is_thin(P):
        return None
    H = hibi_ideal(L)
    family, indices = [], []
    for level in P.levels():
        if len(level) == 2:
            idx = H.pairs.index(tuple(level))
            family.append(H.ideal.generators[idx])
            indices.append(idx)
    if len(family) != hibi_height(L):
        return None
    return certificate_from_family(L.size, family, H.order, indices, True)


@dataclass(frozen=True)
class HibiKoenigReport:
    thin: bool
    bipartite_incom: bool
    koenig_revlex: bool
    height: int
    certificate: KoenigCertificate | None
    thin_witness: tuple[int, ...] | None = None

    @property
    def agree(self) -> bool:
        return self.thin == self.bipartite_incom == self.koenig_revlex

    def to_dict(self) -> dict:
        out = {
            "thin": self.thin,
            "bipartite_incom": self.bipartite_incom,
            "koenig_revlex": self.koenig_revlex,
            "height": self.height,
            "agree": self.agree,
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }
        if self.thin_witness is not None:
            out["antichain"] = list(self.thin_witness)
        return out


def koenig_hibi(L: DistributiveLattice) -> HibiKoenigReport:
    """Thinness, bipartiteness of incom(L) and a König search under the reverse order."""
    P = L.as_poset()
    thin = is_thin(P)
    bip = nx.is_bipartite(_nx_graph(incomparability_graph(P)))
    H = hibi_ideal(L)
    h = hibi_height(L)
    searched = koenig_graded(H.ideal, H.order, height=h)
    witness = revlex_witness(L)
    if witness is not None and searched is None:
        raise AssertionError("the level witness was missed by the search")
    return HibiKoenigReport(thin.thin, bip, searched is not None, h, witness or searched, thin.witness)


@dataclass(frozen=True)
class KoenigBound:
    size: int
    join_irreducibles: tuple[int, ...]

    @property
    def holds(self) -> bool:
        return self.size <= 2 * (len(self.join_irreducibles) + 1)

    def __bool__(self) -> bool:
        return self.holds


def koenig_bound(L: DistributiveLattice) -> KoenigBound:
    """Necessary condition |L| <= 2(|T| + 1) for König type under any order."""
    return KoenigBound(L.size, tuple(L.join_irreducibles()))


def koenig_b3_lex(L: DistributiveLattice) -> KoenigCertificate | None:
    if L.base.m != 3 or L.base.covers:
        raise PreconditionError("expected the Boolean lattice on three atoms")
    H = hibi_ideal(L)
    return koenig_graded(H.ideal, MonomialOrder.lex(L.size))


# -- cells, admissible sets and the canonical module ---------------------------------


@dataclass(frozen=True)
class Cell:
    bottom: int
    left: int
    right: int
    top: int

    @property
    def corners(self) -> tuple[int, int, int, int]:
        return (self.bottom, self.left, self.right, self.top)

    @property
    def corner_mask(self) -> int:
        out = 0
        for c in self.corners:
            out |= 1 << (c - 1)
        return out

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            tuple(sorted(e))  # type: ignore[misc]
            for e in ((self.left, self.bottom), (self.left, self.top), (self.right, self.bottom), (self.right, self.top))
        )

    def to_list(self) -> list[int]:
        return sorted(self.corners)


def cells(L: DistributiveLattice) -> list[Cell]:
    out = []
    for a, b in L.incomparable_pairs():
        lo, hi = L.meet(a, b), L.join(a, b)
        if L.covers(lo, a) and L.covers(lo, b) and L.covers(a, hi) and L.covers(b, hi):
            out.append(Cell(lo, a, b, hi))
    return out


def _require_thin_small(L: DistributiveLattice) -> None:
    if L.size > MAX_CELL_LATTICE:
        raise PreconditionError(f"{L.size} lattice elements exceed the limit of {MAX_CELL_LATTICE}")
    if not is_thin(L.as_poset()):
        raise PreconditionError("the lattice is not thin")


def _admissible(W: int, cs: Sequence[Cell]) -> bool:
    for c in cs:
        if W & c.corner_mask and not any(W >> (a - 1) & 1 and W >> (b - 1) & 1 for a, b in c.edges):
            return False
    return True


def _mask_key(mask: int) -> tuple[int, tuple[int, ...]]:
    return (mask.bit_count(), tuple(bits(mask)))


@dataclass(frozen=True)
class CellStructure:
    cells: tuple[Cell, ...]
    admissible: tuple[tuple[int, ...], ...]

    def is_admissible(self, W: Iterable[int]) -> bool:
        mask = 0
        for w in W:
            mask |= 1 << (w - 1)
        return _admissible(mask, self.cells)


def cells_and_admissible_sets(L: DistributiveLattice) -> CellStructure:
    _require_thin_small(L)
    cs = cells(L)
    found = [W for W in range(1 << L.size) if _admissible(W, cs)]
    found.sort(key=_mask_key)
    return CellStructure(tuple(cs), tuple(tuple(b + 1 for b in bits(W)) for W in found))


def _cell_components(cs: Sequence[Cell]) -> list[int]:
    """Element masks of the groups of cells linked through shared corners."""
    groups: list[int] = []
    for c in cs:
        mask = c.corner_mask
        keep = []
        for g in groups:
            if g & mask:
                mask |= g
            else:
                keep.append(g)
        groups = keep + [mask]
    return sorted(groups, key=_mask_key)


def _sublattice_rank(L: DistributiveLattice, mask: int) -> int:
    sizes = [L.mask(i + 1).bit_count() for i in bits(mask)]
    return max(sizes) - min(sizes)


@dataclass(frozen=True)
class CanonicalComponent:
    W: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]  # element sets of the untouched cell groups
    height: int

    @property
    def is_monomial(self) -> bool:
        return not self.blocks

    def to_dict(self) -> dict:
        return {
            "W": [f"x{w}" for w in self.W],
            "blocks": [[f"x{v}" for v in b] for b in self.blocks],
            "height": self.height,
        }


@dataclass(frozen=True)
class CanonicalModuleReport:
    height: int
    components: tuple[CanonicalComponent, ...]
    intersection: tuple[Monomial, ...] | None

    @property
    def gorenstein(self) -> bool:
        """No component survives, so the colon ideal is the unit ideal."""
        return not self.components

    def to_dict(self) -> dict:
        n = None
        names = None
        if self.intersection:
            n = self.intersection[0].n
            names = [f"x{i}" for i in range(1, n + 1)]
        return {
            "height": self.height,
            "components": [c.to_dict() for c in self.components],
            "intersection": None
            if self.intersection is None
            else [m.to_string(names) for m in self.intersection],
            "omega_is_ring": self.gorenstein,
        }


def canonical_module_hibi(L: DistributiveLattice) -> CanonicalModuleReport:
    """Components (W, J_W) of the colon ideal whose height equals height I_L."""
    _require_thin_small(L)
    cs = cells(L)
    h = hibi_height(L)
    comps = []
    for W in sorted(range(1, 1 << L.size), key=_mask_key):
        if not _admissible(W, cs):
            continue
        untouched = [c for c in cs if not c.corner_mask & W]
        groups = _cell_components(untouched)
        ht = W.bit_count() + sum(g.bit_count() - _sublattice_rank(L, g) - 1 for g in groups)
        if ht == h:
            blocks = tuple(tuple(b + 1 for b in bits(g)) for g in groups)
            comps.append(CanonicalComponent(tuple(b + 1 for b in bits(W)), blocks, ht))
    intersection = None
    if all(c.is_monomial for c in comps):
        primes = [[w - 1 for w in c.W] for c in comps]
        intersection = tuple(sorted(intersect_variable_primes(primes, L.size), key=lambda m: (m.degree, m.support)))
    return CanonicalModuleReport(h, tuple(comps), intersection)


def groebner_height(L: DistributiveLattice) -> int:
    """Height of I_L from the minimal covers of its initial ideal."""
    H = hibi_ideal(L)
    if not H.pairs:
        return 0
    return ideal_height(initial_ideal(buchberger(H.ideal, H.order)))
