"""Combinatorics of monomial ideals.

Minimal primes of a monomial ideal are the primes generated by minimal
transversals ("covers") of the supports of its generators.  Height,
unmixedness, multiplicity and Stanley-Reisner complexes all reduce to that
enumeration, with polarization taking care of non-squarefree generators.
Vertex sets are handled internally as integer bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .algebra import IdealPresentation, Monomial

REISNER_MAX_VERTICES = 14


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _minimal_masks(masks: Iterable[int]) -> list[int]:
    uniq = sorted(set(masks), key=lambda m: (m.bit_count(), m))
    keep: list[int] = []
    for m in uniq:
        if not any(k & m == k for k in keep):
            keep.append(m)
    return keep


def _cover_key(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def minimal_cover_masks(supports: Sequence[int]) -> list[int]:
    """All inclusion-minimal transversals of the given nonempty support masks."""
    if any(s == 0 for s in supports):
        raise ValueError("an empty support means the ideal is the unit ideal")
    edges = _minimal_masks(supports)
    found: list[int] = []

    def is_minimal(cover: int) -> bool:
        for v in bits(cover):
            smaller = cover & ~(1 << v)
            if all(e & smaller for e in edges):
                return False
        return True

    def search(cover: int, forbidden: int) -> None:
        unhit = None
        for e in edges:
            if not e & cover:
                avail = e & ~forbidden
                if not avail:
                    return
                if unhit is None or avail.bit_count() < (unhit & ~forbidden).bit_count():
                    unhit = e
        if unhit is None:
            if is_minimal(cover):
                found.append(cover)
            return
        # branch on each available vertex; later branches may not reuse earlier ones
        tried = 0
        for v in bits(unhit & ~forbidden):
            search(cover | (1 << v), forbidden | tried)
            tried |= 1 << v

    search(0, 0)
    return sorted(set(found), key=_cover_key)


def minimal_covers(supports: Iterable[Iterable[int]]) -> list[tuple[int, ...]]:
    """Inclusion-minimal vertex sets meeting every support, sorted lexicographically."""
    masks = [to_mask(s) for s in supports]
    if not masks:
        return [()]
    return [_cover_key(m) for m in minimal_cover_masks(masks)]


def min_cover_size(supports: Sequence[int]) -> int:
    """Size of a smallest transversal, by branch and bound."""
    if any(s == 0 for s in supports):
        raise ValueError("an empty support means the ideal is the unit ideal")
    edges = _minimal_masks(supports)
    if not edges:
        return 0
    best = [bin(to_mask(v for e in edges for v in bits(e))).count("1")]

    def lower_bound(unhit: list[int]) -> int:
        # greedily pick pairwise disjoint edges; each needs its own vertex
        used = 0
        count = 0
        for e in sorted(unhit, key=lambda m: m.bit_count()):
            if not e & used:
                used |= e
                count += 1
        return count

    def search(cover: int, size: int) -> None:
        unhit = [e for e in edges if not e & cover]
        if not unhit:
            best[0] = min(best[0], size)
            return
        if size + lower_bound(unhit) >= best[0]:
            return
        e = min(unhit, key=lambda m: m.bit_count())
        for v in bits(e):
            search(cover | (1 << v), size + 1)

    search(0, 0)
    return best[0]


def radical_supports(ideal: IdealPresentation) -> list[int]:
    return [m.support_mask for m in ideal.monomials()]


def height_monomial(ideal: IdealPresentation) -> int:
    """Height of a monomial ideal: the smallest cover of the generator supports."""
    supports = radical_supports(ideal)
    if any(s == 0 for s in supports):
        raise ValueError("the unit ideal has no height")
    return min_cover_size(supports)


@dataclass(frozen=True)
class Polarization:
    ideal: IdealPresentation
    var_map: dict  # (original index, copy number starting at 1) -> new index

    def polarize_monomial(self, m: Monomial) -> Monomial:
        out = [0] * self.ideal.n
        for i, e in enumerate(m):
            for j in range(1, e + 1):
                out[self.var_map[(i, j)]] = 1
        return Monomial(out)


def polarize(ideal: IdealPresentation) -> Polarization:
    """Replace x_i^a by x_{i,1}...x_{i,a}.  Squarefree ideals come back unchanged."""
    mons = ideal.monomials()
    names = ideal.var_names
    var_map: dict[tuple[int, int], int] = {}
    new_names: list[str] = []
    for i in range(ideal.n):
        top = max([m[i] for m in mons] + [1])
        for j in range(1, top + 1):
            var_map[(i, j)] = len(new_names)
            new_names.append(names[i] if top == 1 else f"{names[i]}_{j}")
    pol = Polarization(IdealPresentation(len(new_names), (), tuple(new_names)), var_map)
    gens = [pol.polarize_monomial(m) for m in mons]
    return Polarization(IdealPresentation.monomial_ideal(len(new_names), gens, new_names), var_map)


def is_unmixed(ideal: IdealPresentation) -> bool:
    """True iff every associated prime of S/I has the same height.

    Polarization turns embedded primes into minimal primes, so comparing the
    sizes of the minimal covers of the polarized supports suffices.
    """
    if ideal.is_zero:
        return True
    pol = polarize(ideal).ideal
    supports = radical_supports(pol)
    if any(s == 0 for s in supports):
        raise ValueError("the unit ideal is not unmixed or mixed")
    sizes = {c.bit_count() for c in minimal_cover_masks(supports)}
    return len(sizes) == 1


def multiplicity(ideal: IdealPresentation) -> int:
    """e(S/I): number of minimal primes of minimal height of the polarization."""
    if ideal.is_zero:
        return 1
    pol = polarize(ideal).ideal
    supports = radical_supports(pol)
    if any(s == 0 for s in supports):
        raise ValueError("the unit ideal has no multiplicity")
    covers = minimal_cover_masks(supports)
    h = min(c.bit_count() for c in covers)
    return sum(1 for c in covers if c.bit_count() == h)


@dataclass(frozen=True)
class SimplicialComplex:
    n: int
    facets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for f in self.facets:
            if any(not 0 <= v < self.n for v in f):
                raise ValueError(f"facet {f} has vertices outside [0, {self.n})")
        masks = {to_mask(f) for f in self.facets}
        maximal = [m for m in masks if not any(o != m and o & m == m for o in masks)]
        object.__setattr__(self, "facets", tuple(sorted(_cover_key(m) for m in maximal)))

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.facets) - 1 if self.facets else -2

    def face_masks(self) -> set[int]:
        faces: set[int] = set()
        for f in self.facets:
            fm = to_mask(f)
            if fm in faces:
                continue
            sub = fm
            while True:
                faces.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & fm
        return faces

    def vertices(self) -> list[int]:
        return sorted({v for f in self.facets for v in f})

    def link(self, face: Iterable[int]) -> "SimplicialComplex":
        fm = to_mask(face)
        link_facets = [to_mask(f) & ~fm for f in self.facets if to_mask(f) & fm == fm]
        return SimplicialComplex(self.n, tuple(_cover_key(m) for m in link_facets))

    def to_dict(self) -> dict:
        return {"n": self.n, "facets": [[v + 1 for v in f] for f in self.facets]}


def stanley_reisner_complex(ideal: IdealPresentation) -> SimplicialComplex:
    """The complex whose faces support no generator; facets are complements of minimal covers."""
    mons = ideal.monomials()
    if not all(m.is_squarefree() for m in mons):
        raise ValueError("Stanley-Reisner complexes need a squarefree ideal")
    full = (1 << ideal.n) - 1
    if not mons:
        return SimplicialComplex(ideal.n, (tuple(range(ideal.n)),))
    covers = minimal_cover_masks(radical_supports(ideal))
    return SimplicialComplex(ideal.n, tuple(_cover_key(full & ~c) for c in covers))


def face_count(cx: SimplicialComplex) -> int:
    """Number of faces, the empty face included."""
    if not cx.facets:
        return 0
    return len(cx.face_masks())


def alexander_dual_generators(covers: Iterable[Iterable[int]], n: int) -> list[Monomial]:
    """The squarefree monomials x_C, one per cover C; an empty cover gives 1."""
    return [Monomial.from_support(n, c) for c in covers]


def rational_rank(rows: list[list[int]]) -> int:
    """Rank over Q of an integer matrix, by fraction-free elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank]
        for i in range(rank + 1, len(m)):
            a = m[i][col]
            if a:
                row = [p[col] * x - a * y for x, y in zip(m[i], p)]
                g = 0
                for x in row:
                    g = gcd(g, x)
                m[i] = [x // g for x in row] if g > 1 else row
        rank += 1
        if rank == len(m):
            break
    return rank


def reduced_betti_numbers(cx: SimplicialComplex) -> dict[int, int]:
    """Reduced Betti numbers over Q, indexed from -1."""
    faces = cx.face_masks()
    if not faces:
        return {}
    by_dim: dict[int, list[int]] = {}
    for f in faces:
        by_dim.setdefault(f.bit_count() - 1, []).append(f)
    top = max(by_dim)
    for k in by_dim:
        by_dim[k].sort()
    index = {k: {f: i for i, f in enumerate(fs)} for k, fs in by_dim.items()}
    ranks = {}
    for k in range(0, top + 1):
        rows = []
        lower = index[k - 1]
        for f in by_dim[k]:
            row = [0] * len(lower)
            for pos, v in enumerate(bits(f)):
                row[lower[f & ~(1 << v)]] = -1 if pos % 2 else 1
            rows.append(row)
        ranks[k] = rational_rank(rows)
    betti = {}
    for k in range(-1, top + 1):
        betti[k] = len(by_dim[k]) - ranks.get(k, 0) - ranks.get(k + 1, 0)
    return betti


def reisner_cm_oracle(cx: SimplicialComplex) -> bool:
    """Cohen-Macaulayness of K[cx] in characteristic 0 via Reisner's criterion."""
    if len(cx.vertices()) > REISNER_MAX_VERTICES:
        raise ValueError(f"complex has more than {REISNER_MAX_VERTICES} vertices")
    for face in sorted(cx.face_masks()):
        lk = cx.link(bits(face))
        d = lk.dimension
        betti = reduced_betti_numbers(lk)
        if any(betti.get(i, 0) for i in range(-1, d)):
            return False
    return True


def independence_complex(n: int, edges: Iterable[tuple[int, int]], vertices: Iterable[int] | None = None) -> SimplicialComplex:
    """Independent sets of a graph on 0-based vertices, restricted to ``vertices``."""
    verts = sorted(set(range(n) if vertices is None else vertices))
    edge_masks = [to_mask(e) for e in edges]
    if not edge_masks:
        return SimplicialComplex(n, (tuple(verts),))
    vmask = to_mask(verts)
    covers = minimal_cover_masks(edge_masks)
    return SimplicialComplex(n, tuple(_cover_key(vmask & ~c) for c in covers))


__all__ = [
    "Polarization",
    "SimplicialComplex",
    "alexander_dual_generators",
    "bits",
    "face_count",
    "height_monomial",
    "independence_complex",
    "is_unmixed",
    "min_cover_size",
    "minimal_cover_masks",
    "minimal_covers",
    "multiplicity",
    "polarize",
    "reduced_betti_numbers",
    "reisner_cm_oracle",
    "stanley_reisner_complex",
    "to_mask",
]
