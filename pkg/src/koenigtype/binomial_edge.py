"""Binomial edge ideals.

For a graph on [n] the ring has 2n variables, x_1..x_n at indices 0..n-1 and
y_1..y_n at indices n..2n-1, and J_G is generated by f_ij = x_i y_j - x_j y_i
for the edges {i, j} with i < j.  The default order is lex with
x_1 > ... > x_n > y_1 > ... > y_n.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .algebra import Binomial, IdealPresentation, LinearForm, Monomial, MonomialOrder
from .graphs import SimpleGraph
from .groebner import is_zero_dimensional, quotient_dimension
from .koenig import (
    CMVerdict,
    KoenigCertificate,
    PreconditionError,
    _coprime_families,
    certificate_from_family,
    cm_test_multiplicity,
)

MAX_VERTICES = 16


def _check(G: SimpleGraph) -> None:
    if G.n > MAX_VERTICES:
        raise PreconditionError(f"{G.n} vertices exceed the limit of {MAX_VERTICES}")


def variable_names(n: int) -> list[str]:
    return [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)]


def x(n: int, v: int) -> int:
    """Index of x_v (v is 1-based)."""
    return v - 1


def y(n: int, v: int) -> int:
    return n + v - 1


def f(n: int, i: int, j: int) -> Binomial:
    """x_i y_j - x_j y_i."""
    a = [0] * (2 * n)
    b = [0] * (2 * n)
    a[x(n, i)] += 1
    a[y(n, j)] += 1
    b[x(n, j)] += 1
    b[y(n, i)] += 1
    return Binomial(Monomial(a), Monomial(b))


def binomial_edge_ideal(G: SimpleGraph) -> IdealPresentation:
    return IdealPresentation(2 * G.n, tuple(f(G.n, i, j) for i, j in G.edges), tuple(variable_names(G.n)))


def standard_order(n: int) -> MonomialOrder:
    return MonomialOrder.lex(2 * n)


def relabeled_order(n: int, sigma: Sequence[int]) -> MonomialOrder:
    """lex with x_sigma(1) > ... > x_sigma(n) > y_sigma(1) > ... > y_sigma(n)."""
    return MonomialOrder.lex(2 * n, [x(n, v) for v in sigma] + [y(n, v) for v in sigma])


# -- cut sets ------------------------------------------------------------------


@dataclass(frozen=True)
class CutSetRecord:
    T: tuple[int, ...]
    c: int
    height: int
    is_cut_set: bool

    def to_dict(self) -> dict:
        return {"T": list(self.T), "c": self.c, "height": self.height}


def _component_counts(G: SimpleGraph) -> list[int]:
    return [len(G.components(mask)) for mask in range(1 << G.n)]


def cut_sets(G: SimpleGraph) -> list[CutSetRecord]:
    """All cut sets, ordered by size and then lexicographically."""
    _check(G)
    counts = _component_counts(G)
    out = []
    for mask in range(1 << G.n):
        c = counts[mask]
        ok = all(counts[mask & ~(1 << v)] < c for v in range(G.n) if mask >> v & 1)
        if ok:
            T = tuple(v + 1 for v in range(G.n) if mask >> v & 1)
            out.append(CutSetRecord(T, c, G.n + len(T) - c, True))
    out.sort(key=lambda r: (len(r.T), r.T))
    return out


def dim_quotient(G: SimpleGraph) -> int:
    """dim S/J_G = max over cut sets of n - |T| + c(T)."""
    return max(G.n - len(r.T) + r.c for r in cut_sets(G))


def is_unmixed_JG(G: SimpleGraph) -> bool:
    return len({r.height for r in cut_sets(G)}) == 1


@dataclass(frozen=True)
class PrimeComponent:
    """P_T: the variables x_i, y_i for i in T plus J of the complete graph on each block."""

    T: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]

    @property
    def height(self) -> int:
        return 2 * len(self.T) + sum(len(b) - 1 for b in self.blocks)

    def generators(self, n: int) -> IdealPresentation:
        gens = []
        for v in self.T:
            gens.append(Binomial(Monomial.variable(2 * n, x(n, v))))
            gens.append(Binomial(Monomial.variable(2 * n, y(n, v))))
        for b in self.blocks:
            for a in range(len(b)):
                for c in range(a + 1, len(b)):
                    gens.append(f(n, b[a], b[c]))
        return IdealPresentation(2 * n, tuple(gens), tuple(variable_names(n)))

    def to_string(self) -> str:
        parts = [f"x{v}, y{v}" for v in self.T]
        parts += ["J_K{" + ",".join(map(str, b)) + "}" for b in self.blocks if len(b) > 1]
        return "(" + ", ".join(parts) + ")" if parts else "(0)"

    def to_dict(self) -> dict:
        return {"T": list(self.T), "blocks": [list(b) for b in self.blocks], "height": self.height, "text": self.to_string()}


def prime_component(G: SimpleGraph, T: Sequence[int]) -> PrimeComponent:
    mask = 0
    for v in T:
        mask |= 1 << (v - 1)
    blocks = sorted(tuple(v + 1 for v in range(G.n) if comp >> v & 1) for comp in G.components(mask))
    return PrimeComponent(tuple(sorted(T)), tuple(blocks))


def minimal_primes_JG(G: SimpleGraph) -> list[PrimeComponent]:
    return [prime_component(G, r.T) for r in cut_sets(G)]


# -- semi-paths -----------------------------------------------------------------


@dataclass(frozen=True)
class SemiPath:
    paths: tuple[tuple[int, ...], ...]  # vertex sequences, each with at least two vertices

    @property
    def edges(self) -> list[tuple[int, int]]:
        out = []
        for p in self.paths:
            out.extend((min(a, b), max(a, b)) for a, b in zip(p, p[1:]))
        return sorted(out)

    @property
    def length(self) -> int:
        return sum(len(p) - 1 for p in self.paths)

    def to_dict(self) -> dict:
        return {"length": self.length, "paths": [list(p) for p in self.paths], "edges": [list(e) for e in self.edges]}


def semipath_from_edges(edges: Sequence[Sequence[int]]) -> SemiPath:
    """Split a linear forest into paths, each read from its smaller endpoint."""
    adj: dict[int, list[int]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    if any(len(v) > 2 for v in adj.values()):
        raise ValueError("a vertex of degree above 2")
    seen: set[int] = set()
    paths = []
    for start in sorted(adj):
        if start in seen or len(adj[start]) != 1:
            continue
        path = [start]
        seen.add(start)
        prev, cur = None, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            path.append(cur)
            seen.add(cur)
        paths.append(tuple(path))
    if len(seen) != len(adj):
        raise ValueError("the edges contain a cycle")
    paths.sort(key=lambda p: min(p))
    return SemiPath(tuple(paths))


def is_semipath(edges: Sequence[Sequence[int]]) -> bool:
    try:
        semipath_from_edges(edges)
    except ValueError:
        return False
    return True


def max_semipath(G: SimpleGraph) -> SemiPath:
    """Longest linear forest; ties go to the lexicographically smallest edge list."""
    _check(G)
    edges = list(G.edges)
    m = len(edges)
    bound = G.n - len(G.components())
    deg = [0] * (G.n + 1)
    parent = list(range(G.n + 1))

    def find(v: int) -> int:
        while parent[v] != v:
            v = parent[v]
        return v

    best: list[tuple[int, int]] = []
    cur: list[tuple[int, int]] = []

    def rec(k: int) -> bool:
        nonlocal best
        if len(cur) > len(best):
            best = list(cur)
            if len(best) == bound:
                return True
        if k == m or len(cur) + (m - k) <= len(best):
            return False
        a, b = edges[k]
        if deg[a] < 2 and deg[b] < 2:
            ra, rb = find(a), find(b)
            if ra != rb:
                deg[a] += 1
                deg[b] += 1
                parent[ra] = rb
                cur.append((a, b))
                done = rec(k + 1)
                cur.pop()
                parent[ra] = ra
                deg[a] -= 1
                deg[b] -= 1
                if done:
                    return True
        return rec(k + 1)

    rec(0)
    return semipath_from_edges(best)


# -- König type -------------------------------------------------------------------


def koenig_JG(G: SimpleGraph, d: int | None = None) -> KoenigCertificate | None:
    """Certificate over the f_ij of a semi-path of length 2n - d, if one exists.

    A family whose initial terms are already coprime under the standard order
    is preferred; otherwise the vertices are relabeled so that every path of
    the semi-path runs consecutively.
    """
    _check(G)
    n = G.n
    d = dim_quotient(G) if d is None else d
    h = 2 * n - d
    J = binomial_edge_ideal(G)
    std = standard_order(n)
    found = _coprime_families([g.initial_term(std).support_mask for g in J.generators], h)
    if found:
        idx = list(found[0])
        return certificate_from_family(2 * n, [J.generators[i] for i in idx], std, idx, True)
    sp = max_semipath(G)
    if sp.length < h:
        return None
    sigma = _path_order(n, sp)
    order = relabeled_order(n, sigma)
    pos = {e: k for k, e in enumerate(G.edges)}
    idx = [pos[e] for e in sp.edges]
    return certificate_from_family(2 * n, [J.generators[i] for i in idx], order, idx, True)


def _path_order(n: int, sp: SemiPath) -> list[int]:
    sigma: list[int] = []
    for p in sp.paths:
        sigma.extend(p)
    covered = set(sigma)
    sigma.extend(v for v in range(1, n + 1) if v not in covered)
    return sigma


def is_traceable(G: SimpleGraph) -> list[tuple[int, ...]] | None:
    """A spanning path of every component, or None."""
    _check(G)
    adj = G.adjacency_masks()
    out = []
    for comp in G.components():
        verts = [v for v in range(G.n) if comp >> v & 1]

        @lru_cache(maxsize=None)
        def extend(mask: int, v: int):
            if mask == comp:
                return (v,)
            nb = adj[v] & comp & ~mask
            while nb:
                u = (nb & -nb).bit_length() - 1
                nb &= nb - 1
                rest = extend(mask | 1 << u, u)
                if rest is not None:
                    return (v,) + rest
            return None

        path = None
        for s in verts:
            path = extend(1 << s, s)
            if path is not None:
                break
        extend.cache_clear()
        if path is None:
            return None
        out.append(tuple(v + 1 for v in path))
    return out


# -- special system of parameters ----------------------------------------------------


@dataclass(frozen=True)
class SpecialSOP:
    semipath: SemiPath
    forms: tuple[LinearForm, ...]
    dimension: int
    zero_dimensional: bool

    def to_dict(self, n: int) -> dict:
        names = variable_names(n)
        return {
            "semipath": self.semipath.to_dict(),
            "forms": [fm.to_string(names) for fm in self.forms],
            "count": len(self.forms),
            "dimension": self.dimension,
            "zero_dimensional": self.zero_dimensional,
        }


def sop_forms(n: int, sp: SemiPath) -> list[LinearForm]:
    """Per path v_1..v_m: y_{v_{i+1}} - x_{v_i}, then x_{v_m} and y_{v_1}; both variables of uncovered vertices."""
    forms: list[LinearForm] = []
    covered: set[int] = set()
    for p in sp.paths:
        covered |= set(p)
        for a, b in zip(p, p[1:]):
            forms.append(LinearForm(y(n, b), x(n, a)))
        forms.append(LinearForm(x(n, p[-1])))
        forms.append(LinearForm(y(n, p[0])))
    for v in range(1, n + 1):
        if v not in covered:
            forms.append(LinearForm(x(n, v)))
            forms.append(LinearForm(y(n, v)))
    return forms


def special_sop_JG(G: SimpleGraph, P: SemiPath | None = None) -> SpecialSOP:
    """Linear forms killing J_P down to a zero-dimensional ring, verified by Gröbner bases."""
    _check(G)
    d = dim_quotient(G)
    if P is None:
        cert = koenig_JG(G, d)
        if cert is None:
            raise PreconditionError("J_G is not of König type")
        P = semipath_from_edges([G.edges[i] for i in cert.generator_indices])
    for e in P.edges:
        if not G.has_edge(*e):
            raise PreconditionError(f"{e} is not an edge of the graph")
    if P.length != 2 * G.n - d:
        raise PreconditionError(f"semi-path of length {P.length}, need {2 * G.n - d}")
    forms = sop_forms(G.n, P)
    J = binomial_edge_ideal(G)
    gens = list(J.generators) + [fm.as_binomial(2 * G.n) for fm in forms]
    zero = is_zero_dimensional(J.with_generators(gens), standard_order(G.n))
    return SpecialSOP(P, tuple(forms), d, zero)


def cm_verdict_JG(G: SimpleGraph) -> CMVerdict:
    """e(S/J_G) against the length of S/(J_G + C) for the attached sequence C."""
    cert = koenig_JG(G)
    if cert is None:
        raise PreconditionError("J_G is not of König type")
    return cm_test_multiplicity(binomial_edge_ideal(G), cert, cert.order)


@dataclass(frozen=True)
class CanonicalComponents:
    path: tuple[tuple[int, ...], ...]
    components: tuple[PrimeComponent, ...]

    def to_dict(self) -> dict:
        return {"spanning_paths": [list(p) for p in self.path], "components": [c.to_dict() for c in self.components]}


def canonical_components_JG(G: SimpleGraph, check_cm: bool = True) -> CanonicalComponents:
    """Minimal primes of J_P that are not minimal primes of J_G, for a spanning semi-path P."""
    paths = is_traceable(G)
    if paths is None:
        raise PreconditionError("the graph is not traceable")
    if check_cm and cm_verdict_JG(G).cm is not True:
        raise PreconditionError("S/J_G is not Cohen-Macaulay")
    edges = []
    for p in paths:
        edges.extend((min(a, b), max(a, b)) for a, b in zip(p, p[1:]))
    P = SimpleGraph(G.n, tuple(edges))
    in_G = set(minimal_primes_JG(G))
    comps = [pc for pc in minimal_primes_JG(P) if pc not in in_G]
    return CanonicalComponents(tuple(paths), tuple(comps))


def dim_via_groebner(G: SimpleGraph) -> int:
    return quotient_dimension(binomial_edge_ideal(G), standard_order(G.n))
