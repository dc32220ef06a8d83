"""Simple graphs and their edge ideals.

Vertices are 1-based as in the input formats; variable x_v of the edge ideal
has index v - 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra import IdealPresentation, Monomial
from .koenig import PreconditionError, cm_test_IB, koenig_monomial
from .simplicial import (
    SimplicialComplex,
    alexander_dual_generators,
    bits,
    face_count,
    independence_complex,
    min_cover_size,
    minimal_covers,
    multiplicity,
)

MAX_VERTICES = 30


class GraphFormatError(ValueError):
    pass


@dataclass(frozen=True)
class SimpleGraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        norm = set()
        for e in self.edges:
            i, j = e
            if i == j:
                raise ValueError(f"loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge {e} outside [1, {self.n}]")
            key = (min(i, j), max(i, j))
            if key in norm:
                raise ValueError(f"duplicate edge {key}")
            norm.add(key)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "SimpleGraph":
        return cls(n, tuple((int(a), int(b)) for a, b in edges))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self.edge_set

    @property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def neighbors(self, v: int) -> list[int]:
        return sorted({j for i, j in self.edges if i == v} | {i for i, j in self.edges if j == v})

    def adjacency_masks(self) -> list[int]:
        """0-based neighbour masks."""
        adj = [0] * self.n
        for i, j in self.edges:
            adj[i - 1] |= 1 << (j - 1)
            adj[j - 1] |= 1 << (i - 1)
        return adj

    def isolated_vertices(self) -> list[int]:
        adj = self.adjacency_masks()
        return [v + 1 for v in range(self.n) if not adj[v]]

    def components(self, removed: int = 0) -> list[int]:
        """Connected components (0-based masks) after deleting the vertices in ``removed``."""
        adj = self.adjacency_masks()
        left = ((1 << self.n) - 1) & ~removed
        comps = []
        while left:
            start = left & -left
            comp = start
            frontier = start
            while frontier:
                v = (frontier & -frontier).bit_length() - 1
                frontier &= frontier - 1
                new = adj[v] & left & ~comp
                comp |= new
                frontier |= new
            comps.append(comp)
            left &= ~comp
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def induced(self, vertices: Iterable[int]) -> list[tuple[int, int]]:
        vs = set(vertices)
        return [e for e in self.edges if e[0] in vs and e[1] in vs]

    def edge_ideal(self) -> IdealPresentation:
        mons = [Monomial.from_support(self.n, (i - 1, j - 1)) for i, j in self.edges]
        return IdealPresentation.monomial_ideal(self.n, mons)

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    def to_text(self) -> str:
        return "\n".join([str(self.n)] + [f"{i} {j}" for i, j in self.edges]) + "\n"


def path_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, tuple((i, i + 1) for i in range(1, n)))


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, tuple((i, i + 1) for i in range(1, n)) + ((1, n),))


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))


def parse_graph(text: str) -> SimpleGraph:
    """Either JSON ``{"n": .., "edges": [[i, j], ..]}`` or ``n`` followed by ``i j`` lines."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            data = json.loads(stripped)
            return SimpleGraph.from_edges(int(data["n"]), data.get("edges", []))
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise GraphFormatError(f"bad graph JSON: {exc}") from exc
        except ValueError as exc:
            raise GraphFormatError(str(exc)) from exc
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [(k + 1, ln) for k, ln in enumerate(lines) if ln]
    if not lines:
        raise GraphFormatError("empty graph file")
    try:
        n = int(lines[0][1])
    except ValueError as exc:
        raise GraphFormatError(f"line {lines[0][0]}: expected the vertex count") from exc
    edges = []
    for lineno, ln in lines[1:]:
        parts = ln.replace(",", " ").split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected two vertices")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: vertices must be integers") from exc
    try:
        return SimpleGraph.from_edges(n, edges)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


# -- matchings and covers --------------------------------------------------------


def _check_size(G: SimpleGraph) -> None:
    if G.n > MAX_VERTICES:
        raise PreconditionError(f"{G.n} vertices exceed the limit of {MAX_VERTICES}")


def maximum_matching(G: SimpleGraph) -> list[tuple[int, int]]:
    """A maximum matching; among those, the lexicographically first edge list."""
    _check_size(G)
    adj = G.adjacency_masks()

    @lru_cache(maxsize=None)
    def best(alive: int) -> int:
        # drop vertices without live neighbours
        while alive:
            v = (alive & -alive).bit_length() - 1
            if adj[v] & alive:
                break
            alive &= ~(1 << v)
        if not alive:
            return 0
        v = (alive & -alive).bit_length() - 1
        top = best(alive & ~(1 << v))
        nb = adj[v] & alive
        while nb:
            u = (nb & -nb).bit_length() - 1
            nb &= nb - 1
            top = max(top, 1 + best(alive & ~(1 << v) & ~(1 << u)))
        return top

    full = (1 << G.n) - 1
    target = best(full)
    out: list[tuple[int, int]] = []
    alive = full
    while len(out) < target:
        v = (alive & -alive).bit_length() - 1
        need = target - len(out)
        nb = adj[v] & alive
        chosen = None
        while nb:
            u = (nb & -nb).bit_length() - 1
            nb &= nb - 1
            if 1 + best(alive & ~(1 << v) & ~(1 << u)) == need:
                chosen = u
                break
        if chosen is None:
            alive &= ~(1 << v)
        else:
            out.append((v + 1, chosen + 1))
            alive &= ~(1 << v) & ~(1 << chosen)
    best.cache_clear()
    return out


def matching_number(G: SimpleGraph) -> int:
    return len(maximum_matching(G))


def tau(G: SimpleGraph) -> int:
    """Vertex cover number."""
    _check_size(G)
    if not G.edges:
        return 0
    return min_cover_size([(1 << (i - 1)) | (1 << (j - 1)) for i, j in G.edges])


def is_koenig(G: SimpleGraph) -> bool:
    return matching_number(G) == tau(G)


def minimal_vertex_covers(G: SimpleGraph) -> list[tuple[int, ...]]:
    """1-based minimal vertex covers, sorted."""
    covers = minimal_covers([(i - 1, j - 1) for i, j in G.edges])
    return [tuple(v + 1 for v in c) for c in covers]


@dataclass(frozen=True)
class MatchingCertificate:
    edges: tuple[tuple[int, int], ...]
    is_perfect_koenig: bool

    def to_dict(self) -> dict:
        return {"edges": [list(e) for e in self.edges], "is_perfect_koenig": self.is_perfect_koenig}


def perfect_koenig_matching(G: SimpleGraph) -> MatchingCertificate | None:
    """A matching of size tau(G) covering every vertex, first in scan order."""
    _check_size(G)
    t = tau(G)
    if G.n != 2 * t:
        return None
    adj = G.adjacency_masks()
    out: list[tuple[int, int]] = []

    def rec(alive: int) -> bool:
        if not alive:
            return True
        v = (alive & -alive).bit_length() - 1
        nb = adj[v] & alive
        while nb:
            u = (nb & -nb).bit_length() - 1
            nb &= nb - 1
            out.append((v + 1, u + 1))
            if rec(alive & ~(1 << v) & ~(1 << u)):
                return True
            out.pop()
        return False

    if rec((1 << G.n) - 1):
        return MatchingCertificate(tuple(out), True)
    return None


def is_perfect_koenig(G: SimpleGraph, M: Sequence[Sequence[int]]) -> bool:
    seen: set[int] = set()
    for a, b in M:
        if not G.has_edge(a, b) or a in seen or b in seen:
            return False
        seen |= {a, b}
    return len(M) == tau(G) and seen == set(G.vertices)


# -- the graphs H and G0 ----------------------------------------------------------


def build_H(G: SimpleGraph, M: Sequence[Sequence[int]]) -> SimpleGraph:
    """{z, w} is an edge when z, w lie in different matching edges and their partners are adjacent."""
    if not is_perfect_koenig(G, M):
        raise PreconditionError("not a perfect matching of König type")
    edges = set()
    for a, ei in enumerate(M):
        for b, ej in enumerate(M):
            if a == b:
                continue
            for z in ei:
                zt = ei[1] if z == ei[0] else ei[0]
                for w in ej:
                    wt = ej[1] if w == ej[0] else ej[0]
                    if G.has_edge(zt, wt):
                        edges.add((min(z, w), max(z, w)))
    return SimpleGraph(G.n, tuple(sorted(edges)))


@dataclass(frozen=True)
class EdgeCanonicalModule:
    matching: MatchingCertificate
    H: SimpleGraph
    generators: tuple[Monomial, ...]
    type: int

    def to_dict(self) -> dict:
        names = [f"x{i + 1}" for i in range(self.H.n)]
        return {
            "matching": self.matching.to_dict(),
            "H_edges": [list(e) for e in self.H.edges],
            "generators": [m.to_string(names) for m in self.generators],
            "type": self.type,
        }


def is_cm_edge_ideal(G: SimpleGraph) -> bool | None:
    """Modification test on the edge ideal; None when the ideal is not of König type."""
    I = G.edge_ideal()
    cert = koenig_monomial(I)
    if cert is None:
        return None
    return bool(cm_test_IB(I, cert).cm)


def canonical_module_edge(G: SimpleGraph, M: Sequence[Sequence[int]] | None = None) -> EdgeCanonicalModule:
    """omega as the image of the cover ideal of H; type = number of minimal covers of H."""
    if is_cm_edge_ideal(G) is not True:
        raise PreconditionError("the edge ideal is not Cohen-Macaulay of König type")
    if M is None:
        cert = perfect_koenig_matching(G)
        if cert is None:
            raise PreconditionError("no perfect matching of König type")
    else:
        cert = MatchingCertificate(tuple((min(a, b), max(a, b)) for a, b in M), True)
    H = build_H(G, cert.edges)
    covers = minimal_covers([(i - 1, j - 1) for i, j in H.edges])
    gens = alexander_dual_generators(covers, G.n)
    return EdgeCanonicalModule(cert, H, tuple(gens), len(covers))


@dataclass(frozen=True)
class G0Graph:
    vertices: tuple[int, ...]
    graph: SimpleGraph

    def independence_complex(self) -> SimplicialComplex:
        return independence_complex(
            self.graph.n, [(i - 1, j - 1) for i, j in self.graph.edges], [v - 1 for v in self.vertices]
        )


def build_G0(G: SimpleGraph, M: Sequence[Sequence[int]]) -> G0Graph:
    """Vertices: smaller endpoints of the matching edges; edges: matching edges joined by an edge of G."""
    seen: set[int] = set()
    norm = []
    for a, b in M:
        if not G.has_edge(a, b) or a in seen or b in seen:
            raise PreconditionError(f"{list(M)} is not a matching of the graph")
        seen |= {a, b}
        norm.append((min(a, b), max(a, b)))
    if len(norm) != tau(G):
        raise PreconditionError("the matching does not have size tau(G)")
    heads = tuple(e[0] for e in norm)
    edges = set()
    for k in range(len(norm)):
        for l in range(k + 1, len(norm)):
            if any((set(e) & set(norm[k])) and (set(e) & set(norm[l])) for e in G.edges):
                a, b = heads[k], heads[l]
                edges.add((min(a, b), max(a, b)))
    return G0Graph(tuple(sorted(heads)), SimpleGraph(G.n, tuple(sorted(edges))))


@dataclass(frozen=True)
class KoenigCMReport:
    matching: tuple[tuple[int, int], ...]
    G0_vertices: tuple[int, ...]
    G0_edges: tuple[tuple[int, int], ...]
    alpha: int
    faces: int
    cm: bool
    type: int | None
    reg: int | None

    def to_dict(self) -> dict:
        return {
            "matching": [list(e) for e in self.matching],
            "G0": {"vertices": list(self.G0_vertices), "edges": [list(e) for e in self.G0_edges]},
            "alpha": self.alpha,
            "faces": self.faces,
            "cm": self.cm,
            "type": self.type,
            "reg": self.reg,
        }


def koenig_cm_report(G: SimpleGraph) -> KoenigCMReport:
    """Compare the number of minimum covers with the face count of the independence complex of G0."""
    M = maximum_matching(G)
    if len(M) != tau(G):
        raise PreconditionError("the graph is not König")
    G0 = build_G0(G, M)
    alpha = multiplicity(G.edge_ideal()) if G.edges else 1
    cx = G0.independence_complex()
    faces = face_count(cx)
    cm = alpha == faces
    return KoenigCMReport(
        tuple(M),
        G0.vertices,
        G0.graph.edges,
        alpha,
        faces,
        cm,
        len(cx.facets) if cm else None,
        cx.dimension + 1 if cm else None,
    )


def vertex_set(mask: int) -> list[int]:
    return [v + 1 for v in bits(mask)]
