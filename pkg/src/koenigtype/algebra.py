"""Monomials, pure-difference binomials, monomial orders and ideal presentations.

Every generator handled by this package is either a monomial ``u`` or a
binomial ``u - v`` with coefficients fixed to +1/-1.  No field arithmetic is
ever needed, so everything here is exact and independent of the base field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class AmbientMismatchError(ValueError):
    """Two objects living in polynomial rings of different size were combined."""


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


class Monomial(tuple):
    """An exponent vector.  Immutable; the ambient size is ``len(m)``."""

    __slots__ = ()

    def __new__(cls, exponents: Iterable[int]):
        exps = tuple(exponents)
        for e in exps:
            if not isinstance(e, int) or e < 0:
                raise ValueError(f"exponents must be non-negative integers, got {exps}")
        return tuple.__new__(cls, exps)

    @classmethod
    def _raw(cls, exps: Iterable[int]) -> "Monomial":
        # skips validation; only for internally computed vectors
        return tuple.__new__(cls, exps)

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls._raw((0,) * n)

    @classmethod
    def variable(cls, n: int, i: int) -> "Monomial":
        if not 0 <= i < n:
            raise IndexError(f"variable index {i} out of range for n={n}")
        return cls._raw(1 if k == i else 0 for k in range(n))

    @classmethod
    def from_support(cls, n: int, support: Iterable[int]) -> "Monomial":
        s = set(support)
        return cls._raw(1 if k in s else 0 for k in range(n))

    @property
    def n(self) -> int:
        return len(self)

    @property
    def degree(self) -> int:
        return sum(self)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self) if e)

    @property
    def support_mask(self) -> int:
        mask = 0
        for i, e in enumerate(self):
            if e:
                mask |= 1 << i
        return mask

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self)

    def _check(self, other: "Monomial") -> None:
        if len(self) != len(other):
            raise AmbientMismatchError(f"monomials in {len(self)} and {len(other)} variables")

    def divides(self, other: "Monomial") -> bool:
        self._check(other)
        return all(a <= b for a, b in zip(self, other))

    def __mul__(self, other: "Monomial") -> "Monomial":  # type: ignore[override]
        self._check(other)
        return Monomial._raw(a + b for a, b in zip(self, other))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        """Exact quotient ``self / other``; ``other`` must divide ``self``."""
        self._check(other)
        q = tuple(a - b for a, b in zip(self, other))
        if any(e < 0 for e in q):
            raise ValueError("monomial does not divide")
        return Monomial._raw(q)

    def lcm(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial._raw(max(a, b) for a, b in zip(self, other))

    def gcd(self, other: "Monomial") -> "Monomial":
        self._check(other)
        return Monomial._raw(min(a, b) for a, b in zip(self, other))

    def is_coprime(self, other: "Monomial") -> bool:
        self._check(other)
        return not any(a and b for a, b in zip(self, other))

    def substitute(self, mapping: dict[int, int | None]) -> "Monomial | None":
        """Replace variable i by ``mapping[i]`` (another variable, or None for zero)."""
        out = [0] * len(self)
        for i, e in enumerate(self):
            if not e:
                continue
            target = mapping.get(i, i)
            if target is None:
                return None
            out[target] += e
        return Monomial._raw(out)

    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = names or default_names(len(self))
        parts = []
        for i, e in enumerate(self):
            if e == 1:
                parts.append(names[i])
            elif e > 1:
                parts.append(f"{names[i]}^{e}")
        return "*".join(parts) if parts else "1"

    def __repr__(self) -> str:
        return f"Monomial({list(self)})"


def default_names(n: int) -> list[str]:
    return [f"x{i + 1}" for i in range(n)]


@dataclass(frozen=True)
class Binomial:
    """``lead - trail``, or the monomial ``lead`` when ``trail`` is None."""

    lead: Monomial
    trail: Monomial | None = None

    def __post_init__(self):
        if not isinstance(self.lead, Monomial):
            object.__setattr__(self, "lead", Monomial(self.lead))
        if self.trail is not None:
            if not isinstance(self.trail, Monomial):
                object.__setattr__(self, "trail", Monomial(self.trail))
            if len(self.trail) != len(self.lead):
                raise AmbientMismatchError("lead and trail live in different rings")
            if self.trail == self.lead:
                raise ValueError("u - u is the zero element")

    @classmethod
    def monomial(cls, m: Monomial) -> "Binomial":
        return cls(m, None)

    @property
    def n(self) -> int:
        return len(self.lead)

    @property
    def is_monomial(self) -> bool:
        return self.trail is None

    @property
    def terms(self) -> tuple[Monomial, ...]:
        return (self.lead,) if self.trail is None else (self.lead, self.trail)

    @property
    def degree(self) -> int:
        return max(t.degree for t in self.terms)

    def is_homogeneous(self) -> bool:
        return self.trail is None or self.lead.degree == self.trail.degree

    def initial_term(self, order: "MonomialOrder | WeightOrder") -> Monomial:
        if self.trail is None:
            return self.lead
        return self.lead if order.compare(self.lead, self.trail) > 0 else self.trail

    def normalized(self, order: "MonomialOrder | WeightOrder") -> "Binomial":
        if self.trail is None or order.compare(self.lead, self.trail) > 0:
            return self
        return Binomial(self.trail, self.lead)

    def same_element(self, other: "Binomial") -> bool:
        """Equality up to the global sign."""
        return set(self.terms) == set(other.terms) and len(self.terms) == len(other.terms)

    def to_string(self, names: Sequence[str] | None = None) -> str:
        if self.trail is None:
            return self.lead.to_string(names)
        return f"{self.lead.to_string(names)} - {self.trail.to_string(names)}"

    def to_dict(self) -> dict:
        return {"lead": list(self.lead), "trail": None if self.trail is None else list(self.trail)}

    @classmethod
    def from_dict(cls, data: dict) -> "Binomial":
        trail = data.get("trail")
        return cls(Monomial(data["lead"]), None if trail is None else Monomial(trail))


@dataclass(frozen=True)
class LinearForm:
    """``x_var`` when ``anchor`` is None, otherwise ``x_var - x_anchor`` with anchor < var."""

    var: int
    anchor: int | None = None

    def __post_init__(self):
        if self.var < 0 or (self.anchor is not None and self.anchor < 0):
            raise ValueError("negative variable index")
        if self.anchor is not None and self.anchor >= self.var:
            raise ValueError("difference forms are written x_k - x_i with i < k")

    @property
    def is_variable(self) -> bool:
        return self.anchor is None

    def as_binomial(self, n: int) -> Binomial:
        if self.anchor is None:
            return Binomial(Monomial.variable(n, self.var))
        return Binomial(Monomial.variable(n, self.var), Monomial.variable(n, self.anchor))

    def substitution(self) -> dict[int, int | None]:
        """The variable substitution that kills this form."""
        return {self.var: self.anchor}

    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = names or default_names(max(self.var, self.anchor or 0) + 1)
        if self.anchor is None:
            return names[self.var]
        return f"{names[self.var]} - {names[self.anchor]}"

    def to_dict(self) -> dict:
        return {"var": self.var, "anchor": self.anchor}


@dataclass(frozen=True)
class MonomialOrder:
    """lex or degrevlex with an explicit variable priority (position 0 is the largest)."""

    kind: str
    priority: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        object.__setattr__(self, "priority", tuple(self.priority))
        if sorted(self.priority) != list(range(len(self.priority))):
            raise ValueError(f"priority {self.priority} is not a permutation")

    @classmethod
    def lex(cls, n: int, priority: Sequence[int] | None = None) -> "MonomialOrder":
        return cls("lex", tuple(range(n)) if priority is None else tuple(priority))

    @classmethod
    def degrevlex(cls, n: int, priority: Sequence[int] | None = None) -> "MonomialOrder":
        return cls("degrevlex", tuple(range(n)) if priority is None else tuple(priority))

    @property
    def n(self) -> int:
        return len(self.priority)

    def key(self, m: Sequence[int]) -> tuple:
        if len(m) != len(self.priority):
            raise AmbientMismatchError(f"order on {len(self.priority)} variables, monomial in {len(m)}")
        if self.kind == "lex":
            return tuple(m[p] for p in self.priority)
        return (sum(m),) + tuple(-m[p] for p in reversed(self.priority))

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "priority": list(self.priority)}

    def describe(self, names: Sequence[str] | None = None) -> str:
        names = names or default_names(self.n)
        return f"{self.kind}(" + " > ".join(names[p] for p in self.priority) + ")"


@dataclass(frozen=True)
class WeightOrder:
    """Compare by a strictly positive weight vector, break ties with a monomial order."""

    weights: tuple[Fraction, ...]
    tiebreak: MonomialOrder

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be strictly positive")
        if len(self.weights) != self.tiebreak.n:
            raise AmbientMismatchError("weights and tiebreak order disagree on n")

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def kind(self) -> str:
        return "weight"

    def key(self, m: Sequence[int]) -> tuple:
        return (sum(w * e for w, e in zip(self.weights, m)), self.tiebreak.key(m))

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def to_dict(self) -> dict:
        return {
            "kind": "weight",
            "weights": [str(w) for w in self.weights],
            "tiebreak": self.tiebreak.to_dict(),
        }

    def describe(self, names: Sequence[str] | None = None) -> str:
        return "weights(" + ", ".join(str(w) for w in self.weights) + ") then " + self.tiebreak.describe(names)


Order = MonomialOrder | WeightOrder


def compare(a: Monomial, b: Monomial, order: Order) -> int:
    """-1, 0 or 1 according as a < b, a == b, a > b under ``order``."""
    if len(a) != len(b):
        raise AmbientMismatchError(f"monomials in {len(a)} and {len(b)} variables")
    return order.compare(a, b)


@dataclass(frozen=True)
class IdealPresentation:
    n: int
    generators: tuple[Binomial, ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
            if len(self.names) != self.n:
                raise ValueError(f"{len(self.names)} names for {self.n} variables")
        for i, g in enumerate(self.generators):
            if g.n != self.n:
                raise AmbientMismatchError(f"generator {i} lives in {g.n} variables, ideal in {self.n}")
        for i, g in enumerate(self.generators):
            for h in self.generators[:i]:
                if g.same_element(h):
                    raise ValueError(f"duplicate generator {g.to_string(self.var_names)}")

    @classmethod
    def monomial_ideal(
        cls, n: int, monomials: Iterable[Sequence[int]], names: Sequence[str] | None = None
    ) -> "IdealPresentation":
        gens: list[Binomial] = []
        for m in monomials:
            b = Binomial(Monomial(m))
            if not any(b.same_element(g) for g in gens):
                gens.append(b)
        return cls(n, tuple(gens), None if names is None else tuple(names))

    @property
    def var_names(self) -> list[str]:
        return list(self.names) if self.names is not None else default_names(self.n)

    @property
    def is_monomial(self) -> bool:
        return all(g.is_monomial for g in self.generators)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def monomials(self) -> list[Monomial]:
        if not self.is_monomial:
            raise ValueError("not a monomial ideal")
        return [g.lead for g in self.generators]

    def with_generators(self, generators: Iterable[Binomial]) -> "IdealPresentation":
        return IdealPresentation(self.n, tuple(generators), self.names)

    def to_text(self) -> str:
        return ", ".join(g.to_string(self.var_names) for g in self.generators)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "names": self.var_names,
            "generators": [g.to_dict() for g in self.generators],
            "text": [g.to_string(self.var_names) for g in self.generators],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "IdealPresentation":
        names = data.get("names")
        return cls(
            data["n"],
            tuple(Binomial.from_dict(g) for g in data["generators"]),
            None if names is None else tuple(names),
        )


def minimalize_monomials(monomials: Iterable[Monomial]) -> list[Monomial]:
    """Minimal generators under divisibility, in first-seen order."""
    ms: list[Monomial] = []
    for m in monomials:
        if m not in ms:
            ms.append(m)
    keep = []
    for i, m in enumerate(ms):
        if not any(j != i and o.divides(m) for j, o in enumerate(ms)):
            keep.append(m)
    return keep


def monomials_regular_sequence(monomials: Sequence[Monomial]) -> bool:
    """Monomials form a regular sequence iff their supports are pairwise disjoint."""
    if not monomials:
        raise ValueError("empty sequence")
    seen = 0
    for m in monomials:
        if len(m) != len(monomials[0]):
            raise AmbientMismatchError("monomials in different rings")
        mask = m.support_mask
        if mask & seen:
            return False
        seen |= mask
    return True


# -- text format -------------------------------------------------------------

_TOKEN = re.compile(r"(?:(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<int>\d+)|(?P<op>[-+*^,;()])|(?P<nl>\n))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos] in " \t\r":
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


def infer_names(text: str) -> list[str]:
    found = {tok for kind, tok, _ in _tokenize(text) if kind == "name"}
    return sorted(found, key=natural_key)


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.tokens = _tokenize(text)
        self.i = 0
        self.index = {name: k for k, name in enumerate(names)}
        self.n = len(names)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def generators(self) -> list[Binomial]:
        gens = []
        while True:
            while self.peek()[0] == "nl" or self.peek()[1] in (",", ";"):
                self.take()
            if self.peek()[0] == "end":
                return gens
            gens.append(self.expression())
            kind, tok, pos = self.peek()
            if kind not in ("end", "nl") and tok not in (",", ";"):
                raise ParseError(f"expected ',' or end of generator, got {tok!r}", pos)

    def expression(self) -> Binomial:
        start = self.peek()[2]
        terms: list[tuple[int, Monomial]] = []
        sign = 1
        kind, tok, pos = self.peek()
        if tok in ("+", "-"):
            self.take()
            sign = -1 if tok == "-" else 1
        terms.append((sign, self.term()))
        while self.peek()[1] in ("+", "-"):
            kind, tok, pos = self.take()
            if len(terms) == 2:
                raise ParseError("a generator has at most two terms", pos)
            terms.append((-1 if tok == "-" else 1, self.term()))
        if len(terms) == 1:
            return Binomial(terms[0][1])
        (s1, m1), (s2, m2) = terms
        if s1 == s2:
            raise ParseError("the two terms must have opposite signs (u - v)", start)
        if m1 == m2:
            raise ParseError("generator is zero", start)
        return Binomial(m1, m2) if s1 > 0 else Binomial(m2, m1)

    def term(self) -> Monomial:
        exps = [0] * self.n
        coefficient_seen = False
        while True:
            kind, tok, pos = self.take()
            if kind == "int":
                if tok != "1":
                    raise ParseError(f"coefficient {tok} is not +1 or -1", pos)
                if coefficient_seen:
                    raise ParseError("repeated coefficient", pos)
                coefficient_seen = True
            elif kind == "name":
                if tok not in self.index:
                    raise ParseError(f"unknown variable {tok!r}", pos)
                power = 1
                if self.peek()[1] == "^":
                    self.take()
                    kind2, tok2, pos2 = self.take()
                    if kind2 != "int":
                        raise ParseError("expected an exponent", pos2)
                    power = int(tok2)
                exps[self.index[tok]] += power
            elif tok == "(":
                raise ParseError("parentheses are not supported", pos)
            else:
                raise ParseError(f"expected a variable, got {tok or 'end of input'!r}", pos)
            if self.peek()[1] != "*":
                return Monomial(exps)
            self.take()


def parse_ideal(text: str, names: Sequence[str] | None = None) -> IdealPresentation:
    """Parse comma/newline separated generators such as ``"x1*x2 - x2^2, x1*x3"``."""
    if names is None:
        names = infer_names(text)
    names = list(names)
    if len(set(names)) != len(names):
        raise ParseError("variable names must be distinct")
    gens = _Parser(text, names).generators()
    try:
        return IdealPresentation(len(names), tuple(gens), tuple(names))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
