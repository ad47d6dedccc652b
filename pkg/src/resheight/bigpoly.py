"""Exact sparse multivariate polynomials with integer coefficients.

A polynomial lives over a fixed :class:`Universe` of variables
``f_0..f_{nf-1}, g_0..g_{ng-1}``.  Monomials are plain tuples of exponents
(f-block first, then g-block) and coefficients are Python ints, so every
operation is exact no matter how large the numbers get.

    >>> u = Universe(2, 1)
    >>> p = SparsePoly.variable(u, "f", 0) + SparsePoly.variable(u, "f", 1)
    >>> q = SparsePoly.variable(u, "f", 0) - SparsePoly.variable(u, "f", 1)
    >>> str(p * q)
    'f0^2 - f1^2'
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, Mapping, NamedTuple, Tuple

from .errors import UniverseMismatchError

Monomial = Tuple[int, ...]


@dataclass(frozen=True)
class Universe:
    """Variable set ``f_0..f_{nf-1}, g_0..g_{ng-1}``."""

    nf: int
    ng: int = 0

    def __post_init__(self):
        if self.nf < 0 or self.ng < 0:
            raise ValueError("variable counts must be non-negative")

    @classmethod
    def for_degrees(cls, m: int, n: int) -> "Universe":
        """Universe of the generic resultant of degree-m f and degree-n g."""
        return cls(m + 1, n + 1)

    @property
    def arity(self) -> int:
        return self.nf + self.ng

    def names(self) -> list[str]:
        return [f"f{i}" for i in range(self.nf)] + [f"g{j}" for j in range(self.ng)]

    def index(self, group: str, i: int) -> int:
        if group == "f" and 0 <= i < self.nf:
            return i
        if group == "g" and 0 <= i < self.ng:
            return self.nf + i
        raise IndexError(f"no variable {group}{i} in {self}")

    def monomial(self, f: Mapping[int, int] | None = None, g: Mapping[int, int] | None = None) -> Monomial:
        """Build a monomial from ``{index: exponent}`` maps for each group."""
        exps = [0] * self.arity
        for group, spec in (("f", f or {}), ("g", g or {})):
            for i, e in spec.items():
                if e < 0:
                    raise ValueError("exponents must be non-negative")
                exps[self.index(group, i)] += e
        return tuple(exps)


class GroupDegrees(NamedTuple):
    f_degree: int
    g_degree: int
    uniform: bool


class SparsePoly:
    """Immutable map from monomials to non-zero integer coefficients."""

    __slots__ = ("universe", "_terms")

    def __init__(self, universe: Universe, terms: Mapping[Monomial, int] | Iterable[Tuple[Monomial, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Monomial, int] = {}
        arity = universe.arity
        for mon, c in items:
            mon = tuple(int(e) for e in mon)
            if len(mon) != arity:
                raise UniverseMismatchError(f"monomial of arity {len(mon)} in universe of arity {arity}")
            if any(e < 0 for e in mon):
                raise ValueError(f"negative exponent in {mon}")
            acc[mon] = acc.get(mon, 0) + int(c)
        self.universe = universe
        self._terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def _trusted(cls, universe: Universe, terms: Dict[Monomial, int]) -> "SparsePoly":
        # Caller guarantees well-formed keys and no zero values; the dict is adopted, not copied.
        obj = cls.__new__(cls)
        obj.universe = universe
        obj._terms = terms
        return obj

    @classmethod
    def zero(cls, universe: Universe) -> "SparsePoly":
        return cls._trusted(universe, {})

    @classmethod
    def constant(cls, universe: Universe, value: int) -> "SparsePoly":
        return cls._trusted(universe, {(0,) * universe.arity: int(value)} if value else {})

    @classmethod
    def variable(cls, universe: Universe, group: str, i: int) -> "SparsePoly":
        exps = [0] * universe.arity
        exps[universe.index(group, i)] = 1
        return cls._trusted(universe, {tuple(exps): 1})

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, int]]:
        return iter(self.items())

    def items(self) -> list[Tuple[Monomial, int]]:
        """Terms in canonical (lexicographic, f-block first) order."""
        return sorted(self._terms.items())

    def _check(self, other: "SparsePoly") -> None:
        if not isinstance(other, SparsePoly):
            raise TypeError(f"expected SparsePoly, got {type(other).__name__}")
        if other.universe != self.universe:
            raise UniverseMismatchError(f"{self.universe} vs {other.universe}")

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        return add(self, other)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly._trusted(self.universe, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return add(self, -other)

    def __mul__(self, other) -> "SparsePoly":
        if isinstance(other, int):
            return self.scale(other)
        return mul(self, other)

    __rmul__ = __mul__

    def scale(self, c: int) -> "SparsePoly":
        if not c:
            return SparsePoly.zero(self.universe)
        return SparsePoly._trusted(self.universe, {k: v * c for k, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.universe == other.universe and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.universe, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"SparsePoly({self.universe}, {len(self)} terms)"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = self.universe.names()
        out = []
        # reversed canonical order reads like a conventional leading-term-first print
        for mon, c in reversed(self.items()):
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, mon) if e]
            mag = abs(c)
            body = "*".join(factors)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if not out:
                out.append(text if c > 0 else "-" + text)
            else:
                out.append(("+ " if c > 0 else "- ") + text)
        return " ".join(out)

    # -- serialization ----------------------------------------------------

    def to_records(self) -> list[dict]:
        return [{"exps": list(mon), "coeff": str(c)} for mon, c in self.items()]

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_records(), **kwargs)

    @classmethod
    def from_records(cls, universe: Universe, records: Iterable[Mapping]) -> "SparsePoly":
        return cls(universe, ((tuple(r["exps"]), int(r["coeff"])) for r in records))

    @classmethod
    def from_json(cls, universe: Universe, text: str) -> "SparsePoly":
        return cls.from_records(universe, json.loads(text))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.universe.names() + ["coeff"])
        for mon, c in self.items():
            writer.writerow(list(mon) + [c])
        return buf.getvalue()


def add(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    a._check(b)
    out = dict(a._terms)
    for mon, c in b._terms.items():
        s = out.get(mon, 0) + c
        if s:
            out[mon] = s
        else:
            out.pop(mon, None)
    return SparsePoly._trusted(a.universe, out)


def mul(a: SparsePoly, b: SparsePoly) -> SparsePoly:
    a._check(b)
    out: Dict[Monomial, int] = {}
    bt = list(b._terms.items())
    for ma, ca in a._terms.items():
        for mb, cb in bt:
            mon = tuple(x + y for x, y in zip(ma, mb))
            out[mon] = out.get(mon, 0) + ca * cb
    return SparsePoly._trusted(a.universe, {k: v for k, v in out.items() if v})


def height(p: SparsePoly) -> int:
    """Largest absolute coefficient; 0 for the zero polynomial."""
    return max((abs(c) for c in p._terms.values()), default=0)


def coefficient_of(p: SparsePoly, mon: Monomial) -> int:
    mon = tuple(mon)
    if len(mon) != p.universe.arity:
        raise UniverseMismatchError(f"monomial of arity {len(mon)} in universe of arity {p.universe.arity}")
    return p._terms.get(mon, 0)


def group_degrees(p: SparsePoly) -> GroupDegrees:
    """Maximum total degree in the f- and g-blocks, and whether every term agrees."""
    nf = p.universe.nf
    seen = {(sum(mon[:nf]), sum(mon[nf:])) for mon in p._terms}
    if not seen:
        return GroupDegrees(0, 0, True)
    return GroupDegrees(max(d for d, _ in seen), max(d for _, d in seen), len(seen) == 1)


def omega_degree_set(p: SparsePoly) -> set[int]:
    """Distinct weighted degrees, weighting f_i by i and g_j by j."""
    nf = p.universe.nf
    out = set()
    for mon in p._terms:
        out.add(sum(i * e for i, e in enumerate(mon[:nf])) + sum(j * e for j, e in enumerate(mon[nf:])))
    return out
