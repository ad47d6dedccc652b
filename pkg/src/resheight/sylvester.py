"""Symbolic Sylvester matrices and exact expansion of their determinants.

``Res(f, g)`` is *literally* the determinant of the matrix built by
:func:`build_matrix`: the first ``n`` columns hold the coefficients of ``f``
shifted down one row per column, the last ``m`` columns those of ``g``.
No sign normalisation is applied anywhere, so ``f_0^n g_n^m`` (the main
diagonal) always has coefficient ``+1``.

Two engines compute the determinant:

* ``laplace``: Laplace expansion along the ``m`` g-columns, pairing each
  symbolic ``m x m`` g-minor with the complementary f-block minor, which is
  computed by a banded column-sweep dynamic program (:func:`f_band_minor`);
* ``naive``: memoised cofactor expansion, used as the oracle.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, NamedTuple, Optional, Sequence, Tuple

from . import _pykernels, kernels
from .bigpoly import Monomial, SparsePoly, Universe
from .errors import FeasibilityError

MAX_M = 4
DEFAULT_MAX_N = 30
NAIVE_MAX_ORDER = 10


def envelope_nmax(default: int) -> int:
    """Default n-envelope, overridable through ``RESHEIGHT_NMAX``."""
    raw = os.environ.get("RESHEIGHT_NMAX")
    return int(raw) if raw else default


class Var(NamedTuple):
    group: str  # "f" or "g"
    index: int

    def __str__(self):
        return f"{self.group}{self.index}"


@dataclass(frozen=True)
class SylvesterSpec:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError(f"degrees must be positive, got m={self.m}, n={self.n}")

    @property
    def order(self) -> int:
        return self.m + self.n

    @property
    def universe(self) -> Universe:
        return Universe.for_degrees(self.m, self.n)


@dataclass(frozen=True)
class SymbolicMatrix:
    """Square matrix whose entries are single variables or zero (absent)."""

    order: int
    entries: Dict[Tuple[int, int], Var]
    universe: Universe = field(compare=False)

    def __getitem__(self, rc: Tuple[int, int]) -> Optional[Var]:
        return self.entries.get(rc)

    def rows(self) -> list[list[Optional[Var]]]:
        return [[self.entries.get((r, c)) for c in range(self.order)] for r in range(self.order)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SymbolicMatrix":
        if len(rows) != len(cols):
            raise ValueError("submatrix must be square")
        ents = {}
        for i, r in enumerate(rows):
            for j, c in enumerate(cols):
                v = self.entries.get((r, c))
                if v is not None:
                    ents[(i, j)] = v
        return SymbolicMatrix(len(rows), ents, self.universe)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Optional[Var]]], universe: Universe) -> "SymbolicMatrix":
        ents = {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row) if v is not None}
        return cls(len(rows), ents, universe)

    def __str__(self):
        cells = [[str(v) if v else "." for v in row] for row in self.rows()]
        w = max((len(c) for row in cells for c in row), default=1)
        return "\n".join(" ".join(c.rjust(w) for c in row) for row in cells)


def build_matrix(spec: SylvesterSpec) -> SymbolicMatrix:
    m, n = spec.m, spec.n
    ents = {}
    for c in range(n):
        for i in range(m + 1):
            ents[(c + i, c)] = Var("f", i)
    for c in range(m):
        for j in range(n + 1):
            ents[(c + j, n + c)] = Var("g", j)
    return SymbolicMatrix(m + n, ents, spec.universe)


def naive_determinant(matrix: SymbolicMatrix) -> SparsePoly:
    """Cofactor expansion along successive rows, memoised on the set of used columns."""
    order = matrix.order
    if order > NAIVE_MAX_ORDER:
        raise FeasibilityError("naive determinant too large", order=order, limit=NAIVE_MAX_ORDER)
    u = matrix.universe
    arity = u.arity
    if order == 0:
        return SparsePoly.constant(u, 1)
    unit = [tuple(1 if k == i else 0 for k in range(arity)) for i in range(arity)]
    row_entries = [
        [(c, u.index(v.group, v.index)) for c in range(order) if (v := matrix.entries.get((r, c))) is not None]
        for r in range(order)
    ]
    memo: Dict[int, Dict[Monomial, int]] = {}

    def minor(row: int, used: int) -> Dict[Monomial, int]:
        if row == order:
            return {(0,) * arity: 1}
        hit = memo.get(used)
        if hit is not None:
            return hit
        acc: Dict[Monomial, int] = {}
        for c, var in row_entries[row]:
            if used >> c & 1:
                continue
            sub = minor(row + 1, used | (1 << c))
            if not sub:
                continue
            # sign of the cofactor: position of column c among the unused columns
            pos = c - bin(used & ((1 << c) - 1)).count("1")
            sgn = -1 if pos & 1 else 1
            inc = unit[var]
            for mon, v in sub.items():
                key = tuple(a + b for a, b in zip(mon, inc))
                acc[key] = acc.get(key, 0) + sgn * v
        acc = {k: v for k, v in acc.items() if v}
        memo[used] = acc
        return acc

    return SparsePoly._trusted(u, dict(minor(0, 0)))


def _packed_to_f_exps(key: int, base: int, width: int) -> Tuple[int, ...]:
    return _pykernels.unpack(key, base, width)


@lru_cache(maxsize=8192)
def _band_minor_cached(m: int, n: int, removed: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    packed = kernels.band_minor(m, n, removed)
    base = n + 1
    return tuple(sorted((_packed_to_f_exps(k, base, m + 1), v) for k, v in packed.items()))


def f_band_minor(spec: SylvesterSpec, removed_rows: Iterable[int]) -> SparsePoly:
    """Determinant of the n x n f-block after deleting ``m`` rows.

    The result lives in the full universe of ``spec`` (g-exponents zero).
    """
    removed = tuple(sorted(set(removed_rows)))
    if len(removed) != spec.m:
        raise ValueError(f"expected {spec.m} removed rows, got {len(removed)}")
    if removed and (removed[0] < 0 or removed[-1] >= spec.order):
        raise ValueError(f"removed rows must lie in 0..{spec.order - 1}")
    pad = (0,) * (spec.n + 1)
    terms = {exps + pad: v for exps, v in _band_minor_cached(spec.m, spec.n, removed)}
    return SparsePoly._trusted(spec.universe, terms)


def _check_envelope(spec: SylvesterSpec) -> None:
    nmax = envelope_nmax(DEFAULT_MAX_N)
    if spec.m > MAX_M or spec.n > nmax:
        raise FeasibilityError("resultant expansion outside envelope", m=spec.m, n=spec.n, max_m=MAX_M, max_n=nmax)


def _assemble(spec: SylvesterSpec, grouped) -> SparsePoly:
    m, n = spec.m, spec.n
    base = n + 1
    terms: Dict[Monomial, int] = {}
    for gk, fpoly in grouped.items():
        gexps = [0] * (n + 1)
        for j in gk:
            gexps[j] += 1
        gt = tuple(gexps)
        for fk, v in fpoly.items():
            if v:
                terms[_pykernels.unpack(fk, base, m + 1) + gt] = v
    return SparsePoly._trusted(spec.universe, terms)


def expand_resultant(spec: SylvesterSpec, engine: str = "laplace", backend: Optional[str] = None) -> SparsePoly:
    """Exact expansion of ``Res(f, g)`` for generic f of degree m and g of degree n."""
    if engine == "naive":
        return naive_determinant(build_matrix(spec))
    if engine != "laplace":
        raise ValueError(f"unknown engine {engine!r}")
    _check_envelope(spec)
    return _assemble(spec, kernels.laplace_expand(spec.m, spec.n, backend=backend))


def g_monomial_slice(spec: SylvesterSpec, g_indices: Sequence[int]) -> SparsePoly:
    """f-polynomial multiplying the g-monomial ``prod(g_j for j in g_indices)`` in ``Res``.

    Only the handful of Laplace terms whose g-minor contains the requested
    monomial are evaluated, so this stays cheap for large n.  The result is
    returned in the full universe with the g-exponents set.
    """
    gidx = tuple(sorted(g_indices))
    if len(gidx) != spec.m or any(j < 0 or j > spec.n for j in gidx):
        raise ValueError(f"need {spec.m} g-indices in 0..{spec.n}, got {g_indices}")
    gexps = [0] * (spec.n + 1)
    for j in gidx:
        gexps[j] += 1
    gt = tuple(gexps)
    acc: Dict[Monomial, int] = {}
    for rows, sign in _pykernels.slice_placements(spec.m, spec.n, gidx):
        for exps, v in _band_minor_cached(spec.m, spec.n, rows):
            key = exps + gt
            acc[key] = acc.get(key, 0) + sign * v
    return SparsePoly._trusted(spec.universe, {k: v for k, v in acc.items() if v})


def restrict_to_binomial_g(spec: SylvesterSpec, res: SparsePoly) -> SparsePoly:
    """Specialise g to ``g_0 + g_n x^n`` by dropping every term with a middle g-variable."""
    nf = spec.m + 1
    keep = {mon: c for mon, c in res.terms.items() if not any(mon[nf + 1 : nf + spec.n])}
    return SparsePoly._trusted(res.universe, keep)
