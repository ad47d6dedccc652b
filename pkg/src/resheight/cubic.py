"""Cubic-case coefficients of Res(f, g).

``F(m, k, k', m')`` is the coefficient of ``f_0^m f_1^k f_2^k' f_3^m'`` in the
determinant of the d x d banded matrix with ``f_2`` on the diagonal, ``f_1``,
``f_0`` above and ``f_3`` below (``d = m + k + k' + m'``, ``F(0,0,0,0) = 1``).
It is available three ways: the recurrence (:func:`F_rec`), the binomial
closed form (:func:`F_closed`) and a direct symbolic determinant
(:func:`F_det_oracle`).

``H_l(m, k, k', m')`` is the coefficient of ``f_0^m f_1^k f_2^k' f_3^m' g_0 g_l g_n``
in ``Res(f, g)`` with ``n = m + k + k' + m'``.  Closed combinations of F
are tabulated for ``l = 0..5`` in :data:`HL_TABLE`; any other coefficient
comes from the exact Laplace slice of the resultant.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, FrozenSet, Iterator, NamedTuple, Optional, Tuple

from .bigpoly import coefficient_of
from .errors import DomainError, FeasibilityError, UnsupportedIndexError
from .quad import factorial
from .sylvester import SylvesterSpec, envelope_nmax, expand_resultant, f_band_minor, g_monomial_slice

F_ORACLE_MAX_D = 12


class FIndex(NamedTuple):
    m: int
    k: int
    kp: int
    mp: int

    @property
    def total(self) -> int:
        return self.m + self.k + self.kp + self.mp

    def shifted(self, dm: int, dk: int, dkp: int, dmp: int) -> "FIndex":
        return FIndex(self.m - dm, self.k - dk, self.kp - dkp, self.mp - dmp)


# ---------------------------------------------------------------- F


class _FTable:
    """Dense table of F filled by the recurrence, in order of increasing total degree."""

    def __init__(self):
        self._lock = threading.Lock()
        self.bound = -1
        self.data: Dict[Tuple[int, int, int, int], int] = {}

    def ensure(self, bound: int) -> None:
        if bound <= self.bound:
            return
        with self._lock:
            data = self.data
            for d in range(self.bound + 1, bound + 1):
                for m in range(d + 1):
                    for k in range(d - m + 1):
                        for kp in range(d - m - k + 1):
                            mp = d - m - k - kp
                            if d == 0:
                                data[(0, 0, 0, 0)] = 1
                                continue
                            v = (
                                data.get((m, k, kp - 1, mp), 0)
                                - data.get((m, k - 1, kp, mp - 1), 0)
                                + data.get((m - 1, k, kp, mp - 2), 0)
                            )
                            if v:
                                data[(m, k, kp, mp)] = v
            self.bound = bound

    def get(self, idx: Tuple[int, int, int, int]) -> int:
        if min(idx) < 0:
            return 0
        d = sum(idx)
        if d > self.bound:
            self.ensure(max(d, 2 * self.bound, 16))
        return self.data.get(tuple(idx), 0)


_F_TABLE = _FTable()


def F_rec(idx: Tuple[int, int, int, int]) -> int:
    """F via ``F(m,k,k',m') = F(m,k,k'-1,m') - F(m,k-1,k',m'-1) + F(m-1,k,k',m'-2)``."""
    return _F_TABLE.get(tuple(idx))


def F_closed(idx: Tuple[int, int, int, int]) -> int:
    """``(-1)^k C(m+k, k) C(k'+k+m, k+m)`` on ``m' = 2m + k``, zero elsewhere."""
    m, k, kp, mp = idx
    if m < 0 or k < 0 or kp < 0 or mp < 0 or mp != 2 * m + k:
        return 0
    v = comb(m + k, k) * comb(kp + k + m, k + m)
    return -v if k % 2 else v


@lru_cache(maxsize=None)
def _f_det_coeffs(d: int) -> Dict[Tuple[int, int, int, int], int]:
    # The banded matrix is the f-block of Sylvester(3, d) without rows 0, 1 and d + 2.
    poly = f_band_minor(SylvesterSpec(3, d), (0, 1, d + 2))
    return {mon[:4]: c for mon, c in poly.terms.items()}


def F_det_oracle(idx: Tuple[int, int, int, int]) -> int:
    d = sum(idx)
    if d < 1 or d > F_ORACLE_MAX_D:
        raise FeasibilityError("F determinant oracle dimension out of range", d=d, max_d=F_ORACLE_MAX_D)
    if min(idx) < 0:
        return 0
    return _f_det_coeffs(d).get(tuple(idx), 0)


def f_matrix(d: int):
    """The d x d banded matrix defining F, as a :class:`SymbolicMatrix` over ``(f_0..f_3)``."""
    from .bigpoly import Universe
    from .sylvester import SymbolicMatrix, Var

    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            s = 2 + i - j
            row.append(Var("f", s) if 0 <= s <= 3 else None)
        rows.append(row)
    return SymbolicMatrix.from_rows(rows, Universe(4, 0))


# ---------------------------------------------------------------- H_l

def H0_closed(m: int, k: int, kp: int) -> int:
    """``(-1)^k (3m + 2k + k') (m + k + k' - 1)! / (k! m! k'!)``; ``m' = 2m + k`` is implied."""
    if min(m, k, kp) < 0:
        raise DomainError("exponents must be non-negative")
    if m + k + kp == 0:
        raise DomainError("H0_closed needs m + k + k' >= 1")
    val = Fraction((3 * m + 2 * k + kp) * factorial(m + k + kp - 1), factorial(k) * factorial(m) * factorial(kp))
    if val.denominator != 1:  # pragma: no cover
        raise AssertionError(f"H0_closed({m}, {k}, {kp}) is not an integer")
    v = val.numerator
    return -v if k % 2 else v


# Each row: (coefficient, dm, dk, dk', dm') standing for coefficient * F(m-dm, k-dk, k'-dk', m'-dm').
HL_TABLE: Dict[int, Tuple[Tuple[int, int, int, int, int], ...]] = {
    0: (
        (1, 1, 0, 0, 2), (-1, 0, 0, 1, 0), (2, 0, 0, 0, 0),
    ),
    1: (
        (2, 1, 0, 1, 1), (-1, 0, 1, 1, 0), (2, 0, 1, 0, 0), (-3, 1, 0, 0, 1),
    ),
    2: (
        (2, 1, 0, 2, 0), (-4, 1, 0, 1, 0), (-1, 2, 1, 0, 3), (-3, 2, 0, 0, 2),
        (1, 1, 2, 0, 2), (-1, 0, 2, 1, 0), (2, 0, 2, 0, 0),
    ),
    3: (
        (-2, 2, 0, 2, 1), (3, 1, 1, 2, 0), (-6, 1, 1, 1, 0), (1, 3, 0, 0, 3),
        (5, 2, 0, 0, 1), (-2, 2, 1, 0, 2), (-1, 2, 2, 0, 3), (1, 1, 3, 0, 2),
        (-1, 0, 3, 1, 0), (2, 0, 3, 0, 0),
    ),
    4: (
        (-2, 5, 0, 0, 6), (-1, 4, 0, 0, 4), (3, 3, 1, 1, 3), (-9, 2, 2, 1, 2),
        (1, 2, 3, 0, 3), (-7, 2, 2, 0, 2), (13, 3, 1, 0, 3), (6, 3, 0, 2, 2),
        (2, 2, 0, 3, 0), (1, 1, 4, 0, 2), (-1, 0, 4, 1, 0), (2, 0, 4, 0, 0),
        (4, 1, 2, 2, 0), (-8, 1, 2, 1, 0),
    ),
    5: (
        (2, 3, 0, 3, 1), (18, 3, 1, 2, 2), (-7, 3, 0, 2, 1), (12, 4, 1, 1, 4),
        (-13, 4, 0, 1, 3), (-1, 5, 1, 0, 6), (-3, 5, 0, 0, 5), (5, 2, 1, 2, 0),
        (2, 1, 5, 0, 2), (1, 0, 5, 0, 0), (-1, 0, 6, 0, 1), (5, 1, 4, 1, 1),
        (-5, 1, 3, 1, 0), (-15, 2, 4, 0, 3), (-25, 2, 3, 0, 2), (10, 3, 2, 1, 3),
        (15, 4, 2, 0, 5),
    ),
}


def Hl_formula(l: int, idx: Tuple[int, int, int, int]) -> int:
    """Tabulated F-combination for ``H_l`` (``l = 0..5``), evaluated with :func:`F_closed`.

    Against the resultant as built here the combination equals ``(-1)^l``
    times the coefficient, and only from ``n >= HL_FORMULA_MIN_N[l]``.
    """
    rows = HL_TABLE.get(l)
    if rows is None:
        raise UnsupportedIndexError(f"no tabulated formula for l={l}; available: 0..5")
    idx = FIndex(*idx)
    return sum(c * F_closed(idx.shifted(dm, dk, dkp, dmp)) for c, dm, dk, dkp, dmp in rows)


def Hl_formula_rec(l: int, idx: Tuple[int, int, int, int]) -> int:
    """Same combination evaluated with the recurrence table instead of the closed form."""
    rows = HL_TABLE.get(l)
    if rows is None:
        raise UnsupportedIndexError(f"no tabulated formula for l={l}; available: 0..5")
    idx = FIndex(*idx)
    return sum(c * F_rec(idx.shifted(dm, dk, dkp, dmp)) for c, dm, dk, dkp, dmp in rows)


def indices_for(l: int, n: int) -> Iterator[FIndex]:
    """Exponent tuples summing to n that can carry ``g_0 g_l g_n``.

    Weighted homogeneity forces ``m' = 2m + k - l``.
    """
    for m in range(n + 1):
        for k in range(n - m + 1):
            mp = 2 * m + k - l
            kp = n - m - k - mp
            if mp >= 0 and kp >= 0:
                yield FIndex(m, k, kp, mp)


@lru_cache(maxsize=512)
def _oracle_slice(l: int, n: int) -> Dict[FIndex, int]:
    spec = SylvesterSpec(3, n)
    poly = g_monomial_slice(spec, (0, l, n))
    return {FIndex(*mon[:4]): c for mon, c in poly.terms.items()}


def Hl_oracle(l: int, idx: Tuple[int, int, int, int]) -> int:
    """Exact ``H_l`` read from the resultant itself (Laplace slice on ``g_0 g_l g_n``)."""
    n = sum(idx)
    if n < 1 or not 0 <= l <= n:
        raise DomainError(f"need n >= 1 and l in 0..n, got l={l}, n={n}")
    if min(idx) < 0:
        return 0
    return _oracle_slice(l, n).get(FIndex(*idx), 0)


def Hl_oracle_full(l: int, idx: Tuple[int, int, int, int]) -> int:
    """``H_l`` read off the complete expansion of ``Res(3, n)``; slow, the strongest oracle."""
    n = sum(idx)
    mon = (*idx, *_g_exps(n, (0, l, n)))
    return coefficient_of(_full_expansion(n), mon)


@lru_cache(maxsize=32)
def _full_expansion(n: int):
    return expand_resultant(SylvesterSpec(3, n))


def _g_exps(n: int, gidx) -> Tuple[int, ...]:
    out = [0] * (n + 1)
    for j in gidx:
        out[j] += 1
    return tuple(out)


class HlMax(NamedTuple):
    value: int
    argmax: FrozenSet[FIndex]
    method: str


# Smallest n at which each tabulated combination agrees with the resultant;
# below it the boundary terms of the combination are wrong.
HL_FORMULA_MIN_N = {0: 1, 1: 2, 2: 4, 3: 5, 4: 9, 5: 10}


def _formula_source(l: int, n: int) -> Optional[int]:
    for src in (l, n - l):
        if src in HL_TABLE and n >= HL_FORMULA_MIN_N[src]:
            return src
    return None


def formula_covers(l: int, n: int) -> bool:
    return 0 <= l <= n and _formula_source(l, n) is not None


def Hl_max(l: int, n: int, method: str = "auto") -> HlMax:
    """``max |H_l(m, k, k', m')|`` over tuples summing to n, and the tuples attaining it.

    ``method``: ``formula`` (table for l <= 5, or ``n - l <= 5`` via the
    reciprocal symmetry, each only from its ``HL_FORMULA_MIN_N``), ``expand`` (exact Laplace slice, n-envelope from
    ``RESHEIGHT_NMAX``, default 80), or ``auto`` (formula where available).
    When the symmetry is used the reported argmax tuples are those of the
    mirrored coefficient ``H_{n-l}``.
    """
    if not 0 <= l <= n:
        raise DomainError(f"l must lie in 0..{n}, got {l}")
    if method == "auto":
        method = "formula" if formula_covers(l, n) else "expand"
    if method == "formula":
        src = _formula_source(l, n)
        if src is None:
            raise FeasibilityError("no valid formula for this (l, n); use method='expand'", l=l, n=n)
        vals = {idx: Hl_formula(src, idx) for idx in indices_for(src, n)}
    elif method == "expand":
        nmax = envelope_nmax(80)
        if n > nmax:
            raise FeasibilityError("H_l oracle outside envelope", n=n, max_n=nmax)
        vals = dict(_oracle_slice(l, n))
    else:
        raise ValueError(f"unknown method {method!r}")
    best = max((abs(v) for v in vals.values()), default=0)
    arg = frozenset(i for i, v in vals.items() if abs(v) == best and best)
    return HlMax(best, arg, method)


def hl_values(n: int, method: str = "auto") -> Dict[int, int]:
    """``H_l(n)`` for every ``l = 0..n``."""
    return {l: Hl_max(l, n, method).value for l in range(n + 1)}


def hl_argmax_table(n: int, method: str = "auto") -> FrozenSet[int]:
    """The l attaining ``max_l H_l(n)``, as representatives ``l <= n/2`` of the pairs ``{l, n-l}``."""
    vals = hl_values(n, method)
    best = max(vals.values())
    return frozenset(l for l, v in vals.items() if v == best and 2 * l <= n)


def cubic_height(n: int) -> int:
    """Height of ``Res(3, n)`` by full expansion."""
    from .bigpoly import height

    return height(_full_expansion(n))


def H0_max_closed(n: int) -> Tuple[int, Tuple[int, int, int]]:
    """``H_0(n)`` by enumerating ``3m + 2k + k' = n`` in :func:`H0_closed`; returns value and ``(m, k, k')``."""
    best, arg = 0, None
    for m in range(n // 3 + 1):
        for k in range((n - 3 * m) // 2 + 1):
            kp = n - 3 * m - 2 * k
            if m + k + kp == 0:
                continue
            v = abs(H0_closed(m, k, kp))
            if v > best:
                best, arg = v, (m, k, kp)
    return best, arg


# ---------------------------------------------------------------- bounding sequences


class TribonacciBounds(NamedTuple):
    A: Tuple[int, ...]
    B: Tuple[int, ...]
    C: Tuple[int, ...]

    def at(self, seq: str, m: int) -> int:
        """1-based access: ``at('A', 1) == 1``."""
        return getattr(self, seq)[m - 1]


def tribonacci_bounds(M: int) -> TribonacciBounds:
    """Coefficients of the unrolled bound ``H_l(n) <= A_j H_l(n-j) + B_j H_l(n-j-1) + C_j H_l(n-j-2)``.

    Starting from ``A_1 = B_1 = C_1 = 1``: ``A_j = A_{j-1} + B_{j-1}``,
    ``B_j = A_{j-1} + C_{j-1}``, ``C_j = A_{j-1}``.  This gives
    ``A = 1, 2, 4, 7, 13, ...`` (tribonacci), ``B_j = A_{j-1} + A_{j-2}``
    and ``C_j = A_{j-1}``.
    """
    if M < 3:
        raise DomainError(f"need M >= 3, got {M}")
    A, B, C = [1], [1], [1]
    for _ in range(M - 1):
        a, b, c = A[-1], B[-1], C[-1]
        A.append(a + b)
        B.append(a + c)
        C.append(a)
    return TribonacciBounds(tuple(A), tuple(B), tuple(C))
