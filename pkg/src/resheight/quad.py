"""Height of Res(f, g) for quadratic f.

The largest coefficient sits on ``g_0 g_n f_0^A f_1^(n-2A) f_2^A`` where
``A = A_n`` is the floor of the root in ``[0, n/2]`` of

    p_n(z) = (n - 2z + 1)(n - 2z + 2) - z(n - z) = 5z^2 - (5n + 6)z + (n + 1)(n + 2),

and the height is ``n (n - A - 1)! / ((n - 2A)! A!)``.  Everything here is
integer (or rational) arithmetic; no floating point is involved.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import List

from .bigpoly import Monomial, SparsePoly, Universe
from .errors import DomainError

_fact_lock = threading.Lock()
_fact = [1]


def factorial(k: int) -> int:
    """Memoised k!; the table only ever grows."""
    if k < 0:
        raise DomainError(f"factorial of negative number {k}")
    if k >= len(_fact):
        with _fact_lock:
            while len(_fact) <= k:
                _fact.append(_fact[-1] * len(_fact))
    return _fact[k]


def p_n_eval(n: int, z: int) -> int:
    return (n - 2 * z + 1) * (n - 2 * z + 2) - z * (n - z)


def _A_by_scan(n: int) -> int:
    # p_n is decreasing on [0, n/2] (vertex at n/2 + 3/5), so binary search the last z with p_n(z) >= 0.
    lo, hi = 0, n // 2
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if p_n_eval(n, mid) >= 0:
            lo = mid
        else:
            hi = mid - 1
    return lo


def A_closed_form(n: int) -> int:
    """floor((6 + 5n - sqrt(5n^2 - 4)) / 10) with an exact integer square root."""
    d = 5 * n * n - 4
    s = isqrt(d)
    num = 6 + 5 * n - s
    if s * s == d:
        return num // 10
    # sqrt(d) lies strictly inside (s, s + 1)
    return (num - 1) // 10


def compute_A(n: int) -> int:
    if n < 3:
        raise DomainError(f"A_n is defined for n >= 3, got {n}")
    a = _A_by_scan(n)
    b = A_closed_form(n)
    if a != b:  # pragma: no cover - would indicate an arithmetic bug
        raise AssertionError(f"A_{n}: scan gives {a}, closed form gives {b}")
    return a


@dataclass(frozen=True)
class QuadHeightResult:
    n: int
    A_n: int
    height: int
    extremal_monomial: Monomial

    @property
    def universe(self) -> Universe:
        return Universe.for_degrees(2, self.n)


def quad_height(n: int) -> QuadHeightResult:
    a = compute_A(n)
    num = n * factorial(n - a - 1)
    den = factorial(n - 2 * a) * factorial(a)
    h, r = divmod(num, den)
    if r:  # pragma: no cover
        raise AssertionError("height formula did not divide exactly")
    mon = Universe.for_degrees(2, n).monomial(f={0: a, 1: n - 2 * a, 2: a}, g={0: 1, n: 1})
    return QuadHeightResult(n, a, h, mon)


def P_profile(n: int) -> List[Fraction]:
    """``P(z) = (n - z - 1)! / ((n - 2z)! z!)`` for ``z = 0..n//2``.

    The values are rational (``P(0) = 1/n``); ``n * P(z)`` is the integer
    magnitude of the Girard coefficient of ``f_1^(n-2z) f_0^z``.
    """
    if n < 3:
        raise DomainError(f"profile needs n >= 3, got {n}")
    return [Fraction(factorial(n - z - 1), factorial(n - 2 * z) * factorial(z)) for z in range(n // 2 + 1)]


def profile_argmax(values: List[Fraction]) -> int:
    """Largest index attaining the maximum (ties occur when p_n has an integer root)."""
    best = max(values)
    return max(i for i, v in enumerate(values) if v == best)


def is_unimodal_at(values: List[Fraction], peak: int) -> bool:
    """Non-decreasing up to ``peak`` and strictly decreasing afterwards."""
    up = all(values[i] <= values[i + 1] for i in range(peak))
    down = all(values[i] > values[i + 1] for i in range(peak, len(values) - 1))
    return up and down


GIRARD_UNIVERSE = Universe(2, 0)  # (f_0, f_1), with f_2 normalised to 1


def girard_power_sum(n: int) -> SparsePoly:
    """``x_1^n + x_2^n`` for the roots of ``x^2 + f_1 x + f_0``, term by term from the Girard formula."""
    if n < 1:
        raise DomainError(f"power sums need n >= 1, got {n}")
    terms = {}
    outer = -1 if n % 2 else 1
    for i0 in range(n // 2 + 1):
        i1 = n - 2 * i0
        inner = -1 if (2 * i1 + i0) % 2 else 1
        mag, r = divmod(n * factorial(i1 + i0 - 1), factorial(i1) * factorial(i0))
        if r:  # pragma: no cover
            raise AssertionError("Girard coefficient is not integral")
        terms[(i0, i1)] = outer * inner * mag
    return SparsePoly(GIRARD_UNIVERSE, terms)


def newton_power_sum(n: int) -> SparsePoly:
    """Same power sum from Newton's identity ``p_k = e_1 p_{k-1} - e_2 p_{k-2}``.

    With ``f_2 = 1``: ``e_1 = -f_1`` and ``e_2 = f_0``.  Independent of the
    Girard formula; used to validate it.
    """
    u = GIRARD_UNIVERSE
    e1 = -SparsePoly.variable(u, "f", 1)
    e2 = SparsePoly.variable(u, "f", 0)
    prev, cur = SparsePoly.constant(u, 2), e1
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, e1 * cur - e2 * prev
    return cur
