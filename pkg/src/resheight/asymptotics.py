"""Algebraic constants of the height asymptotics and empirical convergence series.

All reals are ``mpmath.mpf`` at :data:`PRECISION_DPS` decimal digits (well
above 64 bits of mantissa).  Exact heights stay Python ints; a ratio
``exact / estimate`` is formed in log space because ``alpha**n`` leaves the
double range long before n = 2000.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import mpmath
import numpy as np
from scipy.special import gammaln

from .cubic import H0_closed
from .errors import BracketError, DomainError
from .quad import compute_A, quad_height

PRECISION_DPS = 40

# Published decimals of the per-l constants in H_l(n) ~ beta_l alpha^n / (pi n).
BETA_L = {
    0: 8.13488,
    1: 3.71205,
    2: 0.92093,
    3: 1.01680,
    4: 0.31597,
    5: 0.01923,
    6: 0.05956,
}


def poly_eval(coeffs: Sequence, x):
    """Horner evaluation; ``coeffs`` runs from the leading coefficient down."""
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def poly_deriv(coeffs: Sequence) -> List:
    deg = len(coeffs) - 1
    return [c * (deg - i) for i, c in enumerate(coeffs[:-1])]


def root_find(coeffs: Sequence, bracket: Tuple, tol: float = 1e-30, dps: int = PRECISION_DPS) -> mpmath.mpf:
    """Root of an integer polynomial inside ``bracket``: bisection to ~1e-6, then Newton.

    Newton steps that leave the current bracket are replaced by bisection,
    so the iteration cannot escape.  Deterministic for fixed inputs.
    """
    if tol < 1e-14 and dps < 20:
        raise ValueError("tolerance below 1e-14 needs more working precision")
    with mpmath.workdps(dps):
        lo, hi = mpmath.mpf(Fraction(bracket[0]).numerator) / Fraction(bracket[0]).denominator, mpmath.mpf(
            Fraction(bracket[1]).numerator
        ) / Fraction(bracket[1]).denominator
        flo, fhi = poly_eval(coeffs, lo), poly_eval(coeffs, hi)
        if flo == 0:
            return +lo
        if fhi == 0:
            return +hi
        if (flo > 0) == (fhi > 0):
            raise BracketError(f"no sign change on {bracket} for {list(coeffs)}")
        while hi - lo > mpmath.mpf("1e-6"):
            mid = (lo + hi) / 2
            fm = poly_eval(coeffs, mid)
            if fm == 0:
                return mid
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
        d = poly_deriv(coeffs)
        x = (lo + hi) / 2
        for _ in range(200):
            fx = poly_eval(coeffs, x)
            dx = poly_eval(d, x)
            step = fx / dx if dx else mpmath.mpf(0)
            nx = x - step
            if not lo <= nx <= hi:
                nx = (lo + hi) / 2
            if (poly_eval(coeffs, nx) > 0) == (flo > 0):
                lo = nx
            else:
                hi = nx
            if abs(nx - x) < tol:
                return nx
            x = nx
        return x


@dataclass(frozen=True)
class AlgebraicConstant:
    name: str
    value: mpmath.mpf
    defining_poly: Tuple[int, ...]  # leading coefficient first
    bracket: Optional[Tuple[Fraction, Fraction]] = None
    printed: Optional[str] = None  # decimals as published, for regression
    expression: Optional[str] = None

    def residual(self) -> mpmath.mpf:
        with mpmath.workdps(PRECISION_DPS):
            return abs(poly_eval(self.defining_poly, self.value))

    def matches_printed(self) -> bool:
        """True when ``value`` rounds (or truncates) to the printed decimals."""
        if self.printed is None:
            return True
        digits = len(self.printed.split(".")[1])
        target = mpmath.mpf(self.printed)
        return abs(self.value - target) < mpmath.mpf(10) ** (-digits)

    def __float__(self):
        return float(self.value)


def _root_constant(name, coeffs, lo, hi, printed) -> AlgebraicConstant:
    br = (Fraction(lo), Fraction(hi))
    return AlgebraicConstant(name, root_find(coeffs, br), tuple(coeffs), br, printed)


def _radical_values() -> Dict[str, mpmath.mpf]:
    """The maximiser proportions (m, k, k') / n, from their closed radical forms."""
    with mpmath.workdps(PRECISION_DPS):
        s33 = mpmath.sqrt(33)
        a = mpmath.cbrt(1331 + 231 * s33)
        b = mpmath.cbrt(3267 + 627 * s33)
        c = mpmath.cbrt(3267 + 561 * s33)
        return {
            "m_hat": -a / 66 - 1 / (3 * a) + mpmath.mpf(1) / 3,
            "k_hat": b / 66 - 2 / b,
            "kp_hat": c / 66 + 1 / c,
        }


_RADICAL_EXPR = {
    "m_hat": "-(1331+231*sqrt(33))**(1/3)/66 - 1/(3*(1331+231*sqrt(33))**(1/3)) + 1/3",
    "k_hat": "(3267+627*sqrt(33))**(1/3)/66 - 2/(3267+627*sqrt(33))**(1/3)",
    "kp_hat": "(3267+561*sqrt(33))**(1/3)/66 + 1/(3267+561*sqrt(33))**(1/3)",
}


def _minimal_poly(expr: str) -> Tuple[int, ...]:
    import sympy

    x = sympy.Symbol("x")
    p = sympy.Poly(sympy.minimal_polynomial(sympy.sympify(expr), x), x)
    return tuple(int(c) for c in p.all_coeffs())


@lru_cache(maxsize=1)
def constants() -> Dict[str, AlgebraicConstant]:
    out = {
        "alpha_quad": _root_constant("alpha_quad", (1, -1, -1), 1, 2, "1.6180"),
        "beta_quad": _root_constant("beta_quad", (4, 0, 0, 0, -125), 2, 3, "2.3644"),
        "alpha_cubic": _root_constant("alpha_cubic", (1, -1, -1, -1), 1, 2, "1.83928"),
        "beta_cubic": _root_constant("beta_cubic", (1, -18, 110, -242), 8, 9, "8.13488"),
        "c": _root_constant("c", (44, -44, 12, -1), Fraction(6, 10), Fraction(7, 10), "0.6184199224"),
    }
    for name, val in _radical_values().items():
        out[name] = AlgebraicConstant(name, val, _minimal_poly(_RADICAL_EXPR[name]), expression=_RADICAL_EXPR[name])
    return out


class IdentityReport(NamedTuple):
    cube_ratio: mpmath.mpf  # k'^3 / (m (m + k + k')^2)
    square_ratio: mpmath.mpf  # k'^2 / (k (m + k + k'))
    weight_sum: mpmath.mpf  # 3m + 2k + k'
    ok: bool


def identity_checks(m_hat=None, k_hat=None, kp_hat=None, tol: float = 1e-9) -> IdentityReport:
    """Check the two unit ratios and the weight normalisation of the maximiser proportions."""
    cs = constants()
    m = cs["m_hat"].value if m_hat is None else mpmath.mpf(m_hat)
    k = cs["k_hat"].value if k_hat is None else mpmath.mpf(k_hat)
    kp = cs["kp_hat"].value if kp_hat is None else mpmath.mpf(kp_hat)
    with mpmath.workdps(PRECISION_DPS):
        s = m + k + kp
        r1 = kp**3 / (m * s**2)
        r2 = kp**2 / (k * s)
        w = 3 * m + 2 * k + kp
    ok = abs(r1 - 1) < tol and abs(r2 - 1) < tol and abs(w - 1) < 1e-10
    return IdentityReport(r1, r2, w, ok)


def A_ratio_limit() -> mpmath.mpf:
    """``lim A_n / n = (5 - sqrt 5) / 10``."""
    with mpmath.workdps(PRECISION_DPS):
        return (5 - mpmath.sqrt(5)) / 10


# ---------------------------------------------------------------- exact cubic H_0(n)


def H0_max(n: int) -> Tuple[int, Tuple[int, int, int]]:
    """Exact ``H_0(n) = max |H0_closed(m, k, k')|`` over ``3m + 2k + k' = n``.

    A vectorised log-gamma pass ranks all ``(m, k)``; only candidates within
    a generous margin of the float maximum are evaluated exactly, and the
    exact integers decide.
    """
    if n < 1:
        raise DomainError("n must be positive")
    ms, ks = [], []
    for m in range(n // 3 + 1):
        kk = np.arange((n - 3 * m) // 2 + 1)
        ms.append(np.full(kk.shape, m))
        ks.append(kk)
    m = np.concatenate(ms).astype(float)
    k = np.concatenate(ks).astype(float)
    kp = n - 3 * m - 2 * k
    tot = m + k + kp
    with np.errstate(divide="ignore", invalid="ignore"):
        lv = np.log(n) + gammaln(tot) - gammaln(m + 1) - gammaln(k + 1) - gammaln(kp + 1)
    lv[tot == 0] = -np.inf
    top = lv.max()
    # float error of gammaln near n = 1e4 is ~1e-10 absolute; the margin is far wider
    cand = np.nonzero(lv >= top - 1e-6 * max(1.0, abs(top)))[0]
    best, arg = 0, None
    for i in cand:
        mi, ki, kpi = int(m[i]), int(k[i]), int(kp[i])
        v = abs(H0_closed(mi, ki, kpi))
        if v > best or (v == best and (mi, ki, kpi) < arg):
            best, arg = v, (mi, ki, kpi)
    return best, arg


# ---------------------------------------------------------------- error series


class SeriesRow(NamedTuple):
    n: int
    exact: int
    log_estimate: float  # natural log of the asymptotic main term
    ratio: float  # exact / estimate


@dataclass
class ErrorSeries:
    case: str
    rows: List[SeriesRow] = field(default_factory=list)

    def ratios(self) -> Dict[int, float]:
        return {r.n: r.ratio for r in self.rows}

    def decay_slope(self, lo: Optional[int] = None, hi: Optional[int] = None) -> float:
        """Least-squares slope of ``log|1 - ratio|`` against ``log n``."""
        pts = [(math.log(r.n), math.log(abs(1 - r.ratio))) for r in self.rows
               if (lo is None or r.n >= lo) and (hi is None or r.n <= hi) and r.ratio != 1]
        if len(pts) < 2:
            raise ValueError("need at least two points for a slope")
        xs, ys = np.array(pts).T
        return float(np.polyfit(xs, ys, 1)[0])

    def to_csv(self) -> str:
        lines = ["n,exact,log_estimate,ratio"]
        lines += [f"{r.n},{r.exact},{r.log_estimate:.12f},{r.ratio:.15f}" for r in self.rows]
        return "\n".join(lines) + "\n"


def _log_int(x: int) -> mpmath.mpf:
    with mpmath.workdps(PRECISION_DPS):
        return mpmath.log(mpmath.mpf(x))


def log_estimate(case: str, n: int, beta=None) -> mpmath.mpf:
    """Log of the main term: ``beta alpha^n / sqrt(pi n)`` (quad) or ``beta alpha^n / (pi n)`` (cubic)."""
    cs = constants()
    with mpmath.workdps(PRECISION_DPS):
        if case == "quad":
            b = cs["beta_quad"].value if beta is None else mpmath.mpf(beta)
            return mpmath.log(b) + n * mpmath.log(cs["alpha_quad"].value) - mpmath.log(mpmath.pi * n) / 2
        if case == "cubic":
            b = cs["beta_cubic"].value if beta is None else mpmath.mpf(beta)
            return mpmath.log(b) + n * mpmath.log(cs["alpha_cubic"].value) - mpmath.log(mpmath.pi * n)
    raise ValueError(f"unknown case {case!r}")


def exact_height(case: str, n: int) -> int:
    if case == "quad":
        return quad_height(n).height
    if case == "cubic":
        return H0_max(n)[0]
    raise ValueError(f"unknown case {case!r}")


def normalized_ratio(exact: int, log_est) -> float:
    with mpmath.workdps(PRECISION_DPS):
        return float(mpmath.exp(_log_int(exact) - log_est))


def error_series(case: str, n_lo: int, n_hi: int, step: int = 1,
                 height_fn: Optional[Callable[[int], int]] = None, beta=None) -> ErrorSeries:
    """Ratios of exact heights to the asymptotic main term for ``n = n_lo, n_lo + step, ..., <= n_hi``."""
    if case not in ("quad", "cubic"):
        raise ValueError(f"unknown case {case!r}")
    if case == "quad" and n_lo < 3:
        raise DomainError("quadratic series starts at n = 3")
    fn = height_fn or (lambda n: exact_height(case, n))
    out = ErrorSeries(case)
    for n in range(n_lo, n_hi + 1, step):
        h = fn(n)
        le = log_estimate(case, n, beta)
        out.rows.append(SeriesRow(n, h, float(le), normalized_ratio(h, le)))
    return out
