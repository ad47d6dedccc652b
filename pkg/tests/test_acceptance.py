"""Acceptance criteria 1-10, one PASS/FAIL line each.

Runs under pytest (lines are written past output capture) or directly:
``python3 tests/test_acceptance.py``.
"""

import sys
import time
from math import factorial

import mpmath
import pytest

from resheight import asymptotics as asy
from resheight import cubic, verify
from resheight.bigpoly import coefficient_of, group_degrees, height, omega_degree_set
from resheight.quad import compute_A
from resheight.sylvester import SylvesterSpec, expand_resultant


def crit_quadratic():
    bad = []
    for n in range(3, 26):
        a = compute_A(n)
        want = n * factorial(n - a - 1) // (factorial(n - 2 * a) * factorial(a))
        spec = SylvesterSpec(2, n)
        res = expand_resultant(spec)
        mon = spec.universe.monomial(f={0: a, 1: n - 2 * a, 2: a}, g={0: 1, n: 1})
        if height(res) != want or abs(coefficient_of(res, mon)) != want:
            bad.append(n)
    return not bad, f"3<=n<=25 exact, extremal monomial attains; bad={bad}"


def crit_table_a():
    bad = [n for n, a in verify.table_a_by_n().items() if compute_A(n) != a]
    return not bad and len(verify.table_a_by_n()) == 97, f"97 entries, mismatches={bad}"


def crit_f_three_way():
    bad, count = [], 0
    for d in range(0, 13):
        for m in range(d + 1):
            for k in range(d - m + 1):
                for kp in range(d - m - k + 1):
                    idx = (m, k, kp, d - m - k - kp)
                    a, b = cubic.F_rec(idx), cubic.F_closed(idx)
                    c = cubic.F_det_oracle(idx) if d else 1
                    count += 1
                    if not a == b == c:
                        bad.append(idx)
    printed = {(1, 0, 0, 2): 1, (0, 1, 1, 1): -2, (0, 0, 3, 0): 1}
    pr_ok = all(cubic.F_rec(i) == cubic.F_closed(i) == cubic.F_det_oracle(i) == v for i, v in printed.items())
    return not bad and pr_ok, f"{count} indices with total <= 12, printed values ok={pr_ok}, bad={bad[:5]}"


def crit_cubic_oracle():
    bad, gaps = [], []
    for n in range(5, 13):
        vals = {}
        for l in range(n + 1):
            r = cubic.Hl_max(l, n, "auto")
            if r.method != "formula":
                gaps.append((n, l))
            vals[l] = r.value
        best = max(vals.values())
        arg = {l for l, v in vals.items() if v == best and 2 * l <= n}
        if n >= 6 and best != height(expand_resultant(SylvesterSpec(3, n))):
            bad.append(("height", n))
        if arg != verify.TABLE_HL_ARGMAX[n]:
            bad.append(("argmax", n, sorted(arg)))
    return not bad, f"6<=n<=12 height = max_l H_l, published max-H_l rows 5..12; oracle used at (n,l)={gaps}; bad={bad}"


def crit_h0_identity():
    bad, count = [], 0
    for w in range(1, 21):
        for m in range(w // 3 + 1):
            for k in range((w - 3 * m) // 2 + 1):
                kp = w - 3 * m - 2 * k
                idx = (m, k, kp, 2 * m + k)
                count += 1
                if not cubic.H0_closed(m, k, kp) == cubic.Hl_formula(0, idx) == cubic.Hl_formula_rec(0, idx):
                    bad.append(idx)
    return not bad, f"{count} tuples with 3m+2k+k' <= 20; bad={bad[:5]}"


def crit_homogeneity():
    bad = []
    for m in range(1, 4):
        for n in range(1, 13):
            spec = SylvesterSpec(m, n)
            res = expand_resultant(spec)
            lead = spec.universe.monomial(f={0: n}, g={n: m})
            ok = (group_degrees(res) == (n, m, True) and omega_degree_set(res) == {m * n}
                  and height(res) <= (m + 1) ** n * (n + 1) ** m and coefficient_of(res, lead) == 1)
            if not ok:
                bad.append((m, n))
    return not bad, f"m<=3, n<=12; bad={bad}"


def crit_constants():
    cs = asy.constants()
    printed = {k: c for k, c in cs.items() if c.printed}
    miss = sorted(k for k, c in printed.items() if not c.matches_printed())
    r = asy.identity_checks()
    ok_ratios = abs(r.cube_ratio - 1) < 1e-9 and abs(r.square_ratio - 1) < 1e-9
    ok_w = abs(r.weight_sum - 1) < 1e-10
    vals = ", ".join(f"{k}={mpmath.nstr(c.value, 12)}" for k, c in sorted(printed.items()))
    return not miss and ok_ratios and ok_w, f"{vals}; ratios ok={ok_ratios}, 3m+2k+k'=1 ok={ok_w}"


def crit_convergence():
    met = verify.convergence_metrics()
    ok = (abs(1 - met["cubic_rho_100"]) < 0.15 and -1.5 <= met["cubic_slope"] <= -0.5
          and abs(1 - met["quad_rho_2000"]) < 0.01)
    return ok, ("rho_cubic(100)={cubic_rho_100:.5f} slope={cubic_slope:.3f} "
                "rho_quad(2000)={quad_rho_2000:.6f}").format(**met)


def crit_tribonacci():
    bad = verify.tribonacci_check(200)
    return not bad, f"m <= 200; violations={bad}"


def crit_conjecture():
    quad_bad = [n for n in range(3, 13) if not verify.conjecture_probe(2, n).equal]
    cub = {n: verify.conjecture_probe(3, n).equal for n in range(1, 13)}
    status = "".join("=" if v else "x" for v in cub.values())
    return not quad_bad, f"m=2 equal for 3..12 (bad={quad_bad}); m=3 n=1..12 observed [{status}]"


CRITERIA = [
    (1, "quadratic exactness", crit_quadratic),
    (2, "A_n table", crit_table_a),
    (3, "F three-way agreement", crit_f_three_way),
    (4, "cubic oracle equivalence", crit_cubic_oracle),
    (5, "H_0 identity", crit_h0_identity),
    (6, "homogeneity", crit_homogeneity),
    (7, "asymptotic constants", crit_constants),
    (8, "convergence", crit_convergence),
    (9, "tribonacci bounds", crit_tribonacci),
    (10, "conjecture probe", crit_conjecture),
]


def _line(num, title, ok, detail, secs):
    return f"criterion {num:>2} {'PASS' if ok else 'FAIL'}  {title} ({secs:.1f}s): {detail}"


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"c{c[0]:02d}" for c in CRITERIA])
def test_criterion(num, title, fn, capsys):
    t0 = time.perf_counter()
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(num, title, ok, detail, time.perf_counter() - t0))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for num, title, fn in CRITERIA:
        t0 = time.perf_counter()
        ok, detail = fn()
        failed += not ok
        print(_line(num, title, ok, detail, time.perf_counter() - t0))
    sys.exit(1 if failed else 0)
