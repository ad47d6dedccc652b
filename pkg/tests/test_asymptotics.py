import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from resheight import asymptotics as asy
from resheight.cubic import H0_max_closed
from resheight.errors import BracketError, DomainError
from resheight.quad import compute_A


@pytest.mark.parametrize("name,printed", [
    ("alpha_quad", "1.6180"), ("beta_quad", "2.3644"), ("alpha_cubic", "1.83928"),
    ("beta_cubic", "8.13488"), ("c", "0.6184199224"),
])
def test_printed_decimals(name, printed):
    c = asy.constants()[name]
    assert c.printed == printed
    assert c.matches_printed()


@pytest.mark.parametrize("name", ["alpha_quad", "beta_quad", "alpha_cubic", "beta_cubic", "c",
                                  "m_hat", "k_hat", "kp_hat"])
def test_residuals(name):
    assert asy.constants()[name].residual() < mpmath.mpf(10) ** -30


def test_known_closed_forms():
    cs = asy.constants()
    with mpmath.workdps(40):
        assert abs(cs["alpha_quad"].value - (1 + mpmath.sqrt(5)) / 2) < mpmath.mpf(10) ** -35
        assert abs(cs["beta_quad"].value - mpmath.mpf(125 / 4) ** (mpmath.mpf(1) / 4)) < mpmath.mpf(10) ** -12


def test_identities():
    r = asy.identity_checks()
    assert r.ok
    assert abs(r.cube_ratio - 1) < 1e-9 and abs(r.square_ratio - 1) < 1e-9
    assert abs(r.weight_sum - 1) < 1e-10
    assert not asy.identity_checks(m_hat=0.1).ok


def test_root_find():
    r = asy.root_find((1, 0, -2), (1, 2))
    with mpmath.workdps(40):
        assert abs(r - mpmath.sqrt(2)) < mpmath.mpf(10) ** -30
    with pytest.raises(BracketError):
        asy.root_find((1, 0, 1), (-1, 1))
    assert asy.root_find((1, -1), (1, 3)) == 1


def test_c_against_tribonacci_growth():
    # A_n / alpha^n -> c for the tribonacci sequence 1, 2, 4, 7, ...
    from resheight.cubic import tribonacci_bounds

    tb = tribonacci_bounds(200)
    alpha = asy.constants()["alpha_cubic"].value
    with mpmath.workdps(40):
        est = tb.at("A", 200) / alpha**200
    assert abs(est - asy.constants()["c"].value) < mpmath.mpf(10) ** -20


def test_A_ratio_limit():
    assert abs(compute_A(10**6) / 10**6 - float(asy.A_ratio_limit())) < 1e-5


@given(st.integers(1, 200))
def test_H0_max_prefilter_is_exact(n):
    assert asy.H0_max(n) == H0_max_closed(n)


def test_H0_max_domain():
    with pytest.raises(DomainError):
        asy.H0_max(0)


def test_cubic_convergence():
    assert abs(1 - asy.error_series("cubic", 100, 100).rows[0].ratio) < 0.15
    slope = asy.error_series("cubic", 200, 2000, 50).decay_slope()
    assert -1.5 <= slope <= -0.5


def test_quad_convergence():
    ser = asy.error_series("quad", 250, 2000, 250)
    assert abs(1 - ser.ratios()[2000]) < 0.01
    assert -1.5 <= ser.decay_slope() <= -0.5


def test_quad_ratio_not_monotone():
    # the floor in A_n makes the approach to 1 ragged
    r = asy.error_series("quad", 500, 1000, 500).ratios()
    assert r[1000] < r[500]


def test_series_csv_and_errors():
    text = asy.error_series("quad", 10, 12).to_csv().splitlines()
    assert text[0] == "n,exact,log_estimate,ratio"
    assert len(text) == 4
    with pytest.raises(ValueError):
        asy.error_series("quartic", 1, 2)
    with pytest.raises(DomainError):
        asy.error_series("quad", 2, 4)


def test_beta0_normalisation():
    # only the l = 0 constant is reproduced with the alpha^n / (pi n) normalisation
    n = 400
    h0 = asy.H0_max(n)[0]
    le = asy.log_estimate("cubic", n, asy.BETA_L[0])
    assert abs(asy.normalized_ratio(h0, le) - 1) < 0.05


def test_log_estimate_large_n_is_finite():
    assert math.isfinite(float(asy.log_estimate("cubic", 10**5)))
