import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from resheight.bigpoly import SparsePoly, coefficient_of, height
from resheight.errors import FeasibilityError
from resheight.sylvester import (
    SylvesterSpec, Var, build_matrix, expand_resultant, f_band_minor, g_monomial_slice, naive_determinant,
    restrict_to_binomial_g,
)

SMALL = [(m, n) for m in range(1, 5) for n in range(1, 10) if m + n <= 9]


def sympy_resultant(spec):
    """Independent oracle: sympy's resultant of the generic polynomials, in our variable order."""
    x = sympy.Symbol("x")
    f = sympy.symbols(f"f0:{spec.m + 1}")
    g = sympy.symbols(f"g0:{spec.n + 1}")
    # f_0 is the leading coefficient in this convention
    F = sum(f[i] * x ** (spec.m - i) for i in range(spec.m + 1))
    G = sum(g[j] * x ** (spec.n - j) for j in range(spec.n + 1))
    poly = sympy.Poly(sympy.resultant(F, G, x), *f, *g)
    return SparsePoly(spec.universe, {mon: int(c) for mon, c in poly.terms()})


def test_spec_validation():
    with pytest.raises(ValueError):
        SylvesterSpec(0, 3)
    assert SylvesterSpec(2, 5).order == 7


@pytest.mark.parametrize("m,n", [(1, 1), (2, 3), (3, 4), (4, 2)])
def test_matrix_layout(m, n):
    mat = build_matrix(SylvesterSpec(m, n))
    for r in range(m + n):
        for c in range(n):
            want = Var("f", r - c) if 0 <= r - c <= m else None
            assert mat[r, c] == want
        for c in range(m):
            want = Var("g", r - c) if 0 <= r - c <= n else None
            assert mat[r, n + c] == want


@pytest.mark.parametrize("m,n", SMALL)
def test_engines_agree(m, n):
    spec = SylvesterSpec(m, n)
    assert expand_resultant(spec) == expand_resultant(spec, engine="naive")


@pytest.mark.parametrize("m,n", [(1, 3), (2, 3), (2, 4), (3, 3), (3, 4)])
def test_against_sympy(m, n):
    spec = SylvesterSpec(m, n)
    res = expand_resultant(spec)
    oracle = sympy_resultant(spec)
    # sympy may differ by an overall sign convention; the leading term fixes it
    lead = spec.universe.monomial(f={0: n}, g={n: m})
    s = coefficient_of(oracle, lead)
    assert res == oracle.scale(s)


def test_height_2_3():
    assert height(expand_resultant(SylvesterSpec(2, 3))) == 3


def test_naive_limit():
    with pytest.raises(FeasibilityError):
        naive_determinant(build_matrix(SylvesterSpec(6, 6)))


def test_envelope(monkeypatch):
    with pytest.raises(FeasibilityError):
        expand_resultant(SylvesterSpec(5, 2))
    with pytest.raises(FeasibilityError):
        expand_resultant(SylvesterSpec(2, 31))
    monkeypatch.setenv("RESHEIGHT_NMAX", "32")
    assert height(expand_resultant(SylvesterSpec(1, 31))) == 1


def test_unknown_engine():
    with pytest.raises(ValueError):
        expand_resultant(SylvesterSpec(2, 2), engine="magic")


@given(st.integers(1, 4), st.integers(1, 9), st.data())
def test_slice_matches_full_expansion(m, n, data):
    spec = SylvesterSpec(m, n)
    gidx = tuple(sorted(data.draw(st.lists(st.integers(0, n), min_size=m, max_size=m))))
    res = expand_resultant(spec)
    nf = m + 1
    want = {mon: c for mon, c in res.terms.items()
            if tuple(j for j in range(n + 1) for _ in range(mon[nf + j])) == gidx}
    assert g_monomial_slice(spec, gidx).terms == want


def test_slice_rejects_bad_indices():
    with pytest.raises(ValueError):
        g_monomial_slice(SylvesterSpec(2, 4), (0, 5))
    with pytest.raises(ValueError):
        g_monomial_slice(SylvesterSpec(2, 4), (0,))


def test_f_band_minor_checks():
    spec = SylvesterSpec(2, 4)
    with pytest.raises(ValueError):
        f_band_minor(spec, (0,))
    with pytest.raises(ValueError):
        f_band_minor(spec, (0, 9))
    # removing the first m rows leaves the lower-triangular block with f_m on the diagonal
    p = f_band_minor(spec, (0, 1))
    assert p.terms == {spec.universe.monomial(f={2: 4}): 1}


def test_binomial_restriction():
    spec = SylvesterSpec(2, 4)
    res = expand_resultant(spec)
    b = restrict_to_binomial_g(spec, res)
    nf = spec.m + 1
    assert all(not any(mon[nf + 1: nf + spec.n]) for mon in b.terms)
    assert b.terms.items() <= res.terms.items()
