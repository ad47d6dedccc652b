import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import SMALL_U, polys
from resheight.bigpoly import (
    SparsePoly, Universe, add, coefficient_of, group_degrees, height, mul, omega_degree_set,
)
from resheight.errors import UniverseMismatchError
from resheight.sylvester import SylvesterSpec, expand_resultant

U23 = Universe.for_degrees(2, 3)


def var(group, i, u=U23):
    return SparsePoly.variable(u, group, i)


def test_additive_inverse_is_empty():
    p = add(var("f", 0), -var("f", 0))
    assert p.terms == {}
    assert height(p) == 0


def test_like_terms_and_disjoint_supports():
    assert add(var("f", 0).scale(2), var("f", 0).scale(3)) == var("f", 0).scale(5)
    assert len(add(var("f", 0) * var("g", 0), var("f", 1)).terms) == 2


def test_difference_of_squares():
    a, b = var("f", 0), var("f", 1)
    assert mul(a + b, a - b) == a * a - b * b
    assert str(mul(a + b, a - b)) == "f0^2 - f1^2"


def test_mul_by_zero():
    assert mul(var("f", 2) + var("g", 3), SparsePoly.zero(U23)) == SparsePoly.zero(U23)


def test_universe_mismatch():
    other = Universe.for_degrees(3, 3)
    with pytest.raises(UniverseMismatchError):
        add(var("f", 0), SparsePoly.variable(other, "f", 0))
    with pytest.raises(UniverseMismatchError):
        mul(var("f", 0), SparsePoly.variable(other, "f", 0))
    with pytest.raises(UniverseMismatchError):
        coefficient_of(var("f", 0), (1, 0, 0))


def test_constructor_drops_zeros_and_merges():
    p = SparsePoly(U23, [((0,) * 7, 2), ((0,) * 7, -2), ((1, 0, 0, 0, 0, 0, 0), 0)])
    assert p.terms == {}
    with pytest.raises(ValueError):
        SparsePoly(U23, {(-1, 0, 0, 0, 0, 0, 0): 1})


def test_height_examples():
    p = var("f", 0).scale(3) - (var("f", 1) * var("g", 0)).scale(2)
    assert height(p) == 3
    assert height(SparsePoly.zero(U23)) == 0


def test_group_and_omega_degrees():
    assert group_degrees(SparsePoly.constant(U23, 5)) == (0, 0, True)
    assert omega_degree_set(var("f", 1) * var("g", 2)) == {3}
    mixed = var("f", 0) + var("g", 0) * var("g", 1)
    assert group_degrees(mixed) == (1, 2, False)


@pytest.mark.parametrize("m,n,degs", [(2, 3, (3, 2)), (3, 6, (6, 3)), (3, 5, (5, 3))])
def test_resultant_degrees(m, n, degs):
    res = expand_resultant(SylvesterSpec(m, n))
    assert group_degrees(res) == (*degs, True)
    assert omega_degree_set(res) == {m * n}


def test_coefficient_examples():
    spec = SylvesterSpec(2, 3)
    res = expand_resultant(spec)
    mon = spec.universe.monomial(f={0: 1, 1: 1, 2: 1}, g={0: 1, 3: 1})
    assert abs(coefficient_of(res, mon)) == 3
    assert coefficient_of(res, spec.universe.monomial(f={2: 5})) == 0
    assert coefficient_of(res, spec.universe.monomial(f={0: 3}, g={3: 2})) == 1


@given(polys(), polys())
def test_commutative(a, b):
    assert a + b == b + a
    assert a * b == b * a


@given(polys(), polys(), polys())
def test_distributive_and_associative(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


@given(polys(), polys())
def test_height_of_product_bound(a, b):
    assert height(a * b) <= len(a.terms) * height(a) * height(b)


@given(polys(coeffs=st.integers(-(10**40), 10**40)))
def test_json_round_trip(p):
    text = p.to_json()
    assert SparsePoly.from_json(SMALL_U, text) == p
    recs = json.loads(text)
    assert all(isinstance(r["coeff"], str) for r in recs)
    assert [tuple(r["exps"]) for r in recs] == sorted(tuple(r["exps"]) for r in recs)


def test_big_coefficients_stay_exact():
    p = var("f", 0).scale(2**70)
    q = p * p
    assert height(q) == 2**140
    assert SparsePoly.from_json(U23, q.to_json()) == q


def test_csv_header():
    text = (var("f", 1) * var("g", 2)).to_csv().splitlines()
    assert text[0] == "f0,f1,f2,g0,g1,g2,g3,coeff"
    assert text[1] == "0,1,0,0,0,1,0,1"
