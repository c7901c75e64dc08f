import itertools
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from hypercover import (
    DomainError,
    Hyperplane,
    HyperplaneFamily,
    Polynomial,
    derivative,
    multiplicity_at,
    product_of_affine,
    taylor_shift,
)
from hypercover.covers import family_Hcirc, family_Hstar
from hypercover.polyalg import exponents_of_order, fraction_str, parse_fraction

from conftest import cube


def X(n, i):
    return Polynomial.variable(n, i)


@st.composite
def polys(draw, nvars=None, max_deg=3):
    n = nvars or draw(st.integers(1, 3))
    exps = list(itertools.product(range(max_deg + 1), repeat=n))
    exps = [e for e in exps if sum(e) <= max_deg]
    terms = draw(st.dictionaries(st.sampled_from(exps), st.integers(-4, 4), max_size=5))
    return Polynomial(n, terms)


def points(n):
    return st.tuples(*(st.integers(-2, 2) for _ in range(n)))


# ---------------------------------------------------------------- examples


def test_derivative_examples():
    assert derivative(X(2, 0) * X(2, 1), (1, 1)) == Polynomial.constant(2, 1)
    assert derivative(X(1, 0) ** 3, (2,)) == X(1, 0) * 6
    P = (X(2, 0) + X(2, 1)) ** 2
    assert derivative(P, (2, 1)).is_zero()
    with pytest.raises(DomainError):
        derivative(P, (1,))


def test_multiplicity_examples():
    assert multiplicity_at(X(2, 0) * X(2, 1), (0, 0), 5) == 2
    assert multiplicity_at(Polynomial.affine((1, 1), -1) ** 3, (1, 0), 5) == 3
    assert multiplicity_at(Polynomial.affine((1, 1), -2), (1, 1), 5) == 1
    assert multiplicity_at(Polynomial.affine((1, 1), -2), (0, 1), 5) == 0
    assert multiplicity_at(X(2, 0) ** 4, (0, 0), 2) == 2
    with pytest.raises(DomainError):
        multiplicity_at(Polynomial(2), (0, 0), 3)


def test_block_restricted_multiplicity():
    P = X(2, 0) - X(2, 1)
    assert multiplicity_at(P, (0, 0), 3, support=[0]) == 1
    Q = X(2, 1) * (X(2, 1) - 1)
    assert multiplicity_at(Q, (0, 0), 3, support=[0]) == 3
    assert multiplicity_at(Q, (0, 0), 3, support=[1]) == 1


def test_taylor_shift_examples():
    P = Polynomial(2, {(2, 1): 3, (0, 1): -1, (0, 0): 5})
    assert taylor_shift(P, (0, 0)) == P
    S = taylor_shift(X(1, 0) ** 2, (1,))
    assert S.terms == {(0,): 1, (1,): 2, (2,): 1}


def test_product_of_affine_examples():
    fam = family_Hcirc(1, 1)
    assert product_of_affine(fam) == X(1, 0) ** 2 - X(1, 0)
    P = product_of_affine(family_Hcirc(3, 2))
    assert P == (X(2, 0) ** 2 - X(2, 0)) ** 3 and P.degree == 6
    assert product_of_affine(HyperplaneFamily(3)) == Polynomial.constant(3, 1)
    H = product_of_affine(family_Hstar(4, 1))
    assert H == X(4, 0) + X(4, 1) + X(4, 2) - 3 * X(4, 3)


def test_json_round_trip():
    P = Polynomial(3, {(1, 0, 2): Fraction(-3, 7), (0, 0, 0): 2})
    assert Polynomial.from_json(P.to_json()) == P
    assert P.to_json()["terms"][0]["coef"] == "-3/7"
    h = Hyperplane((Fraction(1, 2), 0, -1), Fraction(3))
    assert Hyperplane.from_json(h.to_json()) == h
    assert fraction_str(Fraction(4, 2)) == "2/1"
    assert parse_fraction("5/10") == Fraction(1, 2)


def test_hyperplane_requires_linear_part():
    with pytest.raises(DomainError):
        Hyperplane((0, 0), 1)


def test_exponents_of_order_counts():
    for n in range(1, 5):
        for k in range(5):
            es = list(exponents_of_order(n, k))
            assert len(es) == len(set(es)) == comb(n + k - 1, k)
            assert all(sum(e) == k for e in es)
    assert list(exponents_of_order(3, 2, support=[1])) == [(0, 2, 0)]


# ---------------------------------------------------------------- properties


@given(polys(nvars=2), polys(nvars=2), st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_product_rule(P, Q, alpha):
    direct = derivative(P * Q, alpha)
    rule = Polynomial(2)
    for b0 in range(alpha[0] + 1):
        for b1 in range(alpha[1] + 1):
            c = comb(alpha[0], b0) * comb(alpha[1], b1)
            rule = rule + derivative(P, (b0, b1)) * derivative(Q, (alpha[0] - b0, alpha[1] - b1)) * c
    assert direct == rule


@given(polys(nvars=2), polys(nvars=2), st.integers(-3, 3))
def test_derivative_linearity(P, Q, c):
    for alpha in [(1, 0), (0, 1), (1, 1), (2, 0)]:
        assert derivative(P * c + Q, alpha) == derivative(P, alpha) * c + derivative(Q, alpha)


@given(polys(), st.data())
def test_taylor_shift_matches_multiplicity(P, data):
    a = data.draw(points(P.nvars))
    if P.is_zero():
        return
    shifted = taylor_shift(P, a)
    lowest = min(sum(e) for e in shifted.terms)
    assert lowest == multiplicity_at(P, a, P.degree + 1)
    back = taylor_shift(shifted, [-x for x in a])
    assert back == P


@given(polys(), st.data())
def test_evaluate_matches_shift_constant(P, data):
    a = data.draw(points(P.nvars))
    assert taylor_shift(P, a).terms.get((0,) * P.nvars, 0) == P.evaluate(a)


def test_multiplicity_paths_agree_exhaustively():
    # every monomial-sum with coefficients in {0,1} on degree <= 3 bases, n <= 2,
    # plus shifted cubes in 3 variables
    for n in (1, 2):
        exps = [e for e in itertools.product(range(4), repeat=n) if sum(e) <= 3]
        for r in (1, 2):
            for combo in itertools.combinations(exps, r):
                P = Polynomial(n, {e: 1 for e in combo})
                for a in itertools.product((-1, 0, 1), repeat=n):
                    low = min(sum(e) for e in taylor_shift(P, a).terms)
                    assert low == multiplicity_at(P, a, P.degree + 1)
    for coeffs in itertools.product((-1, 0, 1), repeat=3):
        if not any(coeffs):
            continue
        P = Polynomial.affine(coeffs, 0) ** 3
        for a in cube(3):
            low = min(sum(e) for e in taylor_shift(P, a).terms)
            assert low == multiplicity_at(P, a, 4)


@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)), min_size=1, max_size=4))
def test_product_multiplicity_at_least_incidence(rows):
    hs = [Hyperplane((a, b), c) for a, b, c in rows if a or b]
    if not hs:
        return
    fam = HyperplaneFamily(2, tuple(hs))
    P = product_of_affine(fam)
    assert P.degree == len(fam)
    for x in cube(2):
        assert multiplicity_at(P, x, len(fam) + 1) >= fam.incidence(x)
