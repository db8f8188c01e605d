from fractions import Fraction
from math import comb, prod

import pytest
from hypothesis import given, strategies as st

from oracles import brute_standard_count
from shankel.groebner import Ideal, buchberger
from shankel.hilbert import (
    HilbertPolynomial,
    TableTooShort,
    count_standard,
    hilbert_by_signatures,
    hilbert_closed_form,
    hilbert_from_numerator,
    hilbert_polynomial,
    hilbert_standard_monomials,
    hilbert_table,
    interpolate,
    polynomial_from_numerator,
    series_numerator,
)
from shankel.ideals import groebner_I, groebner_Itilde
from shankel.indices import Shape, ring_dimension
from shankel.polyring import Ring

SHAPES = [Shape((2, 2, 2), 2, 1), Shape((2, 2, 2), 2, 2), Shape((2, 2, 2), 3, 3),
          Shape((2, 2, 3), 2, 2), Shape((2, 3), 1, 1), Shape((3, 2, 2), 1, 2),
          Shape((2, 3, 2), 3, 1), Shape((2, 2, 2, 2), 2, 3), Shape((3, 3), 2, 2)]


def case_mixed(sh, d):
    # s <= t: norm part, then untouched components s+1..t, then the tail block
    r, s, t = sh.r, sh.s, sh.t
    out = d * sum(x - 1 for x in r[:s]) + 1
    for i in range(s, t):
        out *= comb(d + r[i] - 1, d)
    return out * comb(d + prod(r[t:]) - 1, d)


def case_norm_only(sh, d):
    # s >= t: norm part times the tail block
    r, s = sh.r, sh.s
    return (d * sum(x - 1 for x in r[:s]) + 1) * comb(d + prod(r[s:]) - 1, d)


@pytest.mark.parametrize("sh", SHAPES, ids=str)
def test_three_routes_agree(sh):
    G = groebner_Itilde(sh)
    for d in range(5):
        brute = brute_standard_count(G.leading_monomials(), G.ring.nvars, d)
        assert hilbert_closed_form(sh, d) == hilbert_by_signatures(sh, d) == \
            hilbert_standard_monomials(G, d) == brute


def test_boundary_cases_agree():
    for r in [(2, 2, 2), (3, 2, 4), (2, 3, 2, 2)]:
        for s in range(2, len(r) + 1):
            sh = Shape(r, s, s)
            for d in range(7):
                assert case_mixed(sh, d) == case_norm_only(sh, d) == hilbert_closed_form(sh, d)


def test_small_degrees():
    for sh in SHAPES:
        assert hilbert_closed_form(sh, 0) == 1
        assert hilbert_by_signatures(sh, 1) == ring_dimension(sh)
        assert hilbert_closed_form(sh, -1) == 0


def test_curve_example():
    sh = Shape((3, 3, 3), 3, 3)
    assert [hilbert_closed_form(sh, d) for d in range(4)] == [1, 7, 13, 19]
    t = hilbert_table(sh, 6)
    assert str(t.polynomial) == "6d + 1"


def test_slice_minor_polynomials():
    t = hilbert_table(Shape((3, 3, 3), 3, 3), 8, "series", G=groebner_I(Shape((3, 3, 3), 3, 3)), label="I")
    assert str(t.polynomial) == "9d - 2"
    t2 = hilbert_table(Shape((4, 2, 3), 3, 3), 8, "series", G=groebner_I(Shape((4, 2, 3), 3, 3)), label="I")
    assert str(t2.polynomial) == "7d"
    G = groebner_I(Shape((3, 3, 3), 3, 3))
    num = series_numerator(G.leading_monomials())
    assert str(polynomial_from_numerator(num, G.ring.nvars)) == "9d - 2"


def test_degenerate_ideals():
    ring = Ring(["a", "b", "c"])
    zero = buchberger(Ideal(ring, []))
    maximal = buchberger(Ideal(ring, ring.gens()))
    for d in range(5):
        assert hilbert_standard_monomials(zero, d) == comb(d + 2, 2)
        assert hilbert_standard_monomials(maximal, d) == (1 if d == 0 else 0)


@given(st.lists(st.tuples(*[st.integers(0, 2)] * 4), max_size=5), st.integers(0, 6))
def test_series_matches_enumeration(leads, d):
    leads = [m for m in leads if any(m)]
    num = series_numerator(leads)
    assert hilbert_from_numerator(num, 4, d) == brute_standard_count(leads, 4, d) == \
        count_standard(leads, 4, d)


def test_interpolation():
    P = interpolate([(0, -2), (1, 7), (2, 16)])
    assert P.coefficients == (Fraction(-2), Fraction(9))
    assert str(HilbertPolynomial((Fraction(0), Fraction(7, 2), Fraction(1)))) == "d^2 + 7/2*d"
    assert str(HilbertPolynomial((Fraction(0),))) == "0"
    P, start = hilbert_polynomial([1, 3, 6, 10, 15, 21, 28])
    assert P(10) == 66 and start == 0
    P, start = hilbert_polynomial([1, 4, 5, 7, 9, 11, 13])
    assert str(P) == "2d + 1" and start == 2


def test_table_too_short():
    with pytest.raises(TableTooShort):
        hilbert_polynomial([1, 2])
    with pytest.raises(TableTooShort):
        hilbert_polynomial([1, 2, 4, 8, 16])
    assert hilbert_table(Shape((2, 2), 2, 2), 1).polynomial is None


def test_table_json():
    data = hilbert_table(Shape((2, 2, 2), 3, 3), 4).to_json()
    assert data["values"] == [1, 4, 7, 10, 13]
    assert data["polynomial"] == "3d + 1" and data["coefficients"] == ["1", "3"]
    with pytest.raises(ValueError):
        hilbert_table(Shape((2, 2, 2), 3, 3), 4, method="nope")
