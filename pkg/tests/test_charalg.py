from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vertexindex.charalg import (KAPPA, KAPPA_HALF, LaurentCharacter, QSeries, RationalCharacter,
                                 SlopeFunctional, adams, char_from_exponents, cross_equal, dual, evaluate,
                                 mono, plethystic_exp, rank, rho, split_by_slope)
from vertexindex.errors import ConeViolation, DenominatorVanishes, NonGenericSlope, UnitMonomial
from vertexindex.partitions import LeggedPartition3D
from vertexindex.vertexchar import vertex_char

from conftest import characters, points

ZERO = LaurentCharacter.zero()
ONE = LaurentCharacter.one()
t1, t2, t3, q = mono(t1=1), mono(t2=1), mono(t3=1), mono(q=1)


# -- dual, rank, adams --------------------------------------------------------


def test_dual_examples():
    assert dual(t1 + 2 * (mono(t2=-1) * q)) == mono(t1=-1) + 2 * (t2 * mono(q=-1))
    assert dual(ZERO) == ZERO
    assert dual(KAPPA_HALF) == mono(t1=Fraction(-1, 2), t2=Fraction(-1, 2), t3=Fraction(-1, 2))


def test_rank_examples():
    assert rank(t1 + t2 - KAPPA) == 1
    assert rank(ZERO) == 0
    three = char_from_exponents([(0, 0, 0), (-1, 0, 0), (0, -1, 0)])
    assert rank(three) == 3


def test_adams_examples():
    assert adams(t1 + q, 2) == t1 ** 2 + q ** 2
    P = t1 - 3 * mono(t2=Fraction(1, 2), q=1)
    assert adams(P, 1) == P
    assert adams(KAPPA_HALF, 2) == KAPPA
    with pytest.raises(ValueError):
        adams(P, 0)


@given(characters(q=True))
def test_dual_is_an_involution_preserving_rank(P):
    assert dual(dual(P)) == P
    assert rank(dual(P)) == rank(P)


@given(characters(q=True), characters(q=True))
def test_rank_is_a_ring_homomorphism(P, Q):
    assert rank(P * Q) == rank(P) * rank(Q)
    assert rank(P + Q) == rank(P) + rank(Q)


def test_no_zero_coefficients_are_stored():
    P = t1 + t2
    assert len(P - t2) == 1
    assert not (P - P)
    assert LaurentCharacter({(2, 0, 0, 0): 0}) == ZERO


# -- slopes ------------------------------------------------------------------


def test_split_example():
    sigma = SlopeFunctional((1, -1, 0), (1, 1, -2), 1)
    plus, minus = split_by_slope(t1 + mono(t2=-1) + t3, sigma)
    assert plus == t1 + mono(t2=-1)
    assert minus == t3


def test_split_constant_is_non_generic():
    with pytest.raises(NonGenericSlope):
        split_by_slope(ONE, SlopeFunctional.preferred())


def test_split_single_box_ranks_cancel():
    V = vertex_char(LeggedPartition3D.from_boxes([(0, 0, 0)]))
    plus, minus = split_by_slope(V, SlopeFunctional((1, -1, 0), (1, 1, -2), 1))
    assert rank(V) == 0
    assert rank(plus) == -rank(minus)


def test_slope_validation():
    with pytest.raises(ValueError):
        SlopeFunctional((1, 1, 0))
    with pytest.raises(ValueError):
        SlopeFunctional((1, -1, 0), (2, -2, 0))
    with pytest.raises(ValueError):
        SlopeFunctional((1, -1, 0), (1, 1, -2), 0)


def test_slope_lexicographic_value():
    sigma = SlopeFunctional((1, -1, 0), (1, 1, -2), -1)
    # t3 has zero primary value; tiebreak -4, flipped by the sign
    assert sigma.sign((0, 0, 2, 0)) == 1
    assert sigma.flipped().sign((0, 0, 2, 0)) == -1
    assert sigma.value((2, 0, 0, 0)) == (2, -2)


slopes = st.sampled_from([SlopeFunctional((1, -1, 0), (1, 1, -2), 1),
                          SlopeFunctional((1, -1, 0), (1, 1, -2), -1),
                          SlopeFunctional((2, -1, -1), (0, 1, -1), 1),
                          SlopeFunctional((Fraction(1, 3), 0, Fraction(-1, 3)), (1, -2, 1), -1)])


@given(characters(q=True, nonzero_exp=True).filter(lambda P: all(e[:3] != (0, 0, 0) for e in P)), slopes)
def test_split_reconstructs(P, sigma):
    # pure kappa powers are degenerate for every slope
    if any(e[0] == e[1] == e[2] for e in P):
        with pytest.raises(NonGenericSlope):
            split_by_slope(P, sigma)
        return
    plus, minus = split_by_slope(P, sigma)
    assert plus + minus == P
    assert all(sigma.sign(e) > 0 for e in plus)
    assert all(sigma.sign(e) < 0 for e in minus)


# -- rho ---------------------------------------------------------------------


def test_rho_examples():
    assert rho(ZERO) == RationalCharacter(ONE)
    assert rho(KAPPA).is_zero()
    kinv_half = dual(KAPPA_HALF)
    expected = RationalCharacter(KAPPA_HALF - kinv_half * t1, t1 - ONE)
    assert rho(t1) == expected
    with pytest.raises(UnitMonomial):
        rho(ONE)


def test_rho_inverted_factor():
    # a multiplicity of -1 inverts the line bundle factor
    assert rho(-t1) * rho(t1) == RationalCharacter(ONE)


no_unit = characters(max_terms=3, lo=-2, hi=2, nonzero_exp=True).filter(
    lambda P: all(e != (2, 2, 2, 0) or c > 0 for e, c in P.items()))


@settings(max_examples=60, deadline=None)
@given(no_unit, no_unit)
def test_rho_is_multiplicative(A, B):
    if any((e == (2, 2, 2, 0)) and (A + B)[e] < 0 for e in A + B):
        return
    assert cross_equal(rho(A + B), rho(A) * rho(B))


# -- plethystic exponential ---------------------------------------------------


def _coeffs(S: QSeries, n: int) -> list:
    return [S[k] if isinstance(S[k], LaurentCharacter) else ZERO + S[k] for k in range(n + 1)]


def test_plethystic_examples():
    assert _coeffs(plethystic_exp(q, 3), 3) == [ONE] * 4
    assert _coeffs(plethystic_exp(2 * q, 3), 3) == [ONE, 2 * ONE, 3 * ONE, 4 * ONE]
    assert _coeffs(plethystic_exp(q * t1, 2), 2) == [ONE, t1, t1 ** 2]


def test_plethystic_cone():
    with pytest.raises(ConeViolation):
        plethystic_exp(t1, 2)


cone = st.dictionaries(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2), st.sampled_from([2, 4])),
                       st.integers(1, 2), max_size=3).map(LaurentCharacter)


@settings(max_examples=40, deadline=None)
@given(cone, cone)
def test_plethystic_is_multiplicative(F, G):
    n = 3
    a, b, c = _coeffs(plethystic_exp(F, n), n), _coeffs(plethystic_exp(G, n), n), _coeffs(plethystic_exp(F + G, n), n)
    for k in range(n + 1):
        assert c[k] == sum((a[i] * b[k - i] for i in range(k + 1)), ZERO)


# -- evaluation ---------------------------------------------------------------


def test_evaluate_examples():
    assert evaluate(KAPPA_HALF, (2, 3, 5, 1)) == 30
    r = RationalCharacter(KAPPA - ONE, KAPPA - ONE)
    assert r.evaluate((Fraction(2, 3), 5, 7, 1)) == 1
    # t1 = 4, kappa = 4
    assert rho(t1).evaluate((2, 1, 1, 1)) == 0
    with pytest.raises(DenominatorVanishes):
        RationalCharacter(ONE, t1 - ONE).evaluate((1, 2, 3, 1))


@settings(max_examples=50)
@given(characters(q=True), characters(q=True), points())
def test_evaluate_is_a_ring_homomorphism(P, Q, u):
    assert evaluate(P * Q, u) == evaluate(P, u) * evaluate(Q, u)
    assert evaluate(P + Q, u) == evaluate(P, u) + evaluate(Q, u)


# -- serialization ------------------------------------------------------------


def test_json_term_order_and_round_trip():
    P = 3 * t1 - mono(t2=Fraction(1, 2), q=-1) + ONE
    data = P.to_json()
    assert [t["e"] for t in data["terms"]] == sorted(t["e"] for t in data["terms"])
    assert all(isinstance(t["c"], str) for t in data["terms"])
    assert LaurentCharacter.from_json(data) == P


@given(characters(q=True), characters(q=True).filter(bool))
def test_rational_json_round_trip(n, d):
    r = RationalCharacter(n, d)
    back = RationalCharacter.from_json(r.to_json())
    assert back.num == n and back.den == d


def test_qseries_json_round_trip():
    S = QSeries({-1: ONE + t1, 0: Fraction(3, 4), 2: rho(t1)}, 3, -1)
    assert QSeries.from_json(S.to_json()) == S
    with pytest.raises(ValueError):
        QSeries({5: ONE}, 3, 0)
