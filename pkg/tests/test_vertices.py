import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from vertexindex.charalg import (KAPPA_HALF, LaurentCharacter, RationalCharacter, SlopeFunctional, cross_equal,
                                 dual, rho, split_by_slope)
from vertexindex.degzero import dt0_lhs
from vertexindex.partitions import LeggedPartition3D, enumerate_partitions, parse_legs
from vertexindex.vertexchar import vertex_char
from vertexindex.vertices import (full_vertex, index_direct, index_preferred, index_vertex, limit_report,
                                  min_order, rho_term, sum_factored, wall_crossing_report)

from conftest import legged_partitions

ONE = LaurentCharacter.one()
PREF = SlopeFunctional.preferred(1)
OTHER = SlopeFunctional((2, -1, -1), (0, 1, -1), 1)
EMPTY = parse_legs(";;")
BOX = LeggedPartition3D.from_boxes([(0, 0, 0)])


def neg_half_kappa(k: int) -> LaurentCharacter:
    """``(-kappa^{1/2})^k``."""
    return (-1) ** (k % 2) * (KAPPA_HALF ** k if k >= 0 else dual(KAPPA_HALF) ** -k)


# -- full vertex --------------------------------------------------------------


def test_full_vertex_examples():
    V = full_vertex(EMPTY, PREF, 1)
    assert V[0] == RationalCharacter(ONE)
    plus, _ = split_by_slope(vertex_char(BOX), PREF)
    assert V[1] == -rho(plus)
    L = full_vertex(parse_legs("1;;"), PREF, 0)
    assert L.min_order == 0 and L[0] == RationalCharacter(ONE)


def test_min_order_is_renormalized_size_of_minimal_configuration():
    assert min_order(parse_legs("1;1;")) == -1
    assert full_vertex(parse_legs("1;1;"), PREF, 0).orders() == [-1, 0]


def test_full_vertex_matches_point_series():
    # each rho-product equals the localized square-root term of the same fixed point
    rng = random.Random(5)
    V = full_vertex(EMPTY, PREF, 3)
    for _ in range(3):
        u = tuple(Fraction(rng.randint(2, 30), rng.randint(2, 30)) for _ in range(3))
        L = dt0_lhs(u, 3)
        for n in range(4):
            assert V[n].evaluate(u + (1,)) == L[n]


def test_slope_independence_low_order():
    for legs in (";;", "1;;"):
        A = full_vertex(parse_legs(legs), PREF, 2)
        B = full_vertex(parse_legs(legs), OTHER, 2)
        assert A.orders() == B.orders()
        for n in A.orders():
            assert cross_equal(A[n], B[n])


def test_sum_factored_is_the_plain_sum():
    pis = enumerate_partitions(EMPTY, 2)
    parts = [rho_term(p, PREF) for p in pis]
    total = sum_factored(parts)
    plain = RationalCharacter(LaurentCharacter.zero())
    for p in pis:
        plain = plain + rho(split_by_slope(vertex_char(p), PREF)[0])
    assert total == plain


# -- indices ------------------------------------------------------------------


def test_index_direct_examples():
    assert index_direct(LeggedPartition3D(EMPTY, frozenset()), PREF) == 0
    assert index_direct(LeggedPartition3D(parse_legs("2,1;;"), frozenset()), PREF) == 0
    assert index_direct(BOX, PREF) in (1, -1)


def test_index_preferred_examples():
    assert index_preferred(LeggedPartition3D(EMPTY, frozenset())) == 0
    for s in (1, -1):
        assert index_preferred(BOX, s) == index_direct(BOX, SlopeFunctional.preferred(s))
    assert index_preferred(LeggedPartition3D(parse_legs(";;2,1"), frozenset())) == 0


@settings(max_examples=100, deadline=None)
@given(legged_partitions(max_extra=5))
def test_preferred_index_formula(pi):
    for s in (1, -1):
        assert index_preferred(pi, s) == index_direct(pi, SlopeFunctional.preferred(s))


def test_index_vertex_examples():
    V = index_vertex(EMPTY, PREF, 2)
    assert V[0] == ONE
    assert V[1] == -neg_half_kappa(index_direct(BOX, PREF))
    two = [p for p in enumerate_partitions(EMPTY, 2) if len(p.extra_boxes) == 2]
    assert len(two) == 3
    assert V[2] == sum((neg_half_kappa(index_direct(p, PREF)) for p in two), LaurentCharacter.zero())


def test_index_vertex_values_for_empty_legs():
    V = index_vertex(EMPTY, PREF, 3)
    k = KAPPA_HALF
    ki = dual(KAPPA_HALF)
    assert V[1] == ki
    assert V[2] == 2 * ki ** 2 + ONE
    assert V[3] == 3 * ki ** 3 + 2 * ki + k


def test_index_vertex_is_supported_on_the_kappa_diagonal():
    for legs in (";;", "1;;", "2;1;", "1;1;1"):
        V = index_vertex(parse_legs(legs), PREF, min_order(parse_legs(legs)) + 3)
        for n in V.orders():
            for e in V[n]:
                assert e[0] == e[1] == e[2] and e[3] == 0


def test_wall_crossing_examples():
    rep = wall_crossing_report(EMPTY, PREF, 1)
    assert not rep["difference"][0]
    ip, im = index_direct(BOX, SlopeFunctional.preferred(1)), index_direct(BOX, SlopeFunctional.preferred(-1))
    assert rep["difference"][1] == -(neg_half_kappa(ip) - neg_half_kappa(im))


# -- limits and determinism --------------------------------------------------


def test_limit_consistency_low_order():
    pts = [(Fraction(2, 3), Fraction(5, 2), Fraction(7, 4), 1), (Fraction(3), Fraction(1, 5), Fraction(4, 9), 1)]
    rows = limit_report(EMPTY, PREF, 2, pts)
    assert rows and all(r["match"] for r in rows)


def test_thread_count_does_not_change_results():
    legs = parse_legs("1;1;")
    a = full_vertex(legs, PREF, 1, threads=1)
    b = full_vertex(legs, PREF, 1, threads=4)
    assert repr(a) == repr(b)
    assert repr(index_vertex(legs, PREF, 2, threads=1)) == repr(index_vertex(legs, PREF, 2, threads=4))


def test_non_generic_slope_reports_the_partition():
    from vertexindex.errors import NonGenericSlope
    from vertexindex.vertices import _plus_part

    class Degenerate(SlopeFunctional):
        def sign(self, e):
            return 0

    sigma = Degenerate((1, -1, 0))
    with pytest.raises(NonGenericSlope) as exc:
        _plus_part(BOX, sigma)
    assert exc.value.obj["partition"] == BOX.to_json()
