from fractions import Fraction

from hypothesis import strategies as st

from vertexindex.charalg import LaurentCharacter
from vertexindex.partitions import LeggedPartition3D, _addable, partitions_of


def characters(max_terms=4, lo=-3, hi=3, q=False, coeffs=(-3, 3), nonzero_exp=False):
    """Sparse characters on the doubled lattice."""
    exp = st.tuples(st.integers(lo, hi), st.integers(lo, hi), st.integers(lo, hi),
                    st.integers(lo, hi) if q else st.just(0))
    if nonzero_exp:
        exp = exp.filter(lambda e: any(e))
    coeff = st.integers(*coeffs).filter(bool)
    return st.dictionaries(exp, coeff, max_size=max_terms).map(LaurentCharacter)


def rationals(bound=20):
    return st.builds(Fraction, st.integers(1, bound), st.integers(1, bound)).filter(lambda x: x != 1)


def points(bound=20):
    """Points ``(u1, u2, u3, uq)``; ``t_i = u_i^2``."""
    return st.tuples(rationals(bound), rationals(bound), rationals(bound), rationals(bound))


small_partitions = st.sampled_from([lam for n in range(4) for lam in partitions_of(n)])


@st.composite
def legged_partitions(draw, max_extra=6, legs=None):
    """Grow a partition on random legs one addable box at a time."""
    legs = legs if legs is not None else (draw(small_partitions), draw(small_partitions), draw(small_partitions))
    pi = LeggedPartition3D(legs, frozenset())
    for _ in range(draw(st.integers(0, max_extra))):
        ext = pi.finite_extent + 1
        cands = sorted(b for b in _window3(ext) if not pi.contains(b) and _addable(pi.contains, b))
        pi = LeggedPartition3D(pi.legs, pi.extra_boxes | {draw(st.sampled_from(cands))})
    return pi


def _window3(n):
    return [(i, j, k) for i in range(n) for j in range(n) for k in range(n)]
