"""Assembly of the K-theoretic vertex and the index vertex.

The full vertex is a q-series whose coefficients are sums of ρ-products,
one per partition.  Each ρ-product is kept with its denominator as a
product of binomials ``(m - 1)``; coefficients are summed over the least
common multiple of those binomials so the result stays factored.
"""

from __future__ import annotations

import os
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .charalg import (KAPPA_HALF_EXP, ZERO_EXP, Exp, LaurentCharacter, QSeries, RationalCharacter,
                      SlopeFunctional, _binomial, exp_neg, rho_factors, split_by_slope)
from .errors import EngineError, NonGenericSlope
from .partitions import LeggedPartition3D, Xi_pi, enumerate_partitions, renorm_size, _as_legs
from .vertexchar import vertex_char


def default_threads() -> int:
    return int(os.environ.get("VERTEXINDEX_THREADS", "1"))


def _pmap(fn, items, threads):
    threads = threads or default_threads()
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def min_order(legs) -> int:
    return renorm_size(LeggedPartition3D(_as_legs(legs), frozenset()))


def partitions_up_to(legs, q_order: int) -> list[LeggedPartition3D]:
    """All partitions with the given legs and renormalized size <= q_order."""
    m0 = min_order(legs)
    if q_order < m0:
        return []
    return enumerate_partitions(legs, q_order - m0)


def _plus_part(pi: LeggedPartition3D, sigma: SlopeFunctional) -> LaurentCharacter:
    try:
        plus, _ = split_by_slope(vertex_char(pi), sigma)
    except NonGenericSlope as exc:
        raise NonGenericSlope(str(exc), {"partition": pi.to_json(), "monomial": list(exc.obj)}) from None
    return plus


# -- factored sums -----------------------------------------------------------


def _canonical_factors(num: LaurentCharacter, factors: dict) -> tuple[LaurentCharacter, dict]:
    """Rewrite every ``(m - 1)`` with ``m`` lexicographically negative.

    ``1/(m - 1) = -m^{-1} / (m^{-1} - 1)`` so both orientations share a key.
    """
    out: dict = defaultdict(int)
    shift = [0, 0, 0, 0]
    sign = 1
    for m, k in factors.items():
        if m > ZERO_EXP:
            out[exp_neg(m)] += k
            for i in range(4):
                shift[i] -= k * m[i]
            if k % 2:
                sign = -sign
        else:
            out[m] += k
    return num.shift(tuple(shift)) * sign, dict(out)


def sum_factored(parts: list[tuple[LaurentCharacter, dict]]) -> RationalCharacter:
    """Exact sum of ``num / prod (m - 1)^k`` over a common binomial denominator."""
    canon = [_canonical_factors(n, f) for n, f in parts]
    lcm: dict = defaultdict(int)
    for _, f in canon:
        for m, k in f.items():
            lcm[m] = max(lcm[m], k)
    total = LaurentCharacter.zero()
    for n, f in canon:
        term = n
        for m in sorted(lcm):
            extra = lcm[m] - f.get(m, 0)
            if extra:
                term = term * _binomial(m) ** extra
        total = total + term
    return RationalCharacter.from_factors(total, dict(lcm))


def rho_term(pi: LeggedPartition3D, sigma: SlopeFunctional) -> tuple[LaurentCharacter, dict]:
    return rho_factors(_plus_part(pi, sigma))


# -- public operations -------------------------------------------------------


def full_vertex(legs, sigma: SlopeFunctional, q_order: int, threads: int | None = None) -> QSeries:
    """``sum_pi (-q)^{|pi|} rho(N_vtx(pi)_+)`` through ``q^{q_order}``."""
    legs = _as_legs(legs)
    m0 = min_order(legs)
    pis = partitions_up_to(legs, q_order)
    data = _pmap(lambda p: (renorm_size(p, check=False), rho_term(p, sigma)), pis, threads)
    by_order: dict = defaultdict(list)
    for n, (num, f) in data:
        by_order[n].append((num if n % 2 == 0 else -num, f))
    coeffs = {n: sum_factored(by_order[n]) for n in sorted(by_order)}
    return QSeries(coeffs, q_order, m0)


def index_direct(pi: LeggedPartition3D, sigma: SlopeFunctional) -> int:
    """Rank of the attracting part of the vertex character."""
    return _plus_part(pi, sigma).rank()


def index_preferred(pi: LeggedPartition3D, tiebreak_sign: int = 1) -> int:
    """Index at the preferred slope from the box statistic alone."""
    X = Xi_pi(pi)
    plus, _ = split_by_slope(X - X.dual(), SlopeFunctional.preferred(tiebreak_sign))
    return plus.rank()


def index_monomial(n: int, ind: int) -> LaurentCharacter:
    """``(-1)^n (-kappa^{1/2})^ind`` as a character."""
    e = tuple(ind * x for x in KAPPA_HALF_EXP)
    return LaurentCharacter.monomial(e, (-1) ** ((n + ind) % 2))


def index_vertex(legs, sigma: SlopeFunctional, q_order: int, threads: int | None = None) -> QSeries:
    """``sum_pi (-q)^{|pi|} (-kappa^{1/2})^{ind_sigma(pi)}``."""
    legs = _as_legs(legs)
    m0 = min_order(legs)
    pis = partitions_up_to(legs, q_order)
    data = _pmap(lambda p: (renorm_size(p, check=False), index_direct(p, sigma)), pis, threads)
    coeffs: dict = defaultdict(LaurentCharacter.zero)
    for n, ind in data:
        coeffs[n] = coeffs[n] + index_monomial(n, ind)
    return QSeries({n: coeffs[n] for n in sorted(coeffs)}, q_order, m0)


def wall_crossing_report(legs, sigma0: SlopeFunctional, q_order: int, threads: int | None = None) -> dict:
    """Index vertices on both sides of the wall through ``sigma0``."""
    plus = index_vertex(legs, SlopeFunctional(sigma0.primary_weights, sigma0.tiebreak_weights, 1), q_order, threads)
    minus = index_vertex(legs, SlopeFunctional(sigma0.primary_weights, sigma0.tiebreak_weights, -1), q_order, threads)
    orders = sorted(set(plus.coefficients) | set(minus.coefficients))
    diff = {n: LaurentCharacter.zero() + plus[n] - minus[n] for n in orders}
    return {"plus": plus, "minus": minus,
            "difference": QSeries(diff, q_order, min(plus.min_order, minus.min_order))}


# -- z -> 0 limits -----------------------------------------------------------


def _graded(P: LaurentCharacter, cochar: tuple, point) -> dict:
    """Group ``P(u * s^cochar)`` by the power of ``s``, evaluated at ``point``."""
    out: dict = defaultdict(Fraction)
    for e, c in P.items():
        deg = sum(a * b for a, b in zip(cochar, e[:3]))
        out[deg] += LaurentCharacter.monomial(e, c).evaluate(point)
    return {d: v for d, v in out.items() if v}


def limit_along(R: RationalCharacter, cochar: tuple, point) -> Fraction:
    """``lim_{z->0} R`` after substituting ``t_i -> t_i z^{cochar_i}``."""
    num, den = _graded(R.num, cochar, point), _graded(R.den, cochar, point)
    if not den:
        raise EngineError("denominator vanishes identically along the subgroup", list(cochar))
    if not num:
        return Fraction(0)
    a, b = min(num), min(den)
    if a > b:
        return Fraction(0)
    if a < b:
        raise EngineError("coefficient diverges along the subgroup", list(cochar))
    return num[a] / den[b]


def safe_cocharacter(sigma: SlopeFunctional, chars) -> tuple:
    """An integer subgroup inducing the lexicographic signs on every monomial."""
    bound = 1
    for P in chars:
        for e in P:
            p = sum(w * x for w, x in zip(sigma.primary_weights, e[:3]))
            t = sum(w * x for w, x in zip(sigma.tiebreak_weights, e[:3]))
            if p:
                bound = max(bound, int(abs(t) / abs(p)) + 1)
    return sigma.cocharacter(2 * bound + 1)


def limit_report(legs, sigma: SlopeFunctional, q_order: int, points, threads: int | None = None) -> list[dict]:
    """Compare index_vertex with the limit of full_vertex at each base point."""
    legs = _as_legs(legs)
    pis = partitions_up_to(legs, q_order)
    cochar = safe_cocharacter(sigma, [vertex_char(p) for p in pis])
    full = full_vertex(legs, sigma, q_order, threads)
    idx = index_vertex(legs, sigma, q_order, threads)
    rows = []
    for point in points:
        for n in full.orders():
            lim = limit_along(full[n], cochar, point)
            val = idx[n].evaluate(point) if isinstance(idx[n], LaurentCharacter) else Fraction(0)
            rows.append({"order": n, "point": [str(x) for x in point],
                         "limit": lim, "index": val, "match": lim == val})
    return rows
