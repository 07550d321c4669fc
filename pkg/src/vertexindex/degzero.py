"""Degree-zero checks on C^3: the five-variable identity and the point series.

All evaluation happens at rational points given through square-root
coordinates ``u_i`` with ``t_i = u_i^2``, so ``t_i^{1/2} = u_i`` exactly.

The substitution for the two extra directions is ``t4 = q^s kappa^{-1/2}``,
``t5 = q^{-s} kappa^{-1/2}``.  With ``s = 1`` the line bundle
``det H^0(O/I (x) (L1 - L2))`` on ``Hilb(C^3, n)`` has weight
``(t4/t5)^n = q^{2n}``; ``s = 1/2`` is accepted for comparison.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .charalg import QSeries
from .errors import DegenerateSpecialization, PoleAtPoint
from .partitions import enumerate_partitions
from .vertexchar import vertex_char

EMPTY_LEGS = ((), (), ())


def bracket(u: Fraction) -> Fraction:
    """``t^{1/2} - t^{-1/2}`` for ``t = u^2``."""
    return u - 1 / u


@dataclass(frozen=True)
class FivefoldPoint:
    """Weights ``t_i = u_i^2`` of C^5 with ``prod t_i = 1``."""

    u: tuple

    def __post_init__(self):
        u = tuple(Fraction(x) for x in self.u)
        if len(u) != 5 or any(x == 0 for x in u):
            raise ValueError("five nonzero coordinates are required")
        if prod(x * x for x in u) != 1:
            raise ValueError("the weights must multiply to 1")
        object.__setattr__(self, "u", u)

    @classmethod
    def random(cls, rng: random.Random, bound: int = 100) -> "FivefoldPoint":
        while True:
            u = [Fraction(rng.randint(1, bound), rng.randint(1, bound)) * rng.choice((1, -1))
                 for _ in range(4)]
            u.append(1 / prod(u))
            if all(x * x != 1 for x in u):
                return cls(tuple(u))

    @property
    def t(self) -> tuple:
        return tuple(x * x for x in self.u)


def _brackets(p: FivefoldPoint, idx) -> Fraction:
    out = Fraction(1)
    for i in idx:
        b = bracket(p.u[i])
        if b == 0:
            raise PoleAtPoint(f"t{i + 1} = 1", [str(x) for x in p.u])
        out *= b
    return out


def _pair_numerator(u) -> Fraction:
    return prod(bracket(u[i] * u[j]) for i in range(3) for j in range(i + 1, 3))


def f_term(p: FivefoldPoint) -> Fraction:
    """``prod_{i<j<=3} [t_i t_j] / prod_{i<=5} [t_i]``."""
    return _pair_numerator(p.u) / _brackets(p, range(5))


def id0cl_sides(p: FivefoldPoint) -> tuple[Fraction, Fraction]:
    t = p.t
    lhs = (sum(1 / x for x in t) - sum(t)) / _brackets(p, range(5))
    k = p.u[0] * p.u[1] * p.u[2]
    rhs = (1 / k - k) / _brackets(p, range(3)) + f_term(p)
    return lhs, rhs


def verify_id0cl(p: FivefoldPoint) -> bool:
    lhs, rhs = id0cl_sides(p)
    return lhs == rhs


def _check_point(u) -> tuple:
    u = tuple(Fraction(x) for x in u)
    if len(u) != 3 or any(x == 0 for x in u):
        raise ValueError("three nonzero coordinates u1, u2, u3 are required")
    return u


def localized_term(V, u) -> Fraction:
    """``prod [b] / prod [a]`` for ``V = sum a - sum b`` at ``t_i = u_i^2``."""
    num, den = Fraction(1), Fraction(1)
    for e, c in V.items():
        # integer t-exponents: the square root of the weight is a monomial in u
        half = prod(x ** (k // 2) for x, k in zip(u, e[:3]))
        b = bracket(half)
        if b == 0:
            raise DegenerateSpecialization("weight specializes to 1", list(e))
        if c > 0:
            den *= b ** c
        else:
            num *= b ** (-c)
    return num / den


def dt0_lhs(u, q_order: int) -> QSeries:
    """``sum_n (-q)^n sum_{|pi| = n} prod [b] / prod [a]`` at ``t = u^2``."""
    u = _check_point(u)
    coeffs = {}
    for pi in enumerate_partitions(EMPTY_LEGS, q_order):
        n = len(pi.extra_boxes)
        try:
            term = localized_term(vertex_char(pi), u)
        except DegenerateSpecialization as exc:
            raise DegenerateSpecialization(str(exc), {"partition": pi.to_json(), "weight": exc.obj}) from None
        coeffs[n] = coeffs.get(n, Fraction(0)) + (-1) ** n * term
    return QSeries(coeffs, q_order, 0)


def _f_coefficients(u, n: int, count: int) -> list[Fraction]:
    """Coefficients of ``q^{s k}``, ``k = 1..count``, of ``F`` at ``t^n``."""
    un = tuple(x ** n for x in u)
    base = -_pair_numerator(un) / prod(bracket(x) for x in un)
    a = un[0] * un[1] * un[2]
    # 1/((1 - x a)(1 - x/a)) = sum_m h_m x^m,  h_m = sum_j a^{m - 2j}
    return [base * sum(a ** (m - 2 * j) for j in range(m + 1)) for m in range(count)]


def dt0_rhs(u, q_order: int, step: Fraction = Fraction(1)) -> QSeries:
    """``exp(sum_n F(t^n, q^n) / n)`` expanded in ascending powers of ``q``.

    ``F = -q^s prod[t_i t_j] / (prod[t_i] (1 - q^s kappa^{1/2})(1 - q^s kappa^{-1/2}))``
    after the substitution; ``step`` is ``s``.
    """
    u = _check_point(u)
    if any(bracket(x) == 0 for x in u):
        raise PoleAtPoint("a weight specializes to 1", [str(x) for x in u])
    step = Fraction(step)
    top = int(q_order / step)
    # G[d]: coefficient of q^{s d} in sum_n F(t^n, q^n) / n
    G = [Fraction(0)] * (top + 1)
    for n in range(1, top + 1):
        f = _f_coefficients(u, n, top // n)
        for k, c in enumerate(f, start=1):
            G[k * n] += c / n
    E = [Fraction(1)] + [Fraction(0)] * top
    for d in range(1, top + 1):
        E[d] = sum(j * G[j] * E[d - j] for j in range(1, d + 1)) / d
    coeffs = {}
    for d, c in enumerate(E):
        key = step * d
        coeffs[int(key) if key.denominator == 1 else key] = c
    return QSeries(coeffs, q_order, 0)


def random_t_point(rng: random.Random, bound: int = 100) -> tuple:
    while True:
        u = tuple(Fraction(rng.randint(1, bound), rng.randint(1, bound)) for _ in range(3))
        if all(x != 1 for x in u) and u[0] * u[1] * u[2] != 1:
            return u


def compare_dt0(u, q_order: int) -> list[dict]:
    lhs, rhs = dt0_lhs(u, q_order), dt0_rhs(u, q_order)
    return [{"order": n, "lhs": lhs[n], "rhs": rhs[n], "match": lhs[n] == rhs[n]}
            for n in range(q_order + 1)]
