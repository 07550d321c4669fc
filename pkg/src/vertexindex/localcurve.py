"""Reduced local curves over P^1: the M2 product against the PT fixed-point sum.

Variables: ``s = t1`` is the tangent weight of P^1 at 0, the fibers of
``L3, L4`` at 0 have weights ``t2, t3`` and the fibers of ``L1, L2`` have
weights ``q`` and ``q^{-1} kappa^{-1}`` with ``kappa = t1 t2 t3``, so that
``L1 L2 L3 L4 = K`` equivariantly.  At infinity a bundle of degree ``d``
with weight ``c`` at 0 has weight ``c s^{-d}`` and the tangent weight is
``s^{-1}``.

The q-expansion is carried out at a rational point ``t_i = u_i^2`` in the
variable ``r = q^{1/2}``; the comparison is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .charalg import LaurentCharacter, RationalCharacter, divide_by_one_minus
from .errors import DegenerateWeight

Exp = tuple


def _m(t1=0, t2=0, t3=0, q=0) -> LaurentCharacter:
    return LaurentCharacter.monomial((2 * t1, 2 * t2, 2 * t3, 2 * q))


S = _m(t1=1)
ONE = LaurentCharacter.one()
KAPPA0 = _m(1, 1, 1)


def cohomology_char(d: int, c: LaurentCharacter, s: LaurentCharacter = S) -> LaurentCharacter:
    """``H^0 - H^1`` of the degree-``d`` bundle with weight ``c`` at 0.

    Localization gives ``c / (1 - s^-1) + c s^-d / (1 - s)``.
    """
    if d >= 0:
        return sum((c * s ** -k for k in range(d + 1)), LaurentCharacter.zero())
    return -sum((c * s ** k for k in range(1, -d - 1 + 1)), LaurentCharacter.zero())


@dataclass(frozen=True)
class LocalCurveSetup:
    degrees: tuple
    point: tuple = (Fraction(2, 3), Fraction(5, 7), Fraction(11, 4))
    fiber_weights: tuple = field(init=False)

    def __post_init__(self):
        d = tuple(int(x) for x in self.degrees)
        if len(d) != 4 or sum(d) != -2:
            raise ValueError("four degrees summing to -2 are required")
        u = tuple(Fraction(x) for x in self.point)
        if len(u) != 3 or any(x == 0 for x in u):
            raise ValueError("a point u1, u2, u3 of nonzero rationals is required")
        object.__setattr__(self, "degrees", d)
        object.__setattr__(self, "point", u)
        c = (_m(q=1), _m(-1, -1, -1, -1), _m(t2=1), _m(t3=1))
        object.__setattr__(self, "fiber_weights", c)

    @property
    def h(self) -> tuple:
        return tuple(d + 1 for d in self.degrees)

    def at_infinity(self, i: int) -> LaurentCharacter:
        return self.fiber_weights[i] * S ** -self.degrees[i]

    def swapped(self) -> "LocalCurveSetup":
        """Exchange the data of ``L3`` and ``L4``."""
        d = self.degrees
        u = self.point
        return LocalCurveSetup((d[0], d[1], d[3], d[2]), (u[0], u[2], u[1]))

    def to_json(self) -> dict:
        return {"degrees": list(self.degrees), "point": [str(x) for x in self.point]}


def total_cohomology(setup: LocalCurveSetup) -> LaurentCharacter:
    return sum((cohomology_char(d, c) for d, c in zip(setup.degrees, setup.fiber_weights)),
               LaurentCharacter.zero())


def _half(e: Exp) -> Exp:
    if any(x % 2 for x in e):
        raise DegenerateWeight("weight has no square root on the lattice", list(e))
    return tuple(x // 2 for x in e)


def _bracket(e: Exp) -> LaurentCharacter:
    h = _half(e)
    return LaurentCharacter([(h, 1), (tuple(-x for x in h), -1)])


def bracket_ratio(V: LaurentCharacter) -> RationalCharacter:
    """``prod [b] / prod [a]`` for ``V = sum a - sum b``, ``[x] = x^{1/2} - x^{-1/2}``."""
    num, den = ONE, ONE
    for e, c in V.sorted_terms():
        if not any(e):
            raise DegenerateWeight("trivial weight in the character", list(e))
        if c > 0:
            den = den * _bracket(e) ** c
        else:
            num = num * _bracket(e) ** -c
    return RationalCharacter(num, den)


def m2_index(setup: LocalCurveSetup) -> RationalCharacter:
    return bracket_ratio(total_cohomology(setup))


# -- series in r = q^{1/2} -------------------------------------------------


def _u_value(e: Exp, u) -> Fraction:
    """Value of the t-part of the monomial with doubled exponent ``e``."""
    v = Fraction(1)
    for x, k in zip(u, e[:3]):
        v *= x ** k
    return v


def _series_mul(a: dict, b: dict, top: int) -> dict:
    out: dict = {}
    for i, x in a.items():
        for j, y in b.items():
            if i + j <= top:
                out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _bracket_series(e: Exp, u, top: int, invert: bool) -> dict:
    """``[m]`` or ``1/[m]`` as a Laurent series in ``r``; ``m^{1/2} = r^k X``."""
    h = _half(e)
    k = h[3]
    X = _u_value(h, u)
    if k == 0:
        b = X - 1 / X
        if b == 0:
            raise DegenerateWeight("weight specializes to 1", list(e))
        return {0: 1 / b if invert else b}
    if not invert:
        return {k: X, -k: -1 / X}
    # 1/(r^k X - r^-k / X): expand in the small one of r^{2k}, r^{-2k}
    if k > 0:
        lead, ratio, step = -X, X * X, 2 * k
    else:
        lead, ratio, step = 1 / X, 1 / (X * X), -2 * k
    out, j = {}, 0
    while abs(k) + j * step <= top:
        out[abs(k) + j * step] = lead * ratio ** j
        j += 1
    return out


def bracket_series(V: LaurentCharacter, u, top: int) -> dict:
    """``prod [b] / prod [a]`` expanded in ascending ``r`` up to ``r^top``."""
    factors = []
    for e, c in V.sorted_terms():
        factors += [(e, c > 0)] * abs(c)
    low = sum(-abs(_half(e)[3]) for e, inv in factors if not inv)
    reach = top - low
    out = {0: Fraction(1)}
    for e, inv in factors:
        out = _series_mul(out, _bracket_series(e, u, reach, inv), reach)
    return {k: v for k, v in out.items() if k <= top}


def m2_series(setup: LocalCurveSetup, q_order: int) -> dict:
    """M2 side at the setup's point: ``{q-exponent: value}`` through ``q_order``."""
    lowest = Fraction(sum(setup.h[:2]), 2)
    top = int(2 * (lowest + q_order))
    r = bracket_series(total_cohomology(setup), setup.point, top)
    out = {}
    for k, v in sorted(r.items()):
        key = Fraction(k, 2)
        out[int(key) if key.denominator == 1 else key] = v
    return out


# -- PT side ----------------------------------------------------------------


def divisor_tangent(setup: LocalCurveSetup, n0: int, ninf: int) -> LaurentCharacter:
    """``chi(F) + chi(F, O) - chi(F, F)`` for ``F = O_C(n0[0] + ninf[inf])``.

    Each fixed point of X on C contributes ``Q - kappa dual(Q) - P Q dual(Q)``
    with ``Q = g / (1 - m)`` the local character of F; the two poles combine
    into ``(B - s A) / (1 - s)``, which divides exactly.
    """
    d3, d4 = setup.degrees[2], setup.degrees[3]
    c3, c4 = setup.fiber_weights[2], setup.fiber_weights[3]
    c3i, c4i = setup.at_infinity(2), setup.at_infinity(3)
    g0, ginf = S ** n0, S ** -ninf
    k0 = S * c3 * c4
    kinf = S ** -1 * c3i * c4i
    A = g0 - (ONE - c3) * (ONE - c4) - kinf * ginf.dual()
    B = ginf - (ONE - c3i) * (ONE - c4i) - k0 * g0.dual()
    return divide_by_one_minus(B - S * A, 0)


def symmetric_tangent(n0: int, ninf: int) -> LaurentCharacter:
    """``T_D S^n C`` at ``D = n0[0] + ninf[inf]``."""
    return sum((S ** k for k in range(1, n0 + 1)), LaurentCharacter.zero()) + \
        sum((S ** -k for k in range(1, ninf + 1)), LaurentCharacter.zero())


def obstruction(setup: LocalCurveSetup, n0: int, ninf: int) -> LaurentCharacter:
    """``H^0(O_D (x) L3 L4)``."""
    c34 = setup.fiber_weights[2] * setup.fiber_weights[3]
    c34i = setup.at_infinity(2) * setup.at_infinity(3)
    return sum((c34 * S ** -k for k in range(n0)), LaurentCharacter.zero()) + \
        sum((c34i * S ** k for k in range(ninf)), LaurentCharacter.zero())


def _t_part(P: LaurentCharacter) -> LaurentCharacter:
    return LaurentCharacter([(e[:3] + (0,), c) for e, c in P.items()])


def _det_local(setup: LocalCurveSetup, n0: int, ninf: int, i: int) -> LaurentCharacter:
    """``H^*(O(D) (x) L_i)`` from its two local weights, t-part only."""
    c0 = _t_part(setup.fiber_weights[i]) * S ** n0
    cinf = _t_part(setup.at_infinity(i)) * S ** -ninf
    d = n0 + ninf + setup.degrees[i]
    # weight at infinity of the bundle of degree d with weight c0 at 0
    assert c0 * S ** -d == cinf
    return cohomology_char(d, c0)


def pt_fixed_contribution(setup: LocalCurveSetup, n0: int, ninf: int) -> tuple[Fraction, Fraction]:
    """``(q-exponent, value)`` of the localized term at ``n0[0] + ninf[inf]``."""
    n = n0 + ninf
    h1, h2 = setup.h[:2]
    V = divisor_tangent(setup, n0, ninf)
    loc = bracket_ratio(V).evaluate(setup.point + (1,))
    a, b = _det_local(setup, n0, ninf, 0).det(), _det_local(setup, n0, ninf, 1).det()
    twist = tuple((x - y) for x, y in zip(a, b))
    root = LaurentCharacter.monomial(_half(twist)).evaluate(setup.point + (1,))
    sign = (-1) ** ((h1 + n) % 2)
    return Fraction(h1 + h2, 2) + n, sign * loc * root


def pt_series(setup: LocalCurveSetup, q_order: int) -> dict:
    lowest = Fraction(sum(setup.h[:2]), 2)
    out: dict = {}
    n = 0
    while lowest + n <= lowest + q_order:
        for n0 in range(n + 1):
            k, v = pt_fixed_contribution(setup, n0, n - n0)
            key = int(k) if Fraction(k).denominator == 1 else k
            out[key] = out.get(key, 0) + v
        n += 1
    return out


def anchors(setup: LocalCurveSetup, n0: int, ninf: int) -> dict:
    """The two consistency anchors of the fixed-point character.

    The part of the character not involving the fiber directions of ``L3,
    L4`` beyond ``H^*(L3) + H^*(L4)`` must be ``T_D S^n C - Obs``, and the
    total rank must be ``-(d1 + d2)``.
    """
    V = divisor_tangent(setup, n0, ninf)
    H34 = sum((cohomology_char(d, c) for d, c in zip(setup.degrees[2:], setup.fiber_weights[2:])),
              LaurentCharacter.zero())
    rest = V - H34
    expected = symmetric_tangent(n0, ninf) - obstruction(setup, n0, ninf)
    return {"decomposition": rest == expected,
            "rank": V.rank() == -(setup.degrees[0] + setup.degrees[1])}


def compare_local_curve(setup: LocalCurveSetup, q_order: int) -> list[dict]:
    for n in range(q_order + 1):
        for n0 in range(n + 1):
            a = anchors(setup, n0, n - n0)
            if not all(a.values()):
                raise DegenerateWeight("fixed-point character failed its anchors", {"n0": n0, "ninf": n - n0, **a})
    lowest = Fraction(sum(setup.h[:2]), 2)
    m2, pt = m2_series(setup, q_order), pt_series(setup, q_order)
    rows = []
    for n in range(q_order + 1):
        k = lowest + n
        key = int(k) if k.denominator == 1 else k
        a, b = m2.get(key, Fraction(0)), pt.get(key, Fraction(0))
        rows.append({"order": n, "q_exponent": key, "m2": a, "pt": b, "match": a == b})
    return rows
