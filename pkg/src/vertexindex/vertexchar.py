"""Virtual tangent characters at torus-fixed ideals of C^3.

Weight convention: the box ``(i, j, k)`` contributes ``t1^-i t2^-j t3^-k`` to
the character of ``O/I`` (monomials carry the inverse of the coordinate
weights) and ``kappa = t1 t2 t3``.  With ``Q`` the character of ``O/I`` and
``P = (1 - t1)(1 - t2)(1 - t3)``,

    chi(O) - chi(I, I) = Q - kappa * dual(Q) - P * Q * dual(Q).

For legged partitions ``Q = F + sum_i Q_i`` with ``F`` finite and
``Q_i = Lambda_i / (1 - t_i^-1)`` the infinite leg characters.  Subtracting the
three pure-leg terms leaves only products in which every ``1/(1 - t_i^±1)`` is
cancelled by a factor of ``P``, so the vertex character is assembled from
finite Laurent polynomials without any series truncation.
"""

from __future__ import annotations

from functools import lru_cache

from .charalg import KAPPA, LaurentCharacter, char_from_exponents
from .errors import StabilizationFailure
from .partitions import LeggedPartition3D, Partition2D, _leg_box

ONE = LaurentCharacter.one()


def t(i: int, power: int = 1) -> LaurentCharacter:
    e = [0, 0, 0, 0]
    e[i] = 2 * power
    return LaurentCharacter.monomial(tuple(e))


P_ALL = (ONE - t(0)) * (ONE - t(1)) * (ONE - t(2))


def box_char(boxes) -> LaurentCharacter:
    return char_from_exponents([(-i, -j, -k) for i, j, k in boxes])


def q_char(pi: LeggedPartition3D, N: int) -> LaurentCharacter:
    """Character of ``O/I`` restricted to the window ``[0, N)^3``."""
    return box_char(pi.boxes_in_window(N))


def localization_char(Q: LaurentCharacter) -> LaurentCharacter:
    return Q - KAPPA * Q.dual() - P_ALL * Q * Q.dual()


def cross_section_char(lam: Partition2D, leg: int) -> LaurentCharacter:
    """Character of the leg's cross-section (its slice at distance zero)."""
    return box_char(_leg_box(leg, cell, 0) for cell in lam.cells())


def hilb2_tangent(lam: Partition2D, axes: tuple = (0, 1)) -> LaurentCharacter:
    """Arm/leg character of ``T_{I_lambda} Hilb(C^2)`` in the variables ``axes``.

    The first axis runs along the rows of ``lam``.
    """
    a_ax, b_ax = axes
    exps = []
    for a, b in lam.cells():
        arm, leg = lam.arm(a, b), lam.leg(a, b)
        e1 = [0, 0, 0]
        e1[a_ax] += arm + 1
        e1[b_ax] -= leg
        e2 = [0, 0, 0]
        e2[a_ax] -= arm
        e2[b_ax] += leg + 1
        exps += [tuple(e1), tuple(e2)]
    return char_from_exponents(exps)


LEG_AXES = ((1, 2), (2, 0), (0, 1))


def leg_char(lam: Partition2D, direction: int, N: int) -> LaurentCharacter:
    """``C[x_dir]`` truncated to ``N`` terms, tensored with the surface tangent."""
    line = char_from_exponents([tuple(-k if a == direction else 0 for a in range(3)) for k in range(N)])
    return line * hilb2_tangent(lam, LEG_AXES[direction])


def normal_char(pi: LeggedPartition3D, N: int | None = None) -> LaurentCharacter:
    """``chi(O) - chi(J, J)`` for the finite ideal ``J = I + (x1^N, x2^N, x3^N)``.

    For partitions without legs and any window containing all boxes this is
    the tangent-obstruction character of ``I`` itself.
    """
    if N is None:
        N = pi.default_window()
    return localization_char(q_char(pi, N))


def finite_part(pi: LeggedPartition3D, N: int) -> LaurentCharacter:
    """``Q - sum_i Q_i`` read off the window: extra boxes minus leg overlaps."""
    Q = q_char(pi, N)
    for i, lam in enumerate(pi.legs):
        if len(lam):
            line = char_from_exponents([tuple(-k if a == i else 0 for a in range(3)) for k in range(N)])
            Q = Q - line * cross_section_char(lam, i)
    return Q


def _leg_terms(F: LaurentCharacter, legs) -> LaurentCharacter:
    Fd = F.dual()
    out = LaurentCharacter.zero()
    lams = [cross_section_char(lam, i) for i, lam in enumerate(legs)]
    for i in range(3):
        if not lams[i]:
            continue
        j, k = (i + 1) % 3, (i + 2) % 3
        side = (ONE - t(j)) * (ONE - t(k))
        # P * dual(Q_i) and P * Q_i
        a_i = side * lams[i].dual()
        b_i = -(t(i) * side * lams[i])
        out = out + F * a_i + Fd * b_i
        for jj in range(3):
            if jj == i or not lams[jj]:
                continue
            kk = 3 - i - jj
            # P * Q_i * dual(Q_jj)
            out = out - t(i) * (ONE - t(kk)) * lams[i] * lams[jj].dual()
    return out


@lru_cache(maxsize=200_000)
def vertex_char(pi: LeggedPartition3D) -> LaurentCharacter:
    """Finite vertex character: ``N(I)`` minus the three pure-leg characters."""
    N = pi.default_window()
    F = finite_part(pi, N)
    if finite_part(pi, N + 1) != F:
        raise StabilizationFailure("finite part of Q depends on the window", pi.to_json())
    return F - KAPPA * F.dual() - P_ALL * F * F.dual() - _leg_terms(F, pi.legs)


def duality_defect(V: LaurentCharacter) -> LaurentCharacter:
    """``V + kappa * dual(V)``; zero exactly when the duality identity holds."""
    return V + KAPPA * V.dual()
