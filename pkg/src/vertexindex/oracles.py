"""Brute-force ground truth.

Euler characteristics ``chi(I, J)`` of monomial ideals are computed from the
Taylor resolution of ``I`` and the truncated character of ``J``; nothing here
uses the closed localization formula of ``vertexchar``.  The lemmas of the
balance argument are exposed as executable checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations, product

from .charalg import LaurentCharacter, SlopeFunctional, char_from_exponents, split_by_slope
from .errors import InclusionViolated, StabilizationFailure
from .partitions import LeggedPartition3D, Partition2D, _addable, enumerate_partitions, parse_legs, partitions_of
from .vertexchar import duality_defect, vertex_char
from .vertices import _pmap, index_direct, index_preferred

SEED = 20240611


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal in 2 or 3 variables given by its minimal generators."""

    nvars: int
    generators: tuple

    def __post_init__(self):
        if self.nvars not in (2, 3):
            raise ValueError("only 2 or 3 variables are supported")
        gens = {tuple(g) for g in self.generators}
        for g in gens:
            if len(g) != self.nvars or min(g) < 0:
                raise ValueError(f"bad generator {g}")
        minimal = [g for g in gens
                   if not any(h != g and all(a <= b for a, b in zip(h, g)) for h in gens)]
        object.__setattr__(self, "generators", tuple(sorted(minimal)))

    @classmethod
    def unit(cls, nvars: int) -> "MonomialIdeal":
        return cls(nvars, ((0,) * nvars,))

    @classmethod
    def maximal(cls, nvars: int) -> "MonomialIdeal":
        return cls(nvars, tuple(tuple(int(i == j) for j in range(nvars)) for i in range(nvars)))

    @classmethod
    def from_partition(cls, lam: Partition2D) -> "MonomialIdeal":
        return cls(2, tuple(lam.generators()))

    @classmethod
    def from_boxes(cls, boxes) -> "MonomialIdeal":
        """Ideal of a finite 3D partition: its addable boxes generate."""
        boxes = {tuple(b) for b in boxes}
        if not boxes:
            return cls.unit(3)
        ext = max(max(b) for b in boxes) + 2
        gens = [b for b in product(range(ext), repeat=3)
                if b not in boxes and _addable(boxes.__contains__, b)]
        return cls(3, tuple(gens))

    def contains(self, a) -> bool:
        return any(all(x >= y for x, y in zip(a, g)) for g in self.generators)

    def __contains__(self, other: "MonomialIdeal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def extent(self) -> int:
        return max(max(g) for g in self.generators)

    def standard_monomials(self) -> list:
        """Exponents outside the ideal; requires finite colength."""
        for i in range(self.nvars):
            if not any(g[i] and sum(g) == g[i] for g in self.generators) and \
                    (0,) * self.nvars not in self.generators:
                raise ValueError("ideal does not have finite colength")
        bound = self.extent() + 1
        return [a for a in product(range(bound), repeat=self.nvars) if not self.contains(a)]


def _pad(a) -> tuple:
    return tuple(a) + (0,) * (3 - len(a))


def taylor_k_polynomial(I: MonomialIdeal) -> dict:
    """Alternating multidegree count of the Taylor resolution of ``I``, pruned.

    Returns ``{degree: multiplicity}`` with opposite-sign pairs in the same
    degree cancelled, i.e. the graded Betti numbers' Euler characteristic.
    """
    gens = I.generators
    out: dict = {}
    for k in range(1, len(gens) + 1):
        for S in combinations(gens, k):
            deg = tuple(max(g[i] for g in S) for i in range(I.nvars))
            out[deg] = out.get(deg, 0) + (-1) ** (k + 1)
    return {d: c for d, c in out.items() if c}


def _truncated_ring(nvars: int, M: int) -> LaurentCharacter:
    return char_from_exponents([_pad(tuple(-x for x in a)) for a in product(range(M), repeat=nvars)])


def _brute_chi_at(I: MonomialIdeal, J: MonomialIdeal, M: int) -> LaurentCharacter:
    R = _truncated_ring(I.nvars, M)
    QJ = char_from_exponents([_pad(tuple(-x for x in a)) for a in J.standard_monomials()])
    K = LaurentCharacter([(tuple(2 * x for x in _pad(d)) + (0,), c) for d, c in taylor_k_polynomial(I).items()])
    total = R - K * (R - QJ)
    # terms within reach of the truncation boundary are artifacts
    G = max(max(d) for d in taylor_k_polynomial(I)) if I.generators else 0
    keep = {e: c for e, c in total.items() if min(e[:I.nvars]) > 2 * (G - M)}
    return LaurentCharacter(keep)


def brute_chi(I: MonomialIdeal, J: MonomialIdeal, window: int | None = None) -> LaurentCharacter:
    """``chi(O) - chi(I, J)`` from a resolution of ``I`` and truncated ``J``.

    ``chi(I, J) = sum_F (-1)^i Hom(F_i, J)`` with ``Hom(x^g O, J) = t^g * J``.
    The ring is cut off at ``[0, window)^n``; the result is rechecked one
    step larger.
    """
    if I.nvars != J.nvars:
        raise ValueError("ideals live in different rings")
    if window is None:
        window = 2 * (max(I.extent(), J.extent()) + 2)
    a = _brute_chi_at(I, J, window)
    if a != _brute_chi_at(I, J, window + 1):
        raise StabilizationFailure("truncated Euler characteristic depends on the window", window)
    return a


# -- lemmas -------------------------------------------------------------------


def check_lincl(I: MonomialIdeal, J: MonomialIdeal, n: int) -> bool:
    """The weight ``(x1 x2)^n`` is absent from ``chi(O) - chi(I, J)``."""
    if I.nvars != 2 or J.nvars != 2:
        raise ValueError("the inclusion lemma is about the plane")
    if n < 0 and J not in I:
        raise InclusionViolated("n < 0 requires I to contain J", {"I": I.generators, "J": J.generators, "n": n})
    if n >= 0 and I not in J:
        raise InclusionViolated("n >= 0 requires I inside J", {"I": I.generators, "J": J.generators, "n": n})
    chi = brute_chi(I, J)
    # the monomial x^a has character t^{-a}
    return chi[(-2 * n, -2 * n, 0, 0)] == 0


def xi_z(Z: LeggedPartition3D, N: int) -> LaurentCharacter:
    """``sum_box x3^-N sum x^(box - gamma_i) + x3^N sum x^(rho_i - box)``."""
    lam = Z.legs[2]
    gens, rels = lam.generators(), lam.relations()
    exps = []
    for b in Z.sorted_extra:
        for g in gens:
            x = (b[0] - g[0], b[1] - g[1], b[2] - N)
            exps.append(tuple(-v for v in x))
        for r in rels:
            x = (r[0] - b[0], r[1] - b[1], N - b[2])
            exps.append(tuple(-v for v in x))
    return char_from_exponents(exps)


def check_balance(Z: LeggedPartition3D, N: int, sigma: SlopeFunctional | None = None) -> bool:
    """Balance identity for boxes stacked against a single x3-leg."""
    if len(Z.legs[0]) or len(Z.legs[1]):
        raise ValueError("Z must have a single leg along x3")
    if Z.extra_boxes and N <= max(b[2] for b in Z.extra_boxes):
        raise ValueError("N must exceed the height of Z minus E")
    sigma = sigma or SlopeFunctional.preferred(1)
    # N(E) - sum of leg characters = 0, so N(Z) - N(E) is the vertex character of Z
    lhs = index_direct(Z, sigma)
    X = xi_z(Z, N)
    plus, _ = split_by_slope(X - X.dual(), sigma)
    return lhs == plus.rank()


# -- seeded corpora -----------------------------------------------------------


def random_partition(rng: random.Random, max_size: int) -> Partition2D:
    return rng.choice([lam for n in range(max_size + 1) for lam in partitions_of(n)])


def random_stack(rng: random.Random, lam: Partition2D, max_extra: int) -> LeggedPartition3D:
    """Grow a random partition on the x3-leg ``lam`` one addable box at a time."""
    pi = LeggedPartition3D(((), (), lam), frozenset())
    for _ in range(rng.randint(0, max_extra)):
        ext = pi.finite_extent + 1
        cands = [b for b in product(range(ext), repeat=3)
                 if not pi.contains(b) and _addable(pi.contains, b)]
        pi = LeggedPartition3D(pi.legs, pi.extra_boxes | {rng.choice(cands)})
    return pi


def balance_corpus(count: int = 200, seed: int = SEED) -> list[LeggedPartition3D]:
    rng = random.Random(seed)
    return [random_stack(rng, random_partition(rng, 4), 5) for _ in range(count)]


def _shrink(rng: random.Random, lam: Partition2D, steps: int) -> Partition2D:
    parts = list(lam.parts)
    for _ in range(steps):
        if not parts:
            break
        # removable corners: rows longer than the next one
        rows = [b for b in range(len(parts)) if b == len(parts) - 1 or parts[b] > parts[b + 1]]
        b = rng.choice(rows)
        parts[b] -= 1
        parts = [p for p in parts if p]
    return Partition2D(tuple(parts))


def lincl_corpus(count: int = 200, seed: int = SEED) -> list[tuple]:
    """Nested pairs ``(I, J, n)`` satisfying the inclusion hypothesis."""
    rng = random.Random(seed + 1)
    out = []
    for _ in range(count):
        big = random_partition(rng, 6)
        small = _shrink(rng, big, rng.randint(0, big.size))
        # larger partition, smaller ideal
        I_big, I_small = MonomialIdeal.from_partition(small), MonomialIdeal.from_partition(big)
        n = rng.randint(-4, 4)
        out.append((I_big, I_small, n) if n < 0 else (I_small, I_big, n))
    return out


# -- campaigns ----------------------------------------------------------------

TPREF_LEGS = ("", "1", "2", "1,1", "2,1")


def tpref_corpus(max_extra: int = 6) -> list[LeggedPartition3D]:
    """Every partition with legs from ``TPREF_LEGS`` and at most ``max_extra`` boxes."""
    out = []
    for a, b, c in product(TPREF_LEGS, repeat=3):
        out += enumerate_partitions(parse_legs(f"{a};{b};{c}"), max_extra)
    return out


def _scoreboard(suite: str, results: list, detail: dict | None = None) -> dict:
    failures = [r for r in results if r is not None]
    board = {"suite": suite, "cases": len(results), "passed": len(results) - len(failures),
             "failed": len(failures), "failures": failures}
    if detail:
        board.update(detail)
    return board


def _tpref_case(pi: LeggedPartition3D):
    for s in (1, -1):
        direct = index_direct(pi, SlopeFunctional.preferred(s))
        pref = index_preferred(pi, s)
        if direct != pref:
            return {"partition": pi.to_json(), "tiebreak_sign": s, "direct": direct, "preferred": pref}
    return None


def _duality_case(pi: LeggedPartition3D):
    d = duality_defect(vertex_char(pi))
    return None if not d else {"partition": pi.to_json(), "defect": d.to_json()}


def tpref_campaign(max_extra: int = 6, threads: int | None = None) -> dict:
    """Preferred-slope index formula against the direct rank, both tiebreak signs."""
    pis = tpref_corpus(max_extra)
    return _scoreboard("tpref", _pmap(_tpref_case, pis, threads), {"max_extra": max_extra})


def duality_campaign(max_extra: int = 6, threads: int | None = None) -> dict:
    pis = tpref_corpus(max_extra)
    return _scoreboard("duality", _pmap(_duality_case, pis, threads), {"max_extra": max_extra})


def balance_campaign(count: int = 200, seed: int = SEED, threads: int | None = None) -> dict:
    """Each stacked configuration is checked at two window sizes."""
    def case(item):
        i, Z = item
        top = max((b[2] for b in Z.extra_boxes), default=-1)
        bad = [N for N in (top + 1, top + 4) if not check_balance(Z, N)]
        return None if not bad else {"index": i, "Z": Z.to_json(), "N": bad}
    return _scoreboard("balance", _pmap(case, list(enumerate(balance_corpus(count, seed))), threads),
                       {"seed": seed})


def lincl_campaign(count: int = 200, seed: int = SEED, threads: int | None = None) -> dict:
    def case(item):
        i, (I, J, n) = item
        if check_lincl(I, J, n):
            return None
        return {"index": i, "I": [list(g) for g in I.generators], "J": [list(g) for g in J.generators], "n": n}
    return _scoreboard("lincl", _pmap(case, list(enumerate(lincl_corpus(count, seed))), threads),
                       {"seed": seed})


def macmahon_coefficients(order: int) -> list[int]:
    """``prod_n (1 - q^n)^{-n}`` by repeated geometric-series multiplication."""
    c = [1] + [0] * order
    for n in range(1, order + 1):
        for _ in range(n):
            # multiply by 1/(1 - q^n)
            for k in range(n, order + 1):
                c[k] += c[k - n]
    return c


def macmahon_campaign(order: int = 8) -> dict:
    counts = [0] * (order + 1)
    for pi in enumerate_partitions(((), (), ()), order):
        counts[len(pi.extra_boxes)] += 1
    expected = macmahon_coefficients(order)
    results = [None if a == b else {"order": n, "enumerated": a, "expected": b}
               for n, (a, b) in enumerate(zip(counts, expected))]
    return _scoreboard("macmahon", results, {"order": order, "counts": counts})
