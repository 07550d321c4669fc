"""Exact arithmetic on equivariant characters.

A character is a Laurent polynomial in ``t1, t2, t3, q`` with integer
coefficients.  Exponents live on a doubled lattice: the key ``(2, 2, 2, 0)``
is ``kappa = t1 t2 t3`` and ``(1, 1, 1, 0)`` is ``kappa^{1/2}``.  Evaluation
happens in square-root variables ``u_i`` with ``u_i**2 = t_i`` so every
doubled exponent becomes an ordinary integer power of ``u``.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import (
    ConeViolation,
    DenominatorVanishes,
    NonGenericSlope,
    NonIntegralCoefficient,
    NotDivisible,
    UnitMonomial,
)

Exp = tuple  # 4-tuple of ints, doubled exponents of (t1, t2, t3, q)
Rational = Union[int, Fraction]

ZERO_EXP: Exp = (0, 0, 0, 0)
KAPPA_EXP: Exp = (2, 2, 2, 0)
KAPPA_HALF_EXP: Exp = (1, 1, 1, 0)
VARIABLES = ("t1", "t2", "t3", "q")


def _double(x) -> int:
    d = Fraction(x) * 2
    if d.denominator != 1:
        raise ValueError(f"exponent {x} is not a half-integer")
    return int(d)


def exp_add(a: Exp, b: Exp) -> Exp:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


def exp_neg(a: Exp) -> Exp:
    return (-a[0], -a[1], -a[2], -a[3])


def exp_scale(a: Exp, n: int) -> Exp:
    return (a[0] * n, a[1] * n, a[2] * n, a[3] * n)


class LaurentCharacter:
    """Sparse integer Laurent polynomial on the doubled exponent lattice.

    Instances are immutable; arithmetic returns new objects.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exp, int] | Iterable[tuple[Exp, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exp, int] = {}
        for e, c in items:
            if len(e) != 4:
                raise ValueError(f"exponent vector must have 4 entries, got {e!r}")
            e = tuple(int(x) for x in e)
            acc[e] = acc.get(e, 0) + int(c)
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentCharacter":
        # trusted constructor: terms already integer-keyed and zero-free
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls) -> "LaurentCharacter":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LaurentCharacter":
        return cls._raw({ZERO_EXP: 1})

    @classmethod
    def monomial(cls, e: Exp, c: int = 1) -> "LaurentCharacter":
        return cls._raw({tuple(e): c} if c else {})

    # -- container protocol -------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[Exp]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __getitem__(self, e: Exp) -> int:
        return self._terms.get(tuple(e), 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentCharacter.monomial(ZERO_EXP, other)
        if not isinstance(other, LaurentCharacter):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self) -> list[tuple[Exp, int]]:
        return sorted(self._terms.items())

    # -- ring operations ----------------------------------------------------
    def __add__(self, other) -> "LaurentCharacter":
        if isinstance(other, int):
            other = LaurentCharacter.monomial(ZERO_EXP, other)
        if not isinstance(other, LaurentCharacter):
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentCharacter._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentCharacter":
        return LaurentCharacter._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentCharacter":
        if isinstance(other, int):
            other = LaurentCharacter.monomial(ZERO_EXP, other)
        return self + (-other)

    def __rsub__(self, other) -> "LaurentCharacter":
        return (-self) + other

    def __mul__(self, other) -> "LaurentCharacter":
        if isinstance(other, int):
            if other == 0:
                return LaurentCharacter.zero()
            return LaurentCharacter._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentCharacter):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exp, int] = defaultdict(int)
        for (e0, e1, e2, e3), c in b.items():
            for (f0, f1, f2, f3), d in a.items():
                out[(e0 + f0, e1 + f1, e2 + f2, e3 + f3)] += c * d
        return LaurentCharacter._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentCharacter":
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("monomial inverse requires a unit coefficient")
            return LaurentCharacter._raw({exp_scale(e, n): c if n % 2 else 1})
        result = LaurentCharacter.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, e: Exp) -> "LaurentCharacter":
        """Multiply by the monomial with doubled exponent ``e``."""
        return LaurentCharacter._raw({exp_add(f, e): c for f, c in self._terms.items()})

    # -- structure ----------------------------------------------------------
    def dual(self) -> "LaurentCharacter":
        return LaurentCharacter._raw({exp_neg(e): c for e, c in self._terms.items()})

    def rank(self) -> int:
        return sum(self._terms.values())

    def adams(self, n: int) -> "LaurentCharacter":
        if n < 1:
            raise ValueError("Adams operation needs n >= 1")
        return LaurentCharacter._raw({exp_scale(e, n): c for e, c in self._terms.items()})

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def monomials(self) -> list[Exp]:
        return sorted(self._terms)

    def det(self) -> Exp:
        """Doubled exponent of the determinant monomial: sum of c*e."""
        out = [0, 0, 0, 0]
        for e, c in self._terms.items():
            for i in range(4):
                out[i] += c * e[i]
        return tuple(out)

    def evaluate(self, point: Sequence[Rational]) -> Fraction:
        return _eval_terms(self._terms.items(), point)

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {"terms": [{"e": list(e), "c": str(c)} for e, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentCharacter":
        return cls((tuple(t["e"]), int(t["c"])) for t in data["terms"])

    def __repr__(self) -> str:
        return f"LaurentCharacter({format_character(self)})"


def _eval_terms(items, point: Sequence[Rational]) -> Fraction:
    u = [Fraction(x) for x in point]
    if len(u) != 4:
        raise ValueError("a point assigns values to u1, u2, u3, uq")
    total = Fraction(0)
    for e, c in items:
        v = Fraction(c)
        for ui, ei in zip(u, e):
            if ei:
                if ui == 0:
                    raise DenominatorVanishes("zero coordinate in point", point)
                v *= ui ** ei
        total += v
    return total


def mono(t1=0, t2=0, t3=0, q=0, c: int = 1) -> LaurentCharacter:
    """Monomial from true (possibly half-integer) exponents."""
    return LaurentCharacter.monomial((_double(t1), _double(t2), _double(t3), _double(q)), c)


def char_from_exponents(exps: Iterable[Sequence], sign: int = 1) -> LaurentCharacter:
    """Sum of monomials given by true integer t-exponent triples."""
    acc: dict[Exp, int] = defaultdict(int)
    for e in exps:
        q = e[3] if len(e) > 3 else 0
        acc[(2 * e[0], 2 * e[1], 2 * e[2], 2 * q)] += sign
    return LaurentCharacter._raw({k: v for k, v in acc.items() if v})


KAPPA = LaurentCharacter.monomial(KAPPA_EXP)
KAPPA_HALF = LaurentCharacter.monomial(KAPPA_HALF_EXP)


def dual(P: LaurentCharacter) -> LaurentCharacter:
    return P.dual()


def rank(P: LaurentCharacter) -> int:
    return P.rank()


def adams(P: LaurentCharacter, n: int) -> LaurentCharacter:
    return P.adams(n)


def format_monomial(e: Exp) -> str:
    parts = []
    for name, d in zip(VARIABLES, e):
        if d == 0:
            continue
        x = Fraction(d, 2)
        parts.append(name if x == 1 else f"{name}^{x}")
    return "*".join(parts) if parts else "1"


def format_character(P: LaurentCharacter) -> str:
    if not P:
        return "0"
    out = []
    for e, c in P.sorted_terms():
        m = format_monomial(e)
        if m == "1":
            out.append(str(c))
        elif c == 1:
            out.append(m)
        elif c == -1:
            out.append("-" + m)
        else:
            out.append(f"{c}*{m}")
    return " + ".join(out).replace("+ -", "- ")


# -- rational characters -----------------------------------------------------


class RationalCharacter:
    """Unreduced quotient ``num / den`` of Laurent characters.

    Equality is decided by cross-multiplication.  ``den_factors`` optionally
    records the denominator as a product of binomials ``(m - 1)`` keyed by
    the monomial ``m``; when both sides carry it, common binomials are
    cancelled before the cross product is expanded.
    """

    __slots__ = ("num", "den", "den_factors")

    def __init__(self, num: LaurentCharacter, den: LaurentCharacter | None = None,
                 den_factors: Mapping[Exp, int] | None = None):
        if den is None:
            den = LaurentCharacter.one()
        if not den:
            raise DenominatorVanishes("zero denominator", num)
        self.num = num
        self.den = den
        self.den_factors = dict(den_factors) if den_factors is not None else None

    @classmethod
    def from_factors(cls, num: LaurentCharacter, factors: Mapping[Exp, int]) -> "RationalCharacter":
        """Build ``num / prod (m - 1)^k`` with the denominator expanded."""
        den = LaurentCharacter.one()
        for m, k in sorted(factors.items()):
            if k < 0:
                raise ValueError("factor multiplicities must be nonnegative")
            den = den * _binomial(m) ** k
        return cls(num, den, factors)

    def is_zero(self) -> bool:
        return not self.num

    def __mul__(self, other) -> "RationalCharacter":
        if isinstance(other, LaurentCharacter):
            other = RationalCharacter(other)
        if not isinstance(other, RationalCharacter):
            return NotImplemented
        return RationalCharacter(self.num * other.num, self.den * other.den)

    def __truediv__(self, other) -> "RationalCharacter":
        if isinstance(other, LaurentCharacter):
            other = RationalCharacter(other)
        return RationalCharacter(self.num * other.den, self.den * other.num)

    def __add__(self, other) -> "RationalCharacter":
        if isinstance(other, LaurentCharacter):
            other = RationalCharacter(other)
        if not isinstance(other, RationalCharacter):
            return NotImplemented
        if self.den == other.den:
            return RationalCharacter(self.num + other.num, self.den, self.den_factors)
        return RationalCharacter(self.num * other.den + other.num * self.den,
                                 self.den * other.den)

    def __neg__(self) -> "RationalCharacter":
        return RationalCharacter(-self.num, self.den, self.den_factors)

    def __sub__(self, other) -> "RationalCharacter":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if isinstance(other, (LaurentCharacter, int)):
            other = RationalCharacter(other if isinstance(other, LaurentCharacter)
                                      else LaurentCharacter.monomial(ZERO_EXP, other))
        if not isinstance(other, RationalCharacter):
            return NotImplemented
        return cross_equal(self, other)

    __hash__ = None

    def evaluate(self, point: Sequence[Rational]) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise DenominatorVanishes("denominator vanishes at point", list(point))
        return self.num.evaluate(point) / d

    def to_json(self) -> dict:
        out = {"num": self.num.to_json(), "den": self.den.to_json()}
        if self.den_factors is not None:
            out["den_factors"] = [{"m": list(m), "k": k} for m, k in sorted(self.den_factors.items())]
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "RationalCharacter":
        factors = data.get("den_factors")
        if factors is not None:
            factors = {tuple(f["m"]): int(f["k"]) for f in factors}
        return cls(LaurentCharacter.from_json(data["num"]), LaurentCharacter.from_json(data["den"]), factors)

    def __repr__(self) -> str:
        return f"RationalCharacter(({format_character(self.num)}) / ({format_character(self.den)}))"


def _binomial(m: Exp) -> LaurentCharacter:
    return LaurentCharacter._raw({m: 1, ZERO_EXP: -1}) if m != ZERO_EXP else LaurentCharacter.zero()


def cross_equal(a: RationalCharacter, b: RationalCharacter) -> bool:
    """Exact equality ``a.num * b.den == b.num * a.den``."""
    if a.den_factors is not None and b.den_factors is not None:
        keys = set(a.den_factors) | set(b.den_factors)
        ra, rb = LaurentCharacter.one(), LaurentCharacter.one()
        for m in sorted(keys):
            ka, kb = a.den_factors.get(m, 0), b.den_factors.get(m, 0)
            common = min(ka, kb)
            if ka > common:
                ra = ra * _binomial(m) ** (ka - common)
            if kb > common:
                rb = rb * _binomial(m) ** (kb - common)
        # a.num/ (G*ra) == b.num / (G*rb)
        return a.num * rb == b.num * ra
    return a.num * b.den == b.num * a.den


def probably_equal(a: RationalCharacter, b: RationalCharacter, points: Iterable[Sequence]) -> bool:
    """Evaluation screen; a mismatch is always confirmed exactly."""
    for p in points:
        try:
            if a.evaluate(p) != b.evaluate(p):
                return cross_equal(a, b)
        except DenominatorVanishes:
            continue
    return True


def evaluate(P, point: Sequence[Rational]) -> Fraction:
    return P.evaluate(point)


# -- slopes ------------------------------------------------------------------


@dataclass(frozen=True)
class SlopeFunctional:
    """Two-level slope: primary weights, then a signed tiebreak.

    Weights act on the t-part of doubled exponents; ``q`` has weight zero.
    """

    primary_weights: tuple
    tiebreak_weights: tuple = (1, 1, -2)
    tiebreak_sign: int = 1

    def __post_init__(self):
        p = tuple(Fraction(x) for x in self.primary_weights)
        t = tuple(Fraction(x) for x in self.tiebreak_weights)
        object.__setattr__(self, "primary_weights", p)
        object.__setattr__(self, "tiebreak_weights", t)
        if len(p) != 3 or len(t) != 3:
            raise ValueError("slope weights are 3-tuples")
        if sum(p) != 0 or sum(t) != 0:
            raise ValueError("slope weights must sum to zero (kappa-annihilation)")
        if self.tiebreak_sign not in (1, -1):
            raise ValueError("tiebreak sign must be +1 or -1")
        cross = (p[1] * t[2] - p[2] * t[1], p[2] * t[0] - p[0] * t[2], p[0] * t[1] - p[1] * t[0])
        if not any(cross):
            raise ValueError("tiebreak must be linearly independent from the primary slope")
        # positive rescalings to integers; signs are all that the split needs
        dp = math.lcm(*(x.denominator for x in p))
        dt = math.lcm(*(x.denominator for x in t))
        object.__setattr__(self, "_ip", tuple(int(x * dp) for x in p))
        object.__setattr__(self, "_it", tuple(int(x * dt) * self.tiebreak_sign for x in t))

    @classmethod
    def preferred(cls, tiebreak_sign: int = 1) -> "SlopeFunctional":
        return cls((1, -1, 0), (1, 1, -2), tiebreak_sign)

    def value(self, e: Exp) -> tuple:
        p, t = self.primary_weights, self.tiebreak_weights
        a = p[0] * e[0] + p[1] * e[1] + p[2] * e[2]
        b = t[0] * e[0] + t[1] * e[1] + t[2] * e[2]
        return (a, self.tiebreak_sign * b)

    def sign(self, e: Exp) -> int:
        p, t = self._ip, self._it
        a = p[0] * e[0] + p[1] * e[1] + p[2] * e[2]
        b = t[0] * e[0] + t[1] * e[1] + t[2] * e[2]
        if a:
            return 1 if a > 0 else -1
        if b:
            return 1 if b > 0 else -1
        return 0

    def flipped(self) -> "SlopeFunctional":
        return SlopeFunctional(self.primary_weights, self.tiebreak_weights, -self.tiebreak_sign)

    def cocharacter(self, scale: int) -> tuple:
        """Integer 1-parameter subgroup ``scale*primary + sign*tiebreak``.

        For ``scale`` beyond every primary/tiebreak ratio occurring in a finite
        character it induces the same sign on each monomial as the slope.
        """
        vals = [scale * p + self.tiebreak_sign * t
                for p, t in zip(self.primary_weights, self.tiebreak_weights)]
        den = math.lcm(*(Fraction(v).denominator for v in vals))
        return tuple(int(v * den) for v in vals)

    def to_json(self) -> dict:
        return {"primary": [str(x) for x in self.primary_weights],
                "tiebreak": [str(x) for x in self.tiebreak_weights],
                "sign": self.tiebreak_sign}


def split_by_slope(P: LaurentCharacter, sigma: SlopeFunctional) -> tuple[LaurentCharacter, LaurentCharacter]:
    plus, minus = {}, {}
    for e, c in P.items():
        s = sigma.sign(e)
        if s == 0:
            raise NonGenericSlope(f"monomial {format_monomial(e)} has zero slope", e)
        (plus if s > 0 else minus)[e] = c
    return LaurentCharacter._raw(plus), LaurentCharacter._raw(minus)


def rho_factors(P_plus: LaurentCharacter) -> tuple[LaurentCharacter, dict]:
    """ρ as ``(numerator, {m: k})`` with denominator ``prod (m - 1)^k``.

    A negative multiplicity inverts the factor, moving ``(m - 1)`` upstairs and
    ``kappa^{1/2} - kappa^{-1/2} m`` downstairs.  The second kind of factor is
    rewritten as ``-kappa^{1/2} (m' - 1)`` with ``m' = m / kappa`` so that the
    denominator stays a product of canonical binomials.
    """
    num = LaurentCharacter.one()
    factors: dict[Exp, int] = defaultdict(int)
    shift = [0, 0, 0, 0]
    sign = 1
    for m, c in sorted(P_plus.items()):
        if m == ZERO_EXP:
            raise UnitMonomial("ρ of the trivial weight is undefined", m)
        top = LaurentCharacter([(KAPPA_HALF_EXP, 1), (exp_add(m, (-1, -1, -1, 0)), -1)])
        if c > 0:
            num = num * top ** c
            factors[m] += c
        else:
            k = -c
            num = num * _binomial(m) ** k
            m2 = exp_add(m, exp_neg(KAPPA_EXP))
            if m2 == ZERO_EXP:
                raise DenominatorVanishes("ρ factor inverted at m = kappa", m)
            # kappa^{1/2} - kappa^{-1/2} m = -kappa^{1/2} (m/kappa - 1)
            factors[m2] += k
            for i in range(4):
                shift[i] += k * KAPPA_HALF_EXP[i]
            if k % 2:
                sign = -sign
    num = num.shift(exp_neg(tuple(shift))) * sign
    return num, {m: k for m, k in factors.items() if k}


def rho(P_plus: LaurentCharacter) -> RationalCharacter:
    num, factors = rho_factors(P_plus)
    return RationalCharacter.from_factors(num, factors)


# -- q-series ----------------------------------------------------------------


class QSeries:
    """Truncated Laurent series in ``q`` with character or rational coefficients.

    Keys are q-exponents (ints, or Fractions for half-integer orders).
    """

    def __init__(self, coefficients: Mapping, truncation_order, min_order=None):
        self.coefficients = {k: v for k, v in coefficients.items()}
        self.truncation_order = truncation_order
        if min_order is None:
            min_order = min(self.coefficients) if self.coefficients else 0
        self.min_order = min_order
        for k in self.coefficients:
            if not (self.min_order <= k <= self.truncation_order):
                raise ValueError(f"exponent {k} outside [{self.min_order}, {self.truncation_order}]")

    def __getitem__(self, k):
        v = self.coefficients.get(k)
        if v is None:
            return 0
        return v

    def orders(self) -> list:
        return sorted(self.coefficients)

    def to_json(self) -> dict:
        def enc(v):
            if hasattr(v, "to_json"):
                return v.to_json()
            return str(v)
        return {"min_order": _json_num(self.min_order),
                "truncation_order": _json_num(self.truncation_order),
                "terms": {str(k): enc(self.coefficients[k]) for k in self.orders()}}

    @classmethod
    def from_json(cls, data: Mapping) -> "QSeries":
        def dec(v):
            if isinstance(v, str):
                return Fraction(v)
            if "num" in v:
                return RationalCharacter.from_json(v)
            return LaurentCharacter.from_json(v)
        def key(k):
            k = Fraction(k)
            return int(k) if k.denominator == 1 else k
        return cls({key(k): dec(v) for k, v in data["terms"].items()},
                   key(data["truncation_order"]), key(data["min_order"]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.min_order == other.min_order and self.truncation_order == other.truncation_order
                and self.orders() == other.orders()
                and all(self.coefficients[k] == other.coefficients[k] for k in self.orders()))

    __hash__ = None

    def __repr__(self) -> str:
        return f"QSeries({self.to_json()!r})"


def _json_num(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else str(x)


def plethystic_exp(F: LaurentCharacter, q_order: int) -> QSeries:
    """``S^• F = exp(sum_n adams(F, n) / n)`` truncated at ``q^{q_order}``.

    The result maps each q-exponent to a LaurentCharacter in the t-variables.
    """
    for e in F:
        if e[3] <= 0:
            raise ConeViolation(f"monomial {format_monomial(e)} has q-exponent <= 0", e)
    top = 2 * q_order
    # G[d] : rational-coefficient t-polynomial at doubled q-degree d
    G: dict[int, dict] = defaultdict(lambda: defaultdict(Fraction))
    for n in range(1, top + 1):
        for e, c in F.items():
            d = e[3] * n
            if d > top:
                continue
            G[d][(e[0] * n, e[1] * n, e[2] * n)] += Fraction(c, n)
    E: dict[int, dict] = {0: {(0, 0, 0): Fraction(1)}}
    # d * E_d = sum_j j * G_j * E_{d-j}
    for d in range(1, top + 1):
        acc: dict = defaultdict(Fraction)
        for j, Gj in G.items():
            if j > d or (d - j) not in E:
                continue
            for a, x in Gj.items():
                if not x:
                    continue
                for b, y in E[d - j].items():
                    acc[(a[0] + b[0], a[1] + b[1], a[2] + b[2])] += j * x * y
        Ed = {k: v / d for k, v in acc.items() if v}
        if Ed:
            E[d] = Ed
    coeffs = {}
    for d, poly in sorted(E.items()):
        terms = {}
        for (a0, a1, a2), v in poly.items():
            if v.denominator != 1:
                raise NonIntegralCoefficient("plethystic exponential produced a non-integer", (d, (a0, a1, a2), str(v)))
            terms[(a0, a1, a2, 0)] = int(v)
        key = Fraction(d, 2)
        key = int(key) if key.denominator == 1 else key
        coeffs[key] = LaurentCharacter._raw(terms)
    return QSeries(coeffs, q_order, 0)


# -- helpers used by the geometry modules -----------------------------------


def divide_by_one_minus(P: LaurentCharacter, var: int) -> LaurentCharacter:
    """Exact quotient ``P / (1 - x_var)`` where ``x_var`` is t_{var+1}^{1}.

    Works slice by slice in the remaining exponents; raises NotDivisible if a
    slice does not sum to zero.
    """
    step = 2
    slices: dict[tuple, dict[int, int]] = defaultdict(dict)
    for e, c in P.items():
        rest = e[:var] + e[var + 1:]
        slices[rest][e[var]] = c
    out: dict[Exp, int] = {}
    for rest, col in slices.items():
        residues = defaultdict(dict)
        for k, c in col.items():
            residues[k % step][k] = c
        for r, sub in residues.items():
            lo, hi = min(sub), max(sub)
            # P = (1 - x) Q  =>  Q_k = sum_{j <= k} P_j, must vanish past hi
            running = 0
            k = lo
            while k <= hi:
                running += sub.get(k, 0)
                if running and k < hi:
                    e = rest[:var] + (k,) + rest[var:]
                    out[e] = running
                k += step
            if running:
                raise NotDivisible("character is not divisible by (1 - x)", P)
    return LaurentCharacter._raw(out)
