"""2D partitions, 3D partitions with legs, and the box statistics on them.

Leg orientation: leg ``i`` extends along ``x_i``.  Its cross-section is read
in the remaining coordinates in cyclic order, so ``lambda`` lives in
``(x2, x3)``, ``mu`` in ``(x3, x1)`` and ``nu`` in ``(x1, x2)``.  A 2D partition
with parts ``p`` contains ``(a, b)`` iff ``b < len(p)`` and ``a < p[b]``; for the
``x3``-leg this makes ``(2, 2, 2)`` the ideal ``(x1^2, x2^3)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .charalg import LaurentCharacter, char_from_exponents
from .errors import NonFiniteSum

Box = tuple  # (i, j, k)


@dataclass(frozen=True, order=True)
class Partition2D:
    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition2D":
        text = text.strip()
        if not text:
            return cls(())
        return cls(tuple(int(x) for x in text.split(",")))

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def extent(self) -> int:
        """Largest coordinate span in either direction."""
        return max(len(self.parts), self.parts[0] if self.parts else 0)

    def contains(self, a: int, b: int) -> bool:
        return 0 <= b < len(self.parts) and 0 <= a < self.parts[b]

    def cells(self) -> list[tuple[int, int]]:
        return [(a, b) for b, p in enumerate(self.parts) for a in range(p)]

    def conjugate(self) -> "Partition2D":
        if not self.parts:
            return self
        return Partition2D(tuple(sum(1 for p in self.parts if p > a) for a in range(self.parts[0])))

    def generators(self) -> list[tuple[int, int]]:
        """Exponents of the minimal generators of the monomial ideal, by rising b."""
        rows = list(self.parts) + [0]
        return [(rows[b], b) for b in range(len(rows)) if b == 0 or rows[b] < rows[b - 1]]

    def relations(self) -> list[tuple[int, int]]:
        """First syzygy degrees: lcm of consecutive generators."""
        g = self.generators()
        return [(g[i][0], g[i + 1][1]) for i in range(len(g) - 1)]

    def arm(self, a: int, b: int) -> int:
        return self.parts[b] - a - 1

    def leg(self, a: int, b: int) -> int:
        return sum(1 for p in self.parts[b + 1:] if p > a)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


def partitions_of(n: int) -> list[Partition2D]:
    out = []

    def rec(rem, cap, acc):
        if rem == 0:
            out.append(Partition2D(tuple(acc)))
            return
        for p in range(min(rem, cap), 0, -1):
            rec(rem - p, p, acc + [p])

    rec(n, n, [])
    return out


# -- minimal configuration ---------------------------------------------------


def _leg_contains(i: int, lam: Partition2D, box: Box) -> bool:
    x = box
    if i == 0:
        return lam.contains(x[1], x[2])
    if i == 1:
        return lam.contains(x[2], x[0])
    return lam.contains(x[0], x[1])


def _leg_box(i: int, cell: tuple[int, int], t: int) -> Box:
    a, b = cell
    if i == 0:
        return (t, a, b)
    if i == 1:
        return (b, t, a)
    return (a, b, t)


@dataclass(frozen=True)
class MinimalConfig:
    """Union of the three leg cylinders with precomputed finite overlaps."""

    legs: tuple

    def contains(self, box: Box) -> bool:
        return any(_leg_contains(i, lam, box) for i, lam in enumerate(self.legs))

    def in_leg(self, i: int, box: Box) -> bool:
        return _leg_contains(i, self.legs[i], box)

    @cached_property
    def pair_overlaps(self) -> dict:
        out = {}
        for i in range(3):
            for j in range(i + 1, 3):
                # leg i is infinite along x_i; restrict it to the range of leg j in that axis
                boxes = set()
                for cell in self.legs[j].cells():
                    for t in range(self.extent):
                        b = _leg_box(j, cell, t)
                        if _leg_contains(i, self.legs[i], b):
                            boxes.add(b)
                out[(i, j)] = frozenset(boxes)
        return out

    @cached_property
    def triple_overlap(self) -> frozenset:
        return frozenset(b for b in self.pair_overlaps[(0, 1)] if self.in_leg(2, b))

    @cached_property
    def extent(self) -> int:
        return max(lam.extent for lam in self.legs)

    def boxes_in_window(self, N: int) -> set:
        out = set()
        for i, lam in enumerate(self.legs):
            for cell in lam.cells():
                for t in range(N):
                    b = _leg_box(i, cell, t)
                    if max(b) < N:
                        out.add(b)
        return out

    def count_in_window(self, N: int) -> int:
        return len(self.boxes_in_window(N))


def _window(N: int) -> Iterable[Box]:
    for i in range(N):
        for j in range(N):
            for k in range(N):
                yield (i, j, k)


@lru_cache(maxsize=None)
def _minimal_config(legs: tuple) -> MinimalConfig:
    return MinimalConfig(legs)


def minimal_config(legs: Sequence[Partition2D]) -> MinimalConfig:
    return _minimal_config(tuple(legs))


# -- legged 3D partitions ----------------------------------------------------


def _as_legs(legs) -> tuple:
    out = []
    for lam in legs:
        out.append(lam if isinstance(lam, Partition2D) else Partition2D(tuple(lam)))
    if len(out) != 3:
        raise ValueError("exactly three legs are required")
    return tuple(out)


@dataclass(frozen=True)
class LeggedPartition3D:
    legs: tuple
    extra_boxes: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "legs", _as_legs(self.legs))
        object.__setattr__(self, "extra_boxes", frozenset(tuple(b) for b in self.extra_boxes))

    @classmethod
    def from_boxes(cls, boxes: Iterable[Box], legs=((), (), ())) -> "LeggedPartition3D":
        legs = _as_legs(legs)
        mc = minimal_config(legs)
        extra = frozenset(tuple(b) for b in boxes if not mc.contains(tuple(b)))
        pi = cls(legs, extra)
        pi.validate()
        return pi

    @cached_property
    def minimal(self) -> MinimalConfig:
        return minimal_config(self.legs)

    def contains(self, box: Box) -> bool:
        return box in self.extra_boxes or self.minimal.contains(box)

    def validate(self) -> None:
        for b in self.extra_boxes:
            if min(b) < 0:
                raise ValueError(f"negative coordinate in {b}")
            if self.minimal.contains(b):
                raise ValueError(f"extra box {b} lies in the minimal configuration")
        for b in self.extra_boxes:
            for axis in range(3):
                if b[axis] > 0:
                    p = list(b)
                    p[axis] -= 1
                    if not self.contains(tuple(p)):
                        raise ValueError(f"box {b} is missing predecessor {tuple(p)}")

    @property
    def has_legs(self) -> bool:
        return any(len(lam) for lam in self.legs)

    @cached_property
    def sorted_extra(self) -> tuple:
        return tuple(sorted(self.extra_boxes))

    def sort_key(self):
        return (len(self.extra_boxes), self.sorted_extra)

    @cached_property
    def finite_extent(self) -> int:
        m = self.minimal.extent
        if self.extra_boxes:
            m = max(m, max(max(b) for b in self.extra_boxes) + 1)
        return m

    def default_window(self) -> int:
        return self.finite_extent + self.minimal.extent + 2

    def boxes_in_window(self, N: int) -> list[Box]:
        boxes = self.minimal.boxes_in_window(N)
        boxes.update(b for b in self.extra_boxes if max(b) < N)
        return sorted(boxes)

    def finite_boxes(self) -> list[Box]:
        """All boxes of a partition without legs."""
        if self.has_legs:
            raise ValueError("partition has infinite legs")
        return list(self.sorted_extra)

    def to_json(self) -> dict:
        return {"legs": [list(lam.parts) for lam in self.legs],
                "extra": [list(b) for b in self.sorted_extra]}

    @classmethod
    def from_json(cls, data) -> "LeggedPartition3D":
        return cls(tuple(Partition2D(tuple(p)) for p in data["legs"]),
                   frozenset(tuple(b) for b in data["extra"]))


def parse_legs(text: str) -> tuple:
    """``"2,1;;1"`` -> three Partition2D; empty fields are empty partitions."""
    fields = text.split(";")
    if len(fields) != 3:
        raise ValueError(f"expected three ';'-separated legs, got {text!r}")
    return tuple(Partition2D.parse(f) for f in fields)


# -- size --------------------------------------------------------------------


def renorm_size_closed(pi: LeggedPartition3D) -> int:
    mc = pi.minimal
    pairs = sum(len(s) for s in mc.pair_overlaps.values())
    return len(pi.extra_boxes) - pairs + len(mc.triple_overlap)


def renorm_size_by_count(pi: LeggedPartition3D, N: int) -> int:
    total = sum(lam.size for lam in pi.legs)
    return len(pi.boxes_in_window(N)) - N * total


def renorm_size(pi: LeggedPartition3D, check: bool = True) -> int:
    """Box count minus ``N (|lambda|+|mu|+|nu|)`` in a large window.

    Computed from closed-form overlap counts; ``check`` compares against the
    direct box count at two window sizes.
    """
    n = renorm_size_closed(pi)
    if check:
        N = 2 * (pi.finite_extent + 1)
        for M in (N, N + 1):
            if renorm_size_by_count(pi, M) != n:
                raise AssertionError(f"renormalized size unstable at N={M} for {pi.to_json()}")
    return n


# -- enumeration -------------------------------------------------------------


def _addable(contains, box: Box) -> bool:
    if contains(box):
        return False
    for axis in range(3):
        if box[axis] > 0:
            p = list(box)
            p[axis] -= 1
            if not contains(tuple(p)):
                return False
    return True


def enumerate_partitions(legs, max_extra: int) -> list[LeggedPartition3D]:
    """All partitions with the given legs and at most ``max_extra`` extra boxes.

    Breadth-first from the minimal configuration, adding one addable box at a
    time and deduplicating on the extra-box set.  Output is ordered by number
    of extra boxes, then lexicographically by the sorted box list.
    """
    legs = _as_legs(legs)
    mc = minimal_config(legs)
    B = mc.extent + 1
    start = frozenset(b for b in _window(B) if _addable(mc.contains, b))
    level = {frozenset(): start}
    found = [frozenset()]
    for _ in range(max_extra):
        nxt: dict = {}
        for extra in sorted(level, key=lambda s: sorted(s)):
            addable = level[extra]
            for b in sorted(addable):
                new = extra | {b}
                if new in nxt:
                    continue
                contains = lambda x, new=new: x in new or mc.contains(x)
                cand = set(addable)
                cand.discard(b)
                for axis in range(3):
                    nb = list(b)
                    nb[axis] += 1
                    nb = tuple(nb)
                    if _addable(contains, nb):
                        cand.add(nb)
                nxt[new] = frozenset(cand)
        found.extend(nxt)
        level = nxt
    out = [LeggedPartition3D(legs, s) for s in found]
    out.sort(key=LeggedPartition3D.sort_key)
    return out


# -- profile -----------------------------------------------------------------


@dataclass(frozen=True)
class ProfileFunction:
    """Corners of the zig-zag boundary of the complement of a partition.

    Positions use ``c(a1, a2) = a1 - a2``.  Valleys sit at generator degrees
    and peaks at relation degrees of the ideal.
    """

    corner_positions: tuple  # ((position, "valley" | "peak"), ...) ascending

    @property
    def valleys(self) -> tuple:
        return tuple(p for p, k in self.corner_positions if k == "valley")

    @property
    def peaks(self) -> tuple:
        return tuple(p for p, k in self.corner_positions if k == "peak")

    def value(self, s) -> int:
        return sum(abs(s - c) for c in self.valleys) - sum(abs(s - c) for c in self.peaks)

    def slope(self, s) -> int:
        """``f'(s)`` away from corners."""
        def sgn(x):
            return (x > 0) - (x < 0)
        return sum(sgn(s - c) for c in self.valleys) - sum(sgn(s - c) for c in self.peaks)

    def second_difference(self, s: int) -> int:
        return self.value(s + 1) - 2 * self.value(s) + self.value(s - 1)


def profile(lam: Partition2D) -> ProfileFunction:
    """Trace the boundary path from the x1-axis to the x2-axis.

    Left steps have slope ``+1`` and up steps slope ``-1`` when read in the
    diagonal coordinate; direction changes are the corners.
    """
    rows = list(lam.parts)
    # boundary vertices from (rows[0], 0) to (0, len(rows)), preceded by a left run
    path = [(rows[0] + 1 if rows else 1, 0)]
    x, y = path[0]
    for b in range(len(rows) + 1):
        target = rows[b] if b < len(rows) else 0
        while x > target:
            x -= 1
            path.append((x, y))
        if b < len(rows):
            y += 1
            path.append((x, y))
    path.append((x, y + 1))
    corners = []
    for p0, p1, p2 in zip(path, path[1:], path[2:]):
        d1 = (p1[0] - p0[0], p1[1] - p0[1])
        d2 = (p2[0] - p1[0], p2[1] - p1[1])
        if d1 == (-1, 0) and d2 == (0, 1):
            corners.append((p1[0] - p1[1], "valley"))
        elif d1 == (0, 1) and d2 == (-1, 0):
            corners.append((p1[0] - p1[1], "peak"))
    corners.sort()
    return ProfileFunction(tuple(corners))


# -- the xi statistic --------------------------------------------------------

X1, X2, X3, X3_INV = "x1", "x2", "x3", "x3^-1"

# Corner tags.  Pinned by requiring the preferred-slope index formula to agree
# with the direct index on the full acceptance corpus.
VALLEY_TAG = X3_INV
PEAK_TAG = X3

# x_i carries T-weight t_i^{-1}
TAG_EXPONENT = {X1: (-1, 0, 0), X2: (0, -1, 0), X3: (0, 0, -1), X3_INV: (0, 0, 1)}


def xi(lam: Partition2D, box: Box, prof: ProfileFunction | None = None) -> str:
    prof = prof or profile(lam)
    c = box[0] - box[1]
    if c in prof.valleys:
        return VALLEY_TAG
    if c in prof.peaks:
        return PEAK_TAG
    return X1 if prof.slope(c) > 0 else X2


def _xi_sum(pi: LeggedPartition3D, N: int) -> dict:
    nu, empty = pi.legs[2], Partition2D(())
    prof_nu, prof_0 = profile(nu), profile(empty)
    tag_nu, tag_0 = {}, {}
    legs = pi.minimal
    acc: dict = {}
    for b in pi.boxes_in_window(N):
        c = b[0] - b[1]
        if not legs.in_leg(2, b):
            if c not in tag_nu:
                tag_nu[c] = xi(nu, b, prof_nu)
            t = tag_nu[c]
            acc[t] = acc.get(t, 0) + 1
        for i in (0, 1):
            if legs.in_leg(i, b):
                if c not in tag_0:
                    tag_0[c] = xi(empty, b, prof_0)
                t = tag_0[c]
                acc[t] = acc.get(t, 0) - 1
    return {k: v for k, v in acc.items() if v}


@lru_cache(maxsize=200_000)
def Xi_pi(pi: LeggedPartition3D) -> LaurentCharacter:
    """The box statistic for the preferred (x3) leg, as a character."""
    N = pi.default_window()
    a, b = _xi_sum(pi, N), _xi_sum(pi, N + 1)
    if a != b:
        raise NonFiniteSum("leg contributions failed to cancel", pi.to_json())
    pos = char_from_exponents([TAG_EXPONENT[t] for t, c in a.items() for _ in range(c) if c > 0])
    neg = char_from_exponents([TAG_EXPONENT[t] for t, c in a.items() for _ in range(-c) if c < 0])
    return pos - neg
