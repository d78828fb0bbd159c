"""Finite unions of intervals of [0, inf] in canonical form."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .numbers import INF, ZERO, ExtRat, as_ext, midpoint


class EmptySet(ValueError):
    """Extrema of the empty set; callers apply sup(empty)=0, inf(empty)=inf."""


@dataclass(frozen=True)
class Interval:
    lo: ExtRat
    hi: ExtRat
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        if self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed)):
            raise ValueError(f"empty interval {self._text()}")

    @staticmethod
    def make(lo, hi, lo_closed=True, hi_closed=True):
        """Build an interval, or return None when the bounds describe the empty set."""
        lo, hi = as_ext(lo), as_ext(hi)
        if lo < hi or (lo == hi and lo_closed and hi_closed):
            return Interval(lo, hi, lo_closed, hi_closed)
        return None

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: ExtRat) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def _text(self) -> str:
        if self.lo == self.hi:
            return "{%s}" % self.lo
        return "%s%s,%s%s" % ("[" if self.lo_closed else "(", self.lo, self.hi,
                              "]" if self.hi_closed else ")")

    def __str__(self):
        return self._text()


def _canonical(parts: Iterable[Interval]) -> tuple:
    items = sorted(parts, key=lambda iv: (iv.lo, not iv.lo_closed))
    out: list[list] = []
    for iv in items:
        if out:
            cur = out[-1]
            hi, hc = cur[1], cur[3]
            if iv.lo < hi or (iv.lo == hi and (hc or iv.lo_closed)):
                if iv.hi > hi:
                    cur[1], cur[3] = iv.hi, iv.hi_closed
                elif iv.hi == hi:
                    cur[3] = hc or iv.hi_closed
                continue
        out.append([iv.lo, iv.hi, iv.lo_closed, iv.hi_closed])
    return tuple(Interval(*c) for c in out)


class RangeSet:
    """A subset of [0, inf] stored as sorted, disjoint, non-mergeable components.

    Two RangeSets are equal exactly when their component tuples are equal;
    the constructor canonicalizes whatever it is given.
    """

    __slots__ = ("components",)

    def __init__(self, components: Iterable[Interval | None] = ()):
        self.components = _canonical(c for c in components if c is not None)

    # -- constructors ------------------------------------------------------
    @classmethod
    def interval(cls, lo, hi, lo_closed=True, hi_closed=True) -> "RangeSet":
        return cls([Interval.make(lo, hi, lo_closed, hi_closed)])

    @classmethod
    def points(cls, xs: Iterable) -> "RangeSet":
        return cls(Interval(as_ext(x), as_ext(x)) for x in xs)

    @classmethod
    def empty(cls) -> "RangeSet":
        return EMPTY

    # -- basic protocol ----------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, RangeSet):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __bool__(self):
        return bool(self.components)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def __str__(self):
        if not self.components:
            return "{}"
        return " u ".join(str(c) for c in self.components)

    def __repr__(self):
        return f"RangeSet('{self}')"

    @property
    def is_empty(self) -> bool:
        return not self.components

    @property
    def is_point(self) -> bool:
        return len(self.components) == 1 and self.components[0].is_point

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def contains(self, x) -> bool:
        x = as_ext(x)
        for c in self.components:
            if x < c.lo:
                return False
            if c.contains(x):
                return True
        return False

    # -- algebra -----------------------------------------------------------
    def union(self, *others: "RangeSet") -> "RangeSet":
        parts = list(self.components)
        for o in others:
            parts.extend(o.components)
        return RangeSet(parts)

    def complement(self) -> "RangeSet":
        """Complement relative to [0, inf]."""
        out = []
        pos, pos_closed = ZERO, True
        for c in self.components:
            out.append(Interval.make(pos, c.lo, pos_closed, not c.lo_closed))
            pos, pos_closed = c.hi, not c.hi_closed
        out.append(Interval.make(pos, INF, pos_closed, True))
        return RangeSet(out)

    def intersect(self, other: "RangeSet") -> "RangeSet":
        out = []
        a, b = self.components, other.components
        i = j = 0
        while i < len(a) and j < len(b):
            x, y = a[i], b[j]
            if x.lo > y.lo or (x.lo == y.lo and not x.lo_closed):
                lo, lc = x.lo, x.lo_closed
            else:
                lo, lc = y.lo, y.lo_closed
            if x.hi < y.hi or (x.hi == y.hi and not x.hi_closed):
                hi, hc = x.hi, x.hi_closed
            else:
                hi, hc = y.hi, y.hi_closed
            out.append(Interval.make(lo, hi, lc, hc))
            if x.hi < y.hi or (x.hi == y.hi and not x.hi_closed and y.hi_closed):
                i += 1
            elif y.hi < x.hi or (x.hi == y.hi and not y.hi_closed and x.hi_closed):
                j += 1
            else:
                i += 1
                j += 1
        return RangeSet(out)

    def difference(self, other: "RangeSet") -> "RangeSet":
        return self.intersect(other.complement())

    __or__ = union
    __and__ = intersect
    __sub__ = difference

    def issubset(self, other: "RangeSet") -> bool:
        return self.difference(other).is_empty

    def isdisjoint(self, other: "RangeSet") -> bool:
        return self.intersect(other).is_empty

    # -- order information -------------------------------------------------
    def extrema(self) -> tuple[ExtRat, bool, ExtRat, bool]:
        """(inf, inf attained, sup, sup attained); raises EmptySet on the empty set."""
        if not self.components:
            raise EmptySet("extrema of the empty set")
        first, last = self.components[0], self.components[-1]
        return first.lo, first.lo_closed, last.hi, last.hi_closed

    def sup(self) -> ExtRat:
        """Supremum with the convention sup(empty) = 0."""
        return self.components[-1].hi if self.components else ZERO

    def inf(self) -> ExtRat:
        """Infimum with the convention inf(empty) = inf."""
        return self.components[0].lo if self.components else INF

    def o_span(self) -> "RangeSet":
        """Union of [min(x,y), max(x,y)) over all pairs of members."""
        if not self.components or self.is_point:
            return EMPTY
        lo, lo_att, hi, _ = self.extrema()
        return RangeSet.interval(lo, hi, lo_att, False)

    def sample_points(self) -> list[ExtRat]:
        """Finite deterministic members: attained endpoints and midpoints."""
        pts = []
        for c in self.components:
            if c.lo_closed:
                pts.append(c.lo)
            if not c.is_point:
                pts.append(midpoint(c.lo, c.hi))
                if c.hi_closed:
                    pts.append(c.hi)
        return pts

    def endpoints(self) -> list[ExtRat]:
        out = []
        for c in self.components:
            out.append(c.lo)
            if not c.is_point:
                out.append(c.hi)
        return out


EMPTY = RangeSet()
FULL = RangeSet.interval(ZERO, INF)
UNIT = RangeSet.interval(ZERO, ExtRat(1))


def set_algebra(op: str, a: RangeSet, b: RangeSet | None = None) -> RangeSet:
    if op == "complement":
        if b is not None:
            raise ValueError("complement takes one argument")
        return a.complement()
    if b is None:
        raise ValueError(f"{op} takes two arguments")
    if op == "union":
        return a.union(b)
    if op == "intersect":
        return a.intersect(b)
    if op == "difference":
        return a.difference(b)
    raise ValueError(f"unknown set operation {op!r}")


_COMPONENT = re.compile(r"\s*(?:\{\s*([^{}]*?)\s*\}|([\[(])\s*([^,\[\]()]+?)\s*,\s*([^,\[\]()]+?)\s*([\])]))\s*")


def parse_rangeset(text: str) -> RangeSet:
    """Parse ``"[0,2) u {3} u (6,inf]"``; ``"{}"`` is the empty set.

    A brace group may list several points: ``"{3,5,6,7}"``.
    """
    s = text.strip()
    if s in ("", "{}", "empty", "∅"):
        return EMPTY
    parts = []
    for chunk in re.split(r"\s+[uU∪]\s+|\s*∪\s*", s):
        m = _COMPONENT.fullmatch(chunk)
        if not m:
            raise ValueError(f"malformed set component {chunk!r}")
        if m.group(1) is not None:
            if m.group(1).strip():
                parts.extend(Interval(ExtRat(p), ExtRat(p)) for p in m.group(1).split(","))
        else:
            iv = Interval.make(ExtRat(m.group(3)), ExtRat(m.group(4)),
                               m.group(2) == "[", m.group(5) == "]")
            if iv is None:
                raise ValueError(f"empty interval {chunk!r}")
            parts.append(iv)
    return RangeSet(parts)
