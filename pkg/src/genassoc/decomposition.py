"""Gap/point decomposition of a generator's range and the projection onto it."""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field

from .generators import Generator
from .numbers import INF, ZERO, ExtRat, as_ext
from .rangesets import FULL, RangeSet


class NotInClassF(ValueError):
    def __init__(self, witness):
        super().__init__(f"generator violates the right-limit class condition at x={witness}")
        self.witness = witness


class NotInM(ValueError):
    pass


@dataclass(frozen=True)
class Decomposition:
    gaps: tuple  # sorted ((b_k, d_k), ...)
    c_points: frozenset
    m: RangeSet
    f0: ExtRat
    f1: ExtRat
    valid: bool = True  # False when built with force=True outside the class
    _index: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        # component lows, for bisecting in g_m
        object.__setattr__(self, "_index", tuple(c.lo for c in self.m.components))

    # -- derived quantities ------------------------------------------------
    @property
    def c_sorted(self) -> list:
        return sorted(self.c_points)

    def gap(self, k: int) -> RangeSet:
        b, d = self.gaps[k]
        return RangeSet.interval(b, d)

    def punctured_gap(self, k: int) -> RangeSet:
        """[b_k, d_k] with its points of M removed."""
        return self.gap(k).difference(self.m)

    def anchor(self, k: int) -> ExtRat:
        b, d = self.gaps[k]
        return d if self.m.contains(d) else b

    @property
    def anchors(self) -> list:
        return [self.anchor(k) for k in range(len(self.gaps))]

    @property
    def m_minus_c(self) -> RangeSet:
        return self.m.difference(RangeSet.points(self.c_points))

    def reconstruct(self) -> RangeSet:
        covered = RangeSet().union(*(self.gap(k) for k in range(len(self.gaps))))
        return RangeSet.points(self.c_points).union(FULL.difference(covered))

    def gap_index(self, z: ExtRat):
        """Index k with z in the punctured gap k, or None."""
        for k, (b, d) in enumerate(self.gaps):
            if b <= z <= d and not self.m.contains(z):
                return k
        return None

    # -- the projection ----------------------------------------------------
    def g_m(self, x) -> ExtRat:
        """max of M intersected with {sup([0,x] & M), inf([x,inf] & M)}."""
        x = as_ext(x)
        comps = self.m.components
        if not comps:
            raise NotInM("projection onto an empty range")
        i = bisect.bisect_right(self._index, x) - 1
        if i >= 0 and comps[i].contains(x):
            return x
        if i >= 0 and comps[i].lo == x:
            i -= 1  # x is an open left end; [0,x] & M lies in earlier components
        cands = []
        if i >= 0 and comps[i].hi_closed:
            cands.append(comps[i].hi)
        if i + 1 < len(comps) and comps[i + 1].lo_closed:
            cands.append(comps[i + 1].lo)
        if not cands:
            raise NotInM(f"projection undefined at {x}: no nearest point of M is attained")
        return max(cands)

    # -- report fragment ---------------------------------------------------
    def to_json(self) -> dict:
        return {
            "S": [[str(b), str(d)] for b, d in self.gaps],
            "C": [str(c) for c in self.c_sorted],
            "M": str(self.m),
            "f0": str(self.f0),
            "f1": str(self.f1),
            "anchors": [str(a) for a in self.anchors],
            "valid": self.valid,
        }


def decompose(g: Generator, force: bool = False) -> Decomposition:
    """Jump intervals and the point set C of the range, built from the jumps of g.

    Raises NotInClassF unless ``force``; a forced decomposition is marked
    ``valid=False``.
    """
    member, witness = g.class_f_membership()
    if not member and not force:
        raise NotInClassF(witness)
    m = g.range()
    gaps, c = set(), set()
    for x in g.breakpoints:
        fm, fx, fp = g.side_limit(x, "left"), g.eval(x), g.side_limit(x, "right")
        if fm < fx:
            gaps.add((fm, fx))
        if fx < fp:
            gaps.add((fx, fp))
        if fm < fp:
            c.add(fx)
            if m.contains(fp):
                c.add(fp)
            if m.contains(fm):
                c.add(fm)
    if m == FULL:
        gaps, c = {(INF, INF)}, {INF}
    return Decomposition(tuple(sorted(gaps)), frozenset(c), m, g.eval(ZERO), g.eval(ExtRat(1)),
                         valid=member)


def check_invariants(d: Decomposition) -> list[str]:
    """Human-readable list of violated structural invariants (empty when sound)."""
    problems = []
    if d.m == FULL:
        return problems
    for k, (b, dk) in enumerate(d.gaps):
        if not b < dk:
            problems.append(f"gap {k} has no positive length")
        hit = {cp for cp in d.c_points if b <= cp <= dk}
        if hit not in ({b}, {dk}, {b, dk}):
            problems.append(f"gap [{b},{dk}] meets C in {sorted(hit)}")
    for k in range(len(d.gaps)):
        for l in range(len(d.gaps)):
            if k == l:
                continue
            (b1, d1), (b2, d2) = d.gaps[k], d.gaps[l]
            inter = d.gap(k).intersect(d.gap(l))
            if inter and not (d1 <= b2 and inter == RangeSet.points([d1])) \
                    and not (d2 <= b1 and inter == RangeSet.points([d2])):
                problems.append(f"gaps {k} and {l} overlap in {inter}")
    if d.reconstruct() != d.m:
        problems.append(f"reconstruction {d.reconstruct()} differs from M = {d.m}")
    return problems
