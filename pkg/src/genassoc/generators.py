"""Piecewise closed-form non-decreasing generators f: [0,1] -> [0, inf]."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .numbers import INF, ONE, ZERO, ExtRat, as_ext
from .rangesets import Interval, RangeSet


class DomainError(ValueError):
    pass


class GeneratorError(ValueError):
    """A generator definition violates coverage, sign or monotonicity rules."""

    def __init__(self, message, path=None):
        super().__init__(message)
        self.path = path


@dataclass(frozen=True)
class PieceExpr:
    """``(a*x + b) / (c*x + d)`` with rational coefficients.

    ``kind`` keeps the user-facing form: ``constant`` (value b), ``affine``
    (a*x + b) or ``mobius``.
    """

    kind: str
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(1)

    @classmethod
    def constant(cls, value) -> "PieceExpr":
        value = as_ext(value)
        if value.is_inf:
            return cls("constant", Fraction(0), Fraction(1), Fraction(0), Fraction(0))
        return cls("constant", Fraction(0), value.q)

    @property
    def constant_value(self) -> ExtRat:
        return INF if self.d == 0 else ExtRat._wrap(self.b / self.d)

    @classmethod
    def affine(cls, a, b=0) -> "PieceExpr":
        return cls("affine", Fraction(a), Fraction(b))

    @classmethod
    def mobius(cls, a, b, c, d) -> "PieceExpr":
        return cls("mobius", Fraction(a), Fraction(b), Fraction(c), Fraction(d))

    @property
    def is_constant(self) -> bool:
        return self.a * self.d - self.b * self.c == 0

    def at(self, x: Fraction) -> ExtRat:
        """Value (or limit, at a pole) at x; a vanishing denominator gives inf."""
        den = self.c * x + self.d
        num = self.a * x + self.b
        if den == 0:
            return INF
        v = num / den
        if v < 0:
            raise GeneratorError(f"negative value {v} at x={x}")
        return ExtRat._wrap(v)

    def solve(self, y: Fraction) -> Fraction:
        """The x with value y, for a non-constant expression."""
        return (self.d * y - self.b) / (self.a - self.c * y)

    def to_json(self) -> dict:
        if self.kind == "constant":
            return {"kind": "constant", "c": str(self.constant_value)}
        if self.kind == "affine":
            return {"kind": "affine", "a": _fs(self.a), "b": _fs(self.b)}
        return {"kind": "mobius", "a": _fs(self.a), "b": _fs(self.b),
                "c": _fs(self.c), "d": _fs(self.d)}

    def __str__(self):
        if self.kind == "constant":
            return str(ExtRat(self.b))
        if self.kind == "affine":
            return f"{_fs(self.a)}x + {_fs(self.b)}"
        return f"({_fs(self.a)}x + {_fs(self.b)})/({_fs(self.c)}x + {_fs(self.d)})"


def _fs(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Piece:
    domain: Interval
    expr: PieceExpr

    def image(self) -> RangeSet:
        dom, e = self.domain, self.expr
        if dom.is_point or e.is_constant:
            return RangeSet.points([e.at(dom.lo.q)])
        return RangeSet.interval(e.at(dom.lo.q), e.at(dom.hi.q), dom.lo_closed, dom.hi_closed)


class Generator:
    """A validated piecewise generator.

    Pieces are sorted by domain; their domains partition [0, 1] exactly and
    the function is non-decreasing across the whole interval.  Every piece is
    continuous on its own domain (a Mobius pole is only allowed at a closed
    right endpoint, where the value is inf).
    """

    def __init__(self, pieces: Sequence[Piece], name: str = ""):
        self.pieces = tuple(sorted(pieces, key=lambda p: (p.domain.lo, not p.domain.lo_closed)))
        self.name = name
        self._validate()
        self._range = None
        bps = {ZERO, ONE}
        for p in self.pieces:
            bps.add(p.domain.lo)
            bps.add(p.domain.hi)
        self.breakpoints = tuple(sorted(bps))

    @classmethod
    def from_pieces(cls, spec, name="") -> "Generator":
        """Build from ``[(lo, hi, lo_closed, hi_closed, expr), ...]``."""
        return cls([Piece(Interval(as_ext(lo), as_ext(hi), lc, hc), e)
                    for lo, hi, lc, hc, e in spec], name=name)

    # -- validation --------------------------------------------------------
    def _validate(self):
        if not self.pieces:
            raise GeneratorError("generator has no pieces", "pieces")
        pos, pos_closed = ZERO, True  # next uncovered point
        for i, p in enumerate(self.pieces):
            dom = p.domain
            path = f"pieces[{i}]"
            if dom.lo < ZERO or dom.hi > ONE:
                raise GeneratorError(f"domain {dom} leaves [0,1]", f"{path}.domain")
            if dom.lo != pos or dom.lo_closed != pos_closed:
                if dom.lo < pos or (dom.lo == pos and dom.lo_closed and not pos_closed):
                    raise GeneratorError(f"domain {dom} overlaps an earlier piece at {dom.lo}",
                                         f"{path}.domain")
                raise GeneratorError(f"point {pos} is not covered by any piece", f"{path}.domain")
            pos, pos_closed = dom.hi, not dom.hi_closed
            self._check_piece(p, path)
        if pos != ONE or pos_closed:
            raise GeneratorError(f"point {pos} is not covered by any piece", "pieces")
        for i in range(1, len(self.pieces)):
            prev, cur = self.pieces[i - 1], self.pieces[i]
            left = prev.expr.at(prev.domain.hi.q)
            right = cur.expr.at(cur.domain.lo.q)
            if left > right:
                raise GeneratorError(
                    f"not non-decreasing across x={cur.domain.lo}: {left} > {right}",
                    f"pieces[{i}]")

    @staticmethod
    def _check_piece(p: Piece, path: str):
        dom, e = p.domain, p.expr
        if e.kind not in ("constant", "affine", "mobius"):
            raise GeneratorError(f"unknown piece kind {e.kind!r}", f"{path}.expr.kind")
        if e.kind == "constant" and e.d == 0:
            if not dom.is_point:
                raise GeneratorError("an infinite constant piece must be a single point", f"{path}.expr")
        elif e.kind != "mobius" and (e.c != 0 or e.d != 1):
            raise GeneratorError("only mobius pieces carry c, d", f"{path}.expr")
        lo, hi = dom.lo.q, dom.hi.q
        den_lo, den_hi = e.c * lo + e.d, e.c * hi + e.d
        if den_lo == 0 and not dom.is_point:
            raise GeneratorError("pole at the left end of a piece", f"{path}.expr")
        if (den_lo > 0) != (den_hi > 0) and den_hi != 0:
            raise GeneratorError("pole inside a piece domain", f"{path}.expr")
        if not dom.is_point:
            if e.a * e.d - e.b * e.c < 0:
                raise GeneratorError("piece is decreasing", f"{path}.expr")
            if den_hi == 0 and e.a * hi + e.b <= 0:
                raise GeneratorError("pole does not tend to +inf", f"{path}.expr")
        try:
            e.at(lo)
            e.at(hi)
        except GeneratorError as exc:
            raise GeneratorError(str(exc), f"{path}.expr") from None

    # -- evaluation --------------------------------------------------------
    def piece_at(self, x: ExtRat) -> Piece:
        for p in self.pieces:
            if p.domain.contains(x):
                return p
        raise DomainError(f"{x} is outside [0,1]")

    def __call__(self, x) -> ExtRat:
        return self.eval(x)

    def eval(self, x) -> ExtRat:
        x = as_ext(x)
        if x.is_inf or x > ONE:
            raise DomainError(f"{x} is outside [0,1]")
        return self.piece_at(x).expr.at(x.q)

    def side_limit(self, x, side: str) -> ExtRat:
        """One-sided limit; f(0-) = 0 and f(1+) = inf by convention."""
        x = as_ext(x)
        if x.is_inf or x > ONE:
            raise DomainError(f"{x} is outside [0,1]")
        if side == "left":
            if x == ZERO:
                return ZERO
            for p in self.pieces:
                if p.domain.lo < x <= p.domain.hi:
                    return p.expr.at(x.q)
        elif side == "right":
            if x == ONE:
                return INF
            for p in self.pieces:
                if p.domain.lo <= x < p.domain.hi:
                    return p.expr.at(x.q)
        else:
            raise ValueError(f"side must be 'left' or 'right', not {side!r}")
        raise AssertionError("pieces do not cover [0,1]")

    def range(self) -> RangeSet:
        if self._range is None:
            self._range = RangeSet().union(*(p.image() for p in self.pieces))
        return self._range

    def preimage(self, value) -> RangeSet:
        """{x in [0,1] : f(x) = value}, as a RangeSet of points of [0,1]."""
        value = as_ext(value)
        parts = []
        for p in self.pieces:
            dom, e = p.domain, p.expr
            if dom.is_point or e.is_constant:
                if e.at(dom.lo.q) == value:
                    parts.append(dom)
                continue
            if value.is_inf:
                if e.at(dom.hi.q).is_inf and dom.hi_closed:
                    parts.append(Interval(dom.hi, dom.hi))
                continue
            x = e.solve(value.q)
            if x >= 0 and dom.contains(ExtRat._wrap(x)):
                parts.append(Interval(ExtRat._wrap(x), ExtRat._wrap(x)))
        return RangeSet(parts)

    def pseudo_inverse(self, y) -> ExtRat:
        """sup{x in [0,1] : f(x) < y}, with sup(empty) = 0."""
        y = as_ext(y)
        best = ZERO
        for p in self.pieces:
            dom, e = p.domain, p.expr
            lo_val = e.at(dom.lo.q)
            if not lo_val < y:
                break  # non-decreasing: no later piece has values below y
            if dom.is_point or e.is_constant:
                best = dom.hi
                continue
            hi_val = e.at(dom.hi.q)
            if hi_val < y:
                best = dom.hi
            elif y.is_inf:
                best = dom.hi  # hi_val is inf at a pole; every interior point is finite
            else:
                best = ExtRat._wrap(e.solve(y.q))
                break
        return best

    # -- class membership --------------------------------------------------
    def class_f_membership(self) -> tuple[bool, ExtRat | None]:
        """Whether every x in [0,1) satisfies the right-limit condition.

        If f(x+) lies in Ran(f) then f(x) must equal f(x+); otherwise f(x)
        must be taken at x alone.  Returns ``(True, None)`` or
        ``(False, x)`` with the least violating x.  Only breakpoints can
        violate: inside a piece f is continuous.
        """
        rng = self.range()
        for x in self.breakpoints:
            if x == ONE:
                continue
            fx, fp = self.eval(x), self.side_limit(x, "right")
            if rng.contains(fp):
                if fx != fp:
                    return False, x
            elif self.preimage(fx) != RangeSet.points([x]):
                return False, x
        return True, None

    def plateau_values(self) -> list[ExtRat]:
        """Values c with f = c on some [x0, x0 + eps]."""
        vals = set()
        for p in self.pieces:
            if not p.domain.is_point and p.expr.is_constant:
                vals.add(p.expr.at(p.domain.lo.q))
        return sorted(vals)

    def b_witness(self, x) -> ExtRat:
        """x if x belongs to B, else the least s with f(s) = f(x)."""
        x = as_ext(x)
        fx = self.eval(x)
        if fx not in self.plateau_values():
            return x
        pre = self.preimage(fx)
        lo, attained, _, _ = pre.extrema()
        if not attained:
            raise GeneratorError(f"no least point with value {fx}; generator is outside the class")
        return lo

    def in_b(self, x) -> bool:
        x = as_ext(x)
        return self.b_witness(x) == x

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {"pieces": [
            {"domain": {"lo": str(p.domain.lo), "hi": str(p.domain.hi),
                        "lo_closed": p.domain.lo_closed, "hi_closed": p.domain.hi_closed},
             "expr": p.expr.to_json()}
            for p in self.pieces]}

    def __repr__(self):
        body = "; ".join(f"{p.expr} on {p.domain}" for p in self.pieces)
        return f"Generator({body})"


def identity() -> Generator:
    return Generator.from_pieces([(0, 1, True, True, PieceExpr.affine(1, 0))], name="identity")


def pseudo_inverse_scan(g: Generator, y, denominator: int = 1024) -> tuple[ExtRat, ExtRat]:
    """Grid bracket for the pseudo-inverse: (lo, hi) with lo <= f^(-1)(y) <= hi.

    lo is the largest grid point x with f(x) < y (0 if none) and hi the next
    grid point, capped at 1.  Only meant as a test oracle.
    """
    y = as_ext(y)
    best = -1
    for j in range(denominator + 1):
        if g.eval(ExtRat(j, denominator)) < y:
            best = j
    if best < 0:
        return ZERO, ZERO
    return ExtRat(best, denominator), ExtRat(min(best + 1, denominator), denominator)


__all__ = ["DomainError", "Generator", "GeneratorError", "Piece", "PieceExpr", "identity",
           "pseudo_inverse_scan"]
