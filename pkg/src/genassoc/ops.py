"""Associative base operations on [0, inf] with exact set images and preimages."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .numbers import INF, ONE, ZERO, ExtRat, IndeterminateProduct, as_ext
from .rangesets import EMPTY, FULL, UNIT, Interval, RangeSet


class OutsideValidDomain(ValueError):
    def __init__(self, op, x, y=None):
        what = f"({x}, {y})" if y is not None else str(x)
        super().__init__(f"{op} is not defined at {what}")
        self.pair = (x, y)


class RegistrationError(ValueError):
    pass


class UnknownOperation(KeyError):
    pass


@dataclass(frozen=True)
class AssocOp:
    """A base operation F with its declared algebraic properties.

    ``shape`` selects how images and preimages are computed:

    * ``"strict"``: strictly increasing and continuous in each variable on
      the valid domain, except along the ``absorbing`` values z where
      F(z, y) = F(y, z) = z.
    * ``"max"`` / ``"min"``: the lattice operations.
    """

    name: str
    evaluator: Callable = field(compare=False)
    shape: str = "strict"
    valid: RangeSet = FULL  # each argument ranges over this set
    commutative: bool = True
    cancellative: bool = False
    neutral: ExtRat | None = None
    absorbing: tuple = ()
    inverse: Callable | None = field(default=None, compare=False)  # (z, y) -> x with F(x, y) = z
    params: tuple = ()

    def __call__(self, x, y) -> ExtRat:
        return self.f_eval(x, y)

    def f_eval(self, x, y) -> ExtRat:
        x, y = as_ext(x), as_ext(y)
        if not (self.valid.contains(x) and self.valid.contains(y)):
            raise OutsideValidDomain(self.name, x, y)
        return self.evaluator(x, y)

    def to_json(self) -> dict:
        out = {"name": self.name}
        out.update({k: str(v) for k, v in self.params})
        return out

    def __str__(self):
        if self.params:
            return f"{self.name}({', '.join(f'{k}={v}' for k, v in self.params)})"
        return self.name

    # -- images ------------------------------------------------------------
    def f_image(self, a: RangeSet, b: RangeSet) -> RangeSet:
        """{F(x, y) : x in a, y in b}, exactly."""
        if a.is_empty or b.is_empty:
            return EMPTY
        if not (a.issubset(self.valid) and b.issubset(self.valid)):
            raise OutsideValidDomain(self.name, a, b)
        if self.shape == "max":
            return a.intersect(_up(b)).union(b.intersect(_up(a)))
        if self.shape == "min":
            return a.intersect(_down(b)).union(b.intersect(_down(a)))
        if _mixes_zero_inf(self, a, b):
            raise IndeterminateProduct(f"{self.name} of 0 and inf")
        parts = []
        special = RangeSet.points(self.absorbing)
        for z in self.absorbing:
            if a.contains(z) or b.contains(z):
                parts.append(Interval(z, z))
        a_reg, b_reg = a.difference(special), b.difference(special)
        for ia in a_reg:
            for ib in b_reg:
                lo = self.evaluator(ia.lo, ib.lo)
                hi = self.evaluator(ia.hi, ib.hi)
                parts.append(Interval.make(lo, hi, ia.lo_closed and ib.lo_closed,
                                           ia.hi_closed and ib.hi_closed))
        return RangeSet(parts)

    def image_point(self, a: RangeSet, y, side: str = "left") -> RangeSet:
        """F(a, y) for side='left', F(y, a) for side='right'."""
        p = RangeSet.points([y])
        return self.f_image(a, p) if side == "left" else self.f_image(p, a)

    def f_section_preimage(self, y, target: RangeSet, side: str = "left") -> RangeSet:
        """{x : F(x, y) in target} (left) or {x : F(y, x) in target} (right).

        A constant section gives all of the valid domain or nothing.
        """
        y = as_ext(y)
        if not self.valid.contains(y):
            raise OutsideValidDomain(self.name, y)
        if side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', not {side!r}")
        if self.shape == "max":
            low = RangeSet.interval(ZERO, y) if target.contains(y) else EMPTY
            return low.union(target.intersect(RangeSet.interval(y, INF, False, True)))
        if self.shape == "min":
            high = RangeSet.interval(y, INF) if target.contains(y) else EMPTY
            return high.union(target.intersect(RangeSet.interval(ZERO, y, True, False)))
        dom = self.valid
        if y in self.absorbing:
            # constant section; drop the partner that would make 0 * inf
            if _mixes_zero_inf(self, RangeSet.points([y]), dom):
                dom = dom.difference(RangeSet.points([INF if y == ZERO else ZERO]))
            return dom if target.contains(y) else EMPTY
        d_lo, _, d_hi, _ = dom.extrema()
        reach = target.intersect(RangeSet.interval(self.evaluator(d_lo, y), self.evaluator(d_hi, y)))
        out = RangeSet(Interval.make(self.inverse(iv.lo, y), self.inverse(iv.hi, y),
                                     iv.lo_closed, iv.hi_closed) for iv in reach)
        return out.intersect(dom)


def _mixes_zero_inf(op, a, b) -> bool:
    if not (ZERO in op.absorbing and INF in op.absorbing):
        return False
    return (a.contains(ZERO) and b.contains(INF)) or (a.contains(INF) and b.contains(ZERO))


def _up(s: RangeSet) -> RangeSet:
    lo, att, _, _ = s.extrema()
    return RangeSet.interval(lo, INF, att, True)


def _down(s: RangeSet) -> RangeSet:
    _, _, hi, att = s.extrema()
    return RangeSet.interval(ZERO, hi, True, att)


# -- built-in operations ---------------------------------------------------

def _sum(x, y):
    return x + y


def _sum_inv(z, y):
    if z.is_inf:
        return INF
    return ExtRat(z.q - y.q)


def _product(x, y):
    return x * y


def _product_inv(z, y):
    return z / y


def _max(x, y):
    return x if x >= y else y


def _min(x, y):
    return x if x <= y else y


def _prob_sum(x, y):
    return ExtRat._wrap(x.q + y.q - x.q * y.q)


def _prob_sum_inv(z, y):
    return ExtRat((z.q - y.q) / (1 - y.q))


def sum_op() -> AssocOp:
    return AssocOp("sum", _sum, cancellative=True, neutral=ZERO, absorbing=(INF,), inverse=_sum_inv)


def product_op() -> AssocOp:
    return AssocOp("product", _product, cancellative=True, neutral=ONE, absorbing=(ZERO, INF),
                   inverse=_product_inv)


def scaled_product_op(alpha) -> AssocOp:
    alpha = as_ext(alpha)
    if alpha.is_inf or alpha == ZERO:
        raise RegistrationError("scaled_product needs a positive finite alpha")
    neutral = ExtRat._wrap(1 / alpha.q)
    return AssocOp("scaled_product", lambda x, y: x * y * alpha, cancellative=True, neutral=neutral,
                   absorbing=(ZERO, INF), inverse=lambda z, y: z / (y * alpha),
                   params=(("alpha", alpha),))


def shifted_sum_op(beta) -> AssocOp:
    beta = as_ext(beta)
    if beta.is_inf:
        raise RegistrationError("shifted_sum needs a finite beta")

    def inv(z, y):
        return INF if z.is_inf else ExtRat(z.q - y.q - beta.q)

    return AssocOp("shifted_sum", lambda x, y: x + y + beta, cancellative=True,
                   neutral=ZERO if beta == ZERO else None, absorbing=(INF,), inverse=inv,
                   params=(("beta", beta),))


def max_op() -> AssocOp:
    return AssocOp("max", _max, shape="max", neutral=ZERO, absorbing=(INF,))


def min_op() -> AssocOp:
    return AssocOp("min", _min, shape="min", neutral=INF, absorbing=(ZERO,))


def prob_sum_op() -> AssocOp:
    return AssocOp("prob_sum", _prob_sum, valid=UNIT, neutral=ZERO, absorbing=(ONE,),
                   inverse=_prob_sum_inv)


_BUILTINS = {
    "sum": (sum_op, ()),
    "product": (product_op, ()),
    "scaled_product": (scaled_product_op, ("alpha",)),
    "shifted_sum": (shifted_sum_op, ("beta",)),
    "max": (max_op, ()),
    "min": (min_op, ()),
    "prob_sum": (prob_sum_op, ()),
}


def _witness_values(op: AssocOp) -> list[ExtRat]:
    if op.valid == UNIT:
        return [ExtRat(v) for v in ("0", "1/4", "1/3", "1/2", "2/3", "3/4", "1")]
    return [ExtRat(v) for v in ("0", "1/3", "1/2", "1", "2", "7/2", "inf")]


def verify_op(op: AssocOp) -> None:
    """Spot-check associativity, monotonicity, commutativity and the
    cancellation flag on a 7-point witness grid; raise RegistrationError."""
    pts = _witness_values(op)

    def ev(x, y):
        try:
            return op.f_eval(x, y)
        except IndeterminateProduct:
            return None

    for x, y, z in itertools.product(pts, repeat=3):
        xy, yz = ev(x, y), ev(y, z)
        if xy is None or yz is None:
            continue
        lhs, rhs = ev(xy, z), ev(x, yz)
        if lhs is not None and rhs is not None and lhs != rhs:
            raise RegistrationError(f"{op} is not associative at ({x}, {y}, {z})")
    for x, y in itertools.product(pts, repeat=2):
        v = ev(x, y)
        if v is None:
            continue
        if op.commutative and v != ev(y, x):
            raise RegistrationError(f"{op} is not commutative at ({x}, {y})")
        for y2 in pts:
            if y2 > y:
                w = ev(x, y2)
                if w is not None and w < v:
                    raise RegistrationError(f"{op} is not non-decreasing at ({x}, {y}) < ({x}, {y2})")
        if op.neutral is not None and ev(x, op.neutral) != x:
            raise RegistrationError(f"{op.neutral} is not neutral for {op}")
    if op.cancellative:
        for x, y, z in itertools.product(pts, repeat=3):
            if x in (ZERO, INF) or y == z:
                continue
            a, b = ev(x, y), ev(x, z)
            if a is not None and a == b:
                raise RegistrationError(f"{op} violates the cancellation law at ({x}, {y}, {z})")


def get_op(name: str, **params) -> AssocOp:
    """Build and verify a registered operation, e.g. ``get_op("shifted_sum", beta="1")``."""
    try:
        factory, keys = _BUILTINS[name]
    except KeyError:
        raise UnknownOperation(name) from None
    extra = set(params) - set(keys)
    if extra:
        raise RegistrationError(f"{name} takes no parameter(s) {sorted(extra)}")
    missing = [k for k in keys if k not in params]
    if missing:
        raise RegistrationError(f"{name} needs parameter(s) {missing}")
    op = factory(*(params[k] for k in keys))
    verify_op(op)
    return op


def op_from_json(doc: dict) -> AssocOp:
    doc = dict(doc)
    name = doc.pop("name", None)
    if name is None:
        raise RegistrationError("operation spec has no name")
    return get_op(name, **doc)


def builtin_names() -> list[str]:
    return sorted(_BUILTINS)
