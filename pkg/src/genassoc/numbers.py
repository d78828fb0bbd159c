"""Exact arithmetic on the extended non-negative rationals [0, inf]."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class IndeterminateProduct(ArithmeticError):
    """Raised for 0 * inf, which has no value in [0, inf]."""


class NegativeValueError(ValueError):
    """Raised when a negative value would enter the public carrier."""


LT, EQ, GT = -1, 0, 1


class ExtRat:
    """A point of [0, inf]: a non-negative rational in lowest terms, or infinity.

    Instances are immutable and hashable.  ``ExtRat("3/6") == ExtRat(1, 2)``.
    Internally the value is a :class:`fractions.Fraction` (already canonical)
    or ``None`` for infinity.
    """

    __slots__ = ("_q",)

    def __init__(self, value=0, denominator=None):
        if denominator is not None:
            q = Fraction(value, denominator)
        elif isinstance(value, ExtRat):
            q = value._q
        elif isinstance(value, str):
            q = _parse(value)
        elif isinstance(value, (int, Fraction, Rational)):
            q = Fraction(value)
        else:
            raise TypeError(f"cannot build ExtRat from {type(value).__name__}")
        if q is not None and q < 0:
            raise NegativeValueError(f"{q} is not in [0, inf]")
        object.__setattr__(self, "_q", q)

    @classmethod
    def _wrap(cls, q):
        # trusted fast path: q is a non-negative Fraction or None
        obj = object.__new__(cls)
        object.__setattr__(obj, "_q", q)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("ExtRat is immutable")

    def __reduce__(self):
        return (ExtRat, (str(self),))

    # -- accessors ---------------------------------------------------------
    @property
    def is_inf(self) -> bool:
        return self._q is None

    @property
    def q(self) -> Fraction:
        """The finite value as a Fraction; raises for infinity."""
        if self._q is None:
            raise ValueError("infinity has no rational value")
        return self._q

    @property
    def numerator(self) -> int:
        return self.q.numerator

    @property
    def denominator(self) -> int:
        return self.q.denominator

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        other = as_ext(other)
        if self._q is None or other._q is None:
            return INF
        return ExtRat._wrap(self._q + other._q)

    __radd__ = __add__

    def __mul__(self, other):
        other = as_ext(other)
        a, b = self._q, other._q
        if a is None or b is None:
            if a == 0 or b == 0:
                raise IndeterminateProduct("0 * inf")
            return INF
        return ExtRat._wrap(a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # division by a positive finite scalar only
        other = as_ext(other)
        if other._q is None or other._q == 0:
            raise ZeroDivisionError("ExtRat division needs a positive finite divisor")
        if self._q is None:
            return INF
        return ExtRat._wrap(self._q / other._q)

    # -- order -------------------------------------------------------------
    def _cmp(self, other) -> int:
        a, b = self._q, other._q
        if a is None:
            return EQ if b is None else GT
        if b is None:
            return LT
        return LT if a < b else (GT if a > b else EQ)

    def __eq__(self, other):
        if not isinstance(other, ExtRat):
            try:
                other = as_ext(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._q == other._q

    def __hash__(self):
        return hash(("ExtRat", self._q))

    def __lt__(self, other):
        return self._cmp(as_ext(other)) < 0

    def __le__(self, other):
        return self._cmp(as_ext(other)) <= 0

    def __gt__(self, other):
        return self._cmp(as_ext(other)) > 0

    def __ge__(self, other):
        return self._cmp(as_ext(other)) >= 0

    def __bool__(self):
        return self._q != 0

    # -- text --------------------------------------------------------------
    def __str__(self):
        if self._q is None:
            return "inf"
        if self._q.denominator == 1:
            return str(self._q.numerator)
        return f"{self._q.numerator}/{self._q.denominator}"

    def __repr__(self):
        return f"ExtRat('{self}')"


def _parse(text: str):
    s = text.strip().lower()
    if s in ("inf", "+inf", "infinity", "oo", "∞"):
        return None
    if "/" in s:
        num, _, den = s.partition("/")
        try:
            n, d = int(num.strip()), int(den.strip())
        except ValueError:
            raise ValueError(f"malformed rational {text!r}") from None
        if d <= 0:
            raise ValueError(f"malformed rational {text!r}: denominator must be positive")
        return Fraction(n, d)
    try:
        return Fraction(int(s))
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None


def as_ext(value) -> ExtRat:
    if isinstance(value, ExtRat):
        return value
    return ExtRat(value)


ZERO = ExtRat(0)
ONE = ExtRat(1)
INF = ExtRat._wrap(None)


def add(a, b) -> ExtRat:
    return as_ext(a) + as_ext(b)


def mul(a, b) -> ExtRat:
    return as_ext(a) * as_ext(b)


def compare(a, b) -> int:
    """Return ``LT``, ``EQ`` or ``GT`` (-1, 0, 1) under the order of [0, inf]."""
    return as_ext(a)._cmp(as_ext(b))


def parse(text: str) -> ExtRat:
    return ExtRat(text)


def midpoint(a: ExtRat, b: ExtRat) -> ExtRat:
    """A point strictly between a < b; for b = inf this is a + 1."""
    if b.is_inf:
        return ExtRat._wrap(a.q + 1)
    return ExtRat._wrap((a.q + b.q) / 2)
