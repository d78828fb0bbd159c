import itertools
from fractions import Fraction

import pytest
from hypothesis import given

from genassoc.numbers import (EQ, GT, INF, LT, ONE, ZERO, ExtRat, IndeterminateProduct,
                              NegativeValueError, add, compare, midpoint, mul, parse)

from conftest import ext_values, finite_ext


def test_add_examples():
    assert add("1/2", "1/3") == ExtRat("5/6")
    assert str(add("1/2", "1/3")) == "5/6"
    assert add(INF, 7) == INF
    for x in ("0", "3/7", "inf"):
        assert add(0, x) == ExtRat(x)


def test_mul_examples():
    assert mul("1/2", "1/2") == ExtRat("1/4")
    assert mul(INF, 3) == INF
    with pytest.raises(IndeterminateProduct):
        mul(0, INF)
    with pytest.raises(IndeterminateProduct):
        mul(INF, 0)


def test_compare_examples():
    assert compare("2/4", "1/2") == EQ
    assert compare(1000000, INF) == LT
    assert compare(9, 10) == LT
    assert compare(INF, INF) == EQ
    assert compare(INF, 5) == GT


def test_text_form_is_canonical():
    assert str(parse("6/8")) == "3/4"
    assert str(parse("14/2")) == "7"
    assert str(parse("inf")) == "inf"
    assert ExtRat("6/8").denominator == 4


@pytest.mark.parametrize("bad", ["1/0", "abc", "1/-2", "", "2//3"])
def test_malformed_text_rejected(bad):
    with pytest.raises(ValueError):
        parse(bad)


def test_negative_values_rejected():
    with pytest.raises(NegativeValueError):
        ExtRat(-1)
    with pytest.raises(NegativeValueError):
        ExtRat("-1/2")


def test_division_and_midpoint():
    assert ExtRat(3) / ExtRat(2) == ExtRat("3/2")
    assert INF / ExtRat(2) == INF
    assert midpoint(ONE, INF) == ExtRat(2)
    assert midpoint(ZERO, ONE) == ExtRat("1/2")


def test_hash_consistent_with_equality():
    assert hash(ExtRat("2/4")) == hash(ExtRat("1/2"))
    assert len({ExtRat("2/4"), ExtRat("1/2"), INF, ExtRat("inf")}) == 2


@given(finite_ext)
def test_canonicalization_idempotent(x):
    again = ExtRat(Fraction(x.numerator, x.denominator))
    assert again == x and str(again) == str(x)


@given(ext_values, ext_values, ext_values)
def test_add_monotone_commutative_associative(a, b, c):
    assert add(a, b) == add(b, a)
    assert add(add(a, b), c) == add(a, add(b, c))
    if b <= c:
        assert add(a, b) <= add(a, c)


def test_mul_laws_on_positive_samples():
    pts = [ExtRat(v) for v in ("1/3", "1/2", "1", "2", "7/2", "inf")]
    for a, b, c in itertools.product(pts, repeat=3):
        assert mul(a, b) == mul(b, a)
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        if b <= c:
            assert mul(a, b) <= mul(a, c)


@given(ext_values, ext_values)
def test_order_is_total_and_inf_is_max(a, b):
    assert (compare(a, b) == LT) == (a < b)
    assert (compare(a, b) == EQ) == (a == b)
    assert a <= INF
