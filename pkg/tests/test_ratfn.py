from __future__ import annotations

from fractions import Fraction

import pytest

from deltoid.ratfn import RationalFn, UPoly, poly_gcd


def test_upoly_arithmetic():
    a = UPoly.linear(1, -2)  # lambda - 2
    b = UPoly.linear(2, 3)
    prod = a * b
    assert prod(Fraction(5)) == 3 * 13
    q, r = prod.divmod(a)
    assert q == b and r.is_zero()
    assert sorted(prod.rational_roots()) == [Fraction(-3, 2), 2]


def test_gcd_and_reduction():
    a = UPoly.linear(1, -2)
    b = UPoly.linear(1, 1)
    g = poly_gcd(a * b, a * a)
    assert g.monic() == a.monic()
    f = RationalFn.make(a * b, a * UPoly.linear(3, 1))
    assert f.poles() == [Fraction(-1, 3)]
    assert f(Fraction(2)) == Fraction(3, 7)


def test_singular_evaluation_raises():
    f = RationalFn.from_factors(1, [UPoly.const(1)], [UPoly.linear(1, -4)])
    assert f.is_singular_at(4)
    with pytest.raises(ZeroDivisionError):
        f(4)


def test_rational_function_field_ops():
    x = RationalFn.make(UPoly.linear(1, 0), UPoly.const(1))
    inv = RationalFn.make(UPoly.const(1), UPoly.linear(1, 0))
    assert x * inv == RationalFn.make(UPoly.const(1), UPoly.const(1))
    assert (x + inv)(Fraction(2)) == Fraction(5, 2)
    assert (x - x)(Fraction(7)) == 0
