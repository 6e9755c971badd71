"""Rational functions of one variable (lambda) with exact cancellation."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence

Coeffs = tuple[Fraction, ...]  # low degree first


def _trim(c: Sequence[Fraction]) -> Coeffs:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(Fraction(x) for x in c)


@dataclass(frozen=True)
class UPoly:
    coeffs: Coeffs

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def linear(cls, a: int | Fraction, b: int | Fraction) -> "UPoly":
        """a*lambda + b."""
        return cls((Fraction(b), Fraction(a)))

    @classmethod
    def const(cls, c: int | Fraction) -> "UPoly":
        return cls((Fraction(c),))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> Fraction:
        return self.coeffs[-1]

    def __add__(self, other: "UPoly") -> "UPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UPoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "UPoly":
        return UPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other: "UPoly") -> "UPoly":
        return self + (-other)

    def __mul__(self, other) -> "UPoly":
        if isinstance(other, (int, Fraction)):
            return UPoly(tuple(x * other for x in self.coeffs))
        if self.is_zero() or other.is_zero():
            return UPoly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] += x * y
        return UPoly(tuple(out))

    __rmul__ = __mul__

    def divmod(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - other.degree, 1)
        while len(rem) - 1 >= other.degree and any(rem):
            shift = len(rem) - 1 - other.degree
            f = rem[-1] / other.lead()
            q[shift] = f
            for k, c in enumerate(other.coeffs):
                rem[shift + k] -= f * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return UPoly(tuple(q)), UPoly(tuple(rem))

    def __call__(self, x: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "UPoly":
        return self * (1 / self.lead())

    def rational_roots(self) -> list[Fraction]:
        """All rational roots (rational root theorem on the integer form)."""
        if self.is_zero():
            raise ValueError("zero polynomial")
        ints = _integer_form(self)
        # strip roots at zero
        roots: set[Fraction] = set()
        k = 0
        while ints[k] == 0:
            k += 1
            roots.add(Fraction(0))
        ints = ints[k:]
        a0, an = abs(ints[0]), abs(ints[-1])
        for p in _divisors(a0):
            for q in _divisors(an):
                for s in (1, -1):
                    r = Fraction(s * p, q)
                    if self(r) == 0:
                        roots.add(r)
        return sorted(roots)


def _divisors(n: int) -> list[int]:
    if n == 0:
        return [1]
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _integer_form(p: UPoly) -> list[int]:
    den = reduce(lcm, (c.denominator for c in p.coeffs), 1)
    ints = [int(c * den) for c in p.coeffs]
    g = reduce(gcd, ints, 0)
    return [x // g for x in ints]


def poly_gcd(a: UPoly, b: UPoly) -> UPoly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


@dataclass(frozen=True)
class RationalFn:
    """num/den in lambda, reduced: coprime, integer coefficients, content 1,
    leading coefficient of the denominator positive."""

    num: UPoly
    den: UPoly

    @classmethod
    def make(cls, num: UPoly, den: UPoly) -> "RationalFn":
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return cls(UPoly(()), UPoly.const(1))
        g = poly_gcd(num, den)
        num, den = num.divmod(g)[0], den.divmod(g)[0]
        # clear denominators jointly, then strip the joint content
        scale = reduce(lcm, (c.denominator for c in num.coeffs + den.coeffs), 1)
        num, den = num * scale, den * scale
        content = reduce(gcd, (int(c) for c in num.coeffs + den.coeffs), 0)
        num, den = num * Fraction(1, content), den * Fraction(1, content)
        if den.lead() < 0:
            num, den = -num, -den
        return cls(num, den)

    @classmethod
    def from_factors(cls, scalar: Fraction | int, num_factors: Iterable[UPoly], den_factors: Iterable[UPoly]) -> "RationalFn":
        num = reduce(lambda x, y: x * y, num_factors, UPoly.const(scalar))
        den = reduce(lambda x, y: x * y, den_factors, UPoly.const(1))
        return cls.make(num, den)

    def is_singular_at(self, x: Fraction | int) -> bool:
        return self.den(x) == 0

    def __call__(self, x: Fraction | int) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at {x}")
        return self.num(x) / d

    def poles(self) -> list[Fraction]:
        return self.den.rational_roots()

    def __mul__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn.make(self.num * other.num, self.den * other.den)

    def __add__(self, other: "RationalFn") -> "RationalFn":
        return RationalFn.make(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RationalFn":
        return RationalFn(-self.num, self.den)

    def __sub__(self, other: "RationalFn") -> "RationalFn":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num.coeffs == other.num.coeffs and self.den.coeffs == other.den.coeffs

    def __hash__(self) -> int:
        return hash((self.num.coeffs, self.den.coeffs))
