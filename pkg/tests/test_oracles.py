"""Independent cross-checks with sympy, treating Z and Zbar as free symbols."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np
import pytest

sympy = pytest.importorskip("sympy")

from deltoid.operator import AlphaParam, apply_L, gamma
from deltoid.poly2 import Poly2
from deltoid.series import generating_coefficients
from deltoid.traces import flat_eigenvector

from conftest import cached_table

Zs, Ws, lam_s, X = sympy.symbols("Z W lam X")


def to_sym(f: Poly2):
    return sum((sympy.Rational(c.numerator, c.denominator) * Zs**i * Ws**j for (i, j), c in f.items()), sympy.Integer(0))


def L_sym(f, lam):
    gzz, gzw, gww = Ws - Zs**2, (1 - Zs * Ws) / 2, Zs - Ws**2
    second = gzz * sympy.diff(f, Zs, 2) + 2 * gzw * sympy.diff(f, Zs, Ws) + gww * sympy.diff(f, Ws, 2)
    return sympy.expand(second - lam * (Zs * sympy.diff(f, Zs) + Ws * sympy.diff(f, Ws)))


@pytest.mark.parametrize("lam", [Fraction(1), Fraction(7, 3), Fraction(4)])
def test_table_is_eigen_under_sympy_operator(lam):
    t = cached_table(lam, 6)
    ls = sympy.Rational(lam.numerator, lam.denominator)
    for p, q in t.indices():
        f = to_sym(t[(p, q)])
        ev = (ls - 1) * (p + q) + p * p + q * q + p * q
        assert sympy.expand(L_sym(f, ls) + ev * f) == 0


def test_apply_L_matches_sympy_on_monomials():
    param = AlphaParam.from_lambda(Fraction(5, 2))
    ls = sympy.Rational(5, 2)
    for i, j in combinations_with_replacement(range(5), 2):
        f = Poly2.monomial(i, j)
        assert to_sym(apply_L(param, f)) == L_sym(to_sym(f), ls)


def test_gamma_matches_sympy():
    f, g = Poly2.monomial(3, 1), Poly2.monomial(0, 2) + Poly2.monomial(1, 0)
    fs, gs = to_sym(f), to_sym(g)
    gzz, gzw, gww = Ws - Zs**2, (1 - Zs * Ws) / 2, Zs - Ws**2
    expected = (
        gzz * sympy.diff(fs, Zs) * sympy.diff(gs, Zs)
        + gww * sympy.diff(fs, Ws) * sympy.diff(gs, Ws)
        + gzw * (sympy.diff(fs, Zs) * sympy.diff(gs, Ws) + sympy.diff(fs, Ws) * sympy.diff(gs, Zs))
    )
    assert to_sym(gamma(f, g)) == sympy.expand(expected)


def test_generating_series_against_sympy():
    param = AlphaParam.from_lambda(Fraction(7, 3))
    beta = sympy.Rational(-4, 9)
    ser = sympy.series((1 - 3 * Ws * X + 3 * Zs * X**2 - X**3) ** beta, X, 0, 6).removeO()
    A = generating_coefficients(param, 5)
    for n in range(6):
        assert sympy.expand(ser.coeff(X, n) - to_sym(A[n])) == 0


def test_flat_family_against_orbit_sums_numerically():
    """P_{p,q} at alpha=-1/2 is 3^{-(p+q)} times the Weyl-orbit sum of z^(p,0,-q)."""
    rng = np.random.default_rng(3)
    a, b = rng.uniform(0, 2 * np.pi, (2, 10))
    z = np.exp(1j * np.array([a, b, -a - b]))
    Zv = z.sum(axis=0) / 3
    from itertools import permutations
    for p in range(5):
        for q in range(5):
            exps = {perm for perm in permutations((p, 0, -q))}
            orbit = sum(np.prod([z[k] ** e[k] for k in range(3)], axis=0) for e in exps)
            assert np.allclose(flat_eigenvector(p, q).eval(Zv), orbit / 3 ** (p + q))
