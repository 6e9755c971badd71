"""Carre du champ and the generator L^(alpha) in scaled complex coordinates.

Scaled coordinates put the deltoid cusps at 1, j, j^2, and

    Gamma(Z, Z)       = Zbar - Z^2
    Gamma(Z, Zbar)    = (1 - Z Zbar) / 2
    Gamma(Zbar, Zbar) = Z - Zbar^2
    L Z               = -lambda Z,     lambda = (6 alpha + 5) / 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly2 import ONE, ZBAR, Poly2, Z, Scalar


class InvalidParameter(ValueError):
    """lambda <= 0 (equivalently alpha <= -5/6)."""


@dataclass(frozen=True)
class AlphaParam:
    alpha: Fraction
    lam: Fraction

    def __post_init__(self):
        if self.lam != (6 * self.alpha + 5) / 2:
            raise InvalidParameter(f"alpha={self.alpha} and lambda={self.lam} are inconsistent")
        if self.lam <= 0:
            raise InvalidParameter(f"lambda must be > 0, got {self.lam}")

    @classmethod
    def from_alpha(cls, alpha: Scalar | str) -> "AlphaParam":
        a = Fraction(alpha)
        return cls(a, (6 * a + 5) / 2)

    @classmethod
    def from_lambda(cls, lam: Scalar | str) -> "AlphaParam":
        l = Fraction(lam)
        return cls((2 * l - 5) / 6, l)

    @property
    def beta(self) -> Fraction:
        """Exponent of the generating function P(X)^beta."""
        return (1 - self.lam) / 3


@dataclass(frozen=True)
class GammaTable:
    gzz: Poly2
    gzzbar: Poly2
    gbarbar: Poly2


def gamma_table() -> GammaTable:
    return GammaTable(
        gzz=ZBAR - Z * Z,
        gzzbar=(ONE - Z * ZBAR) * Fraction(1, 2),
        gbarbar=Z - ZBAR * ZBAR,
    )


GAMMA = gamma_table()


def unscaled_gamma_table() -> GammaTable:
    """Structure polynomials before the Z -> 3Z, L -> L/4 rescaling."""
    return GammaTable(
        gzz=-4 * Z * Z + 12 * ZBAR,
        gzzbar=-2 * Z * ZBAR + 18,
        gbarbar=-4 * ZBAR * ZBAR + 12 * Z,
    )


def gamma(f: Poly2, g: Poly2, table: GammaTable = GAMMA) -> Poly2:
    fz, fb = f.partial("Z"), f.partial("Zbar")
    gz, gb = g.partial("Z"), g.partial("Zbar")
    return table.gzz * (fz * gz) + table.gbarbar * (fb * gb) + table.gzzbar * (fz * gb + fb * gz)


def euler(f: Poly2) -> Poly2:
    """Z d/dZ + Zbar d/dZbar, i.e. multiply each term by its total degree."""
    return Poly2({(i, j): c * (i + j) for (i, j), c in f.items()})


def apply_L(p: AlphaParam, f: Poly2) -> Poly2:
    fz = f.partial("Z")
    fb = f.partial("Zbar")
    second = (
        GAMMA.gzz * fz.partial("Z")
        + GAMMA.gbarbar * fb.partial("Zbar")
        + 2 * GAMMA.gzzbar * fz.partial("Zbar")
    )
    return second - p.lam * euler(f)


def eigenvalue(p: AlphaParam | Scalar, deg_p: int, deg_q: int) -> Fraction:
    if deg_p < 0 or deg_q < 0:
        raise ValueError("degrees must be nonnegative")
    lam = p.lam if isinstance(p, AlphaParam) else Fraction(p)
    return (lam - 1) * (deg_p + deg_q) + deg_p**2 + deg_q**2 + deg_p * deg_q


def alpha_shift_check(f: Poly2, a1: AlphaParam, a2: AlphaParam) -> Poly2:
    """Zero exactly when L^(a1) - L^(a2) is the Euler-operator shift."""
    return apply_L(a1, f) - apply_L(a2, f) + (a1.lam - a2.lam) * euler(f)


def discriminant() -> Poly2:
    g = GAMMA
    return g.gzzbar * g.gzzbar - g.gzz * g.gbarbar


def rho_unscaled() -> Poly2:
    """Boundary polynomial in the original (unscaled) coordinates."""
    return 12 * (Z**3 + ZBAR**3) - 3 * Z**2 * ZBAR**2 - 54 * Z * ZBAR + 81


# ratio rho_unscaled(Z) / discriminant(Z / 3)
RHO_TO_DISCRIMINANT = Fraction(4 * 3**4)


def to_real(f: Poly2) -> tuple[Poly2, Poly2]:
    """Substitute Z = x1 + i x2 and split into real and imaginary parts.

    The returned Poly2 objects use exponent pairs (a, b) for x1^a x2^b.
    """
    re: dict[tuple[int, int], Fraction] = {}
    im: dict[tuple[int, int], Fraction] = {}
    for (i, j), c in f.items():
        # (x1 + i x2)^i (x1 - i x2)^j, expanded one factor at a time
        expansion = {(0, 0): (Fraction(1), Fraction(0))}
        for sign, count in ((1, i), (-1, j)):
            for _ in range(count):
                nxt: dict[tuple[int, int], tuple[Fraction, Fraction]] = {}
                for (a, b), (u, v) in expansion.items():
                    # times x1
                    k = (a + 1, b)
                    pu, pv = nxt.get(k, (Fraction(0), Fraction(0)))
                    nxt[k] = (pu + u, pv + v)
                    # times sign * i * x2
                    k = (a, b + 1)
                    pu, pv = nxt.get(k, (Fraction(0), Fraction(0)))
                    nxt[k] = (pu - sign * v, pv + sign * u)
                expansion = nxt
        for m, (u, v) in expansion.items():
            re[m] = re.get(m, 0) + c * u
            im[m] = im.get(m, 0) + c * v
    return Poly2(re), Poly2(im)


def real_metric(table: GammaTable) -> tuple[Poly2, Poly2, Poly2]:
    """(g11, g12, g22) with g_kl = Gamma(x_k, x_l), as polynomials in x1, x2."""
    g11 = (table.gzz + 2 * table.gzzbar + table.gbarbar) * Fraction(1, 4)
    g22 = -(table.gzz - 2 * table.gzzbar + table.gbarbar) * Fraction(1, 4)
    # Gamma(x1, x2) = (Gamma(Z,Z) - Gamma(Zbar,Zbar)) / (4i); to_real's imaginary
    # part of (gzz - gbarbar) divided by 4 gives it
    g12_re, g12_im = to_real(table.gzz - table.gbarbar)
    if not g12_re.is_zero():
        raise AssertionError("Gamma(Z,Z) - Gamma(Zbar,Zbar) should be purely imaginary")
    return to_real(g11)[0], g12_im * Fraction(1, 4), to_real(g22)[0]


__all__ = [
    "AlphaParam",
    "GammaTable",
    "GAMMA",
    "InvalidParameter",
    "RHO_TO_DISCRIMINANT",
    "alpha_shift_check",
    "apply_L",
    "discriminant",
    "eigenvalue",
    "euler",
    "gamma",
    "gamma_table",
    "real_metric",
    "rho_unscaled",
    "to_real",
    "unscaled_gamma_table",
]
