"""Truncated power series in X (and X, Y) with Poly2 coefficients.

Used for the generating function P(X)^beta, beta = (1 - lambda)/3, where

    P(X) = 1 - 3 Zbar X + 3 Z X^2 - X^3 = (1 - zbar1 X)(1 - zbar2 X)(1 - zbar3 X).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .operator import AlphaParam, apply_L, eigenvalue, gamma
from .poly2 import ONE, ZBAR, ZERO, Poly2, Z, linear_combination
from .recurrence import PolyTable
from .report import CheckReport
from .traces import trace


class NonUnitConstantTerm(ValueError):
    pass


def _pad(coeffs, n):
    coeffs = list(coeffs[: n + 1])
    return tuple(coeffs + [ZERO] * (n + 1 - len(coeffs)))


@dataclass(frozen=True)
class Series1:
    coeffs: tuple[Poly2, ...]

    @classmethod
    def of(cls, coeffs, order: int | None = None) -> "Series1":
        coeffs = [c if isinstance(c, Poly2) else Poly2.const(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        return cls(_pad(coeffs, order))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Poly2:
        return self.coeffs[n] if 0 <= n <= self.order else ZERO

    def truncate(self, n: int) -> "Series1":
        return Series1(_pad(self.coeffs, n))

    def __add__(self, other: "Series1") -> "Series1":
        n = min(self.order, other.order)
        return Series1(tuple(self[k] + other[k] for k in range(n + 1)))

    def __neg__(self) -> "Series1":
        return Series1(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Series1") -> "Series1":
        return self + (-other)

    def scale(self, s) -> "Series1":
        return Series1(tuple(c * s for c in self.coeffs))

    def __mul__(self, other: "Series1") -> "Series1":
        n = min(self.order, other.order)
        out = []
        for k in range(n + 1):
            out.append(linear_combination((1, self[i] * other[k - i]) for i in range(k + 1)))
        return Series1(tuple(out))

    def shift(self, k: int = 1) -> "Series1":
        """Multiply by X^k, keeping the order."""
        return Series1(_pad((ZERO,) * k + self.coeffs, self.order))

    def derivative(self) -> "Series1":
        return Series1(tuple(self.coeffs[k] * k for k in range(1, self.order + 1)) or (ZERO,))

    def map(self, f: Callable[[Poly2], Poly2]) -> "Series1":
        return Series1(tuple(f(c) for c in self.coeffs))

    def conj(self) -> "Series1":
        return self.map(Poly2.conj)

    def _require_unit(self):
        if self.coeffs[0] != ONE:
            raise NonUnitConstantTerm("constant term must be 1")

    def inverse(self) -> "Series1":
        self._require_unit()
        inv = [ONE]
        for n in range(1, self.order + 1):
            inv.append(-linear_combination((1, self[k] * inv[n - k]) for k in range(1, n + 1)))
        return Series1(tuple(inv))


def pow_beta(s: Series1, beta) -> Series1:
    """s^beta for a rational beta, from Q' s = beta s' Q."""
    s._require_unit()
    beta = Fraction(beta)
    q = [ONE]
    for n in range(1, s.order + 1):
        acc = linear_combination(((beta + 1) * k - n, s[k] * q[n - k]) for k in range(1, n + 1))
        q.append(acc * Fraction(1, n))
    return Series1(tuple(q))


def log_series(s: Series1) -> Series1:
    s._require_unit()
    l = [ZERO]
    for n in range(1, s.order + 1):
        acc = s[n] - linear_combination((Fraction(k, n), l[k] * s[n - k]) for k in range(1, n))
        l.append(acc)
    return Series1(tuple(l))


def poly_P_of_X(order: int = 3) -> Series1:
    return Series1.of([ONE, -3 * ZBAR, 3 * Z, -ONE], order)


def poly_Pbar_of_Y(order: int = 3) -> Series1:
    return poly_P_of_X(order).conj()


def binomial_scalar(beta, n: int) -> Fraction:
    """c_n = (-3)^n beta (beta - 1) ... (beta - n + 1) / n!."""
    beta = Fraction(beta)
    c = Fraction(1)
    for k in range(n):
        c = c * (beta - k) * (-3) / (k + 1)
    return c


@dataclass(frozen=True)
class Series2:
    """coeffs[a][b] multiplies X^a Y^b."""

    coeffs: tuple[tuple[Poly2, ...], ...]

    @classmethod
    def zero(cls, nx: int, ny: int) -> "Series2":
        return cls(tuple(tuple(ZERO for _ in range(ny + 1)) for _ in range(nx + 1)))

    @classmethod
    def from_fn(cls, nx: int, ny: int, f: Callable[[int, int], Poly2]) -> "Series2":
        return cls(tuple(tuple(f(a, b) for b in range(ny + 1)) for a in range(nx + 1)))

    @classmethod
    def outer(cls, sx: Series1, sy: Series1) -> "Series2":
        return cls.from_fn(sx.order, sy.order, lambda a, b: sx[a] * sy[b])

    @classmethod
    def in_x(cls, s: Series1, ny: int) -> "Series2":
        return cls.from_fn(s.order, ny, lambda a, b: s[a] if b == 0 else ZERO)

    @classmethod
    def in_y(cls, s: Series1, nx: int) -> "Series2":
        return cls.from_fn(nx, s.order, lambda a, b: s[b] if a == 0 else ZERO)

    @property
    def orders(self) -> tuple[int, int]:
        return len(self.coeffs) - 1, len(self.coeffs[0]) - 1

    def __getitem__(self, ab: tuple[int, int]) -> Poly2:
        a, b = ab
        nx, ny = self.orders
        if 0 <= a <= nx and 0 <= b <= ny:
            return self.coeffs[a][b]
        return ZERO

    def _common(self, other: "Series2") -> tuple[int, int]:
        (ax, ay), (bx, by) = self.orders, other.orders
        return min(ax, bx), min(ay, by)

    def __add__(self, other: "Series2") -> "Series2":
        nx, ny = self._common(other)
        return Series2.from_fn(nx, ny, lambda a, b: self[a, b] + other[a, b])

    def __neg__(self) -> "Series2":
        nx, ny = self.orders
        return Series2.from_fn(nx, ny, lambda a, b: -self[a, b])

    def __sub__(self, other: "Series2") -> "Series2":
        return self + (-other)

    def scale(self, s) -> "Series2":
        nx, ny = self.orders
        return Series2.from_fn(nx, ny, lambda a, b: self[a, b] * s)

    def __mul__(self, other: "Series2") -> "Series2":
        nx, ny = self._common(other)

        def cell(a: int, b: int) -> Poly2:
            return linear_combination(
                (1, self[i, j] * other[a - i, b - j]) for i in range(a + 1) for j in range(b + 1)
            )

        return Series2.from_fn(nx, ny, cell)

    def shift(self, dx: int, dy: int) -> "Series2":
        nx, ny = self.orders
        return Series2.from_fn(nx, ny, lambda a, b: self[a - dx, b - dy])

    def map(self, f: Callable[[Poly2], Poly2]) -> "Series2":
        nx, ny = self.orders
        return Series2.from_fn(nx, ny, lambda a, b: f(self[a, b]))

    def grade_scale(self, f: Callable[[int, int], Fraction]) -> "Series2":
        nx, ny = self.orders
        return Series2.from_fn(nx, ny, lambda a, b: self[a, b] * f(a, b))

    def truncate(self, nx: int, ny: int) -> "Series2":
        return Series2.from_fn(nx, ny, lambda a, b: self[a, b])

    def is_zero(self) -> bool:
        return all(c.is_zero() for row in self.coeffs for c in row)

    def max_degrees(self) -> tuple[int, int]:
        """Largest a and b carrying a nonzero coefficient (-1 if none)."""
        nz = [(a, b) for a, row in enumerate(self.coeffs) for b, c in enumerate(row) if not c.is_zero()]
        if not nz:
            return -1, -1
        return max(a for a, _ in nz), max(b for _, b in nz)


def divide_by_x_minus_y(f: Series2) -> Series2:
    """Exact quotient of a polynomial in X, Y by (X - Y); raises if not divisible.

    f must be a genuine polynomial held inside its truncation box.
    """
    nx, ny = f.orders
    # f = (X - Y) g  =>  f[a][b] = g[a-1][b] - g[a][b-1]
    g = [[ZERO] * (ny + 1) for _ in range(nx + 1)]
    for a in range(nx, 0, -1):
        for b in range(ny + 1):
            # g[a-1][b] = f[a][b] + g[a][b-1]
            g[a - 1][b] = f[a, b] + (g[a][b - 1] if b >= 1 else ZERO)
    residual = Series2(tuple(tuple(r) for r in g)).shift(1, 0) - Series2(tuple(tuple(r) for r in g)).shift(0, 1)
    # residual is truncated at (nx, ny); compare there, and require nothing spills out
    if not (residual - f).is_zero() or any(not g[a][ny].is_zero() for a in range(nx + 1)):
        raise ArithmeticError("polynomial is not divisible by X - Y within its box")
    return Series2(tuple(tuple(r) for r in g))


def _apply_L2(param: AlphaParam, s: Series2) -> Series2:
    return s.map(lambda c: apply_L(param, c))


def _gamma_outer(sx: Series1, sy: Series1) -> Series2:
    return Series2.from_fn(sx.order, sy.order, lambda a, b: gamma(sx[a], sy[b]))


def check_L_action_on_P(param: AlphaParam, order: int = 6) -> CheckReport:
    """Closed forms of L and Gamma on P(X), P(Y), Pbar(Y); exact since P is a cubic."""
    rep = CheckReport(f"L-action on P lambda={param.lam}")
    lam = param.lam
    P = poly_P_of_X(order)
    dP = P.derivative().truncate(order)
    d2P = dP.derivative().truncate(order)
    Pb = poly_Pbar_of_Y(order)
    dPb = Pb.derivative().truncate(order)

    lhs = P.map(lambda c: apply_L(param, c))
    rhs = dP.shift(1).scale(-lam) + d2P.shift(2).scale(lam / 2)
    rep.record("L P(X)", (lhs - rhs).coeffs == Series1.of([], order).coeffs, "mismatch")

    lhs = Series1(tuple(linear_combination((1, gamma(P[i], P[n - i])) for i in range(n + 1)) for n in range(order + 1)))
    rhs = (P * d2P).scale(3) - (dP * dP).scale(2)
    rhs = rhs.shift(2).scale(Fraction(1, 2))
    rep.record("Gamma(P(X),P(X))", all(c.is_zero() for c in (lhs - rhs).coeffs), "mismatch")

    n2 = 2 * order
    X_ = lambda s: Series2.in_x(s, n2)
    Y_ = lambda s: Series2.in_y(s, n2)
    Pn, dPn = P.truncate(n2), dP.truncate(n2)
    Pbn, dPbn = Pb.truncate(n2), dPb.truncate(n2)

    lhs = _gamma_outer(P, P).truncate(n2, n2)
    cross = X_(dPn) * Y_(Pn) - X_(Pn) * Y_(dPn)
    divided = divide_by_x_minus_y(cross)
    rhs = (X_(dPn) * Y_(dPn) + divided.scale(3)).shift(1, 1).scale(Fraction(1, 2))
    rep.record("Gamma(P(X),P(Y))", (lhs - rhs).is_zero(), "mismatch")

    # 2 (XY - 1) Gamma(P(X), Pbar(Y)) = XY (3X P' Pbar + 3Y Pbar' P - 9 P Pbar - (XY - 1) P' Pbar')
    g = _gamma_outer(P, Pb).truncate(n2, n2)
    lhs = (g.shift(1, 1) - g).scale(2)
    PP = X_(Pn) * Y_(Pbn)
    dPdPb = X_(dPn) * Y_(dPbn)
    inner = (
        (X_(dPn) * Y_(Pbn)).shift(1, 0).scale(3)
        + (Y_(dPbn) * X_(Pn)).shift(0, 1).scale(3)
        - PP.scale(9)
        - (dPdPb.shift(1, 1) - dPdPb)
    )
    rhs = inner.shift(1, 1)
    rep.record("Gamma(P(X),Pbar(Y))", (lhs - rhs).is_zero(), "mismatch")

    # reversal Pbar(Y) = -Y^3 P(1/Y)
    rev = Series1.of([-P[3 - k] for k in range(4)], order)
    rep.record("Pbar reversal", rev == Pb.truncate(order), "mismatch")
    return rep


def generating_coefficients(param: AlphaParam, N: int) -> Series1:
    P = poly_P_of_X(N)
    if param.lam == 1:
        return log_series(P)
    return pow_beta(P, param.beta)


def check_generating(param: AlphaParam, table: PolyTable, N: int) -> CheckReport:
    rep = CheckReport(f"generating function lambda={param.lam}")
    if table.max_degree < N or table.param != param:
        raise ValueError("table must match param and have degree >= N")
    A = generating_coefficients(param, N)
    scalars = []
    for n in range(N + 1):
        target = table[(0, n)]
        if param.lam == 1:
            if n == 0:
                rep.record(n, A[0].is_zero(), "log constant term")
                scalars.append(Fraction(0))
                continue
            r = A[n].content_ratio(target)
            rep.record(n, r is not None, "not a scalar multiple")
            scalars.append(r)
        else:
            c = binomial_scalar(param.beta, n)
            rep.record(n, A[n] == target * c, f"A_{n} != c_{n} P_0,{n}")
            scalars.append(c)
    rep.data["A"] = A
    rep.data["scalars"] = scalars
    return rep


def hat_L(param: AlphaParam, s: Series2) -> Series2:
    lam = param.lam
    grade = lambda a, b: lam * (a + b) + a * (a - 1) + b * (b - 1) + a * b
    return _apply_L2(param, s) + s.grade_scale(grade)


def check_hatL_product(param: AlphaParam, nx: int = 5, ny: int = 5) -> CheckReport:
    """(XY - 1) hatL(Q Qbar) = 3 beta^2 XY Q Qbar (X S + Y Sbar - 3), S = P'/P, Sbar = Pbar'/Pbar."""
    rep = CheckReport(f"hatL product lambda={param.lam}")
    if param.lam == 1:
        raise ValueError("needs alpha != -1/2")
    beta = param.beta
    P = poly_P_of_X(nx + 1)
    Pb = poly_Pbar_of_Y(ny + 1)
    Q = pow_beta(P, beta).truncate(nx)
    Qb = pow_beta(Pb, beta).truncate(ny)
    S = (P.derivative() * P.truncate(nx).inverse()).truncate(nx)
    Sb = (Pb.derivative() * Pb.truncate(ny).inverse()).truncate(ny)
    QQb = Series2.outer(Q, Qb)
    H = hat_L(param, QQb)
    lhs = H.shift(1, 1) - H
    bracket = Series2.in_x(S, ny).shift(1, 0) + Series2.in_y(Sb, nx).shift(0, 1) - Series2.in_x(Series1.of([3], nx), ny)
    rhs = (QQb * bracket).shift(1, 1).scale(3 * beta * beta)
    rep.record((nx, ny), (lhs - rhs).is_zero(), "mismatch")

    # consequence on coefficients: A_n B_m - A_{n-1} B_{m-1}
    lam = param.lam
    for n in range(1, nx + 1):
        for m in range(1, ny + 1):
            delta = (1 - lam) * (lam + n + m - 3) - eigenvalue(param, n - 1, m - 1)
            f = Q[n] * Qb[m] - Q[n - 1] * Qb[m - 1]
            resid = apply_L(param, f) + eigenvalue(param, n, m) * Q[n] * Qb[m] + delta * Q[n - 1] * Qb[m - 1]
            rep.record(("delta", n, m), resid.is_zero(), f"residual {resid}")
    return rep


def geometric_genfun_flat(N: int = 5) -> CheckReport:
    """Coefficient of X^p Y^q is T_p T_{-q} - T_{p-q}."""
    rep = CheckReport("flat bivariate generating function")
    P = poly_P_of_X(N)
    Pb = poly_Pbar_of_Y(N)
    three = Series1.of([3], N)
    # X Pbar'(X)/Pbar(X) and Y P'(Y)/P(Y)
    lx = (Pb.derivative().truncate(N) * Pb.inverse()).truncate(N).shift(1)
    ly = (P.derivative().truncate(N) * P.inverse()).truncate(N).shift(1)
    A = Series2.in_x(three - lx, N)
    B = Series2.in_y(three - ly, N)
    geo = Series2.from_fn(N, N, lambda a, b: ONE if a == b else ZERO)  # 1/(1 - XY)
    G = A * B + geo * (Series2.in_x(lx, N) + Series2.in_y(ly, N) - Series2.in_x(three, N))
    for p in range(N + 1):
        for q in range(N + 1):
            target = trace(p) * trace(-q) - trace(p - q)
            rep.record((p, q), G[p, q] == target, "coefficient mismatch")
    rep.data["G"] = G
    return rep


def geometric_genfun_su3(N: int, table: PolyTable) -> CheckReport:
    """(1 - XY) / (Pbar(X) P(Y)) has coefficients proportional to P^{(1/2)}_{m,n}."""
    rep = CheckReport("SU(3) bivariate generating function")
    if table.param.lam != 4 or table.max_degree < 2 * N:
        raise ValueError("need a lambda = 4 table of degree >= 2N")
    inv_x = Series2.in_x(poly_Pbar_of_Y(N).inverse(), N)
    inv_y = Series2.in_y(poly_P_of_X(N).inverse(), N)
    one_minus_xy = Series2.from_fn(N, N, lambda a, b: ONE if (a, b) == (0, 0) else (-ONE if (a, b) == (1, 1) else ZERO))
    G = one_minus_xy * inv_x * inv_y
    scalars: dict[tuple[int, int], Fraction | None] = {}
    for m in range(N + 1):
        for n in range(N + 1):
            r = G[m, n].content_ratio(table[(m, n)])
            scalars[(m, n)] = r
            rep.record((m, n), r is not None and r != 0, "not a nonzero multiple")
    for m in range(N + 1):
        rep.record(("row", m), scalars[(m, 0)] == binomial_scalar(-1, m), "scalar differs from c_m at beta=-1")
    rep.data["scalars"] = scalars
    return rep


def f_compatibility(lam) -> tuple[bool, tuple[Fraction, ...]]:
    """Do F' + beta F/(u - 1) = 0 and 3u F'' + (2 lambda + 1) F' - 9 beta^2 F/(u - 1) = 0
    share a nonzero solution?

    The first equation forces F = c (u - 1)^(-beta), so F'/F = -beta/(u - 1) and
    F''/F = beta(beta + 1)/(u - 1)^2. Substituting into the second equation and
    clearing (u - 1)^2 F leaves a polynomial in u that must vanish identically.
    Returns (compatible, coefficients of that polynomial, low degree first).
    """
    from .ratfn import UPoly

    lam = Fraction(lam)
    beta = (1 - lam) / 3
    u = UPoly.linear(1, 0)
    u_minus_1 = UPoly.linear(1, -1)
    residual = (
        u * (3 * beta * (beta + 1))
        + u_minus_1 * ((2 * lam + 1) * (-beta))
        - u_minus_1 * (9 * beta * beta)
    )
    return residual.is_zero(), residual.coeffs
