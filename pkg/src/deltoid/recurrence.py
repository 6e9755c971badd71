"""Three-term recurrence for the deltoid family P_{p,q} and its exact checks.

Coefficients are rational functions of lambda that get reduced before
evaluation, which is how the removable singularities at lambda = 1 and
lambda = 4 disappear without any special casing.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .operator import AlphaParam, apply_L, eigenvalue, gamma
from .poly2 import ONE, ZBAR, Poly2, Z, linear_combination
from .ratfn import RationalFn, UPoly
from .report import CheckReport


class SingularParameter(ArithmeticError):
    """A reduced recurrence denominator vanishes at the requested lambda."""


class BasisDeficient(ArithmeticError):
    """The product basis used by decompose_in_products is rank deficient."""


def _lin(a: int, b: int) -> UPoly:
    return UPoly.linear(a, b)


@lru_cache(maxsize=None)
def a1_fn(p: int) -> RationalFn:
    """a1(lambda, p) = -p(3p + 2 lambda - 5) / ((lambda + 3p - 1)(lambda + 3p - 4))."""
    return RationalFn.from_factors(
        -p,
        [_lin(2, 3 * p - 5)],
        [_lin(1, 3 * p - 1), _lin(1, 3 * p - 4)],
    )


@lru_cache(maxsize=None)
def a2_fn(p: int, q: int) -> RationalFn:
    n = p + q
    num = [_lin(2, 3 * q - 5), _lin(1, 3 * n - 1), _lin(1, n - 2)]
    den = [_lin(1, 3 * q - 1), _lin(2, 3 * n - 5), _lin(2, 3 * n - 2), _lin(1, 3 * q - 4)]
    return RationalFn.from_factors(-q, num, den)


@lru_cache(maxsize=None)
def alpha0_fn(p: int, q: int) -> RationalFn:
    return RationalFn.from_factors(Fraction(-(q + 2 * p), 2), [], [])


@lru_cache(maxsize=None)
def alpha1_fn(p: int, q: int) -> RationalFn:
    # the factor is (2 lambda + 3p - 5); with 3q in its place the identity
    # Gamma(Z, P_{p,q}) = ... fails whenever p != q
    return RationalFn.from_factors(
        Fraction(p, 2),
        [_lin(2, 3 * p - 5), _lin(1, p - q - 1)],
        [_lin(1, 3 * p - 1), _lin(1, 3 * p - 4)],
    )


@lru_cache(maxsize=None)
def alpha2_fn(p: int, q: int) -> RationalFn:
    n = p + q
    num = [_lin(2, 3 * q - 5), _lin(1, 3 * n - 1), _lin(1, n - 2), _lin(2, p + 2 * q - 2)]
    den = [_lin(1, 3 * q - 1), _lin(2, 3 * n - 5), _lin(2, 3 * n - 2), _lin(1, 3 * q - 4)]
    return RationalFn.from_factors(Fraction(q, 2), num, den)


def _evaluate(fn: RationalFn, lam: Fraction, what: str) -> Fraction:
    if fn.is_singular_at(lam):
        raise SingularParameter(f"{what} has a pole at lambda={lam}")
    return fn(lam)


def coeff_a1(lam, p: int) -> Fraction:
    if p < 0:
        raise ValueError("p must be >= 0")
    return _evaluate(a1_fn(p), Fraction(lam), f"a1(lambda, {p})")


def coeff_a2(lam, p: int, q: int) -> Fraction:
    if p < 0 or q < 0:
        raise ValueError("indices must be >= 0")
    return _evaluate(a2_fn(p, q), Fraction(lam), f"a2(lambda, {p}, {q})")


def gamma_coeffs(lam, p: int, q: int) -> tuple[Fraction, Fraction, Fraction]:
    lam = Fraction(lam)
    return (
        _evaluate(alpha0_fn(p, q), lam, "alpha0"),
        _evaluate(alpha1_fn(p, q), lam, "alpha1"),
        _evaluate(alpha2_fn(p, q), lam, "alpha2"),
    )


@dataclass(frozen=True)
class PolyTable:
    param: AlphaParam
    max_degree: int
    entries: dict[tuple[int, int], Poly2]

    def __getitem__(self, pq: tuple[int, int]) -> Poly2:
        return self.entries[pq]

    def get(self, p: int, q: int) -> Poly2 | None:
        return self.entries.get((p, q))

    def indices(self) -> Iterator[tuple[int, int]]:
        for d in range(self.max_degree + 1):
            for q in range(d + 1):
                yield (d - q, q)

    def to_json(self) -> dict:
        return {
            "lambda": _frac_str(self.param.lam),
            "max_degree": self.max_degree,
            "entries": [
                {"p": p, "q": q, "poly": self.entries[(p, q)].to_json()} for p, q in self.indices()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PolyTable":
        param = AlphaParam.from_lambda(Fraction(data["lambda"]))
        entries = {(int(e["p"]), int(e["q"])): Poly2.from_json(e["poly"]) for e in data["entries"]}
        table = cls(param, int(data["max_degree"]), entries)
        missing = [pq for pq in table.indices() if pq not in entries]
        if missing:
            raise ValueError(f"table JSON is missing entries {missing[:5]}")
        return table


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def build_table(param: AlphaParam, max_degree: int) -> PolyTable:
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    lam = param.lam
    P: dict[tuple[int, int], Poly2] = {(0, 0): ONE}
    if max_degree >= 1:
        P[(1, 0)] = Z
        P[(0, 1)] = ZBAR
    for d in range(2, max_degree + 1):
        for q in range(d + 1):
            p = d - q
            if q > p:
                P[(p, q)] = P[(q, p)].conj()
                continue
            # P_{p,q} from row (p-1, q)
            r = p - 1
            terms = [(1, Z * P[(r, q)])]
            c1 = coeff_a1(lam, r)
            if c1:
                terms.append((c1, P[(r - 1, q + 1)]))
            c2 = coeff_a2(lam, r, q)
            if c2:
                terms.append((c2, P[(r, q - 1)]))
            P[(p, q)] = linear_combination(terms)
    return PolyTable(param, max_degree, P)


def build_column_step(table: PolyTable, p: int, q: int) -> Poly2:
    """P_{p,q+1} by the conjugate recurrence, Zbar P_{p,q} + a1 P_{p+1,q-1} + a2 P_{p-1,q}."""
    lam = table.param.lam
    out = [(1, ZBAR * table[(p, q)])]
    c1 = coeff_a1(lam, q)
    if c1:
        out.append((c1, table[(p + 1, q - 1)]))
    c2 = coeff_a2(lam, q, p)
    if c2:
        out.append((c2, table[(p - 1, q)]))
    return linear_combination(out)


def check_eigen(table: PolyTable) -> CheckReport:
    rep = CheckReport(f"eigen lambda={table.param.lam}")
    for p, q in table.indices():
        P = table[(p, q)]
        residual = apply_L(table.param, P) + eigenvalue(table.param, p, q) * P
        rep.record((p, q), residual.is_zero(), f"residual {residual}")
    return rep


def gamma_recurrence_rhs(table: PolyTable, p: int, q: int, conjugate: bool = False) -> Poly2:
    lam = table.param.lam

    def cell(a: int, b: int) -> Poly2:
        return table[(b, a)] if conjugate else table[(a, b)]

    a0, a1, a2 = gamma_coeffs(lam, p, q)
    terms = [(a0, cell(p + 1, q))]
    if p >= 1:
        terms.append((a1, cell(p - 1, q + 1)))
    if q >= 1:
        terms.append((a2, cell(p, q - 1)))
    return linear_combination(terms)


def check_gamma_recurrence(table: PolyTable) -> CheckReport:
    """Gamma(Z, P_{p,q}) and Gamma(Zbar, P_{q,p}) against the three-term forms."""
    rep = CheckReport(f"gamma-recurrence lambda={table.param.lam}")
    for p, q in table.indices():
        if p + q > table.max_degree - 1:
            continue
        lhs = gamma(Z, table[(p, q)])
        diff = lhs - gamma_recurrence_rhs(table, p, q)
        rep.record(("Z", p, q), diff.is_zero(), f"residual {diff}")
        lhs_b = gamma(ZBAR, table[(q, p)])
        diff_b = lhs_b - gamma_recurrence_rhs(table, p, q, conjugate=True)
        rep.record(("Zbar", q, p), diff_b.is_zero(), f"residual {diff_b}")
    return rep


def decompose_in_products(table: PolyTable, m: int, n: int) -> list[Fraction]:
    """d[0..min(m,n)] with P_{m,n} = sum_k d[k] P_{m-k,0} P_{0,n-k}."""
    if m + n > table.max_degree:
        raise ValueError("table too small")
    k_max = min(m, n)
    basis = [table[(m - k, 0)] * table[(0, n - k)] for k in range(k_max + 1)]
    target = table[(m, n)]
    monos = sorted({mono for b in basis for mono, _ in b.items()} | {mono for mono, _ in target.items()})
    rows = [[b.coeff(*mono) for b in basis] + [target.coeff(*mono)] for mono in monos]
    sol = solve_exact(rows, k_max + 1)
    return sol


def solve_exact(rows: list[list[Fraction]], ncols: int) -> list[Fraction]:
    """Solve an overdetermined but consistent augmented system exactly."""
    rows = [list(map(Fraction, r)) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            raise BasisDeficient(f"column {c} has no pivot")
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][ncols] != 0:
            raise ArithmeticError("linear system is inconsistent")
    return [rows[i][ncols] for i in range(ncols)]


__all__ = [
    "BasisDeficient",
    "PolyTable",
    "SingularParameter",
    "a1_fn",
    "a2_fn",
    "alpha0_fn",
    "alpha1_fn",
    "alpha2_fn",
    "build_column_step",
    "build_table",
    "check_eigen",
    "check_gamma_recurrence",
    "coeff_a1",
    "coeff_a2",
    "decompose_in_products",
    "gamma_coeffs",
    "gamma_recurrence_rhs",
    "solve_exact",
]
