"""Symmetric-group characters and the alpha = 1/2 trace eigenvectors.

For a partition chi of n,

    Q_chi = sum over cycle types pi of |pi| chi(pi) T_{pi_1} ... T_{pi_k}
          = n! s_chi(z1, z2, z3)

(Frobenius), which vanishes as soon as chi has more than three rows.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, prod
from collections import Counter

from .operator import AlphaParam, apply_L, eigenvalue
from .poly2 import ONE, Poly2, linear_combination
from .recurrence import PolyTable, solve_exact
from .report import CheckReport
from .traces import trace


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(x) for x in self.parts)
        if any(x <= 0 for x in parts):
            raise ValueError(f"parts must be positive: {parts}")
        object.__setattr__(self, "parts", tuple(sorted(parts, reverse=True)))

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for x in self.parts if x > i) for i in range(self.parts[0])))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions(n: int) -> list[Partition]:
    """All partitions of n in descending lexicographic order."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out: list[Partition] = []

    def rec(remaining: int, cap: int, acc: list[int]):
        if remaining == 0:
            out.append(Partition(tuple(acc)))
            return
        for k in range(min(cap, remaining), 0, -1):
            acc.append(k)
            rec(remaining - k, k, acc)
            acc.pop()

    rec(n, n, [])
    return out


@lru_cache(maxsize=None)
def _class_size(parts: tuple[int, ...]) -> int:
    n = sum(parts)
    mult = Counter(parts)
    denom = prod(factorial(k) for k in mult.values()) * prod(parts)
    return factorial(n) // denom


def class_size(pi: Partition) -> int:
    return _class_size(pi.parts)


@lru_cache(maxsize=None)
def _mn(shape: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1 if not shape else 0
    r, rest = cycles[0], cycles[1:]
    # beta-set of the shape; removing a border strip of length r moves one
    # bead from b to b - r, with sign (-1)^(beads jumped over)
    k = len(shape)
    beta = [shape[i] + (k - 1 - i) for i in range(k)]
    beads = set(beta)
    total = 0
    for b in beta:
        t = b - r
        if t < 0 or t in beads:
            continue
        height = sum(1 for x in beta if t < x < b)
        new_beta = sorted((beads - {b}) | {t}, reverse=True)
        new_shape = tuple(x - (k - 1 - i) for i, x in enumerate(new_beta))
        new_shape = tuple(x for x in new_shape if x > 0)
        total += (-1) ** height * _mn(new_shape, rest)
    return total


def mn_character(chi: Partition, pi: Partition) -> int:
    """chi(pi) by the Murnaghan-Nakayama rule, stripping the largest cycle first."""
    if chi.n != pi.n:
        raise ValueError("chi and pi must partition the same n")
    return _mn(chi.parts, pi.parts)


@dataclass(frozen=True)
class CharacterTable:
    n: int
    labels: tuple[Partition, ...]
    values: tuple[tuple[int, ...], ...]  # values[row][col]

    def __call__(self, chi: Partition, pi: Partition) -> int:
        return self.values[self.labels.index(chi)][self.labels.index(pi)]

    def format(self) -> str:
        width = max(len(str(p)) for p in self.labels) + 1
        head = " " * width + " ".join(f"{str(p):>{width}}" for p in self.labels)
        rows = [head]
        for lab, row in zip(self.labels, self.values):
            rows.append(f"{str(lab):>{width}}" + " ".join(f"{v:>{width}}" for v in row))
        return "\n".join(rows)


def character_table(n: int) -> CharacterTable:
    labels = tuple(partitions(n))
    values = tuple(tuple(mn_character(chi, pi) for pi in labels) for chi in labels)
    return CharacterTable(n, labels, values)


def trace_product(pi: Partition) -> Poly2:
    out = ONE
    for part in pi.parts:
        out = out * trace(part)
    return out


def character_eigenvector(chi: Partition) -> Poly2:
    if chi.n < 1:
        raise ValueError("need n >= 1")
    return linear_combination(
        (class_size(pi) * mn_character(chi, pi), trace_product(pi)) for pi in partitions(chi.n)
    )


SU3 = AlphaParam.from_lambda(4)


def verify_su3_eigen(chi: Partition, table: PolyTable) -> CheckReport:
    """Q_chi is an L^(1/2) eigenvector lying in the span of table entries with that eigenvalue."""
    rep = CheckReport(f"su3-eigen chi={chi}")
    if table.param.lam != 4:
        raise ValueError("table must be built at lambda = 4")
    Q = character_eigenvector(chi)
    rep.data["Q"] = Q
    if Q.is_zero():
        rep.record("zero", True)
        rep.data["mu"] = None
        return rep
    if Q.degree > table.max_degree:
        raise ValueError("table degree too small")
    LQ = apply_L(SU3, Q)
    mono, c = Q.leading_term()
    mu = -LQ.coeff(*mono) / c
    rep.data["mu"] = mu
    rep.record("eigen", (LQ + mu * Q).is_zero(), f"L Q + {mu} Q != 0")
    basis_idx = [pq for pq in table.indices() if eigenvalue(SU3, *pq) == mu]
    if not basis_idx:
        rep.record("span", False, f"no table entry has eigenvalue {mu}")
        return rep
    basis = [table[pq] for pq in basis_idx]
    monos = sorted({m for b in basis for m, _ in b.items()} | {m for m, _ in Q.items()})
    rows = [[b.coeff(*m) for b in basis] + [Q.coeff(*m)] for m in monos]
    try:
        coeffs = solve_exact(rows, len(basis))
    except ArithmeticError as exc:
        rep.record("span", False, str(exc))
        return rep
    rep.data["expansion"] = {pq: c for pq, c in zip(basis_idx, coeffs) if c}
    rep.record("span", True)
    return rep


def mu_sigma(alpha, pi: Partition) -> Fraction:
    a = Fraction(alpha)
    n = pi.n
    sq = sum(x * x for x in pi.parts)
    return Fraction(3, 4) * (1 - 2 * a) * sq + Fraction(9, 4) * (2 * a + 1) * n - Fraction(n * n, 2)


def L_on_trace_product(param: AlphaParam, pi: Partition) -> Poly2:
    """L^(alpha)(T_pi) via the transposition action on cycle types.

    Splitting a p-cycle into (j, p-j) carries weight p/2 for each ordered j;
    gluing two cycles of lengths a and b carries weight a*b.
    """
    a = param.alpha
    parts = list(pi.parts)
    split: list[tuple[Fraction, Poly2]] = []
    glue: list[tuple[Fraction, Poly2]] = []
    for idx, p in enumerate(parts):
        others = parts[:idx] + parts[idx + 1:]
        for j in range(1, p):
            split.append((Fraction(p, 2), trace_product(Partition(tuple(others + [j, p - j])))))
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            others = [x for k, x in enumerate(parts) if k not in (i, j)]
            glue.append((Fraction(parts[i] * parts[j]), trace_product(Partition(tuple(others + [parts[i] + parts[j]])))))
    split_sum = linear_combination(split)
    glue_sum = linear_combination(glue)
    return -mu_sigma(a, pi) * trace_product(pi) - 3 * ((2 * a + 1) / 2 * split_sum + glue_sum)


__all__ = [
    "CharacterTable",
    "Partition",
    "L_on_trace_product",
    "character_eigenvector",
    "character_table",
    "class_size",
    "mn_character",
    "mu_sigma",
    "partitions",
    "trace_product",
    "verify_su3_eigen",
]
