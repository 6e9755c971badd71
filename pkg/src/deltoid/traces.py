"""Traces T_p = z1^p + z2^p + z3^p (z1 z2 z3 = 1) written in scaled Z, Zbar.

With Z = (z1 + z2 + z3) / 3 the power sums satisfy

    T_0 = 3,  T_1 = 3Z,  T_{-1} = 3Zbar,
    T_{p+2} = 3Z T_{p+1} - 3Zbar T_p + T_{p-1},

and Q_p = 3^{-|p|} T_p is monic. At alpha = -1/2 the family is built from
orbit sums of the A2 weight lattice, which gives the exact product rule in
``linearize``.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import permutations

from .operator import AlphaParam
from .poly2 import ONE, ZBAR, Poly2, Z, linear_combination, poly_sum


class TraceSeq:
    """Memoized T_p. Not safe for concurrent insertion; use one per thread."""

    def __init__(self):
        self._cache: dict[int, Poly2] = {0: Poly2.const(3), 1: 3 * Z}

    def __call__(self, p: int) -> Poly2:
        if p < 0:
            return self(-p).conj()
        if p not in self._cache:
            top = max(self._cache)
            for k in range(top + 1, p + 1):
                prev2 = self._cache[k - 3] if k >= 3 else self._cache[3 - k].conj()
                self._cache[k] = 3 * Z * self._cache[k - 1] - 3 * ZBAR * self._cache[k - 2] + prev2
        return self._cache[p]


_TRACES = TraceSeq()


def trace(p: int) -> Poly2:
    return _TRACES(p)


def q_norm(p: int) -> Poly2:
    return trace(p) * Fraction(1, 3 ** abs(p))


def flat_eigenvector(p: int, q: int) -> Poly2:
    """P^{(-1/2)}_{p,q} from normalized traces."""
    if p < 0 or q < 0:
        raise ValueError("indices must be >= 0")
    if p == q == 0:
        return ONE  # Q_0 = 3 is not monic
    if q == 0:
        return q_norm(p)
    if p == 0:
        return q_norm(-q)
    return q_norm(p) * q_norm(-q) - q_norm(p - q) * Fraction(1, 9 ** min(p, q))


# weight-lattice orbit sums, alpha = -1/2

def _orbit(p: int, q: int) -> list[tuple[int, int, int]]:
    """Distinct exponent vectors of the monomials in m_{(p,q)}, reduced mod (1,1,1)."""
    seen = {_reduce((a, b, c)) for a, b, c in permutations((p, 0, -q))}
    return sorted(seen)


def _reduce(v: tuple[int, int, int]) -> tuple[int, int, int]:
    return (v[0] - v[2], v[1] - v[2], 0)


def _dominant(v: tuple[int, int, int]) -> tuple[int, int]:
    s = sorted(v, reverse=True)
    return (s[0] - s[1], s[1] - s[2])


def orbit_size(p: int, q: int) -> int:
    return len(_orbit(p, q))


def linearize(p: int, q: int, p2: int, q2: int) -> list[tuple[Fraction, tuple[int, int]]]:
    """Expansion of P_{p,q} P_{p2,q2} (alpha = -1/2) in the family itself.

    P_{a,b} = 3^{-(a+b)} m_{(a,b)} where m is the orbit sum of z^(a,0,-b), so
    the product reduces to counting pairs of orbit points that add up to a
    given dominant weight.
    """
    if min(p, q, p2, q2) < 0:
        raise ValueError("indices must be >= 0")
    hits: Counter[tuple[int, int]] = Counter()
    for u in _orbit(p, q):
        for v in _orbit(p2, q2):
            hits[_dominant(tuple(x + y for x, y in zip(u, v)))] += 1
    total = p + q + p2 + q2
    out = []
    for (a, b) in sorted(hits, key=lambda ab: (-(ab[0] + ab[1]), -ab[0])):
        mult = Fraction(hits[(a, b)], orbit_size(a, b))
        out.append((mult * Fraction(3) ** (a + b - total), (a, b)))
    return out


def linearize_closed_form(p: int, q: int, p2: int, q2: int) -> list[tuple[Fraction, tuple[int, int]]]:
    """Six-term closed form with coefficients 1, 3^-min, 3^-min, b1, b2, b3.

    Kept verbatim for comparison; it does not agree with ``linearize`` in
    general (see tests). Raises ValueError when an index comes out negative.
    """
    total = p + q + p2 + q2
    mq, Mq = min(q, q2), max(q, q2)
    mp, Mp = min(p, p2), max(p, p2)
    g, d = max(p2 - q, p - q2), min(p2 - q, p - q2)
    al, be = p + q - q2, p2 + q2 - p
    al2, be2 = p2 + q2 - q, p + q - p2

    def pow3(e: int) -> Fraction:
        return Fraction(3) ** e

    terms = [
        (Fraction(1), (p + p2, q + q2)),
        (pow3(-mq), (p + p2 + mq, Mq - mq)),
        (pow3(-mp), (Mp - mp, q + q2 + mp)),
        (pow3(abs(g) + abs(d) + min(0, g) - max(0, d) - total), (abs(g) - max(0, d), abs(d) + min(0, g))),
        (pow3(abs(be) + abs(al) + min(0, al) + min(0, be) - total), (abs(be) + min(0, al), abs(al) + min(0, be))),
        (pow3(abs(be2) + abs(al2) + min(0, al2) + min(0, be2) - total), (abs(be2) + min(0, al2), abs(al2) + min(0, be2))),
    ]
    for _, (a, b) in terms:
        if a < 0 or b < 0:
            raise ValueError(f"negative index ({a},{b})")
    return terms


def expand_linearization(terms: list[tuple[Fraction, tuple[int, int]]]) -> Poly2:
    return linear_combination((c, flat_eigenvector(a, b)) for c, (a, b) in terms)


# general alpha

def L_on_trace(param: AlphaParam, p: int) -> Poly2:
    """L^(alpha) T_p expressed through traces (p >= 1)."""
    if p < 1:
        raise ValueError("p must be >= 1")
    a = param.alpha
    diag = -Fraction(p, 4) * (p * (1 - 6 * a) + 9 * (2 * a + 1))
    sum_coeff = -Fraction(3 * p, 4) * (2 * a + 1)
    cross = poly_sum(trace(i) * trace(p - i) for i in range(1, p))
    return diag * trace(p) + sum_coeff * cross


def gamma_traces(p: int, q: int) -> Poly2:
    return Fraction(p * q, 2) * (trace(p) * trace(q) - 3 * trace(p + q))


__all__ = [
    "TraceSeq",
    "L_on_trace",
    "expand_linearization",
    "flat_eigenvector",
    "gamma_traces",
    "linearize",
    "linearize_closed_form",
    "orbit_size",
    "q_norm",
    "trace",
]
