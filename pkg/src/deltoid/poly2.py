"""Sparse exact polynomials in the two formal variables Z and Zbar."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

import numpy as np

Scalar = Union[int, Fraction]
Monomial = tuple[int, int]

NEG_INF_DEGREE = float("-inf")


def _grlex_key(m: Monomial) -> tuple[int, int]:
    # higher total degree first, then higher power of Z
    i, j = m
    return (-(i + j), -i)


class Poly2:
    """Immutable polynomial sum c_ij Z^i Zbar^j with Fraction coefficients.

    Terms are kept in canonical form: zero coefficients are dropped and the
    internal map is rebuilt in graded-lex order, so two equal polynomials
    compare (and hash) equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent in {(i, j)}")
                c = Fraction(c)
                if c:
                    clean[(int(i), int(j))] = c
        self._terms = {m: clean[m] for m in sorted(clean, key=_grlex_key)}
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, Fraction]) -> "Poly2":
        # fast path for internally produced maps; drops zeros and sorts
        p = object.__new__(cls)
        p._terms = {m: terms[m] for m in sorted(terms, key=_grlex_key) if terms[m]}
        p._hash = None
        return p

    # construction helpers
    @classmethod
    def const(cls, c: Scalar) -> "Poly2":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: Scalar = 1) -> "Poly2":
        return cls({(i, j): c})

    # accessors
    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def coeff(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> float | int:
        if not self._terms:
            return NEG_INF_DEGREE
        return max(i + j for i, j in self._terms)

    def homogeneous_part(self, d: int) -> "Poly2":
        return Poly2._raw({m: c for m, c in self._terms.items() if sum(m) == d})

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        m = next(iter(self._terms))
        return m, self._terms[m]

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._terms)

    # arithmetic
    def _coerce(self, other) -> "Poly2":
        if isinstance(other, Poly2):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly2.const(other)
        return NotImplemented

    def __add__(self, other) -> "Poly2":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Poly2._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly2":
        return Poly2._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Poly2":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly2":
        return (-self) + other

    def __mul__(self, other) -> "Poly2":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Poly2._raw({m: c * other for m, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                m = (i1 + i2, j1 + j2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly2._raw(out)

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "Poly2":
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self * (1 / Fraction(other))

    def __pow__(self, n: int) -> "Poly2":
        if n < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly2.const(other)
        if not isinstance(other, Poly2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # calculus and symmetry
    def partial(self, var: str) -> "Poly2":
        """Formal derivative; var is "Z" or "Zbar"."""
        out: dict[Monomial, Fraction] = {}
        if var == "Z":
            for (i, j), c in self._terms.items():
                if i:
                    out[(i - 1, j)] = c * i
        elif var == "Zbar":
            for (i, j), c in self._terms.items():
                if j:
                    out[(i, j - 1)] = c * j
        else:
            raise ValueError(f"unknown variable {var!r}")
        return Poly2._raw(out)

    def conj(self) -> "Poly2":
        return Poly2._raw({(j, i): c for (i, j), c in self._terms.items()})

    def is_self_conjugate(self) -> bool:
        return self == self.conj()

    def substitute_scale(self, s: Scalar) -> "Poly2":
        """Return f(sZ, sZbar)."""
        s = Fraction(s)
        return Poly2._raw({(i, j): c * s ** (i + j) for (i, j), c in self._terms.items()})

    def content_ratio(self, other: "Poly2") -> Fraction | None:
        """Scalar r with self == r * other, or None if none exists."""
        if other.is_zero():
            return Fraction(0) if self.is_zero() else None
        m, c = other.leading_term()
        r = self.coeff(*m) / c
        return r if self == other * r else None

    # numerics
    def eval(self, z):
        """Evaluate at Z = z, Zbar = conj(z); z may be a complex scalar or ndarray."""
        z = np.asarray(z, dtype=complex)
        zb = np.conj(z)
        if not self._terms:
            return np.zeros_like(z)[()] if z.ndim == 0 else np.zeros_like(z)
        imax = max(i for i, _ in self._terms)
        jmax = max(j for _, j in self._terms)
        zp = [np.ones_like(z)]
        for _ in range(imax):
            zp.append(zp[-1] * z)
        zbp = [np.ones_like(z)]
        for _ in range(jmax):
            zbp.append(zbp[-1] * zb)
        acc = np.zeros_like(z)
        # graded order, lowest degree last so small terms are added at the end
        for (i, j), c in self._terms.items():
            acc = acc + float(c) * (zp[i] * zbp[j])
        return acc[()] if acc.ndim == 0 else acc

    # serialization
    def to_json(self) -> dict:
        return {
            "terms": [
                {"i": i, "j": j, "num": str(c.numerator), "den": str(c.denominator)}
                for (i, j), c in self._terms.items()
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Poly2":
        return cls({(int(t["i"]), int(t["j"])): Fraction(int(t["num"]), int(t["den"])) for t in data["terms"]})

    def to_latex(self, names: tuple[str, str] = ("Z", r"\bar{Z}")) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in self._terms.items():
            mono = _latex_power(names[0], i) + _latex_power(names[1], j)
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            else:
                num = _latex_fraction(mag)
                body = num + (" " + mono if mono else "")
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self, names: tuple[str, str] = ("Z", "Zb")) -> str:
        if not self._terms:
            return "0"
        out = []
        for (i, j), c in self._terms.items():
            factors = []
            if i:
                factors.append(names[0] + (f"^{i}" if i > 1 else ""))
            if j:
                factors.append(names[1] + (f"^{j}" if j > 1 else ""))
            mono = "*".join(factors)
            if not mono:
                out.append(str(c))
            elif c == 1:
                out.append(mono)
            elif c == -1:
                out.append("-" + mono)
            else:
                out.append(f"({c})*{mono}")
        return " + ".join(out).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Poly2({self.to_text()})"


def _latex_power(name: str, k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return name
    return f"{name}^{{{k}}}"


def _latex_fraction(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return rf"\frac{{{c.numerator}}}{{{c.denominator}}}"


def poly_sum(polys: Iterable[Poly2]) -> Poly2:
    out: dict[Monomial, Fraction] = {}
    for p in polys:
        for m, c in p.items():
            out[m] = out.get(m, 0) + c
    return Poly2._raw(out)


def linear_combination(pairs: Iterable[tuple[Scalar, Poly2]]) -> Poly2:
    out: dict[Monomial, Fraction] = {}
    for s, p in pairs:
        if not s:
            continue
        for m, c in p.items():
            out[m] = out.get(m, 0) + s * c
    return Poly2._raw(out)


ZERO = Poly2()
ONE = Poly2.const(1)
Z = Poly2.monomial(1, 0)
ZBAR = Poly2.monomial(0, 1)


def add(a: Poly2, b: Poly2) -> Poly2:
    return a + b


def mul(a: Poly2, b: Poly2) -> Poly2:
    return a * b


def partial(a: Poly2, var: str) -> Poly2:
    return a.partial(var)


def conj_poly(a: Poly2) -> Poly2:
    return a.conj()


def eval_poly(a: Poly2, z):
    return a.eval(z)
