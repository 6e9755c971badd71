"""Numeric orthogonality checks on the fundamental triangle.

A point x of the triangle A with vertices (0,0), (4pi/3, 0), (4pi/3) e^{i pi/3}
corresponds to angles theta1 = x1, theta2 = -x1/2 + sqrt(3) x2/2,
theta3 = -theta1 - theta2 and to Z = (e^{i theta1} + e^{i theta2} + e^{i theta3})/3.

Internally points are carried as angle gaps

    u = theta1 - theta2,  v = theta2 - theta3,  w = 2 pi - u - v,

which are the barycentric coordinates of A scaled by 2 pi. The weight is

    |Delta| = |(z1 - z2)(z2 - z3)(z3 - z1)| = 8 sin(u/2) sin(v/2) sin(w/2),

and each sine is evaluated from whichever representation of its gap is small,
so the weight stays accurate right up to the corners.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .recurrence import PolyTable

SQRT3 = np.sqrt(3.0)
TWO_PI = 2.0 * np.pi
# dx1 dx2 = JAC du dv
JAC = 2.0 / (3.0 * SQRT3)
AREA = 4.0 * np.pi**2 / (3.0 * SQRT3)
VERTICES_X = np.array([[0.0, 0.0], [4 * np.pi / 3, 0.0], [2 * np.pi / 3, 2 * np.pi / SQRT3]])
# the same vertices as gap vectors (u, v, w)
VERTICES_GAP = np.array([[0.0, 0.0, TWO_PI], [TWO_PI, 0.0, 0.0], [0.0, TWO_PI, 0.0]])

# geometric grading steps added toward corners and edges per refinement level
GRADING_PER_LEVEL = 8
DEFAULT_ORDER = 8


class DomainError(ValueError):
    pass


def gaps_from_x(x1, x2):
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    u = (3.0 * x1 - SQRT3 * x2) / 2.0
    v = SQRT3 * x2
    w = TWO_PI - u - v
    return u, v, w


def x_from_gaps(u, v):
    return (2.0 * u + v) / 3.0, v / SQRT3


def map_to_deltoid(x1, x2):
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    z = (np.exp(1j * x1) + 2.0 * np.exp(-0.5j * x1) * np.cos(SQRT3 * x2 / 2.0)) / 3.0
    return z[()] if z.ndim == 0 else z


def _half_sin(g, rest):
    # sin(g/2) with g + rest = 2 pi; use rest when g is near 2 pi
    return np.where(g <= np.pi, np.sin(g / 2.0), np.sin(rest / 2.0))


def abs_delta_from_gaps(u, v, w):
    su = _half_sin(u, v + w)
    sv = _half_sin(v, u + w)
    sw = _half_sin(w, u + v)
    return np.abs(8.0 * su * sv * sw)


def weight_from_gaps(u, v, w, alpha) -> np.ndarray:
    e = 2.0 * float(alpha) + 1.0
    d = abs_delta_from_gaps(u, v, w)
    if e == 0.0:
        return np.ones_like(d)
    with np.errstate(divide="ignore"):
        return d**e


def weight(x1, x2, alpha, tol: float = 1e-12):
    """|Delta|^(2 alpha + 1); +inf on the boundary when 2 alpha + 1 < 0."""
    u, v, w = gaps_from_x(x1, x2)
    if np.any(np.minimum(np.minimum(u, v), w) < -tol):
        raise DomainError("point outside the fundamental triangle")
    u, v, w = (np.clip(g, 0.0, TWO_PI) for g in (u, v, w))
    out = weight_from_gaps(u, v, w, alpha)
    return out[()] if np.ndim(out) == 0 else out


def delta(x1, x2):
    """Delta itself, for cross-checks (purely imaginary)."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    t1 = x1
    t2 = -x1 / 2 + SQRT3 * x2 / 2
    t3 = -t1 - t2
    z1, z2, z3 = np.exp(1j * t1), np.exp(1j * t2), np.exp(1j * t3)
    return (z1 - z2) * (z2 - z3) * (z3 - z1)


@lru_cache(maxsize=None)
def _gauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1.0) / 2.0, w / 2.0


@dataclass(frozen=True)
class TriangleGrid:
    """Quadrature nodes on A. weights integrate dx1 dx2 (total = area of A)."""

    level: int
    order: int
    is_graded: bool
    cells: int
    gaps: np.ndarray  # (n, 3): u, v, w
    weights: np.ndarray  # (n,)

    @property
    def nodes(self) -> np.ndarray:
        x1, x2 = x_from_gaps(self.gaps[:, 0], self.gaps[:, 1])
        return np.stack([x1, x2], axis=1)

    @property
    def z(self) -> np.ndarray:
        x = self.nodes
        return map_to_deltoid(x[:, 0], x[:, 1])

    def measure(self, alpha) -> np.ndarray:
        return self.weights * weight_from_gaps(self.gaps[:, 0], self.gaps[:, 1], self.gaps[:, 2], alpha)

    @classmethod
    def uniform(cls, level: int, order: int = DEFAULT_ORDER) -> "TriangleGrid":
        """4^level congruent subtriangles, collapsed Gauss rule of order x order on each."""
        tris = _subdivide(VERTICES_GAP[None, :, :], level)
        gaps, wts = _collapsed_rule(tris, order)
        return cls(level, order, False, len(tris), gaps, wts)

    @classmethod
    def graded(cls, level: int, order: int = 6) -> "TriangleGrid":
        """Geometric grading toward all corners and edges.

        A is split into six triangles (corner, edge midpoint, centroid). Each is
        mapped from the unit square by point = c + s((m - c) + t(g - m)), which
        puts the corner at s = 0 and the adjacent edge at t = 0. Both s and t
        are cut at 1, 1/2, ..., 2^-n with n = GRADING_PER_LEVEL * level, and a
        tensor Gauss rule is applied on each rectangle.
        """
        n = GRADING_PER_LEVEL * level
        cuts = np.concatenate([[0.0], 2.0 ** -np.arange(n, -1, -1, dtype=float)])
        gx, gw = _gauss(order)
        # 1-D composite rule on [0, 1]
        lo, hi = cuts[:-1], cuts[1:]
        pts = (lo[:, None] + (hi - lo)[:, None] * gx[None, :]).ravel()
        pw = ((hi - lo)[:, None] * gw[None, :]).ravel()
        S, T = np.meshgrid(pts, pts, indexing="ij")
        WS, WT = np.meshgrid(pw, pw, indexing="ij")
        S, T, W = S.ravel(), T.ravel(), (WS * WT).ravel()

        centroid = np.full(3, TWO_PI / 3.0)
        all_gaps, all_w = [], []
        for ci in range(3):
            c = VERTICES_GAP[ci]
            for cj in range(3):
                if cj == ci:
                    continue
                m = (VERTICES_GAP[ci] + VERTICES_GAP[cj]) / 2.0
                e1, e2 = m - c, centroid - m
                # coordinates that vanish at c are formed as s*(...) so they keep full precision
                g = c[None, :] + S[:, None] * (e1[None, :] + T[:, None] * e2[None, :])
                zero_at_c = c == 0.0
                g[:, zero_at_c] = (S[:, None] * (e1[None, zero_at_c] + T[:, None] * e2[None, zero_at_c]))
                # the coordinate equal to 2 pi at c: recompute as 2 pi minus the others
                k = int(np.argmax(c))
                g[:, k] = TWO_PI - g[:, [i for i in range(3) if i != k]].sum(axis=1)
                det = abs(e1[0] * e2[1] - e1[1] * e2[0])
                all_gaps.append(g)
                all_w.append(W * S * det * JAC)
        gaps = np.concatenate(all_gaps)
        wts = np.concatenate(all_w)
        return cls(level, order, True, 6 * (n + 1) ** 2, gaps, wts)


def _subdivide(tris: np.ndarray, level: int) -> np.ndarray:
    for _ in range(level):
        a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
        ab, bc, ca = (a + b) / 2, (b + c) / 2, (c + a) / 2
        tris = np.concatenate(
            [
                np.stack([a, ab, ca], axis=1),
                np.stack([ab, b, bc], axis=1),
                np.stack([ca, bc, c], axis=1),
                np.stack([bc, ca, ab], axis=1),
            ]
        )
    return tris


def _collapsed_rule(tris: np.ndarray, order: int) -> tuple[np.ndarray, np.ndarray]:
    gx, gw = _gauss(order)
    S, T = np.meshgrid(gx, gx, indexing="ij")
    WS, WT = np.meshgrid(gw, gw, indexing="ij")
    S, T, W = S.ravel(), T.ravel(), (WS * WT).ravel()
    a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
    e1, e2 = b - a, c - b
    pts = a[:, None, :] + S[None, :, None] * (e1[:, None, :] + T[None, :, None] * e2[:, None, :])
    det = np.abs(e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])
    wts = (det[:, None] * (W * S)[None, :]) * JAC
    return pts.reshape(-1, 3), wts.ravel()


def gram_matrix(table: PolyTable, grid: TriangleGrid, degree: int | None = None) -> tuple[list[tuple[int, int]], np.ndarray]:
    """Correlation matrix of the table entries under |Delta|^(2 alpha + 1) dx.

    Returns the index list (p, q) and the real part of the normalized
    Hermitian Gram matrix; the imaginary part is checked to vanish.
    """
    degree = table.max_degree if degree is None else degree
    idx = [pq for pq in table.indices() if sum(pq) <= degree]
    mu = grid.measure(table.param.alpha)
    z = grid.z
    vals = np.stack([table[pq].eval(z) for pq in idx])
    weighted = vals * mu[None, :]
    n = len(idx)
    G = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            # fixed-order pairwise summation keeps results reproducible
            G[i, j] = np.sum(weighted[i] * np.conj(vals[j]))
    d = np.sqrt(np.real(np.diag(G)))
    C = G / np.outer(d, d)
    if np.max(np.abs(C.imag)) > 1e-8:
        raise ArithmeticError(f"Gram matrix has imaginary part {np.max(np.abs(C.imag)):.3e}")
    return idx, C.real


def total_mass(alpha, level: int, graded: bool = True) -> float:
    """Integral of the weight over A at one refinement level.

    The graded grid integrates constants exactly, so alpha = -1/2 gives the
    area at every level; the uniform grid is only accurate for alpha >= -1/2.
    """
    grid = TriangleGrid.graded(level) if graded else TriangleGrid.uniform(level)
    return float(np.sum(grid.measure(alpha)))


def integrability_probe(alpha, levels) -> list[tuple[int, float]]:
    levels = list(levels)
    if any(b <= a for a, b in zip(levels, levels[1:])):
        raise ValueError("levels must be strictly increasing")
    return [(L, total_mass(alpha, L)) for L in levels]


def classify_probe(masses: list[tuple[int, float]], cauchy_tol: float = 1e-3, growth: float = 0.02) -> str:
    """'converges', 'diverges' or 'inconclusive' from a mass sequence."""
    vals = [m for _, m in masses]
    rel = [(b - a) / abs(a) for a, b in zip(vals, vals[1:])]
    if rel and all(r >= growth for r in rel):
        return "diverges"
    if rel and abs(rel[-1]) < cauchy_tol:
        return "converges"
    return "inconclusive"


__all__ = [
    "AREA",
    "DomainError",
    "GRADING_PER_LEVEL",
    "TriangleGrid",
    "abs_delta_from_gaps",
    "classify_probe",
    "delta",
    "gaps_from_x",
    "gram_matrix",
    "integrability_probe",
    "map_to_deltoid",
    "total_mass",
    "weight",
    "weight_from_gaps",
]
