"""Exact construction and verification of the deltoid orthogonal polynomials."""
from __future__ import annotations

from .operator import AlphaParam, apply_L, eigenvalue, gamma
from .poly2 import ONE, ZBAR, ZERO, Poly2, Z
from .recurrence import PolyTable, build_table

__version__ = "0.1.0"

__all__ = [
    "AlphaParam",
    "ONE",
    "Poly2",
    "PolyTable",
    "Z",
    "ZBAR",
    "ZERO",
    "apply_L",
    "build_table",
    "eigenvalue",
    "gamma",
]
