from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import strategies as st

from deltoid.operator import AlphaParam
from deltoid.poly2 import Poly2
from deltoid.recurrence import build_table


@lru_cache(maxsize=None)
def cached_table(lam: Fraction, degree: int):
    return build_table(AlphaParam.from_lambda(lam), degree)


@pytest.fixture(scope="session")
def table_of():
    def get(lam, degree):
        return cached_table(Fraction(lam), degree)
    return get


small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def polys(draw, max_deg: int = 3, max_terms: int = 5):
    n = draw(st.integers(min_value=0, max_value=max_terms))
    terms = {}
    for _ in range(n):
        i = draw(st.integers(min_value=0, max_value=max_deg))
        j = draw(st.integers(min_value=0, max_value=max_deg - i))
        terms[(i, j)] = draw(small_fractions)
    return Poly2(terms)


positive_lambdas = st.fractions(min_value=Fraction(1, 6), max_value=8, max_denominator=6)
