from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from deltoid.operator import discriminant
from deltoid.quadrature import (
    AREA,
    DomainError,
    TriangleGrid,
    abs_delta_from_gaps,
    classify_probe,
    delta,
    gaps_from_x,
    gram_matrix,
    integrability_probe,
    map_to_deltoid,
    total_mass,
    weight,
)

from conftest import cached_table

rng = np.random.default_rng(11)


def interior_points(n):
    a, b = rng.uniform(0.05, 0.9, (2, n))
    keep = a + b < 0.95
    a, b = a[keep], b[keep]
    u, v = 2 * np.pi * a, 2 * np.pi * b
    return (2 * u + v) / 3, v / np.sqrt(3)


def test_area_value():
    assert AREA == pytest.approx(4 * np.pi**2 / (3 * np.sqrt(3)))
    assert AREA == pytest.approx(7.59763, abs=1e-5)


@pytest.mark.parametrize("graded", [False, True])
def test_grids_integrate_area(graded):
    grid = TriangleGrid.graded(3) if graded else TriangleGrid.uniform(3)
    assert np.sum(grid.weights) == pytest.approx(AREA, rel=1e-13)


def test_vertices_map_to_cusps():
    x1 = np.array([0.0, 4 * np.pi / 3, 2 * np.pi / 3])
    x2 = np.array([0.0, 0.0, 2 * np.pi / np.sqrt(3)])
    z = map_to_deltoid(x1, x2)
    assert np.allclose(z**3, 1.0)
    assert np.allclose(weight(x1, x2, 0.5), 0.0)
    assert np.all(np.isinf(weight(x1, x2, -0.75)))


def test_delta_against_discriminant():
    """|Delta|^2 = 108 disc(Z) away from the boundary."""
    x1, x2 = interior_points(200)
    ratio = np.abs(delta(x1, x2)) ** 2 / discriminant().eval(map_to_deltoid(x1, x2)).real
    assert np.allclose(ratio, 108.0, rtol=1e-9)


def test_gap_formula_matches_product():
    x1, x2 = interior_points(200)
    u, v, w = gaps_from_x(x1, x2)
    assert np.allclose(abs_delta_from_gaps(u, v, w), np.abs(delta(x1, x2)))
    assert np.allclose(weight(x1, x2, 0.25), np.abs(delta(x1, x2)) ** 1.5)


def test_weight_outside_raises():
    with pytest.raises(DomainError):
        weight(-1.0, 0.0, 0.5)


def test_alpha_minus_half_weight_is_one():
    x1, x2 = interior_points(20)
    assert np.allclose(weight(x1, x2, -0.5), 1.0)


def test_gram_is_symmetric_with_unit_diagonal():
    idx, C = gram_matrix(cached_table(Fraction(4), 3), TriangleGrid.uniform(4))
    assert len(idx) == 10
    assert np.allclose(C, C.T, atol=1e-12)
    assert np.allclose(np.diag(C), 1.0)
    assert np.max(np.abs(C - np.eye(10))) < 1e-8


def test_gram_detects_non_orthogonal_family():
    # a table built for the wrong alpha is not orthogonal for this weight
    t_wrong = cached_table(Fraction(1), 3)
    grid = TriangleGrid.uniform(4)
    from deltoid.recurrence import PolyTable
    from deltoid.operator import AlphaParam
    mislabeled = PolyTable(AlphaParam.from_lambda(4), 3, dict(t_wrong.entries))
    _, C = gram_matrix(mislabeled, grid)
    assert np.max(np.abs(C - np.eye(len(C)))) > 1e-3


def test_gram_is_deterministic():
    t = cached_table(Fraction(5, 2), 3)
    grid = TriangleGrid.uniform(3)
    _, a = gram_matrix(t, grid)
    _, b = gram_matrix(t, grid)
    assert np.array_equal(a, b)


def test_mass_refines_for_regular_alpha():
    m5, m6 = total_mass(0.5, 5, graded=False), total_mass(0.5, 6, graded=False)
    assert abs(m6 - m5) / m6 < 1e-8


def test_probe_behaviour():
    conv = integrability_probe(-0.8, range(1, 9))
    div = integrability_probe(-0.85, range(1, 9))
    flat = integrability_probe(-0.5, range(1, 4))
    assert classify_probe(conv) == "converges"
    assert classify_probe(div) == "diverges"
    assert all(m == pytest.approx(AREA, rel=1e-12) for _, m in flat)
    # successive differences shrink geometrically on the integrable side
    d = np.diff([m for _, m in conv])
    assert np.all(d[1:] < d[:-1])


def test_probe_rejects_unordered_levels():
    with pytest.raises(ValueError):
        integrability_probe(-0.8, [3, 2])


def test_classify_inconclusive():
    assert classify_probe([(1, 1.0), (2, 1.5), (3, 1.4)]) == "inconclusive"
