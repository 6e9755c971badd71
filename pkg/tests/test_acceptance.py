"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines. Items
that cannot be reproduced as printed are separate strict xfail tests; the
blocking analysis for each is in the decisions ledger.
"""
from __future__ import annotations

import time
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from deltoid.characters import (
    Partition,
    character_eigenvector,
    character_table,
    partitions,
    verify_su3_eigen,
)
from deltoid.operator import AlphaParam, apply_L, eigenvalue, gamma
from deltoid.poly2 import ONE, ZBAR, ZERO, Poly2, Z
from deltoid.quadrature import TriangleGrid, classify_probe, gram_matrix, integrability_probe
from deltoid.recurrence import check_eigen, check_gamma_recurrence, coeff_a1, coeff_a2
from deltoid.series import (
    check_generating,
    check_hatL_product,
    f_compatibility,
    generating_coefficients,
    geometric_genfun_flat,
    geometric_genfun_su3,
    log_series,
    pow_beta,
    Series1,
)
from deltoid.traces import expand_linearization, flat_eigenvector, linearize, linearize_closed_form, q_norm

from conftest import cached_table


def announce(k, ok: bool, detail: str = "") -> None:
    print(f"\nACCEPTANCE {k}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())


# 1 ---------------------------------------------------------------------------

def test_criterion_1_exact_eigen_suite():
    t0 = time.perf_counter()
    failures = []
    for lam in (Fraction(1), Fraction(4), Fraction(7, 3), Fraction(11, 2)):
        rep = check_eigen(cached_table(lam, 10))
        if not rep.passed or rep.checked != 66:
            failures.append((lam, rep.summary()))
    ok = not failures
    announce(1, ok, f"4 lambdas x 66 polynomials, {time.perf_counter() - t0:.2f}s {failures}")
    assert ok


# 2 ---------------------------------------------------------------------------

def test_criterion_2_oracle_polynomials():
    t = cached_table(Fraction(1), 4)
    checks = {
        "P11": t[(1, 1)] == Z * ZBAR - Fraction(1, 3),
        "P20": t[(2, 0)] == Z * Z - Fraction(2, 3) * ZBAR,
        "a1(1,1)": coeff_a1(1, 1) == Fraction(-2, 3),
        "a2(1,0,1)": coeff_a2(1, 0, 1) == Fraction(-1, 3),
        "a1(4,1)": coeff_a1(4, 1) == Fraction(-1, 3),
        "a2(4,0,1)": coeff_a2(4, 0, 1) == Fraction(-1, 9),
    }
    ok = all(checks.values())
    announce(2, ok, str(checks))
    assert ok


# 3 ---------------------------------------------------------------------------

def test_criterion_3_gamma_recurrence():
    results = {}
    for lam in (Fraction(1), Fraction(4), Fraction(7, 3)):
        # degree 9 so that P_{p+1,q} exists for every p + q <= 8
        rep = check_gamma_recurrence(cached_table(lam, 9))
        results[str(lam)] = (rep.passed, rep.checked)
    ok = all(passed and n == 2 * 45 for passed, n in results.values())
    announce(3, ok, str(results))
    assert ok


# 4 ---------------------------------------------------------------------------

def test_criterion_4_flat_identities():
    t = cached_table(Fraction(1), 12)
    # the 3^-|p| normalization makes the recurrence valid once p - 2 >= 0
    q_rec = all(
        q_norm(p + 1) == Z * q_norm(p) - Fraction(1, 3) * ZBAR * q_norm(p - 1) + Fraction(1, 27) * q_norm(p - 2)
        and q_norm(-p - 1) == ZBAR * q_norm(-p) - Fraction(1, 3) * Z * q_norm(1 - p) + Fraction(1, 27) * q_norm(2 - p)
        for p in range(2, 12)
    )
    q_is_p = all(q_norm(p) == t[(p, 0)] and q_norm(-p) == t[(0, p)] for p in range(1, 13))
    plat = all(flat_eigenvector(p, q) == t[(p, q)] for p in range(7) for q in range(7))
    lin_bad = []
    count = 0
    for p, q, p2, q2 in product(range(5), repeat=4):
        if p + q > 4 or p2 + q2 > 4:
            continue
        count += 1
        raw = flat_eigenvector(p, q) * flat_eigenvector(p2, q2)
        if expand_linearization(linearize(p, q, p2, q2)) != raw:
            lin_bad.append((p, q, p2, q2))
    ok = q_rec and q_is_p and plat and not lin_bad and count == 225
    announce(4, ok, f"Q-recurrence={q_rec} Q_p=P_p0={q_is_p} plat={plat} linearization {count - len(lin_bad)}/{count}")
    assert ok


@pytest.mark.xfail(strict=True, reason="printed six-term closed form disagrees with raw products (see ledger)")
def test_criterion_4_printed_linearization_closed_form():
    agree = 0
    total = 0
    for p, q, p2, q2 in product(range(5), repeat=4):
        if p + q > 4 or p2 + q2 > 4:
            continue
        total += 1
        raw = flat_eigenvector(p, q) * flat_eigenvector(p2, q2)
        try:
            if expand_linearization(linearize_closed_form(p, q, p2, q2)) == raw:
                agree += 1
        except ValueError:
            pass
    ok = agree == total
    announce("4 (printed closed form)", ok, f"{agree}/{total} quadruples agree")
    assert ok


# 5 ---------------------------------------------------------------------------

# printed tables: rows are irreducibles, columns are cycle types, both as listed
PRINTED_TABLES = {
    2: ([(2,), (1, 1)], [(1, 1), (2,)], [[1, 1], [1, -1]]),
    3: ([(3,), (2, 1), (1, 1, 1)], [(1, 1, 1), (2, 1), (3,)], [[1, 1, 1], [2, 0, -1], [1, -1, 1]]),
    4: (
        [(4,), (1, 1, 1, 1), (2, 2), (3, 1), (2, 1, 1)],
        [(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)],
        [[1, 1, 1, 1, 1], [1, -1, 1, 1, -1], [2, 0, 2, -1, 0], [3, 1, -1, 0, -1], [3, -1, -1, 0, 1]],
    ),
}

PRINTED_EIGENVECTORS = {
    (2,): 18 * Z**2 - 6 * ZBAR,
    (1, 1): 6 * ZBAR,
    (2, 1): 2 * (27 * Z * ZBAR - 3),
    (1, 1, 1): Poly2.const(6),
    (4,): 72 * (27 * Z**4 - 27 * ZBAR * Z**2 + 3 * ZBAR**2 + 2 * Z),
    (2, 2): 72 * (3 * ZBAR**2 - Z),
    (3, 1): 72 * (9 * ZBAR * Z**2 - 3 * ZBAR**2 - Z),
    (2, 1, 1): 72 * Z,
    (1, 1, 1, 1): ZERO,
}


def test_criterion_5_characters():
    table_ok = True
    for n, (rows, cols, vals) in PRINTED_TABLES.items():
        ct = character_table(n)
        for r, chi in enumerate(rows):
            for c, pi in enumerate(cols):
                if ct(Partition(chi), Partition(pi)) != vals[r][c]:
                    table_ok = False
    vec_bad = [chi for chi, q in PRINTED_EIGENVECTORS.items() if character_eigenvector(Partition(chi)) != q]
    t = cached_table(Fraction(4), 6)
    eig_bad = []
    nonzero = 0
    for n in range(1, 7):
        for chi in partitions(n):
            rep = verify_su3_eigen(chi, t)
            if not rep.data["Q"].is_zero():
                nonzero += 1
            if not rep.passed:
                eig_bad.append(str(chi))
    ok = table_ok and not vec_bad and not eig_bad
    announce(5, ok, f"tables={table_ok} printed vectors off={vec_bad} eigen {nonzero} nonzero, failing={eig_bad}")
    assert ok


@pytest.mark.xfail(strict=True, reason="printed S3 trivial vector omits class sizes and is not an eigenvector (see ledger)")
def test_criterion_5_printed_s3_trivial_vector():
    printed = 3 * (27 * Z**3 - 15 * Z * ZBAR + 1)
    ours = character_eigenvector(Partition.of(3))
    su3 = AlphaParam.from_lambda(4)
    L = apply_L(su3, printed)
    is_eigen = (L + eigenvalue(su3, 3, 0) * printed).is_zero()
    ratio = ours.content_ratio(printed)
    ok = ratio is not None and is_eigen
    announce("5 (printed S3 trivial)", ok, f"proportional={ratio is not None} eigenvector={is_eigen}")
    assert ok


# 6 ---------------------------------------------------------------------------

def test_criterion_6_generating_functions():
    reps = {}
    for lam in (Fraction(4), Fraction(7, 3)):
        param = AlphaParam.from_lambda(lam)
        reps[f"A_n {lam}"] = check_generating(param, cached_table(lam, 8), 8).passed
        reps[f"hatL {lam}"] = check_hatL_product(param, 5, 5).passed
        beta = param.beta
        reps[f"A1 {lam}"] = generating_coefficients(param, 2)[1] == -3 * beta * ZBAR
    reps["flat bivariate"] = geometric_genfun_flat(5).passed
    reps["su3 bivariate"] = geometric_genfun_su3(5, cached_table(Fraction(4), 10)).passed
    compat = {str(lam): f_compatibility(lam)[0] for lam in (1, 4, 2, Fraction(7, 3))}
    reps["F(XY) compatibility"] = compat == {"1": True, "4": True, "2": False, "7/3": False}
    ok = all(reps.values())
    announce(6, ok, str(reps))
    assert ok


@pytest.mark.xfail(strict=True, reason="printed A_2 is twice the true coefficient (see ledger)")
def test_criterion_6_printed_A2():
    mismatches = []
    for lam in (Fraction(4), Fraction(7, 3)):
        param = AlphaParam.from_lambda(lam)
        beta = param.beta
        printed = 3 * beta * (3 * (beta - 1) * ZBAR**2 + 2 * Z)
        if generating_coefficients(param, 2)[2] != printed:
            mismatches.append(str(lam))
    ok = not mismatches
    announce("6 (printed A2)", ok, f"mismatch at lambda {mismatches}")
    assert ok


# 7 ---------------------------------------------------------------------------

def test_criterion_7_numeric_orthogonality():
    t0 = time.perf_counter()
    grid = TriangleGrid.uniform(6)
    worst = {}
    for alpha in (Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1)):
        lam = (6 * alpha + 5) / 2
        idx, C = gram_matrix(cached_table(lam, 4), grid)
        off = C - np.diag(np.diag(C))
        worst[str(alpha)] = float(np.max(np.abs(off)))
        assert len(idx) == 15
    elapsed = time.perf_counter() - t0
    ok = all(w < 1e-8 for w in worst.values()) and elapsed < 60
    announce(7, ok, f"max off-diagonal {worst}, {elapsed:.1f}s")
    assert ok


# 8 ---------------------------------------------------------------------------

def test_criterion_8_integrability_probe():
    levels = range(1, 11)
    conv = integrability_probe(-0.8, levels)
    div = integrability_probe(-0.85, levels)
    c1, c2 = classify_probe(conv), classify_probe(div)
    ok = c1 == "converges" and c2 == "diverges"
    announce(8, ok, f"alpha=-0.8 -> {c1} (mass {conv[-1][1]:.4f}), alpha=-0.85 -> {c2} (mass {div[-1][1]:.1f})")
    assert ok


# 9 ---------------------------------------------------------------------------

def test_criterion_9_property_suites():
    """Deterministic sweep; the randomized versions live in the per-module suites."""
    sample = [ONE, Z, ZBAR, Z * ZBAR - 1, Z**3 + Fraction(2, 3) * ZBAR**2 - Z, ZBAR**4 + 5 * Z**2 * ZBAR]
    param = AlphaParam.from_lambda(Fraction(7, 3))
    gam = True
    for f, g, h in product(sample, repeat=3):
        gam &= gamma(f, g) == gamma(g, f)
        gam &= gamma(f, g * h) == g * gamma(f, h) + h * gamma(f, g)
    diff = True
    for f, g in product(sample, repeat=2):
        lhs = apply_L(param, f * g) - f * apply_L(param, g) - g * apply_L(param, f)
        diff &= lhs == 2 * gamma(f, g)
        phi = f * f * g + 3 * f  # phi(f, g) = f^2 g + 3f
        dphi_f, dphi_g = 2 * f * g + 3, f * f
        chain = dphi_f * apply_L(param, f) + dphi_g * apply_L(param, g) + 2 * g * gamma(f, f) + 2 * 2 * f * gamma(f, g)
        diff &= apply_L(param, phi) == chain
    conj = all(apply_L(param, f.conj()) == apply_L(param, f).conj() for f in sample)
    conj &= all(gamma(f, g).conj() == gamma(f.conj(), g.conj()) for f, g in product(sample, repeat=2))

    orth = True
    for n in range(1, 8):
        ct = character_table(n)
        from deltoid.characters import class_size
        sizes = [class_size(pi) for pi in ct.labels]
        fact = sum(sizes)
        for i, j in product(range(len(ct.labels)), repeat=2):
            s = sum(c * a * b for c, a, b in zip(sizes, ct.values[i], ct.values[j]))
            orth &= s == (fact if i == j else 0)

    s = Series1.of([ONE, -3 * ZBAR, 3 * Z, -ONE], 8)
    b1, b2 = Fraction(-4, 9), Fraction(5, 7)
    series = pow_beta(s, b1) * pow_beta(s, b2) == pow_beta(s, b1 + b2)
    series &= pow_beta(pow_beta(s, b1), b2) == pow_beta(s, b1 * b2)
    series &= log_series(s * s) == log_series(s) + log_series(s)
    series &= log_series(pow_beta(s, b1)) == log_series(s).scale(b1)

    checks = {"gamma": gam, "diffusion": diff, "conjugation": conj, "characters n<=7": orth, "series": series}
    ok = all(checks.values())
    announce(9, ok, str(checks))
    assert ok
