"""Bivariate product identities and the divisor-sum reconstruction."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrepl import (
    DomainError,
    LaurentSeries,
    PrecisionError,
    catalog_expand,
    condition_b_check,
    condition_b_family,
    dual_difference,
    faber_generating_check,
    psi_character,
    super_product_check,
    trivial_psi,
)
from qrepl.identity import build_product_families, product_family_sizes


def _normalized(coeffs, order):
    items = [(-1, 1)] + [(i + 1, c) for i, c in enumerate(coeffs)]
    return LaurentSeries.from_items(items, order)


def test_dual_difference_rows():
    t = _normalized([5, 7, -2], 4)
    d = dual_difference(t, 2, 3)
    assert d.p_valuation == -1
    assert d.coeff(-1, 0) == 1
    # row 0 is -t, including the pole coefficient
    assert d.coeff(0, -1) == -1
    assert d.coeff(0, 1) == -5
    # row n >= 1 is the constant coefficient of q^n in t
    assert d.coeff(1, 0) == 5
    assert d.coeff(2, 3) == 0


def test_dual_difference_requires_normalized():
    with pytest.raises(DomainError):
        dual_difference(LaurentSeries.from_items([(-1, 2)], 5), 2, 2)


def test_generating_check_passes_on_catalog():
    t = catalog_expand("t0_10", 10)
    report = faber_generating_check(t, 4, 5, function_id="t0_10")
    assert report.passed
    assert report.parameters["p_order"] == 4
    assert report.parameters["q_order"] == 5


def test_generating_check_requires_precision():
    t = catalog_expand("t0_10", 8)
    with pytest.raises(PrecisionError):
        faber_generating_check(t, 5, 5)


@settings(max_examples=15, deadline=None)
@given(st.lists(
    st.one_of(st.integers(min_value=-6, max_value=6),
              st.fractions(min_value=-2, max_value=2, max_denominator=3)),
    min_size=8, max_size=8,
))
def test_generating_check_holds_for_arbitrary_normalized_series(tail):
    # the identity is formal: any normalized series satisfies it
    t = _normalized(tail, 9)
    report = faber_generating_check(t, 3, 3, function_id="random")
    assert report.passed


def _product_inputs(level, P, Q, psi):
    s_max, k_bound = product_family_sizes(P, Q)
    from qrepl import grid_build

    m_need = max(P + 1, Q)
    n_need = (P + Q + 1) * (P + 1)
    gt = grid_build(f"t1_{level}", m_need, n_need)
    gt0 = grid_build(f"t0_{level}", m_need, n_need)
    fam_t, fam_t0 = build_product_families(gt, gt0, psi, s_max, k_bound)
    return gt, gt0, fam_t, fam_t0


def test_super_product_positive_small():
    psi = psi_character(8)
    gt, gt0, fam_t, fam_t0 = _product_inputs(8, 4, 4, psi)
    report = super_product_check(gt, gt0, psi, fam_t, fam_t0, 4, 4)
    assert report.passed
    assert report.level == 8


def test_super_product_detects_wrong_character():
    psi = trivial_psi(12)
    gt, gt0, fam_t, fam_t0 = _product_inputs(12, 4, 4, psi)
    report = super_product_check(gt, gt0, psi, fam_t, fam_t0, 4, 4)
    assert not report.passed
    assert report.violations


def test_super_product_coverage_guard():
    psi = psi_character(8)
    gt, gt0, fam_t, fam_t0 = _product_inputs(8, 3, 3, psi)
    with pytest.raises(PrecisionError):
        super_product_check(gt, gt0, psi, fam_t, fam_t0, 6, 6)


def test_condition_b_positive(build_grid):
    psi = psi_character(5)
    gt = build_grid("t1_5", 24, 24)
    gt0 = build_grid("t0_5", 24, 24)
    fam = condition_b_family(gt, gt0, psi, 24)
    report = condition_b_check(gt, gt0, psi, fam, 24)
    assert report.passed
    assert report.parameters["bound"] == 24


def test_condition_b_detects_wrong_character(build_grid):
    psi = trivial_psi(12)
    gt = build_grid("t1_12", 24, 24)
    gt0 = build_grid("t0_12", 24, 24)
    fam = condition_b_family(gt, gt0, psi, 24)
    report = condition_b_check(gt, gt0, psi, fam, 24)
    assert not report.passed


def test_condition_b_family_halves_between_orders(build_grid):
    # the order-1 sequence alone reconstructs coprime pairs
    psi = psi_character(5)
    gt = build_grid("t1_5", 24, 24)
    gt0 = build_grid("t0_5", 24, 24)
    fam = condition_b_family(gt, gt0, psi, 24)
    for m, n in ((1, 7), (2, 7), (3, 8)):
        direct = psi.pair(m, n) * (2 * gt.value(m, n) - gt0.value(m, n))
        assert direct == fam.get(1, m * n)
