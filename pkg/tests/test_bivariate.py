"""Two-variable series built as p-power rows of Laurent series in q."""

from fractions import Fraction

import pytest

from qrepl import (
    BivariateSeries,
    LaurentSeries,
    PrecisionError,
    bivariate_compare,
    bivariate_exp,
    bivariate_one,
)


def _q(items, order):
    return LaurentSeries.from_items(items, order)


def test_row_access_and_windows():
    f = BivariateSeries(0, [LaurentSeries.one(5), _q([(1, 3)], 5)])
    assert f.p_valuation == 0 and f.p_order == 2
    assert f.coeff(1, 1) == 3
    assert f.row(-4).is_zero()
    with pytest.raises(PrecisionError):
        f.row(2)
    with pytest.raises(PrecisionError):
        f.coeff(0, 5)


def test_add_takes_min_windows():
    f = BivariateSeries(0, [LaurentSeries.one(6)])
    g = BivariateSeries(1, [_q([(0, 2)], 4), _q([(1, 1)], 4)])
    h = f + g
    assert h.p_order == 1
    assert h.coeff(0, 0) == 1
    assert h.row(0).order == 6


def test_sub_scale_shift():
    f = BivariateSeries(1, [_q([(2, 4)], 5)])
    g = (f - f.scale(Fraction(1, 2))).p_shift(-2)
    assert g.p_valuation == -1
    assert g.coeff(-1, 2) == 2


def test_mul_known_product():
    one = LaurentSeries.one(9)
    pq = _q([(1, 1)], 9)
    pad = LaurentSeries.zero(9, 0)
    f = BivariateSeries(0, [one, pq, pad])     # 1 + p q
    g = BivariateSeries(0, [one, -pq, pad])    # 1 - p q
    h = f.mul(g)
    assert h.coeff(0, 0) == 1
    assert h.coeff(1, 1) == 0
    assert h.coeff(2, 2) == -1


def test_mul_respects_q_cap():
    one = LaurentSeries.one(9)
    f = BivariateSeries(0, [one])
    h = f.mul(f, q_cap=4)
    assert h.row(0).order == 4


def test_bivariate_one():
    e = bivariate_one(3, 4)
    assert e.coeff(0, 0) == 1
    assert e.coeff(2, 3) == 0


def test_exp_of_single_p_row():
    # f = p * t with t = 3q, so exp(f) has p^k row t^k / k!
    t = _q([(1, 3)], 10)
    f = BivariateSeries(1, [t, LaurentSeries.zero(10, 0), LaurentSeries.zero(10, 0)])
    e = bivariate_exp(f, q_cap=10)
    assert e.coeff(0, 0) == 1
    assert e.coeff(1, 1) == 3
    assert e.coeff(2, 2) == Fraction(9, 2)
    assert e.coeff(3, 3) == Fraction(27, 6)


def test_exp_mixed_rows():
    # exp(a p + b p^2) coefficient of p^2 is a^2/2 + b
    a = _q([(0, 2)], 8)
    b = _q([(1, 5)], 8)
    f = BivariateSeries(1, [a, b])
    e = bivariate_exp(f, q_cap=8)
    assert e.coeff(2, 0) == 2
    assert e.coeff(2, 1) == 5


def test_compare_reports_mismatches():
    one = LaurentSeries.one(6)
    f = BivariateSeries(0, [one, _q([(1, 3)], 6)])
    g = BivariateSeries(0, [one, _q([(1, 4)], 6)])
    diffs = bivariate_compare(f, g, (0, 1), (0, 2))
    assert diffs == [(1, 1, 3, 4)]
    with pytest.raises(PrecisionError):
        bivariate_compare(f, g, (0, 2), (0, 2))
