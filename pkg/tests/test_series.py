"""Laurent series core: windows, ring operations, functional calculus."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrepl import (
    CHI_FOUR,
    SIGN_PARITY,
    DomainError,
    LaurentSeries,
    PrecisionError,
    ring_arithmetic,
    series_exp,
    series_invert,
    series_log,
    series_mul,
    series_pow,
    series_substitute_power,
    series_twist,
    series_u,
)

# small exact series for property tests
coeff_st = st.one_of(
    st.integers(min_value=-9, max_value=9),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
)


@st.composite
def series_st(draw, min_val=-3, max_val=3, max_len=6):
    val = draw(st.integers(min_value=min_val, max_value=max_val))
    coeffs = draw(st.lists(coeff_st, min_size=1, max_size=max_len))
    return LaurentSeries(val, coeffs, val + len(coeffs))


def test_construction_strips_leading_zeros():
    f = LaurentSeries(-2, [0, 0, 3, 0], 2)
    assert f.valuation == 0
    assert f.coeff(0) == 3
    assert f.coeff(1) == 0
    assert f.order == 2


def test_trailing_zeros_are_kept_as_window_information():
    f = LaurentSeries(0, [1, 0, 0], 3)
    assert f.order == 3
    assert f.coeff(2) == 0
    with pytest.raises(PrecisionError):
        f.coeff(3)


def test_scalars_normalize_to_int_when_possible():
    f = LaurentSeries(0, [Fraction(4, 2), Fraction(1, 3)], 2)
    assert isinstance(f.coeff(0), int)
    assert f.coeff(0) == 2
    assert f.coeff(1) == Fraction(1, 3)


def test_zero_and_one_and_monomial():
    z = LaurentSeries.zero(5)
    assert z.is_zero() and z.order == 5
    o = LaurentSeries.one(4)
    assert o.coeff(0) == 1 and o.coeff(3) == 0
    m = LaurentSeries.monomial(-2, 7, 9)
    assert m.coeff(-2) == 7 and m.valuation == -2 and m.order == 9


def test_coeff_below_valuation_is_exactly_zero():
    f = LaurentSeries(1, [5], 2)
    assert f.coeff(-100) == 0
    assert f[0] == 0


def test_coeff_at_order_raises():
    f = LaurentSeries(0, [1, 2], 2)
    with pytest.raises(PrecisionError):
        f.coeff(2)


def test_from_items_and_items_roundtrip():
    f = LaurentSeries.from_items([(-1, 1), (2, -7)], 4)
    assert f.valuation == -1
    assert dict(f.items()) == {-1: 1, 2: -7}
    assert f.coeff(3) == 0


def test_truncate_narrows_only():
    f = LaurentSeries(-1, [1, 0, 3, 4], 3)
    g = f.truncate(2)
    assert g.order == 2 and g.coeff(1) == 3
    with pytest.raises(PrecisionError):
        f.truncate(5)


def test_add_window_is_min():
    f = LaurentSeries(-1, [1, 2, 3], 2)
    g = LaurentSeries(0, [5, 5, 5, 5], 4)
    h = f + g
    assert h.order == 2
    assert h.coeff(-1) == 1 and h.coeff(0) == 7 and h.coeff(1) == 8
    with pytest.raises(PrecisionError):
        h.coeff(2)


def test_shift_and_scale_and_neg():
    f = LaurentSeries(0, [1, 2], 2)
    assert f.shift(3).coeff(3) == 1 and f.shift(3).order == 5
    assert f.scale(Fraction(1, 2)).coeff(1) == 1
    assert (-f).coeff(1) == -2


def test_mul_known_product():
    t = LaurentSeries(-1, [1, 0, 1], 2)
    s = LaurentSeries(-1, [1, 0, -1], 2)
    prod = series_mul(t, s)
    # (q^-1 + q)(q^-1 - q) = q^-2 - q^2 but the window stops at min rule
    assert prod.valuation == -2
    assert prod.order == 1
    assert prod.coeff(-2) == 1 and prod.coeff(0) == 0


def test_mul_window_rule():
    f = LaurentSeries.monomial(-2, 1, 5)
    g = LaurentSeries.monomial(3, 1, 9)
    prod = series_mul(f, g)
    assert prod.order == min(5 + 3, 9 - 2)
    capped = series_mul(f, g, max_order=2)
    assert capped.order == 2


def test_invert_geometric():
    f = LaurentSeries.from_items([(0, 1), (1, -1)], 10)
    g = series_invert(f)
    for e in range(9):
        assert g.coeff(e) == 1


def test_invert_with_pole():
    t = LaurentSeries.from_items([(-1, 1), (1, 1)], 6)
    g = series_invert(t)
    assert g.valuation == 1
    prod = series_mul(t, g)
    assert prod.coeff(0) == 1
    assert all(prod.coeff(e) == 0 for e in range(1, prod.order))


def test_pow_matches_repeated_mul():
    t = LaurentSeries(-1, [1, 3, -2, 5], 3)
    p = series_pow(t, 4)
    q = t
    for _ in range(3):
        q = series_mul(q, t)
    assert p.valuation == q.valuation
    for e in range(p.valuation, min(p.order, q.order)):
        assert p.coeff(e) == q.coeff(e)


def test_pow_zero_is_one():
    t = LaurentSeries(-1, [1, 3], 1)
    p = series_pow(t, 0)
    assert p.coeff(0) == 1 and p.valuation == 0


def test_exp_log_inverse_on_example():
    f = LaurentSeries(1, [2, -1, Fraction(1, 2)], 4)
    g = series_log(series_exp(f))
    for e in range(1, 4):
        assert g.coeff(e) == f.coeff(e)


def test_exp_requires_positive_valuation():
    with pytest.raises(DomainError):
        series_exp(LaurentSeries(0, [1, 0, 0], 3))


def test_log_requires_unit_constant():
    with pytest.raises(DomainError):
        series_log(LaurentSeries(0, [2, 0, 0], 3))


def test_u_operator_known():
    f = LaurentSeries(0, [0, 1, 2, 3, 4, 5, 6], 7)
    # canonical form lifts the valuation past the leading zero
    assert f.valuation == 1
    g = series_u(f, 2)
    assert g.valuation == 1 and g.order == 7 // 2
    assert [g.coeff(e) for e in range(1, 3)] == [2, 4]


def test_u_operator_pole_window():
    f = LaurentSeries(-3, [1, 0, 0, 0, 0, 0, 0, 0], 5)
    g = series_u(f, 2)
    # pole exponent -3 maps outside any slice of step 2; all known values 0
    assert g.order == 5 // 2
    assert g.coeff(-1) == 0 and g.coeff(1) == 0


def test_u_undoes_power_substitution():
    f = LaurentSeries(-2, [1, 4, 0, -3, 7], 3)
    for n in (2, 3, 5):
        g = series_u(series_substitute_power(f, n), n)
        assert g.valuation == f.valuation and g.order == f.order
        for e in range(f.valuation, f.order):
            assert g.coeff(e) == f.coeff(e)


def test_substitute_power_windows():
    f = LaurentSeries(-1, [1, 0, 5], 2)
    g = series_substitute_power(f, 3)
    assert g.valuation == -3 and g.order == 6
    assert g.coeff(-3) == 1 and g.coeff(3) == 5 and g.coeff(1) == 0


def test_twist_tables():
    f = LaurentSeries(-1, [1, 2, 3, 4, 5], 4)
    g = series_twist(f, CHI_FOUR)
    assert [g.coeff(e) for e in range(-1, 4)] == [-1, 0, 3, 0, -5]
    h = series_twist(series_twist(f, SIGN_PARITY), SIGN_PARITY)
    for e in range(-1, 4):
        assert h.coeff(e) == f.coeff(e)


def test_ring_arithmetic_dispatch():
    f = LaurentSeries(0, [1, 1], 2)
    assert ring_arithmetic(f, f, "add").coeff(1) == 2
    assert ring_arithmetic(f, f, "sub").is_zero()
    assert ring_arithmetic(f, f, "mul").coeff(1) == 2
    with pytest.raises(DomainError):
        ring_arithmetic(f, f, "frobnicate")


def _common_window(*series):
    lo = max(s.valuation for s in series)
    hi = min(s.order for s in series)
    return lo, hi


@settings(max_examples=60, deadline=None)
@given(series_st(), series_st())
def test_mul_commutes(f, g):
    a = series_mul(f, g)
    b = series_mul(g, f)
    assert a.valuation == b.valuation and a.order == b.order
    for e in range(a.valuation, a.order):
        assert a.coeff(e) == b.coeff(e)


@settings(max_examples=40, deadline=None)
@given(series_st(), series_st(), series_st())
def test_mul_associates_on_common_window(f, g, h):
    a = series_mul(series_mul(f, g), h)
    b = series_mul(f, series_mul(g, h))
    lo, hi = _common_window(a, b)
    for e in range(lo, hi):
        assert a.coeff(e) == b.coeff(e)


@settings(max_examples=40, deadline=None)
@given(series_st(), series_st(), series_st())
def test_mul_distributes_on_common_window(f, g, h):
    a = series_mul(f, g + h)
    b = series_mul(f, g) + series_mul(f, h)
    lo, hi = _common_window(a, b)
    for e in range(lo, hi):
        assert a.coeff(e) == b.coeff(e)


@settings(max_examples=40, deadline=None)
@given(series_st(min_val=1, max_val=3))
def test_log_exp_roundtrip(f):
    g = series_log(series_exp(f))
    assert g.order == f.order
    for e in range(f.valuation, f.order):
        assert g.coeff(e) == f.coeff(e)
