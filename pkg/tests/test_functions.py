"""Product expansion engines checked against direct convolution oracles."""

from fractions import Fraction

import pytest

from qrepl import (
    DomainError,
    LaurentSeries,
    ProductFormulaSpec,
    big_j,
    expand_product_formula,
    normalize_hauptmodul,
)


def _poly_mul(a, b, length):
    out = [0] * length
    for i, x in enumerate(a):
        if x == 0 or i >= length:
            continue
        for j, y in enumerate(b):
            if i + j >= length:
                break
            out[i + j] += x * y
    return out


def _brute_product(factor_exponent, length):
    """prod_{n>=1} (1 - q^n)^e(n) by explicit polynomial multiplication."""
    out = [1] + [0] * (length - 1)
    for n in range(1, length):
        e = factor_exponent(n)
        if e == 0:
            continue
        base = [0] * length
        base[0] = 1
        if n < length:
            base[n] = -1
        if e > 0:
            for _ in range(e):
                out = _poly_mul(out, base, length)
        else:
            # divide by (1 - q^n): multiply by the geometric series
            geo = [1 if i % n == 0 else 0 for i in range(length)]
            for _ in range(-e):
                out = _poly_mul(out, geo, length)
    return out


def test_euler_product_matches_pentagonal_pattern():
    spec = ProductFormulaSpec(kind="eta_quotient", terms=((1, 1),),
                              leading_power=Fraction(-1, 24))
    f = expand_product_formula(spec, 30)
    oracle = _brute_product(lambda n: 1, 31)
    assert f.valuation == 0
    for e in range(31):
        assert f.coeff(e) == oracle[e]
    # classical sparse signs
    assert [f.coeff(e) for e in (0, 1, 2, 5, 7, 12, 15, 22, 26)] == [
        1, -1, -1, 1, 1, -1, -1, 1, 1,
    ]


def test_discriminant_coefficients():
    spec = ProductFormulaSpec(kind="eta_quotient", terms=((1, 24),),
                              leading_power=Fraction(-1))
    f = expand_product_formula(spec, 9)
    known = [1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920]
    assert [f.coeff(e) for e in range(10)] == known


def test_eta_quotient_against_brute_force():
    spec = ProductFormulaSpec(
        kind="eta_quotient",
        terms=((1, 6), (5, -6)),
        leading_power=Fraction(0),
    )
    f = expand_product_formula(spec, 20)
    assert f.valuation == -1

    def e(n):
        # (1 - q^n)^6 for every n, times (1 - q^(5m))^-6 at multiples of 5
        if n % 5 == 0:
            return 0
        return 6

    oracle = _brute_product(e, 22)
    for k in range(20):
        assert f.coeff(k - 1) == oracle[k]


def test_residue_product_against_brute_force():
    exps = {1: -5, 2: 5, 3: 5, 4: -5}
    spec = ProductFormulaSpec(
        kind="residue_product",
        modulus=5,
        exponents=tuple(sorted(exps.items())),
        leading_power=Fraction(-1),
    )
    f = expand_product_formula(spec, 20)
    oracle = _brute_product(lambda n: exps.get(n % 5, 0), 22)
    for k in range(20):
        assert f.coeff(k - 1) == oracle[k]


def test_non_integral_leading_exponent_rejected():
    spec = ProductFormulaSpec(kind="eta_quotient", terms=((1, 1),))
    with pytest.raises(DomainError):
        expand_product_formula(spec, 10)


def test_spec_validation():
    with pytest.raises(DomainError):
        ProductFormulaSpec(kind="mystery")
    with pytest.raises(DomainError):
        ProductFormulaSpec(kind="eta_quotient", terms=())
    with pytest.raises(DomainError):
        ProductFormulaSpec(kind="eta_quotient", terms=((0, 2),))
    with pytest.raises(DomainError):
        ProductFormulaSpec(kind="residue_product", modulus=0)
    with pytest.raises(DomainError):
        ProductFormulaSpec(kind="residue_product", modulus=4,
                           exponents=((5, 1),))


def test_normalize_hauptmodul():
    f = LaurentSeries(-1, [3, 6, 9, 12], 3)
    g = normalize_hauptmodul(f)
    assert g.coeff(-1) == 1 and g.coeff(0) == 0
    assert g.coeff(1) == 3 and g.coeff(2) == 4


def test_normalize_rejects_wrong_pole():
    with pytest.raises(DomainError):
        normalize_hauptmodul(LaurentSeries(0, [1, 2, 3], 3))
    with pytest.raises(DomainError):
        normalize_hauptmodul(LaurentSeries(-2, [1, 0, 0, 0], 2))


def test_big_j_constants():
    f = big_j(5)
    assert f.valuation == -1 and f.coeff(-1) == 1 and f.coeff(0) == 0
    assert f.coeff(1) == 196884
    assert f.coeff(2) == 21493760
    assert f.coeff(3) == 864299970
    assert f.coeff(4) == 20245856256
    assert f.coeff(5) == 333202640600


def test_big_j_is_integral():
    f = big_j(60)
    assert f.is_integral()
