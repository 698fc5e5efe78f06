"""Expansion engines for the catalog functions.

Two product shapes cover every Hauptmodul in the catalog: quotients of
Dedekind-eta style factors, and products of (1 - q^n) filtered by the residue
of n modulo a fixed level.  Both expand through integer recurrences, one
factor at a time, so no rational arithmetic enters until normalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .series import DomainError, LaurentSeries

KINDS = ("eta_quotient", "residue_product", "modular_j")


@dataclass(frozen=True)
class ProductFormulaSpec:
    """Description of one expandable product.

    kind "eta_quotient": terms is a list of (d, e) pairs, the product of
    (q^(d/24) prod_n (1 - q^(d n)))^e over the pairs, times q^leading_power.

    kind "residue_product": the product of (1 - q^n)^exponents[n mod modulus]
    over n >= 1, times q^leading_power.

    kind "modular_j": the classical normalized j-function; no parameters.
    """

    kind: str
    terms: tuple[tuple[int, int], ...] = ()
    modulus: int = 0
    exponents: tuple[tuple[int, int], ...] = ()
    leading_power: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise DomainError(f"unknown product kind {self.kind!r}")
        if self.kind == "eta_quotient":
            if not self.terms:
                raise DomainError("eta_quotient needs at least one (d, e) term")
            if any(d < 1 for d, _ in self.terms):
                raise DomainError("eta_quotient scale factors must be positive")
        if self.kind == "residue_product":
            if self.modulus < 1:
                raise DomainError("residue_product needs a positive modulus")
            for r, _ in self.exponents:
                if not 0 <= r < self.modulus:
                    raise DomainError(f"residue {r} outside [0, {self.modulus})")

    def pole_exponent(self) -> int:
        """Exponent of the exact q-power prefactor; must be an integer."""
        if self.kind == "eta_quotient":
            lead = self.leading_power + Fraction(
                sum(d * e for d, e in self.terms), 24
            )
        else:
            lead = self.leading_power
        if lead.denominator != 1:
            raise DomainError(
                f"non-integral leading exponent {lead} in product formula"
            )
        return lead.numerator


def _apply_factor(coeffs: list[int], m: int, e: int) -> None:
    """Multiply the unit series by (1 - q^m)^e in place, |e| passes of an
    O(length) recurrence per factor."""
    n = len(coeffs)
    if e > 0:
        for _ in range(e):
            for i in range(n - 1, m - 1, -1):
                coeffs[i] -= coeffs[i - m]
    elif e < 0:
        for _ in range(-e):
            for i in range(m, n):
                coeffs[i] += coeffs[i - m]


def _unit_exponents(spec: ProductFormulaSpec, length: int) -> list[int]:
    """exps[m] = net exponent of the factor (1 - q^m) for 1 <= m < length."""
    exps = [0] * length
    if spec.kind == "eta_quotient":
        for d, e in spec.terms:
            for m in range(d, length, d):
                exps[m] += e
    else:
        table = dict(spec.exponents)
        for m in range(1, length):
            exps[m] += table.get(m % spec.modulus, 0)
    return exps


def expand_product_formula(spec: ProductFormulaSpec, order: int) -> LaurentSeries:
    """Expand the product through the coefficient of q**order."""
    if spec.kind == "modular_j":
        return big_j(order)
    pole = spec.pole_exponent()
    length = order + 1 - pole
    if length < 1:
        raise DomainError("requested order lies below the leading exponent")
    coeffs = [0] * length
    coeffs[0] = 1
    for m, e in enumerate(_unit_exponents(spec, length)):
        if e:
            _apply_factor(coeffs, m, e)
    return LaurentSeries(pole, coeffs, order + 1)


def normalize_hauptmodul(f: LaurentSeries) -> LaurentSeries:
    """Rescale to leading coefficient 1 and kill the constant term.

    Requires a simple pole: valuation exactly -1 with nonzero coefficient.
    """
    if f.valuation != -1 or f.coeff(-1) == 0:
        raise DomainError("not a simple pole at infinity")
    c = f.coeff(-1)
    g = f if c == 1 else f.scale(Fraction(1, 1) / c)
    c0 = g.coeff(0)
    if c0 == 0:
        return g
    return g - LaurentSeries.monomial(0, c0, order=g.order)


def big_j(order: int) -> LaurentSeries:
    """The normalized j-function: q^-1 + 0 + 196884 q + ..., through q**order.

    Computed as E4(q)^3 divided by the weight-12 cusp form, with the constant
    term 744 removed.
    """
    length = order + 2  # window [-1, order + 1)
    sigma3 = [0] * length
    for d in range(1, length):
        cube = d * d * d
        for m in range(d, length, d):
            sigma3[m] += cube
    e4 = [240 * s for s in sigma3]
    e4[0] = 1
    sq = _int_convolve(e4, e4, length)
    cube = _int_convolve(sq, e4, length)
    # divide by prod (1 - q^n)^24, the cusp form with its q-prefactor removed
    for m in range(1, length):
        _apply_factor(cube, m, -24)
    if cube[0] != 1:
        raise DomainError("normalization failed in the j expansion")
    cube[1] -= 744
    return LaurentSeries(-1, cube, order + 1)


def _int_convolve(a: list[int], b: list[int], length: int) -> list[int]:
    out = [0] * length
    for i, x in enumerate(a):
        if x:
            top = length - i
            for j in range(min(len(b), top)):
                y = b[j]
                if y:
                    out[i + j] += x * y
    return out
