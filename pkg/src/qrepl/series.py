"""Truncated Laurent series over the rationals.

A :class:`LaurentSeries` stores finitely many coefficients together with two
window bounds:

* ``valuation`` is a proven lower bound on the support: querying any exponent
  below it returns an exact zero.
* ``order`` is an exclusive truncation bound: coefficients at exponents
  ``>= order`` were never computed, and querying one raises
  :class:`PrecisionError` rather than silently returning zero.

Arithmetic tracks the tightest truncation order implied by its inputs, so a
result never claims more precision than it actually has.  Coefficients are
exact rationals, stored as ``int`` when the denominator is 1 and as
:class:`fractions.Fraction` otherwise.  Instances are immutable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Sequence, Union

Scalar = Union[int, Fraction]

#: Twist multiplier tables, indexed by exponent mod the table length.
CHI_FOUR = (0, 1, 0, -1)
CHI_PARITY = (0, 1)
SIGN_PARITY = (1, -1)


class PrecisionError(ArithmeticError):
    """A coefficient beyond the known truncation window was requested."""


class DomainError(ValueError):
    """An operand lies outside the domain of the requested operation."""


def _normalize_scalar(x) -> Scalar:
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class LaurentSeries:
    """Finite window of a Laurent series in one variable q."""

    __slots__ = ("_val", "_order", "_coeffs", "_integral")

    def __init__(self, valuation: int, coeffs: Sequence, order: int | None = None):
        coeffs = [_normalize_scalar(c) for c in coeffs]
        if order is None:
            order = valuation + len(coeffs)
        if order - valuation != len(coeffs):
            raise ValueError("coefficient count does not match window size")
        if order <= valuation:
            raise ValueError("order must exceed valuation")
        # canonical form: raise the valuation past leading zeros (they stay
        # recoverable through the below-valuation rule), never touch trailing
        # zeros (dropping them would shrink the known window)
        lead = 0
        while lead < len(coeffs) - 1 and coeffs[lead] == 0:
            lead += 1
        if lead:
            valuation += lead
            coeffs = coeffs[lead:]
        object.__setattr__(self, "_val", valuation)
        object.__setattr__(self, "_order", order)
        object.__setattr__(self, "_coeffs", tuple(coeffs))
        object.__setattr__(self, "_integral", all(isinstance(c, int) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int, valuation: int | None = None) -> "LaurentSeries":
        """Series known to vanish at every exponent below ``order``."""
        if valuation is None:
            valuation = order - 1
        return cls(valuation, [0] * (order - valuation), order)

    @classmethod
    def one(cls, order: int) -> "LaurentSeries":
        """The constant 1, known through exponent ``order - 1``."""
        if order <= 0:
            raise ValueError("order must be positive for the constant series")
        return cls(0, [1] + [0] * (order - 1), order)

    @classmethod
    def monomial(cls, exponent: int, coeff=1, order: int | None = None) -> "LaurentSeries":
        if order is None:
            order = exponent + 1
        if order <= exponent:
            raise ValueError("order must exceed the monomial exponent")
        return cls(exponent, [coeff] + [0] * (order - exponent - 1), order)

    @classmethod
    def from_items(cls, items, order: int) -> "LaurentSeries":
        """Build from (exponent, coefficient) pairs; absent exponents are zero."""
        items = list(items)
        if not items:
            return cls.zero(order)
        lo = min(e for e, _ in items)
        if any(e >= order for e, _ in items):
            raise ValueError("item exponent at or beyond the declared order")
        coeffs = [Fraction(0)] * (order - lo)
        for e, c in items:
            coeffs[e - lo] += Fraction(c)
        return cls(lo, coeffs, order)

    # -- window and access -------------------------------------------------

    @property
    def valuation(self) -> int:
        return self._val

    @property
    def order(self) -> int:
        return self._order

    def coeff(self, exponent: int) -> Scalar:
        """Exact coefficient of q**exponent.

        Returns 0 below the valuation; raises :class:`PrecisionError` at or
        beyond the truncation order.
        """
        if exponent >= self._order:
            raise PrecisionError(
                f"insufficient precision: exponent {exponent} is outside the "
                f"window [{self._val}, {self._order})"
            )
        if exponent < self._val:
            return 0
        return self._coeffs[exponent - self._val]

    def __getitem__(self, exponent: int) -> Scalar:
        return self.coeff(exponent)

    def items(self) -> Iterator[tuple[int, Scalar]]:
        """Nonzero (exponent, coefficient) pairs inside the window."""
        for i, c in enumerate(self._coeffs):
            if c != 0:
                yield self._val + i, c

    def is_zero(self) -> bool:
        return all(c == 0 for c in self._coeffs)

    def is_integral(self) -> bool:
        """True when every stored coefficient is an integer."""
        return self._integral

    def truncate(self, order: int) -> "LaurentSeries":
        """Restrict the window to exponents below ``order``."""
        if order > self._order:
            raise PrecisionError(
                f"insufficient precision: cannot extend order {self._order} to {order}"
            )
        if order == self._order:
            return self
        if order <= self._val:
            return LaurentSeries.zero(order)
        return LaurentSeries(self._val, self._coeffs[: order - self._val], order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self._val == other._val
            and self._order == other._order
            and self._coeffs == other._coeffs
        )

    def __hash__(self):
        return hash((self._val, self._order, self._coeffs))

    def agrees_with(self, other: "LaurentSeries", lo: int, hi: int) -> bool:
        """Compare coefficients on the inclusive exponent range [lo, hi]."""
        return all(self.coeff(e) == other.coeff(e) for e in range(lo, hi + 1))

    def __repr__(self) -> str:
        head = ", ".join(f"q^{e}: {c}" for e, c in list(self.items())[:6])
        return f"LaurentSeries([{self._val}, {self._order}), {{{head}}})"

    # -- linear operations ---------------------------------------------------

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        val = min(self._val, other._val)
        order = min(self._order, other._order)
        if order <= val:
            raise PrecisionError("insufficient precision: empty window in sum")
        coeffs = [self.coeff(e) + other.coeff(e) for e in range(val, order)]
        return LaurentSeries(val, coeffs, order)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self._val, [-c for c in self._coeffs], self._order)

    def scale(self, scalar) -> "LaurentSeries":
        """Multiply every coefficient by an exact rational."""
        scalar = _normalize_scalar(Fraction(scalar))
        return LaurentSeries(self._val, [scalar * c for c in self._coeffs], self._order)

    def shift(self, delta: int) -> "LaurentSeries":
        """Multiply by q**delta."""
        return LaurentSeries(self._val + delta, self._coeffs, self._order + delta)


def series_mul(f: LaurentSeries, g: LaurentSeries, max_order: int | None = None) -> LaurentSeries:
    """Product of two windows.

    The result valuation is the sum of the valuations; the result order is
    ``min(order(f) + val(g), order(g) + val(f))``, optionally capped further by
    ``max_order`` when the caller only needs a shorter window.
    """
    val = f._val + g._val
    order = min(f._order + g._val, g._order + f._val)
    if max_order is not None:
        order = min(order, max_order)
    if order <= val:
        # every exponent below the order is also below the proven valuation,
        # so the window content is exactly zero
        return LaurentSeries.zero(order)
    n = order - val
    out = [0] * n
    fa, ga = f._coeffs, g._coeffs
    # window arithmetic guarantees every in-range target index is covered
    for i, a in enumerate(fa):
        if a == 0 or i >= n:
            continue
        top = min(len(ga), n - i)
        for j in range(top):
            b = ga[j]
            if b != 0:
                out[i + j] += a * b
    return LaurentSeries(val, out, order)


def series_invert(f: LaurentSeries) -> LaurentSeries:
    """Multiplicative inverse 1/f.

    The leading coefficient must be nonzero; the inverse is known on the
    window [-valuation, order - 2*valuation).
    """
    if f.is_zero():
        raise DomainError("non-invertible leading term: series is zero on its window")
    v = f._val  # canonical form makes this the true valuation
    lead = f._coeffs[0]
    unit = f._coeffs
    n = f._order - v
    inv_lead = Fraction(1, 1) / lead
    out = [_normalize_scalar(inv_lead)] + [0] * (n - 1)
    for k in range(1, n):
        acc = 0
        for j in range(1, min(k, len(unit) - 1) + 1):
            c = unit[j]
            if c != 0:
                acc += c * out[k - j]
        if acc != 0:
            out[k] = _normalize_scalar(-acc * inv_lead)
    return LaurentSeries(-v, out, f._order - 2 * v)


def series_pow(f: LaurentSeries, k: int) -> LaurentSeries:
    """Integer power f**k (negative k inverts first)."""
    if k < 0:
        return series_pow(series_invert(f), -k)
    if k == 0:
        return LaurentSeries.one(f._order - f._val)
    result = None
    base = f
    while True:
        if k & 1:
            result = base if result is None else series_mul(result, base)
        k >>= 1
        if k == 0:
            return result
        base = series_mul(base, base)


def series_exp(f: LaurentSeries) -> LaurentSeries:
    """Exponential of a series with positive valuation."""
    if f._val < 1:
        raise DomainError("exp of non-positive-valuation series")
    order = f._order
    acc = LaurentSeries.one(order)
    term = acc
    k = 1
    while k * f._val < order:
        term = series_mul(term, f, max_order=order).scale(Fraction(1, k))
        acc = acc + term
        k += 1
    return acc


def series_log(f: LaurentSeries) -> LaurentSeries:
    """Logarithm of a series with constant term 1 and no pole part."""
    if f._val < 0 or f.coeff(0) != 1:
        raise DomainError("log requires unit constant term")
    order = f._order
    u = LaurentSeries.one(order) - f  # valuation >= 1
    if u.is_zero():
        return LaurentSeries.zero(order, valuation=0)
    acc = LaurentSeries.zero(order, valuation=0)
    term = LaurentSeries.one(order)
    k = 1
    while k * u._val < order:
        term = series_mul(term, u, max_order=order)
        acc = acc - term.scale(Fraction(1, k))
        k += 1
    return acc


def series_u(f: LaurentSeries, n: int) -> LaurentSeries:
    """Exponent-slicing operator: coefficient of q**m becomes coeff(f, n*m).

    The result window is [ceil(val/n), floor(order/n)).
    """
    if n < 1:
        raise DomainError("slicing modulus must be a positive integer")
    val = -((-f._val) // n)
    order = f._order // n
    if order <= val:
        raise PrecisionError("insufficient precision: empty window after slicing")
    coeffs = []
    for m in range(val, order):
        coeffs.append(f.coeff(n * m))
    return LaurentSeries(val, coeffs, order)


def series_substitute_power(f: LaurentSeries, k: int) -> LaurentSeries:
    """Substitute q -> q**k.

    Every exponent not divisible by k is exactly zero in the image, so the
    result window extends to k*order(f).
    """
    if k < 1:
        raise DomainError("substitution power must be a positive integer")
    val = k * f._val
    order = k * f._order
    coeffs = [0] * (order - val)
    for i, c in enumerate(f._coeffs):
        coeffs[k * i] = c
    return LaurentSeries(val, coeffs, order)


def series_twist(f: LaurentSeries, table: Sequence) -> LaurentSeries:
    """Multiply the coefficient of q**e by table[e mod len(table)]."""
    if not table:
        raise DomainError("twist table must be nonempty")
    mults = [_normalize_scalar(Fraction(x)) for x in table]
    period = len(mults)
    coeffs = [mults[(f._val + i) % period] * c for i, c in enumerate(f._coeffs)]
    return LaurentSeries(f._val, coeffs, f._order)


def ring_arithmetic(f: LaurentSeries, g: LaurentSeries, which: str) -> LaurentSeries:
    """Dispatch add / sub / mul by name."""
    if which == "add":
        return f + g
    if which == "sub":
        return f - g
    if which == "mul":
        return series_mul(f, g)
    raise DomainError(f"unknown ring operation {which!r}")
