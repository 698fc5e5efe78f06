"""Truncated series in two variables p and q.

A :class:`BivariateSeries` is a finite stack of q-windows, one
:class:`~qrepl.series.LaurentSeries` per p-exponent.  The p direction carries
the same window semantics as the q direction: ``p_valuation`` is a proven
support bound (rows below it are exactly zero) and ``p_order`` is an exclusive
truncation bound.  Each row tracks its own q-window, so mixed-precision
products stay honest in both variables at once.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .series import DomainError, LaurentSeries, PrecisionError, series_mul


class BivariateSeries:
    """Rows of q-series indexed by consecutive p-exponents."""

    __slots__ = ("_pval", "_porder", "_rows")

    def __init__(self, p_valuation: int, rows: Sequence[LaurentSeries]):
        if not rows:
            raise ValueError("at least one row is required")
        object.__setattr__(self, "_pval", p_valuation)
        object.__setattr__(self, "_porder", p_valuation + len(rows))
        object.__setattr__(self, "_rows", tuple(rows))

    def __setattr__(self, name, value):
        raise AttributeError("BivariateSeries is immutable")

    @property
    def p_valuation(self) -> int:
        return self._pval

    @property
    def p_order(self) -> int:
        return self._porder

    @property
    def q_window(self) -> tuple[int, int]:
        """Bounding q-window over all rows: (min valuation, max order)."""
        return (
            min(r.valuation for r in self._rows),
            max(r.order for r in self._rows),
        )

    def row(self, p_exponent: int) -> LaurentSeries:
        """The q-series multiplying p**p_exponent."""
        if p_exponent >= self._porder:
            raise PrecisionError(
                f"insufficient precision: p-exponent {p_exponent} is outside "
                f"the window [{self._pval}, {self._porder})"
            )
        if p_exponent < self._pval:
            lo, hi = self.q_window
            return LaurentSeries.zero(hi, valuation=min(lo, hi - 1))
        return self._rows[p_exponent - self._pval]

    def coeff(self, p_exponent: int, q_exponent: int):
        return self.row(p_exponent).coeff(q_exponent)

    def __repr__(self) -> str:
        return (
            f"BivariateSeries(p window [{self._pval}, {self._porder}), "
            f"q window {self.q_window})"
        )

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "BivariateSeries") -> "BivariateSeries":
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        pval = min(self._pval, other._pval)
        porder = min(self._porder, other._porder)
        if porder <= pval:
            raise PrecisionError("insufficient precision: empty p-window in sum")
        rows = []
        for k in range(pval, porder):
            a = self._row_or_zero(k, other)
            b = other._row_or_zero(k, self)
            rows.append(a + b)
        return BivariateSeries(pval, rows)

    def _row_or_zero(self, k: int, partner: "BivariateSeries") -> LaurentSeries:
        # below our p-valuation the row is exactly zero; use the partner's
        # q-window there so the sum keeps its full precision
        if k < self._pval:
            r = partner.row(k)
            return LaurentSeries.zero(r.order, valuation=min(r.valuation, r.order - 1))
        return self.row(k)

    def __sub__(self, other: "BivariateSeries") -> "BivariateSeries":
        return self + other.scale(-1)

    def scale(self, scalar) -> "BivariateSeries":
        return BivariateSeries(self._pval, [r.scale(scalar) for r in self._rows])

    def p_shift(self, delta: int) -> "BivariateSeries":
        """Multiply by p**delta."""
        return BivariateSeries(self._pval + delta, self._rows)

    def mul(self, other: "BivariateSeries", q_cap: int | None = None) -> "BivariateSeries":
        """Product with the min-rule truncation in both variables."""
        if not isinstance(other, BivariateSeries):
            raise TypeError("expected a BivariateSeries")
        pval = self._pval + other._pval
        porder = min(self._porder + other._pval, other._porder + self._pval)
        if porder <= pval:
            raise PrecisionError("insufficient precision: empty p-window in product")
        rows = []
        for k in range(pval, porder):
            acc = None
            for i in range(self._pval, self._porder):
                j = k - i
                if j < other._pval or j >= other._porder:
                    continue
                term = series_mul(self.row(i), other.row(j), max_order=q_cap)
                acc = term if acc is None else acc + term
            # the p-window min rule guarantees at least one contributing pair
            rows.append(acc)
        return BivariateSeries(pval, rows)


def bivariate_one(p_order: int, q_order: int) -> BivariateSeries:
    """The constant 1 on the window p in [0, p_order), q in [0, q_order)."""
    rows = [LaurentSeries.one(q_order)]
    for _ in range(1, p_order):
        rows.append(LaurentSeries.zero(q_order, valuation=0))
    return BivariateSeries(0, rows)


def bivariate_exp(f: BivariateSeries, q_cap: int | None = None) -> BivariateSeries:
    """Exponential of a bivariate series with p-valuation >= 1.

    Uses the derivative recurrence k*E_k = sum_j j*f_j*E_{k-j}, so only the
    argument's rows enter the window bookkeeping.  Row 0 is exactly 1, hence
    its q-order is set high enough never to bind.
    """
    if f._pval < 1:
        raise DomainError("exp of non-positive p-valuation series")
    porder = f._porder
    q_lo = min(r.valuation for r in f._rows)
    q_hi = max(r.order for r in f._rows)
    big = q_hi + porder * max(0, -q_lo) + 1
    rows = [LaurentSeries.one(big if q_cap is None else max(big, q_cap + 1))]
    for k in range(1, porder):
        acc = None
        for j in range(1, k + 1):
            if j < f._pval:
                continue
            term = series_mul(f.row(j), rows[k - j], max_order=q_cap)
            term = term.scale(Fraction(j, k))
            acc = term if acc is None else acc + term
        if acc is None:
            acc = LaurentSeries.zero(rows[0].order, valuation=0)
        rows.append(acc)
    return BivariateSeries(0, rows)


def bivariate_compare(
    lhs: BivariateSeries,
    rhs: BivariateSeries,
    p_range: tuple[int, int],
    q_range: tuple[int, int],
) -> list[tuple[int, int, object, object]]:
    """Coefficient mismatches on the inclusive box p_range x q_range.

    Raises :class:`PrecisionError` if either side does not cover the box.
    """
    out = []
    for pe in range(p_range[0], p_range[1] + 1):
        lrow = lhs.row(pe)
        rrow = rhs.row(pe)
        for qe in range(q_range[0], q_range[1] + 1):
            a = lrow.coeff(qe)
            b = rrow.coeff(qe)
            if a != b:
                out.append((pe, qe, a, b))
    return out
