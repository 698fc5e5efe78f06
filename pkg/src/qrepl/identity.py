"""Two-variable product identities.

Both product checks compare against the same target: the difference
t(p) - t(q) as a bivariate window.  The first builds the left side from Faber
expansions directly; the second rebuilds it from extracted replicate
families, which exercises the whole extraction pipeline.  A third check
verifies the scalar roundtrip between grid combinations and families without
any series work.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from .bivariate import BivariateSeries, bivariate_compare, bivariate_exp
from .faber import CoefficientGrid, faber_upto
from .replication import (
    PsiCharacter,
    ReplicateFamily,
    extract_replicates,
    family_k_bounds,
)
from .report import Report, Violation
from .series import DomainError, LaurentSeries, PrecisionError


def dual_difference(t: LaurentSeries, p_max: int, q_max: int) -> BivariateSeries:
    """t(p) - t(q) on the window p in [-1, p_max], q in (-inf, q_max].

    Row -1 is the constant 1, row 0 is -t(q), and row n >= 1 is the constant
    coefficient of q^n in t.
    """
    if t.valuation != -1 or t.coeff(-1) != 1 or t.coeff(0) != 0:
        raise DomainError("expected a normalized series with zero constant term")
    if t.order < max(p_max, q_max) + 1:
        raise PrecisionError(
            f"insufficient precision: window needs order >= {max(p_max, q_max) + 1}"
        )
    width = q_max + 1
    rows = [LaurentSeries.one(width), t.truncate(width).scale(-1)]
    for n in range(1, p_max + 1):
        c = t.coeff(n)
        rows.append(
            LaurentSeries(0, [c] + [0] * (width - 1), width)
            if c != 0
            else LaurentSeries.zero(width, valuation=0)
        )
    return BivariateSeries(-1, rows)


def _mismatch_report(
    check_id: str,
    parameters: dict,
    lhs: BivariateSeries,
    rhs: BivariateSeries,
    p_max: int,
    q_max: int,
    level: int | None = None,
) -> Report:
    mism = bivariate_compare(lhs, rhs, (-1, p_max), (-q_max, q_max))
    violations = [
        Violation(indices={"p_exp": pe, "q_exp": qe}, lhs=a, rhs=b)
        for pe, qe, a, b in mism
    ]
    return Report(
        check_id=check_id,
        level=level,
        parameters=parameters,
        violations=violations,
    )


def faber_generating_check(
    t: LaurentSeries,
    p_max: int,
    q_max: int,
    function_id: str = "",
) -> Report:
    """p^-1 exp(-sum_n X_n(q) p^n) must reproduce t(p) - t(q).

    Compared on the box p in [-1, p_max], q in [-q_max, q_max]; requires
    order(t) >= p_max + q_max + 1.
    """
    if p_max < 0 or q_max < 0:
        raise DomainError("window bounds must be nonnegative")
    pp = p_max + 1
    if t.order < p_max + q_max + 1:
        raise PrecisionError(
            f"insufficient precision: window needs order >= {p_max + q_max + 1}"
        )
    q_acc = q_max + pp
    fabers = faber_upto(t, pp, q_cap=q_acc + 1)
    arg = BivariateSeries(
        1, [fabers[n].expansion.scale(-1) for n in range(1, pp + 1)]
    )
    lhs = bivariate_exp(arg, q_cap=q_acc + 1).p_shift(-1)
    rhs = dual_difference(t, p_max, q_max)
    params = {"p_order": p_max, "q_order": q_max}
    if function_id:
        params["function"] = function_id
    return _mismatch_report("product1", params, lhs, rhs, p_max, q_max)


def _series_from_grid_column(grid: CoefficientGrid, order: int) -> LaurentSeries:
    """Rebuild the underlying expansion from column 1 of the grid."""
    if grid.m_max < order:
        raise PrecisionError(
            f"insufficient grid: rebuilding the expansion needs rows to {order}"
        )
    coeffs = [1, 0] + [grid.value(m, 1) for m in range(1, order + 1)]
    return LaurentSeries(-1, coeffs, order + 1)


def product_family_sizes(p_max: int, q_max: int):
    """(s_max, per-s k bound) covering the accumulation window."""
    pp = p_max + 1
    q_acc = q_max + pp
    return pp, lambda s: (q_acc // s) * (pp // s)


def super_product_check(
    grid_t: CoefficientGrid,
    grid_t0: CoefficientGrid,
    psi: PsiCharacter,
    family_t: ReplicateFamily,
    family_t0: ReplicateFamily,
    p_max: int,
    q_max: int,
) -> Report:
    """Replicate families assembled into a product must give t(p) - t(q).

    The exponent of the double product collects, for each order s, the term
    -1/s at (p^s, q^-s) and -(psi(sm, sn) F^(s)_(mn) + h^(s)_(mn)) / (2s) at
    (p^(sn), q^(sm)); exponentiating once and shifting by p^-1 must match the
    dual difference on p in [-1, p_max], q in [-q_max, q_max].
    """
    if p_max < 0 or q_max < 0:
        raise DomainError("window bounds must be nonnegative")
    pp = p_max + 1
    q_acc = q_max + pp
    width = q_acc + 1
    for fam in (family_t, family_t0):
        if fam.s_max < pp:
            raise PrecisionError("insufficient family coverage: need all orders to p_max + 1")
        for s in range(1, pp + 1):
            need = (q_acc // s) * (pp // s)
            if fam.k_max(s) < need:
                raise PrecisionError(
                    f"insufficient family coverage: order {s} needs k to {need}"
                )
    rows = []
    for _ in range(1, pp + 1):
        rows.append({})
    for s in range(1, pp + 1):
        rows[s - 1][-s] = rows[s - 1].get(-s, 0) - Fraction(1, s)
        for n in range(1, pp // s + 1):
            row = rows[s * n - 1]
            for m in range(1, q_acc // s + 1):
                k = m * n
                val = psi.pair(s * m, s * n) * family_t.get(s, k) + family_t0.get(s, k)
                if val:
                    c = -(Fraction(val) / (2 * s))
                    row[s * m] = row.get(s * m, 0) + c
    series_rows = [
        LaurentSeries.from_items(row.items(), width) for row in rows
    ]
    arg = BivariateSeries(1, series_rows)
    lhs = bivariate_exp(arg, q_cap=width).p_shift(-1)
    t = _series_from_grid_column(grid_t, max(p_max, q_max))
    rhs = dual_difference(t, p_max, q_max)
    return _mismatch_report(
        "product2c",
        {
            "function_pair": f"{grid_t.function_id},{grid_t0.function_id}",
            "p_order": p_max,
            "q_order": q_max,
        },
        lhs,
        rhs,
        p_max,
        q_max,
        level=psi.level,
    )


def condition_b_check(
    grid_t: CoefficientGrid,
    grid_t0: CoefficientGrid,
    psi: PsiCharacter,
    family_t: ReplicateFamily,
    bound: int,
) -> Report:
    """Roundtrip: the direct combination at (m, n) must equal the weighted
    sum of family entries, sum over s | gcd(m, n) of (1/s) F^(s)_(mn/s^2)."""
    if bound < 1:
        raise DomainError("bound must be a positive integer")
    for g in (grid_t, grid_t0):
        if g.m_max < bound or g.n_max < bound:
            raise PrecisionError(f"insufficient grid: bound {bound} needs a full table")
    if family_t.s_max < isqrt(bound):
        raise PrecisionError(
            f"insufficient family coverage: need orders to {isqrt(bound)}"
        )
    violations = []
    for m in range(1, bound + 1):
        for n in range(1, bound // m + 1):
            direct = psi.pair(m, n) * (2 * grid_t.value(m, n) - grid_t0.value(m, n))
            acc = Fraction(0)
            g = gcd(m, n)
            for s in range(1, g + 1):
                if g % s == 0:
                    acc += Fraction(family_t.get(s, (m * n) // (s * s))) / s
            if direct != acc:
                violations.append(
                    Violation(indices={"m": m, "n": n}, lhs=direct, rhs=acc)
                )
    return Report(
        check_id="product2b",
        level=psi.level,
        parameters={
            "function_pair": f"{grid_t.function_id},{grid_t0.function_id}",
            "bound": bound,
        },
        violations=violations,
    )


def build_product_families(
    grid_t: CoefficientGrid,
    grid_t0: CoefficientGrid,
    psi: PsiCharacter,
    s_max: int,
    k_bound,
) -> tuple[ReplicateFamily, ReplicateFamily]:
    """The psi-weighted family and its base companion, sized identically."""
    fam_t = extract_replicates((grid_t, grid_t0, psi), s_max, k_bound)
    fam_t0 = extract_replicates(grid_t0, s_max, k_bound)
    return fam_t, fam_t0


def condition_b_family(
    grid_t: CoefficientGrid,
    grid_t0: CoefficientGrid,
    psi: PsiCharacter,
    bound: int,
) -> ReplicateFamily:
    return extract_replicates(
        (grid_t, grid_t0, psi), isqrt(bound), family_k_bounds(bound)
    )
