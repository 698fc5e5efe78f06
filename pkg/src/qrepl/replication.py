"""Pair characters, replicability checks, and replicate extraction.

The grid checks all follow one pattern: group index pairs (a, b) with
a*b <= bound by the invariant (a*b, gcd(a, b)), then demand that a chosen
combination of grid values is constant on each class.  The pair character
psi enters the combination for the Gamma_1 families; it is multiplicative
data determined by the level, computed here by residue case analysis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Callable, Mapping, Union

from .catalog import FunctionCatalog, catalog_expand
from .faber import CoefficientGrid, faber_upto, grid_build
from .report import Report, Violation
from .series import DomainError, LaurentSeries, PrecisionError, series_u

PAIR_RULE_LEVELS = (5, 8, 10, 12)
SLICE_PRIMES = {(5, 5), (8, 2), (10, 5), (12, 2), (12, 3)}


def mobius(n: int) -> int:
    if n < 1:
        raise DomainError("mobius is defined on positive integers")
    if n == 1:
        return 1
    res = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            res = -res
        p += 1
    if n > 1:
        res = -res
    return res


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def psi_base(level: int, b: int) -> int:
    """+1 when b is congruent to +-1 mod the level, else -1."""
    if level < 1:
        raise DomainError("level must be a positive integer")
    if gcd(b, level) != 1:
        raise DomainError(f"{b} is not coprime to the level {level}")
    r = b % level
    return 1 if r == 1 or r == level - 1 else -1


def _strip_common(a: int, b: int, primes) -> tuple[int, int]:
    for p in primes:
        while a % p == 0 and b % p == 0:
            a //= p
            b //= p
    return a, b


def _two_part(a: int) -> tuple[int, int]:
    k = 0
    while a % 2 == 0:
        a //= 2
        k += 1
    return k, a


def psi_pair(level: int, a: int, b: int) -> int:
    """Pair character on positive index pairs, for levels 5, 8, 10, 12."""
    if a < 1 or b < 1:
        raise DomainError("pair character needs positive indices")
    if level in (5, 8):
        p = 5 if level == 5 else 2
        a, b = _strip_common(a, b, (p,))
        good = (1, level - 1)
        return 1 if (a % level in good or b % level in good) else -1
    if level == 12:
        a, b = _strip_common(a, b, (2, 3))
        if a % 2 == 1 and b % 2 == 1:
            return 1 if (a % 12 in (1, 11) or b % 12 in (1, 11)) else -1
        if a % 2 == 1:
            a, b = b, a
        k, n = _two_part(a)
        if b % 3 != 0:
            return psi_base(12, b)
        sign_b = 1 if b % 4 == 3 else -1
        sign_n = 1 if n % 4 == 1 else -1
        return (-1) ** k * sign_b * sign_n * psi_base(12, n)
    if level == 10:
        a, b = _strip_common(a, b, (2, 5))
        if a % 2 == 1 and b % 2 == 1:
            return 1 if (a % 10 in (1, 9) or b % 10 in (1, 9)) else -1
        if a % 2 == 1:
            a, b = b, a
        k, r = _two_part(a)
        if b % 5 != 0:
            return psi_base(10, b)
        return (-1) ** k * psi_base(10, r)
    raise DomainError(f"no pair character rule at level {level}")


@dataclass(frozen=True)
class PsiCharacter:
    """Level-tagged pair character; the trivial variant is constant 1."""

    level: int
    trivial: bool = False

    def base(self, b: int) -> int:
        return 1 if self.trivial else psi_base(self.level, b)

    def pair(self, a: int, b: int) -> int:
        return 1 if self.trivial else psi_pair(self.level, a, b)


def psi_character(level: int) -> PsiCharacter:
    if level not in PAIR_RULE_LEVELS:
        raise DomainError(f"no pair character rule at level {level}")
    return PsiCharacter(level)


def trivial_psi(level: int) -> PsiCharacter:
    return PsiCharacter(level, trivial=True)


# -- replicate families ------------------------------------------------------

GridSource = Union[CoefficientGrid, tuple]


def _source_fn(source: GridSource) -> tuple[str, Callable[[int, int], object]]:
    if isinstance(source, CoefficientGrid):
        return source.function_id, source.value
    try:
        grid_t, grid_t0, psi = source
    except (TypeError, ValueError):
        raise DomainError(
            "source must be a CoefficientGrid or a (grid, grid, psi) triple"
        ) from None

    def fn(m: int, n: int):
        return psi.pair(m, n) * (2 * grid_t.value(m, n) - grid_t0.value(m, n))

    return grid_t.function_id, fn


@dataclass(frozen=True)
class ReplicateFamily:
    """Extracted coefficient sequences, one per order s.

    values[s] lists the entries at k = 1, 2, ...; get() extends the indexing
    with the fixed conventions 1 at k = -1 and 0 at k = 0 and below -1.
    integral[s] records whether every stored entry is an integer.
    """

    label: str
    s_max: int
    values: Mapping[int, tuple]
    integral: Mapping[int, bool]

    def k_max(self, s: int) -> int:
        return len(self._seq(s))

    def _seq(self, s: int) -> tuple:
        if not 1 <= s <= self.s_max:
            raise PrecisionError(f"insufficient family: order {s} not extracted")
        return self.values[s]

    def get(self, s: int, k: int):
        seq = self._seq(s)
        if k >= 1:
            if k > len(seq):
                raise PrecisionError(
                    f"insufficient family: order {s} stops at k = {len(seq)}"
                )
            return seq[k - 1]
        if k == -1:
            return 1
        return 0


def _k_bound(k_max, s: int) -> int:
    if isinstance(k_max, int):
        return k_max
    if isinstance(k_max, Mapping):
        return k_max.get(s, 0)
    return k_max(s)


def extract_replicates(source: GridSource, s_max: int, k_max) -> ReplicateFamily:
    """Moebius extraction of the order-s sequences from grid data.

    The entry at (s, k) is s * sum over d | s of mu(d) * F(s/d, s*d*k), where
    F is the grid combination described by the source.  k_max may be a single
    bound or a per-s bound (mapping or callable).
    """
    if s_max < 1:
        raise DomainError("s_max must be a positive integer")
    label, fn = _source_fn(source)
    values = {}
    integral = {}
    for s in range(1, s_max + 1):
        kb = _k_bound(k_max, s)
        seq = []
        for k in range(1, kb + 1):
            acc = 0
            for d in _divisors(s):
                mu = mobius(d)
                if mu:
                    acc += mu * fn(s // d, s * d * k)
            seq.append(_norm(s * acc))
        values[s] = tuple(seq)
        integral[s] = all(not isinstance(v, Fraction) for v in seq)
    return ReplicateFamily(label, s_max, values, integral)


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


# -- class-constancy checks --------------------------------------------------

def _class_violations(value_fn, bound: int) -> list[Violation]:
    classes: dict[tuple[int, int], tuple] = {}
    out = []
    for a in range(1, bound + 1):
        for b in range(1, bound // a + 1):
            key = (a * b, gcd(a, b))
            v = value_fn(a, b)
            ref = classes.get(key)
            if ref is None:
                classes[key] = (a, b, v)
            elif v != ref[2]:
                out.append(
                    Violation(
                        indices={"a": ref[0], "b": ref[1], "c": a, "d": b},
                        lhs=ref[2],
                        rhs=v,
                    )
                )
    return out


def replicable_check(grid: CoefficientGrid, bound: int) -> Report:
    """Grid values must be constant on classes of (a*b, gcd(a, b))."""
    if bound < 1:
        raise DomainError("bound must be a positive integer")
    if grid.m_max < bound or grid.n_max < bound:
        raise PrecisionError(
            f"insufficient grid: bound {bound} needs at least a {bound}x{bound} table"
        )
    violations = _class_violations(grid.value, bound)
    return Report(
        check_id="replicable",
        parameters={"function": grid.function_id, "bound": bound},
        violations=violations,
    )


def super_check(
    grid_t: CoefficientGrid,
    grid_t0: CoefficientGrid,
    psi: PsiCharacter,
    bound: int,
) -> Report:
    """psi(a, b) * (2*H - h) must be constant on classes of (a*b, gcd)."""
    if bound < 1:
        raise DomainError("bound must be a positive integer")
    for g in (grid_t, grid_t0):
        if g.m_max < bound or g.n_max < bound:
            raise PrecisionError(
                f"insufficient grid: bound {bound} needs at least a {bound}x{bound} table"
            )

    def fn(a, b):
        return psi.pair(a, b) * (2 * grid_t.value(a, b) - grid_t0.value(a, b))

    return Report(
        check_id="super",
        level=psi.level,
        parameters={
            "function_pair": f"{grid_t.function_id},{grid_t0.function_id}",
            "bound": bound,
            "psi": "trivial" if psi.trivial else "standard",
        },
        violations=_class_violations(fn, bound),
    )


# -- slicing lemmas ----------------------------------------------------------

def _sliced_difference(
    xt: LaurentSeries, xt0: LaurentSeries, p: int
) -> LaurentSeries:
    return series_u(xt, p).scale(2) - series_u(xt0, p)


def lemma_aa_check(
    level: int,
    p: int,
    n_max: int,
    order: int,
    catalog: FunctionCatalog | None = None,
) -> Report:
    """Slicing the degree p*n Faber expansions reproduces degree n, scaled.

    Checks 2*X_pn(t)|U_p - X_pn(t0)|U_p = (1/p) * (2*X_n(t) - X_n(t0)) for
    n = 1..n_max through q**order.
    """
    if (level, p) not in SLICE_PRIMES:
        raise DomainError(f"no slicing identity at level {level} for prime {p}")
    if n_max < 1 or order < 1:
        raise DomainError("n_max and order must be positive")
    need = p * (order + n_max + 1)
    t = catalog_expand(f"t1_{level}", need, catalog=catalog)
    t0 = catalog_expand(f"t0_{level}", need, catalog=catalog)
    xt = faber_upto(t, p * n_max)
    xt0 = faber_upto(t0, p * n_max)
    violations = []
    for n in range(1, n_max + 1):
        lhs = _sliced_difference(xt[p * n].expansion, xt0[p * n].expansion, p)
        rhs = (
            xt[n].expansion.scale(2) - xt0[n].expansion
        ).scale(Fraction(1, p))
        if lhs.order <= order or rhs.order <= order:
            raise PrecisionError("insufficient precision for the requested order")
        for e in range(min(lhs.valuation, rhs.valuation), order + 1):
            a = lhs.coeff(e)
            b = rhs.coeff(e)
            if a != b:
                violations.append(
                    Violation(indices={"n": n, "exponent": e}, lhs=a, rhs=b)
                )
    return Report(
        check_id="lemma-aa",
        level=level,
        parameters={"p": p, "n_max": n_max, "order": order},
        violations=violations,
    )


def lemma_ii_check(
    n_max: int,
    order: int,
    catalog: FunctionCatalog | None = None,
) -> Report:
    """Level-10 slicing at 2 mixes in the level-5 pair with weight 1/4.

    Checks 2*X_2n(t)|U_2 - X_2n(t0)|U_2 = (1/4)*(2*X_n(s) - X_n(s0))
    + (1/4)*(2*X_n(t) - X_n(t0)), with (s, s0) the doubled-index companions.
    """
    if n_max < 1 or order < 1:
        raise DomainError("n_max and order must be positive")
    need = 2 * (order + n_max + 1)
    t = catalog_expand("t1_10", need, catalog=catalog)
    t0 = catalog_expand("t0_10", need, catalog=catalog)
    s = catalog_expand("t1_5_as_t2_of_10", need, catalog=catalog)
    s0 = catalog_expand("t0_5_as_t2_of_10", need, catalog=catalog)
    xt = faber_upto(t, 2 * n_max)
    xt0 = faber_upto(t0, 2 * n_max)
    xs = faber_upto(s, n_max)
    xs0 = faber_upto(s0, n_max)
    quarter = Fraction(1, 4)
    violations = []
    for n in range(1, n_max + 1):
        lhs = _sliced_difference(xt[2 * n].expansion, xt0[2 * n].expansion, 2)
        rhs = (
            (xs[n].expansion.scale(2) - xs0[n].expansion)
            + (xt[n].expansion.scale(2) - xt0[n].expansion)
        ).scale(quarter)
        if lhs.order <= order or rhs.order <= order:
            raise PrecisionError("insufficient precision for the requested order")
        for e in range(min(lhs.valuation, rhs.valuation), order + 1):
            a = lhs.coeff(e)
            b = rhs.coeff(e)
            if a != b:
                violations.append(
                    Violation(indices={"n": n, "exponent": e}, lhs=a, rhs=b)
                )
    return Report(
        check_id="lemma-ii",
        level=10,
        parameters={"n_max": n_max, "order": order},
        violations=violations,
    )


def lemma_ff_check(
    m_max: int,
    r_max: int,
    k_max: int,
    catalog: FunctionCatalog | None = None,
) -> Report:
    """Level-12 grid symmetry under moving powers of 2 across the indices.

    For odd m, r: chi(m) * H[2^k m, r] = (-1)^k * eps(r) * H[m, 2^k r], where
    chi(m) is +1 for m = 1 mod 4 and eps(r) is +1 for r = 3 mod 4.
    """
    if m_max < 1 or r_max < 1 or k_max < 1:
        raise DomainError("bounds must be positive")
    shift = 2 ** k_max
    tall = grid_build("t1_12", shift * m_max, r_max, catalog=catalog)
    wide = grid_build("t1_12", m_max, shift * r_max, catalog=catalog)
    violations = []
    for m in range(1, m_max + 1, 2):
        chi_m = 1 if m % 4 == 1 else -1
        for r in range(1, r_max + 1, 2):
            eps_r = 1 if r % 4 == 3 else -1
            for k in range(1, k_max + 1):
                lhs = chi_m * tall.value((2 ** k) * m, r)
                rhs = (-1) ** k * eps_r * wide.value(m, (2 ** k) * r)
                if lhs != rhs:
                    violations.append(
                        Violation(indices={"m": m, "r": r, "k": k}, lhs=lhs, rhs=rhs)
                    )
    return Report(
        check_id="lemma-ff",
        level=12,
        parameters={"m_max": m_max, "r_max": r_max, "k_max": k_max},
        violations=violations,
    )


def lemma_jj_check(
    r_max: int,
    k_max: int,
    order: int,
    catalog: FunctionCatalog | None = None,
) -> Report:
    """Level-10 combination symmetry under moving powers of 2.

    For odd m <= order and odd r <= r_max:
    2*H[2^k m, r] - h[2^k m, r] = (-1)^k * (2*H[m, 2^k r] - h[m, 2^k r]).
    """
    if r_max < 1 or k_max < 1 or order < 1:
        raise DomainError("bounds must be positive")
    shift = 2 ** k_max
    tall_t = grid_build("t1_10", shift * order, r_max, catalog=catalog)
    tall_t0 = grid_build("t0_10", shift * order, r_max, catalog=catalog)
    wide_t = grid_build("t1_10", order, shift * r_max, catalog=catalog)
    wide_t0 = grid_build("t0_10", order, shift * r_max, catalog=catalog)
    violations = []
    for m in range(1, order + 1, 2):
        for r in range(1, r_max + 1, 2):
            for k in range(1, k_max + 1):
                mm = (2 ** k) * m
                rr = (2 ** k) * r
                lhs = 2 * tall_t.value(mm, r) - tall_t0.value(mm, r)
                rhs = (-1) ** k * (2 * wide_t.value(m, rr) - wide_t0.value(m, rr))
                if lhs != rhs:
                    violations.append(
                        Violation(indices={"m": m, "r": r, "k": k}, lhs=lhs, rhs=rhs)
                    )
    return Report(
        check_id="lemma-jj",
        level=10,
        parameters={"r_max": r_max, "k_max": k_max, "order": order},
        violations=violations,
    )


def koike_vanishing_check(
    r_max: int,
    k_max: int,
    m_max: int,
    catalog: FunctionCatalog | None = None,
) -> Report:
    """Level-12 base grid vanishing: h[2^k m, r] = 0 for odd r and k >= 1."""
    if r_max < 1 or k_max < 1 or m_max < 1:
        raise DomainError("bounds must be positive")
    shift = 2 ** k_max
    grid = grid_build("t0_12", shift * m_max, r_max, catalog=catalog)
    violations = []
    for m in range(1, m_max + 1):
        for r in range(1, r_max + 1, 2):
            for k in range(1, k_max + 1):
                v = grid.value((2 ** k) * m, r)
                if v != 0:
                    violations.append(
                        Violation(indices={"m": m, "r": r, "k": k}, lhs=v, rhs=0)
                    )
    return Report(
        check_id="koike-vanishing",
        level=12,
        parameters={"r_max": r_max, "k_max": k_max, "m_max": m_max},
        violations=violations,
    )


def family_k_bounds(bound: int):
    """Per-order k ranges needed to cover all products m*n <= bound."""
    return lambda s: bound // (s * s)


def condition_b_sizes(bound: int) -> tuple[int, int]:
    """(s_max, grid bound) pair for the roundtrip check at the given bound."""
    return isqrt(bound), bound
