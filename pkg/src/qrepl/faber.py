"""Faber polynomials and coefficient grids.

For a normalized series t = q^-1 + 0 + (tail), the degree-n Faber polynomial
is the unique monic-leading combination (1/n) t^n + lower powers whose
expansion is (1/n) q^-n + O(q).  The grid v[m][n] collects the coefficient of
q^m in each such expansion; it is the raw material for every replication and
product check in the package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .catalog import FunctionCatalog, catalog_expand
from .series import DomainError, LaurentSeries, PrecisionError, series_mul

GRID_FORMAT = "qrepl-grid"
GRID_VERSION = 1


def _check_normalized(t: LaurentSeries) -> None:
    if t.valuation != -1 or t.coeff(-1) != 1:
        raise DomainError("not a simple pole at infinity")
    if t.coeff(0) != 0:
        raise DomainError("expected a normalized series with zero constant term")


@dataclass(frozen=True)
class FaberPolynomial:
    """Degree, coefficients on the powers of t, and the resulting expansion."""

    n: int
    basis_coeffs: tuple
    expansion: LaurentSeries


def _powers(t: LaurentSeries, n_max: int, q_cap: int | None = None) -> list[LaurentSeries]:
    # the cap slides: each further factor of t (valuation -1) costs one
    # exponent of reach, so power k is kept through q_cap + (n_max - k) to
    # leave every power known through q_cap - 1 by the end of the ladder
    pw = [LaurentSeries.one(t.order - t.valuation)]
    for k in range(1, n_max + 1):
        cap = None if q_cap is None else q_cap + (n_max - k)
        pw.append(series_mul(pw[-1], t, max_order=cap))
    return pw


def _eliminate(pw: list[LaurentSeries], n: int) -> FaberPolynomial:
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1, n)
    acc = pw[n].scale(Fraction(1, n))
    for j in range(n - 1, -1, -1):
        a = acc.coeff(-j)
        if a != 0:
            acc = acc - pw[j].scale(a)
            coeffs[j] = -Fraction(a)
    return FaberPolynomial(n, tuple(coeffs), acc)


def faber(t: LaurentSeries, n: int) -> FaberPolynomial:
    """The degree-n Faber polynomial of a normalized series.

    Requires order(t) >= n so the pole block and constant term are resolvable.
    """
    if n < 1:
        raise DomainError("Faber degree must be a positive integer")
    _check_normalized(t)
    if t.order < n:
        raise PrecisionError(
            f"insufficient precision: Faber degree {n} needs order >= {n}, have {t.order}"
        )
    return _eliminate(_powers(t, n), n)


def faber_upto(t: LaurentSeries, n_max: int, q_cap: int | None = None) -> list[FaberPolynomial]:
    """Faber polynomials for degrees 1..n_max, sharing the power ladder.

    q_cap trims the working window; coefficients of q^m stay exact for
    m < q_cap.  Index 0 of the returned list is None.
    """
    if n_max < 1:
        raise DomainError("Faber degree must be a positive integer")
    _check_normalized(t)
    if t.order < n_max:
        raise PrecisionError(
            f"insufficient precision: Faber degree {n_max} needs order >= {n_max}"
        )
    pw = _powers(t, n_max, q_cap=q_cap)
    return [None] + [_eliminate(pw, n) for n in range(1, n_max + 1)]


@dataclass(frozen=True)
class CoefficientGrid:
    """Dense table of Faber expansion coefficients.

    values[m-1][n-1] is the coefficient of q^m in the degree-n expansion, for
    1 <= m <= m_max and 1 <= n <= n_max.
    """

    function_id: str
    m_max: int
    n_max: int
    values: tuple

    def value(self, m: int, n: int):
        """Stored coefficient at positive indices; window errors otherwise."""
        if not 1 <= n <= self.n_max:
            raise PrecisionError(
                f"insufficient grid: column {n} outside 1..{self.n_max}"
            )
        if not 1 <= m <= self.m_max:
            raise PrecisionError(
                f"insufficient grid: row {m} outside 1..{self.m_max}"
            )
        return self.values[m - 1][n - 1]


def _expansions_by_log(t: LaurentSeries, n_max: int, q_cap: int) -> list[list]:
    """Expansions of the degree 1..n_max Faber polynomials, via the log
    derivative of p*(t(p) - t(q)) = 1 - t(q)*p + sum_k H_k p^(k+1).

    With B_1 = -t and B_k = H_(k-1) (a constant) for k >= 2, the rows satisfy
    n*L_n = -n*B_n - sum_(j<n) (n-j)*B_j*L_(n-j), which needs one series
    product per degree; everything else is a scalar update.  Row n is a dense
    list over exponents -n .. q_cap + (n_max - n) - 1.  Equality with the
    elimination construction in faber() is pinned by tests.
    """
    tv = [t.coeff(e) for e in range(-1, t.order)]  # tv[i] = coeff of q^(i-1)
    caps = [q_cap + (n_max - n) for n in range(n_max + 1)]
    rows: list[list] = [None, list(tv[: 1 + caps[1]])]
    for n in range(2, n_max + 1):
        width = n + caps[n]
        row = [0] * width
        prev = rows[n - 1]  # entry i carries the exponent i - (n-1)
        # series part: -(n-1) * t * L_(n-1); target exponent e maps to e + n
        for i, a in enumerate(prev):
            if a == 0:
                continue
            top = min(len(tv), width - i)
            for j in range(top):
                b = tv[j]
                if b != 0:
                    row[i + j] += a * b
        neg = 1 - n
        for i in range(width):
            if row[i]:
                row[i] *= neg
        # n * B_n at exponent 0, plus the constant B_j rows for 2 <= j < n
        row[n] += n * tv[n]  # B_n = coeff of q^(n-1) in t
        for j in range(2, n):
            c = (n - j) * tv[j]
            if c == 0:
                continue
            other = rows[n - j]  # entry i carries the exponent i - (n-j)
            for i, a in enumerate(other):
                if a != 0 and i + j < width:
                    row[i + j] += c * a
        inv = Fraction(-1, n)
        out = []
        for x in row:
            if x == 0:
                out.append(0)
            else:
                f = x * inv
                out.append(f.numerator if f.denominator == 1 else f)
        rows.append(out)
    return rows


def grid_from_series(function_id: str, t: LaurentSeries, m_max: int, n_max: int) -> CoefficientGrid:
    """Build a grid directly from an expansion (order >= m_max + n_max + 1)."""
    if m_max < 1 or n_max < 1:
        raise DomainError("grid bounds must be positive integers")
    if t.order < m_max + n_max + 1:
        raise PrecisionError(
            f"insufficient precision: grid ({m_max}, {n_max}) needs order >= "
            f"{m_max + n_max + 1}, have {t.order}"
        )
    _check_normalized(t)
    exps = _expansions_by_log(t, n_max, q_cap=m_max + 1)
    rows = []
    for m in range(1, m_max + 1):
        row = []
        for n in range(1, n_max + 1):
            row.append(exps[n][m + n])  # index of exponent m in row n
        rows.append(tuple(row))
    return CoefficientGrid(function_id, m_max, n_max, tuple(rows))


def grid_build(
    name: str,
    m_max: int,
    n_max: int,
    catalog: FunctionCatalog | None = None,
    cache_dir=None,
) -> CoefficientGrid:
    """Grid for a catalog function, with optional on-disk caching."""
    if m_max < 1 or n_max < 1:
        raise DomainError("grid bounds must be positive integers")
    path = None
    if cache_dir is not None:
        path = Path(cache_dir) / f"grid_{name}_{m_max}x{n_max}.json"
        if path.is_file():
            grid = grid_load(path)
            if (grid.function_id, grid.m_max, grid.n_max) == (name, m_max, n_max):
                return grid
    t = catalog_expand(name, m_max + n_max + 1, catalog=catalog)
    grid = grid_from_series(name, t, m_max, n_max)
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        grid_save(grid, path)
    return grid


def grid_get(grid: CoefficientGrid, m: int, n: int, convention: str = "series"):
    """Grid lookup extended to m <= 0.

    convention "series": the literal expansion coefficient, so m = -n yields
    1/n (the pole block) and every other m <= 0 yields 0.
    convention "remark": the combination used by the product identities, with
    1 at m = -n and 0 at every other m <= 0.
    """
    if convention not in ("series", "remark"):
        raise DomainError(f"unknown grid convention {convention!r}")
    if not 1 <= n <= grid.n_max:
        raise PrecisionError(f"insufficient grid: column {n} outside 1..{grid.n_max}")
    if m >= 1:
        return grid.value(m, n)
    if m == -n:
        return 1 if convention == "remark" else Fraction(1, n)
    return 0


def _scalar_str(x) -> str:
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{x.numerator}/{x.denominator}"
    return str(int(x))


def grid_to_text(grid: CoefficientGrid) -> str:
    """Versioned, deterministic serialization with exact decimal strings."""
    doc = {
        "format": GRID_FORMAT,
        "version": GRID_VERSION,
        "function": grid.function_id,
        "m_max": grid.m_max,
        "n_max": grid.n_max,
        "values": [[_scalar_str(v) for v in row] for row in grid.values],
    }
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def grid_save(grid: CoefficientGrid, path) -> None:
    Path(path).write_text(grid_to_text(grid), encoding="utf-8")


def grid_load(path) -> CoefficientGrid:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if doc.get("format") != GRID_FORMAT or doc.get("version") != GRID_VERSION:
        raise DomainError(f"unrecognized grid file {path}")
    values = tuple(
        tuple(_parse_scalar(v) for v in row) for row in doc["values"]
    )
    grid = CoefficientGrid(doc["function"], doc["m_max"], doc["n_max"], values)
    if len(values) != grid.m_max or any(len(r) != grid.n_max for r in values):
        raise DomainError(f"grid file {path} has inconsistent dimensions")
    return grid


def _parse_scalar(text: str):
    f = Fraction(text)
    return f.numerator if f.denominator == 1 else f
