"""Named function catalog with a monotone expansion cache.

Entries are defined in TOML (the packaged ``catalog.toml`` by default, or a
user file with the same schema).  Expansions are normalized, checked for
integer coefficients, and cached per function: a longer expansion silently
extends the cache and must agree with the stored prefix, so repeated queries
at mixed orders are cheap and consistent.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # pragma: no cover - python < 3.11
    import tomli as tomllib

from .functions import ProductFormulaSpec, expand_product_formula, normalize_hauptmodul
from .series import DomainError, LaurentSeries

GROUPS = ("gamma0", "gamma1", "full_modular")

_COMMON_KEYS = {"kind", "level", "group"}
_KIND_KEYS = {
    "eta_quotient": {"terms", "leading_power"},
    "residue_product": {"modulus", "exponents", "leading_power"},
    "modular_j": set(),
}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    level: int
    group: str
    spec: ProductFormulaSpec


def _parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise DomainError("expected a rational number")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise DomainError(f"expected a rational number, got {value!r}")


def _entry_from_table(name: str, table: dict) -> CatalogEntry:
    if not isinstance(table, dict):
        raise DomainError(f"function {name!r} must be a table")
    kind = table.get("kind")
    if kind not in _KIND_KEYS:
        raise DomainError(f"function {name!r} has unknown kind {kind!r}")
    allowed = _COMMON_KEYS | _KIND_KEYS[kind]
    unknown = set(table) - allowed
    if unknown:
        raise DomainError(
            f"function {name!r} has unknown keys: {', '.join(sorted(unknown))}"
        )
    level = table.get("level")
    if not isinstance(level, int) or level < 1:
        raise DomainError(f"function {name!r} needs a positive integer level")
    group = table.get("group")
    if group not in GROUPS:
        raise DomainError(f"function {name!r} has unknown group {group!r}")
    if kind == "eta_quotient":
        raw = table.get("terms")
        if not isinstance(raw, list) or not all(
            isinstance(t, list) and len(t) == 2 and all(isinstance(x, int) for x in t)
            for t in raw
        ):
            raise DomainError(f"function {name!r}: terms must be [d, e] integer pairs")
        spec = ProductFormulaSpec(
            kind="eta_quotient",
            terms=tuple((d, e) for d, e in raw),
            leading_power=_parse_rational(table.get("leading_power", 0)),
        )
    elif kind == "residue_product":
        raw = table.get("exponents")
        if not isinstance(raw, dict):
            raise DomainError(f"function {name!r}: exponents must be a table")
        pairs = []
        for key, e in raw.items():
            if not isinstance(e, int):
                raise DomainError(f"function {name!r}: exponent for {key!r} not an integer")
            try:
                r = int(key)
            except ValueError:
                raise DomainError(f"function {name!r}: residue key {key!r} not an integer")
            pairs.append((r, e))
        modulus = table.get("modulus")
        if not isinstance(modulus, int):
            raise DomainError(f"function {name!r} needs an integer modulus")
        spec = ProductFormulaSpec(
            kind="residue_product",
            modulus=modulus,
            exponents=tuple(sorted(pairs)),
            leading_power=_parse_rational(table.get("leading_power", 0)),
        )
    else:
        spec = ProductFormulaSpec(kind="modular_j")
    return CatalogEntry(name=name, level=level, group=group, spec=spec)


class FunctionCatalog:
    """Mapping of names to expandable entries, with per-name caching."""

    def __init__(self, entries: dict[str, CatalogEntry]):
        self._entries = dict(entries)
        self._cache: dict[str, LaurentSeries] = {}
        self._lock = threading.Lock()

    @classmethod
    def from_toml_text(cls, text: str) -> "FunctionCatalog":
        data = tomllib.loads(text)
        unknown = set(data) - {"function"}
        if unknown:
            raise DomainError(
                f"unknown top-level config keys: {', '.join(sorted(unknown))}"
            )
        functions = data.get("function", {})
        if not isinstance(functions, dict):
            raise DomainError("[function] must be a table of tables")
        entries = {
            name: _entry_from_table(name, table) for name, table in functions.items()
        }
        return cls(entries)

    @classmethod
    def from_path(cls, path) -> "FunctionCatalog":
        return cls.from_toml_text(Path(path).read_text(encoding="utf-8"))

    def names(self) -> list[str]:
        return sorted(self._entries)

    def entry(self, name: str) -> CatalogEntry:
        try:
            return self._entries[name]
        except KeyError:
            raise DomainError(f"unknown catalog function {name!r}") from None

    def merged_with(self, other: "FunctionCatalog") -> "FunctionCatalog":
        """New catalog where the other catalog's entries take precedence."""
        entries = dict(self._entries)
        entries.update(other._entries)
        return FunctionCatalog(entries)

    def expand(self, name: str, order: int) -> LaurentSeries:
        """Normalized integral expansion of ``name`` through q**order."""
        entry = self.entry(name)
        with self._lock:
            cached = self._cache.get(name)
            if cached is not None and cached.order >= order + 1:
                return cached.truncate(order + 1)
            fresh = normalize_hauptmodul(expand_product_formula(entry.spec, order))
            if not fresh.is_integral():
                raise DomainError(
                    f"catalog expansion of {name!r} has a non-integer coefficient"
                )
            if cached is not None and not fresh.agrees_with(
                cached, cached.valuation, cached.order - 1
            ):
                raise DomainError(
                    f"catalog expansion of {name!r} changed under extension"
                )
            self._cache[name] = fresh
            return fresh


_default: FunctionCatalog | None = None
_default_lock = threading.Lock()


def default_catalog() -> FunctionCatalog:
    """The packaged catalog (shared instance, so its cache is shared too)."""
    global _default
    with _default_lock:
        if _default is None:
            text = (
                resources.files("qrepl").joinpath("catalog.toml").read_text("utf-8")
            )
            _default = FunctionCatalog.from_toml_text(text)
        return _default


def catalog_expand(name: str, order: int, catalog: FunctionCatalog | None = None) -> LaurentSeries:
    cat = catalog if catalog is not None else default_catalog()
    return cat.expand(name, order)
