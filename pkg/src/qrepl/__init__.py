"""Exact Laurent series arithmetic with verified identity checks.

The package builds q-expansions of a small catalog of modular functions with
integer coefficients, assembles the coefficient grids of their Faber
polynomials, and checks replication, pairing, slicing, and product identities
as exact statements about integers and rationals.  No floating point is used
anywhere.
"""

from .series import (
    CHI_FOUR,
    CHI_PARITY,
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
from .bivariate import (
    BivariateSeries,
    bivariate_compare,
    bivariate_exp,
    bivariate_one,
)
from .functions import (
    KINDS,
    ProductFormulaSpec,
    big_j,
    expand_product_formula,
    normalize_hauptmodul,
)
from .catalog import (
    CatalogEntry,
    FunctionCatalog,
    catalog_expand,
    default_catalog,
)
from .faber import (
    CoefficientGrid,
    FaberPolynomial,
    faber,
    faber_upto,
    grid_build,
    grid_from_series,
    grid_get,
    grid_load,
    grid_save,
    grid_to_text,
)
from .replication import (
    PAIR_RULE_LEVELS,
    SLICE_PRIMES,
    PsiCharacter,
    ReplicateFamily,
    condition_b_sizes,
    extract_replicates,
    family_k_bounds,
    koike_vanishing_check,
    lemma_aa_check,
    lemma_ff_check,
    lemma_ii_check,
    lemma_jj_check,
    mobius,
    psi_base,
    psi_character,
    psi_pair,
    replicable_check,
    super_check,
    trivial_psi,
)
from .identity import (
    build_product_families,
    condition_b_check,
    condition_b_family,
    dual_difference,
    faber_generating_check,
    product_family_sizes,
    super_product_check,
)
from .report import Report, Violation, scalar_str
from .cli import RunConfig

__version__ = "0.1.0"

__all__ = [
    "BivariateSeries",
    "CHI_FOUR",
    "CHI_PARITY",
    "CatalogEntry",
    "CoefficientGrid",
    "DomainError",
    "FaberPolynomial",
    "FunctionCatalog",
    "KINDS",
    "LaurentSeries",
    "PAIR_RULE_LEVELS",
    "PrecisionError",
    "ProductFormulaSpec",
    "PsiCharacter",
    "Report",
    "ReplicateFamily",
    "RunConfig",
    "SIGN_PARITY",
    "SLICE_PRIMES",
    "Violation",
    "big_j",
    "bivariate_compare",
    "bivariate_exp",
    "bivariate_one",
    "build_product_families",
    "catalog_expand",
    "condition_b_check",
    "condition_b_family",
    "condition_b_sizes",
    "default_catalog",
    "dual_difference",
    "expand_product_formula",
    "extract_replicates",
    "faber",
    "faber_generating_check",
    "faber_upto",
    "family_k_bounds",
    "grid_build",
    "grid_from_series",
    "grid_get",
    "grid_load",
    "grid_save",
    "grid_to_text",
    "koike_vanishing_check",
    "lemma_aa_check",
    "lemma_ff_check",
    "lemma_ii_check",
    "lemma_jj_check",
    "mobius",
    "normalize_hauptmodul",
    "psi_base",
    "psi_character",
    "psi_pair",
    "replicable_check",
    "ring_arithmetic",
    "scalar_str",
    "series_exp",
    "series_invert",
    "series_log",
    "series_mul",
    "series_pow",
    "series_substitute_power",
    "series_twist",
    "series_u",
    "super_check",
    "super_product_check",
    "trivial_psi",
    "__version__",
]
