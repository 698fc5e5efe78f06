"""Command line interface.

Three subcommands: ``expand`` prints a catalog expansion, ``verify`` runs one
of the named identity checks, ``grid`` builds (and optionally exports) a
coefficient grid.  Exit status: 0 when the requested check passes, 1 when it
ran and found violations, 2 for usage errors, unknown inputs, or insufficient
precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import click

from .catalog import FunctionCatalog, catalog_expand, default_catalog
from .faber import grid_build, grid_to_text
from .identity import (
    condition_b_check,
    condition_b_family,
    faber_generating_check,
    product_family_sizes,
    build_product_families,
    super_product_check,
)
from .replication import (
    koike_vanishing_check,
    lemma_aa_check,
    lemma_ff_check,
    lemma_ii_check,
    lemma_jj_check,
    psi_character,
    replicable_check,
    super_check,
)
from .report import Report, scalar_str
from .series import DomainError, PrecisionError

CHECKS = (
    "replicable",
    "super",
    "lemma-aa",
    "lemma-ii",
    "lemma-ff",
    "lemma-jj",
    "koike-vanishing",
    "product1",
    "product2b",
    "product2c",
)

DEFAULT_PRIMES = {5: 5, 8: 2, 10: 5, 12: 2}


@dataclass
class RunConfig:
    """Resolved global options plus the default bounds for each check."""

    catalog: FunctionCatalog
    cache_dir: Path | None = None
    fmt: str = "human"
    bound: int = 40
    p_order: int = 6
    q_order: int = 6
    grid_m_max: int = 24
    grid_n_max: int = 24
    lemma_n_max: int = 6
    lemma_order: int = 30
    ff_bound: int = 15
    ff_k_max: int = 4
    koike_m_max: int = 20
    koike_r_max: int = 9
    koike_k_max: int = 3


def _load_config(config_path: str | None) -> FunctionCatalog:
    catalog = default_catalog()
    if config_path is not None:
        catalog = catalog.merged_with(FunctionCatalog.from_path(config_path))
    return catalog


@click.group()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, help="TOML file with extra [function.*] entries.")
@click.option("--cache", "cache_dir", type=click.Path(file_okay=False), default=None,
              help="Directory for persisted grids.")
@click.option("--format", "fmt", type=click.Choice(["human", "structured"]),
              default="human", help="Output rendering.")
@click.pass_context
def main(ctx, config_path, cache_dir, fmt):
    """Exact expansions and identity checks for the function catalog."""
    try:
        catalog = _load_config(config_path)
    except (DomainError, OSError) as exc:
        raise click.UsageError(str(exc))
    ctx.obj = RunConfig(
        catalog=catalog,
        cache_dir=Path(cache_dir) if cache_dir else None,
        fmt=fmt,
    )


def _term(e: int, c, first: bool) -> str:
    if e == 0:
        qpart = ""
    elif e == 1:
        qpart = "q"
    else:
        qpart = f"q^{e}"
    if c == 0:
        body = "0"
    elif qpart and (c == 1 or c == -1):
        body = qpart
    elif qpart:
        body = f"{scalar_str(abs(c))} {qpart}"
    else:
        body = scalar_str(abs(c))
    negative = c < 0
    if first:
        return f"-{body}" if negative else body
    return f"- {body}" if negative else f"+ {body}"


@main.command()
@click.argument("name")
@click.option("--order", type=int, required=True, help="Highest exponent to print.")
@click.pass_obj
def expand(cfg: RunConfig, name: str, order: int):
    """Print the normalized expansion of a catalog function."""
    try:
        series = catalog_expand(name, order, catalog=cfg.catalog)
    except (DomainError, PrecisionError) as exc:
        raise click.UsageError(str(exc))
    if cfg.fmt == "structured":
        import json

        doc = {
            "function": name,
            "order": order,
            "coefficients": [
                [e, scalar_str(series.coeff(e))]
                for e in range(series.valuation, order + 1)
            ],
        }
        click.echo(json.dumps(doc, sort_keys=True, indent=2))
        return
    lines = []
    for i, e in enumerate(range(series.valuation, order + 1)):
        lines.append(_term(e, series.coeff(e), first=(i == 0)))
    click.echo("\n".join(lines))


def _grids_for_pair(cfg: RunConfig, level: int, m_max: int, n_max: int):
    gt = grid_build(f"t1_{level}", m_max, n_max, catalog=cfg.catalog,
                    cache_dir=cfg.cache_dir)
    gt0 = grid_build(f"t0_{level}", m_max, n_max, catalog=cfg.catalog,
                     cache_dir=cfg.cache_dir)
    return gt, gt0


def _run_check(cfg: RunConfig, check: str, level, p, bound, p_order, q_order,
               function_name) -> Report:
    if check == "replicable":
        name = function_name or "bigJ"
        b = bound or cfg.bound
        grid = grid_build(name, b, b, catalog=cfg.catalog, cache_dir=cfg.cache_dir)
        return replicable_check(grid, b)
    if check == "super":
        lvl = level or 5
        b = bound or cfg.bound
        gt, gt0 = _grids_for_pair(cfg, lvl, b, b)
        return super_check(gt, gt0, psi_character(lvl), b)
    if check == "lemma-aa":
        lvl = level or 5
        prime = p or DEFAULT_PRIMES.get(lvl)
        if prime is None:
            raise DomainError(f"no slicing identity at level {lvl}")
        return lemma_aa_check(lvl, prime, bound or cfg.lemma_n_max,
                              q_order or cfg.lemma_order, catalog=cfg.catalog)
    if check == "lemma-ii":
        return lemma_ii_check(bound or cfg.lemma_n_max, q_order or cfg.lemma_order,
                              catalog=cfg.catalog)
    if check == "lemma-ff":
        b = bound or cfg.ff_bound
        return lemma_ff_check(b, b, cfg.ff_k_max, catalog=cfg.catalog)
    if check == "lemma-jj":
        b = bound or cfg.ff_bound
        return lemma_jj_check(b, cfg.ff_k_max, b, catalog=cfg.catalog)
    if check == "koike-vanishing":
        b = bound or cfg.koike_m_max
        return koike_vanishing_check(cfg.koike_r_max, cfg.koike_k_max, b,
                                     catalog=cfg.catalog)
    if check == "product1":
        name = function_name or "bigJ"
        pm = cfg.p_order if p_order is None else p_order
        qm = cfg.q_order if q_order is None else q_order
        t = catalog_expand(name, pm + qm + 1, catalog=cfg.catalog)
        return faber_generating_check(t, pm, qm, function_id=name)
    if check == "product2b":
        lvl = level or 5
        b = bound or cfg.bound
        gt, gt0 = _grids_for_pair(cfg, lvl, b, b)
        psi = psi_character(lvl)
        family = condition_b_family(gt, gt0, psi, b)
        report = condition_b_check(gt, gt0, psi, family, b)
        if lvl == 10 and family.s_max >= 2:
            report.info["order2_vs_order1"] = _family_prefix_note(family)
        return report
    if check == "product2c":
        lvl = level or 5
        pm = cfg.p_order if p_order is None else p_order
        qm = cfg.q_order if q_order is None else q_order
        s_max, k_bound = product_family_sizes(pm, qm)
        m_need = max(pm + 1, qm)
        n_need = (pm + qm + 1) * (pm + 1)
        gt, gt0 = _grids_for_pair(cfg, lvl, m_need, n_need)
        psi = psi_character(lvl)
        fam_t, fam_t0 = build_product_families(gt, gt0, psi, s_max, k_bound)
        return super_product_check(gt, gt0, psi, fam_t, fam_t0, pm, qm)
    raise DomainError(f"unknown check {check!r}")


def _family_prefix_note(family) -> str:
    ones = family.values[1]
    twos = family.values[2]
    span = min(len(ones), len(twos))
    for k in range(span):
        if ones[k] != twos[k]:
            return (
                f"order-2 entries differ from order-1 entries first at k={k + 1}"
            )
    return f"order-2 entries equal order-1 entries for k <= {span}"


@main.command()
@click.argument("check", type=click.Choice(CHECKS))
@click.option("--level", type=int, default=None, help="Catalog level for the check.")
@click.option("--p", type=int, default=None, help="Slicing prime for lemma-aa.")
@click.option("--bound", type=int, default=None,
              help="Main size parameter (product bound, n_max, or index bound).")
@click.option("--p-order", type=int, default=None, help="p window size for products.")
@click.option("--q-order", type=int, default=None,
              help="q window size for products, or series order for lemmas.")
@click.option("--function", "function_name", type=str, default=None,
              help="Catalog function for replicable / product1.")
@click.pass_context
def verify(ctx, check, level, p, bound, p_order, q_order, function_name):
    """Run one identity check and report the outcome."""
    cfg: RunConfig = ctx.obj
    try:
        report = _run_check(cfg, check, level, p, bound, p_order, q_order,
                            function_name)
    except (DomainError, PrecisionError) as exc:
        raise click.UsageError(str(exc))
    click.echo(report.render(cfg.fmt))
    if not report.passed:
        ctx.exit(1)


@main.command("grid")
@click.argument("name")
@click.option("--m-max", type=int, default=None, help="Highest row index.")
@click.option("--n-max", type=int, default=None, help="Highest column index.")
@click.option("--export", "export_path", type=click.Path(dir_okay=False),
              default=None, help="Write the grid to this file.")
@click.pass_obj
def grid_cmd(cfg: RunConfig, name, m_max, n_max, export_path):
    """Build a coefficient grid, optionally exporting it."""
    m = cfg.grid_m_max if m_max is None else m_max
    n = cfg.grid_n_max if n_max is None else n_max
    if m < 1 or n < 1:
        raise click.UsageError("grid dimensions must be at least 1")
    try:
        grid = grid_build(name, m, n, catalog=cfg.catalog, cache_dir=cfg.cache_dir)
    except (DomainError, PrecisionError) as exc:
        raise click.UsageError(str(exc))
    if export_path:
        Path(export_path).write_text(grid_to_text(grid), encoding="utf-8")
    if cfg.fmt == "structured":
        import json

        doc = {
            "function": name,
            "m_max": m,
            "n_max": n,
            "export": export_path,
        }
        click.echo(json.dumps(doc, sort_keys=True, indent=2))
    else:
        msg = f"grid {name} m_max={m} n_max={n} built"
        if export_path:
            msg += f", exported to {export_path}"
        click.echo(msg)


if __name__ == "__main__":
    main()
