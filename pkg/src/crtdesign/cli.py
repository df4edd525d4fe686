"""Command-line front end.

Every library operation is reachable here with machine-readable output:
human tables by default, ``--json`` for a structured document with full
precision, and CSV for surfaces/curves.  Exit codes: 0 success, 2 validation
error, 3 numerical/degenerate-input error.
"""

from __future__ import annotations

import csv
import functools
import json
import sys
from dataclasses import dataclass, fields
from typing import Optional

import click

from .core import (
    CostModel,
    DegenerateDesignError,
    Design,
    DesignSpace,
    EffectSpec,
    IccPair,
    ParameterSpace,
    ScaleModel,
    ValidationError,
)
from .lod import LodResult, lod_ate, lod_compound, lod_hte
from .maximin import (
    MaximinResult,
    maximin_ate,
    maximin_compound,
    maximin_hte,
)
from .power import TestKind, power_ate, power_bounds, power_curve, power_hte
from .reproduce import DATASETS, build
from .scenarios import SCENARIOS

EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


def _fmt(value) -> str:
    if isinstance(value, bool) or not isinstance(value, float):
        return str(value)
    return f"{value:.6g}"


def _print_fields(pairs: list[tuple[str, object]]) -> None:
    width = max(len(k) for k, _ in pairs)
    for key, value in pairs:
        click.echo(f"{key.ljust(width)}  {_fmt(value)}")


def _print_table(columns, rows) -> None:
    cells = [[_fmt(v) for v in row] for row in rows]
    widths = [
        max(len(str(c)), *(len(r[i]) for r in cells)) if cells else len(str(c))
        for i, c in enumerate(columns)
    ]
    click.echo("  ".join(str(c).ljust(w) for c, w in zip(columns, widths)))
    for row in cells:
        click.echo("  ".join(v.ljust(w) for v, w in zip(row, widths)))


def _emit_json(document: dict) -> None:
    click.echo(json.dumps(document, sort_keys=True))


def _write_csv(path: str, columns, rows) -> None:
    out = sys.stdout if path == "-" else open(path, "w", newline="")
    try:
        writer = csv.writer(out)
        writer.writerow(columns)
        for row in rows:
            writer.writerow(["" if v is None else v for v in row])
    finally:
        if out is not sys.stdout:
            out.close()


def handle_errors(func):
    """Map domain errors to the documented exit codes."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ValidationError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_VALIDATION)
        except (DegenerateDesignError, ArithmeticError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_NUMERICAL)

    return wrapper


# ---------------------------------------------------------------------------
# Scenario configuration (config file + flag overrides)
# ---------------------------------------------------------------------------


@dataclass
class ScenarioConfig:
    """Flat scenario document: every module precondition is validated when
    the corresponding domain object is built.  Unknown fields are rejected."""

    budget: Optional[float] = None
    cluster_cost: Optional[float] = None
    indiv_cost: Optional[float] = None
    rho_y: Optional[float] = None
    rho_x: Optional[float] = None
    rho_y_range: Optional[tuple[float, float]] = None
    rho_x_range: Optional[tuple[float, float]] = None
    grid_steps: int = 40
    var_y: float = 1.0
    var_x: float = 1.0
    var_w: float = 0.25
    effect_ate: Optional[float] = None
    effect_hte: Optional[float] = None
    alpha: float = 0.05
    m_min: int = 2
    m_max: Optional[int] = None
    min_clusters: int = 6
    lam: Optional[float] = None

    _KEYS = None  # populated below

    @classmethod
    def load(cls, config_path: Optional[str], overrides: dict) -> "ScenarioConfig":
        data: dict = {}
        if config_path:
            with open(config_path) as fh:
                try:
                    raw = json.load(fh)
                except json.JSONDecodeError as exc:
                    raise ValidationError(f"config file is not valid JSON: {exc}")
            if not isinstance(raw, dict):
                raise ValidationError("config file must hold a flat JSON object")
            if "lambda" in raw:
                raw["lam"] = raw.pop("lambda")
            unknown = set(raw) - cls._KEYS
            if unknown:
                raise ValidationError(
                    f"unknown config field(s): {', '.join(sorted(unknown))}"
                )
            data.update(raw)
        for key, value in overrides.items():
            if value is not None:
                data[key] = value
        for key in ("rho_y_range", "rho_x_range"):
            if key in data and data[key] is not None:
                data[key] = _parse_range(data[key])
        try:
            return cls(**data)
        except TypeError as exc:
            raise ValidationError(str(exc))

    def require(self, *names: str) -> None:
        missing = [n for n in names if getattr(self, n) is None]
        if missing:
            raise ValidationError(
                "missing required input(s): " + ", ".join(missing)
            )

    def cost(self) -> CostModel:
        self.require("budget", "cluster_cost", "indiv_cost")
        return CostModel(self.budget, self.cluster_cost, self.indiv_cost)

    def scales(self) -> ScaleModel:
        return ScaleModel(self.var_y, self.var_x, self.var_w)

    def icc(self) -> IccPair:
        self.require("rho_y", "rho_x")
        return IccPair(self.rho_y, self.rho_x)

    def pspace(self) -> ParameterSpace:
        self.require("rho_y_range", "rho_x_range")
        return ParameterSpace(
            tuple(self.rho_y_range), tuple(self.rho_x_range), self.grid_steps
        )

    def dspace(self) -> DesignSpace:
        return DesignSpace(self.m_min, self.m_max, self.min_clusters)

    def effects(self) -> EffectSpec:
        return EffectSpec(
            beta_ate=self.effect_ate or 0.0,
            beta_hte=self.effect_hte or 0.0,
            alpha=self.alpha,
        )


ScenarioConfig._KEYS = {f.name for f in fields(ScenarioConfig) if not f.name.startswith("_")}


def _parse_range(value) -> tuple[float, float]:
    if isinstance(value, str):
        parts = value.split(",")
    else:
        parts = list(value)
    if len(parts) != 2:
        raise ValidationError("a range needs exactly two values: lo,hi")
    return (float(parts[0]), float(parts[1]))


def _apply_scenario(name: Optional[str], overrides: dict) -> dict:
    if not name:
        return overrides
    try:
        scen = SCENARIOS[name]
    except KeyError:
        raise ValidationError(
            f"unknown scenario {name!r}; expected one of {sorted(SCENARIOS)}"
        )
    base = {
        "budget": scen.cost.total_budget,
        "cluster_cost": scen.cost.cluster_cost,
        "indiv_cost": scen.cost.individual_cost,
        "var_y": scen.scales.var_y_given_x,
        "var_x": scen.scales.var_x,
        "var_w": scen.scales.var_w,
        "effect_ate": scen.effects.beta_ate,
        "effect_hte": scen.effects.beta_hte,
        "alpha": scen.effects.alpha,
        "rho_y_range": scen.space.rho_y_range,
        "rho_x_range": scen.space.rho_x_range,
        "grid_steps": scen.space.grid_steps,
        "m_min": scen.design_space.m_min,
        "m_max": scen.design_space.m_max,
        "min_clusters": scen.design_space.n_min,
        "lam": scen.lam,
    }
    if scen.icc is not None:
        base["rho_y"] = scen.icc.rho_y
        base["rho_x"] = scen.icc.rho_x
    base.update({k: v for k, v in overrides.items() if v is not None})
    return base


def scenario_options(func):
    options = [
        click.option("--config", "config_path", type=click.Path(exists=True), default=None, help="JSON config file; flags override its values."),
        click.option("--scenario", default=None, help=f"Preset scenario: one of {', '.join(sorted(SCENARIOS))}."),
        click.option("--budget", type=float, default=None, help="Total budget B."),
        click.option("--cluster-cost", "cluster_cost", type=float, default=None, help="Per-cluster cost c."),
        click.option("--indiv-cost", "indiv_cost", type=float, default=None, help="Per-individual cost s."),
        click.option("--var-y", "var_y", type=float, default=None, help="Outcome residual variance (default 1)."),
        click.option("--var-x", "var_x", type=float, default=None, help="Covariate variance (default 1)."),
        click.option("--var-w", "var_w", type=float, default=None, help="Treatment-assignment variance (default 0.25)."),
        click.option("--effect-ate", "effect_ate", type=float, default=None, help="Average effect size (outcome units)."),
        click.option("--effect-hte", "effect_hte", type=float, default=None, help="Interaction effect size (outcome units per covariate unit)."),
        click.option("--alpha", type=float, default=None, help="Two-sided significance level (default 0.05)."),
        click.option("--m-min", "m_min", type=int, default=None, help="Smallest cluster size searched (default 2)."),
        click.option("--m-max", "m_max", type=int, default=None, help="Largest cluster size searched (default: budget cap)."),
        click.option("--min-clusters", "min_clusters", type=int, default=None, help="Minimum number of clusters (default 6)."),
        click.option("--json", "as_json", is_flag=True, help="Emit a JSON document instead of a table."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _build_config(config_path, scenario, **overrides) -> ScenarioConfig:
    overrides = _apply_scenario(scenario, overrides)
    return ScenarioConfig.load(config_path, overrides)


# ---------------------------------------------------------------------------
# Entry point and groups
# ---------------------------------------------------------------------------


@click.group()
def main() -> None:
    """Cost-constrained optimal and maximin designs for cluster randomized
    trials with average-effect and effect-heterogeneity objectives."""


@main.group()
def lod() -> None:
    """Locally optimal designs for one fixed ICC pair."""


@main.group()
def maximin() -> None:
    """Maximin designs over an ICC uncertainty region."""


@main.group()
def power() -> None:
    """Power at a design: single point, grid bounds, or curves."""


def _lod_document(res: LodResult, powers: dict) -> dict:
    doc = {
        "m": res.design.m,
        "n": res.design.n,
        "capped": res.capped,
        "condition_satisfied": res.condition_satisfied,
        "m_continuous": res.m_continuous,
        "objective_value": res.objective_value,
    }
    doc.update(powers)
    return doc


def _emit_lod(res: LodResult, powers: dict, as_json: bool) -> None:
    doc = _lod_document(res, powers)
    if as_json:
        _emit_json(doc)
    else:
        _print_fields(list(doc.items()))


def _lod_powers(cfg: ScenarioConfig, res: LodResult, icc: Optional[IccPair]) -> dict:
    powers = {}
    es = cfg.effects()
    if cfg.effect_hte is not None and icc is not None:
        powers["power_hte"] = power_hte(res.design, icc, es, cfg.scales()).power
    if cfg.effect_ate is not None and cfg.rho_y is not None:
        powers["power_ate"] = power_ate(res.design, cfg.rho_y, es, cfg.scales()).power
    return powers


@lod.command("hte")
@scenario_options
@click.option("--rho-y", "rho_y", type=float, default=None, help="Outcome ICC.")
@click.option("--rho-x", "rho_x", type=float, default=None, help="Covariate ICC.")
@handle_errors
def lod_hte_cmd(config_path, scenario, as_json, **overrides) -> None:
    """Minimize the interaction-estimator variance."""
    cfg = _build_config(config_path, scenario, **overrides)
    icc = cfg.icc()
    res = lod_hte(icc, cfg.cost(), cfg.scales(), cfg.dspace())
    _emit_lod(res, _lod_powers(cfg, res, icc), as_json)


@lod.command("ate")
@scenario_options
@click.option("--rho-y", "rho_y", type=float, default=None, help="Outcome ICC.")
@handle_errors
def lod_ate_cmd(config_path, scenario, as_json, **overrides) -> None:
    """Minimize the average-effect-estimator variance."""
    cfg = _build_config(config_path, scenario, **overrides)
    cfg.require("rho_y")
    res = lod_ate(cfg.rho_y, cfg.cost(), cfg.dspace(), cfg.scales())
    _emit_lod(res, _lod_powers(cfg, res, None), as_json)


@lod.command("compound")
@scenario_options
@click.option("--rho-y", "rho_y", type=float, default=None, help="Outcome ICC.")
@click.option("--rho-x", "rho_x", type=float, default=None, help="Covariate ICC.")
@click.option("--lambda", "lam", type=float, default=None, help="Priority weight on the average-effect objective.")
@handle_errors
def lod_compound_cmd(config_path, scenario, as_json, **overrides) -> None:
    """Maximize the weighted compound criterion."""
    cfg = _build_config(config_path, scenario, **overrides)
    cfg.require("lam")
    icc = cfg.icc()
    res = lod_compound(icc, cfg.cost(), cfg.scales(), cfg.dspace(), cfg.lam)
    _emit_lod(res, _lod_powers(cfg, res, icc), as_json)


_SURFACE_COLUMNS = ("m", "n", "rho_y", "rho_x", "value", "kind", "lambda")


def _emit_maximin(res: MaximinResult, as_json: bool, surface_path: Optional[str]) -> None:
    if surface_path:
        records = res.surface.to_records()
        _write_csv(
            surface_path,
            _SURFACE_COLUMNS,
            [tuple(r[c] for c in _SURFACE_COLUMNS) for r in records],
        )
    doc = {
        "m": res.design.m,
        "n": res.design.n,
        "min_value": res.min_value,
        "kind": res.kind.value,
        "lambda": res.lam,
        "worst_case_iccs": [
            {"rho_y": icc.rho_y, "rho_x": icc.rho_x} for icc in res.worst_case_iccs
        ],
    }
    if as_json:
        _emit_json(doc)
    else:
        worst = "; ".join(
            f"({_fmt(icc.rho_y)}, {_fmt(icc.rho_x)})" for icc in res.worst_case_iccs
        )
        _print_fields(
            [
                ("m", res.design.m),
                ("n", res.design.n),
                ("min_value", res.min_value),
                ("kind", res.kind.value),
                ("lambda", res.lam if res.lam is not None else "-"),
                ("worst_case_iccs", worst),
            ]
        )


def _maximin_common(func):
    func = click.option("--rho-y-range", "rho_y_range", default=None, help="Outcome-ICC range lo,hi.")(func)
    func = click.option("--rho-x-range", "rho_x_range", default=None, help="Covariate-ICC range lo,hi.")(func)
    func = click.option("--grid-steps", "grid_steps", type=int, default=None, help="Grid intervals per axis (default 40).")(func)
    func = click.option("--emit-surface", "surface_path", default=None, help="Write the full criterion surface as CSV ('-' for stdout).")(func)
    return func


@maximin.command("hte")
@scenario_options
@_maximin_common
@handle_errors
def maximin_hte_cmd(config_path, scenario, as_json, surface_path, **overrides) -> None:
    """Maximize worst-case interaction relative efficiency."""
    cfg = _build_config(config_path, scenario, **overrides)
    res = maximin_hte(cfg.pspace(), cfg.dspace(), cfg.cost(), cfg.scales())
    _emit_maximin(res, as_json, surface_path)


@maximin.command("ate")
@scenario_options
@_maximin_common
@handle_errors
def maximin_ate_cmd(config_path, scenario, as_json, surface_path, **overrides) -> None:
    """Maximize worst-case average-effect relative efficiency."""
    cfg = _build_config(config_path, scenario, **overrides)
    res = maximin_ate(cfg.pspace(), cfg.dspace(), cfg.cost(), cfg.scales())
    _emit_maximin(res, as_json, surface_path)


@maximin.command("compound")
@scenario_options
@_maximin_common
@click.option("--lambda", "lam", type=float, default=None, help="Priority weight on the average-effect objective.")
@handle_errors
def maximin_compound_cmd(config_path, scenario, as_json, surface_path, **overrides) -> None:
    """Maximize the worst-case compound criterion."""
    cfg = _build_config(config_path, scenario, **overrides)
    cfg.require("lam")
    res = maximin_compound(
        cfg.pspace(), cfg.dspace(), cfg.cost(), cfg.scales(), cfg.lam
    )
    _emit_maximin(res, as_json, surface_path)


def _design_from(cfg: ScenarioConfig, m: int, n: Optional[int]) -> Design:
    from .core import n_for_m as _n_for_m

    if n is None:
        n = _n_for_m(m, cfg.cost())
    return Design(m=m, n=n)


_TEST_KINDS = {"hte": TestKind.HTE, "ate": TestKind.ATE}


@power.command("point")
@scenario_options
@click.option("--m", type=int, required=True, help="Cluster size.")
@click.option("--n", type=int, default=None, help="Number of clusters (default: budget-maximal for m).")
@click.option("--test", "test", type=click.Choice(sorted(_TEST_KINDS)), default="hte")
@click.option("--rho-y", "rho_y", type=float, default=None, help="Outcome ICC.")
@click.option("--rho-x", "rho_x", type=float, default=None, help="Covariate ICC.")
@click.option("--use-t", "use_t", is_flag=True, help="Use the t approximation with n-2 degrees of freedom.")
@handle_errors
def power_point_cmd(config_path, scenario, as_json, m, n, test, use_t, **overrides) -> None:
    """Power of one test at one design and ICC scenario."""
    cfg = _build_config(config_path, scenario, **overrides)
    d = _design_from(cfg, m, n)
    es = cfg.effects()
    if _TEST_KINDS[test] is TestKind.HTE:
        cfg.require("effect_hte")
        report = power_hte(d, cfg.icc(), es, cfg.scales(), use_t)
    else:
        cfg.require("effect_ate", "rho_y")
        report = power_ate(d, cfg.rho_y, es, cfg.scales(), use_t)
    doc = {
        "test": report.test.value,
        "m": d.m,
        "n": d.n,
        "power": report.power,
        "standardized_effect": report.standardized_effect,
        "variance_used": report.variance_used,
        "alpha": report.alpha,
    }
    _emit_json(doc) if as_json else _print_fields(list(doc.items()))


@power.command("bounds")
@scenario_options
@_maximin_common
@click.option("--m", type=int, required=True, help="Cluster size.")
@click.option("--n", type=int, default=None, help="Number of clusters (default: budget-maximal for m).")
@click.option("--test", "test", type=click.Choice(sorted(_TEST_KINDS)), default="hte")
@click.option("--use-t", "use_t", is_flag=True, help="Use the t approximation with n-2 degrees of freedom.")
@handle_errors
def power_bounds_cmd(config_path, scenario, as_json, surface_path, m, n, test, use_t, **overrides) -> None:
    """Min/max power over the ICC grid."""
    del surface_path
    cfg = _build_config(config_path, scenario, **overrides)
    d = _design_from(cfg, m, n)
    bounds = power_bounds(
        d, cfg.pspace(), cfg.effects(), cfg.scales(), _TEST_KINDS[test], use_t
    )
    doc = {
        "test": test,
        "m": d.m,
        "n": d.n,
        "lower": bounds.lower,
        "upper": bounds.upper,
        "argmin_icc": {"rho_y": bounds.argmin_icc.rho_y, "rho_x": bounds.argmin_icc.rho_x},
        "argmax_icc": {"rho_y": bounds.argmax_icc.rho_y, "rho_x": bounds.argmax_icc.rho_x},
    }
    if as_json:
        _emit_json(doc)
    else:
        _print_fields(
            [
                ("test", test),
                ("m", d.m),
                ("n", d.n),
                ("lower", bounds.lower),
                ("upper", bounds.upper),
                ("argmin_icc", f"({_fmt(bounds.argmin_icc.rho_y)}, {_fmt(bounds.argmin_icc.rho_x)})"),
                ("argmax_icc", f"({_fmt(bounds.argmax_icc.rho_y)}, {_fmt(bounds.argmax_icc.rho_x)})"),
            ]
        )


_CURVE_COLUMNS = ("test", "m", "n", "rho_y", "rho_x", "effect", "alpha", "power")


@power.command("curve")
@scenario_options
@_maximin_common
@click.option("--m", type=int, required=True, help="Cluster size.")
@click.option("--n", type=int, default=None, help="Number of clusters (default: budget-maximal for m).")
@click.option("--test", "test", type=click.Choice(sorted(_TEST_KINDS)), default="hte")
@click.option("--rho-y-values", "rho_y_values", default=None, help="Comma-separated outcome-ICC levels for the curves.")
@click.option("--emit", "emit_path", default=None, help="Write the curve as CSV ('-' for stdout).")
@handle_errors
def power_curve_cmd(config_path, scenario, as_json, surface_path, m, n, test, rho_y_values, emit_path, **overrides) -> None:
    """Power across the covariate ICC for fixed outcome-ICC levels."""
    del surface_path
    cfg = _build_config(config_path, scenario, **overrides)
    d = _design_from(cfg, m, n)
    levels = (
        [float(v) for v in rho_y_values.split(",")] if rho_y_values else None
    )
    records = power_curve(
        d, cfg.pspace(), cfg.effects(), cfg.scales(), _TEST_KINDS[test], levels
    )
    rows = [tuple(r[c] for c in _CURVE_COLUMNS) for r in records]
    if emit_path:
        _write_csv(emit_path, _CURVE_COLUMNS, rows)
    elif as_json:
        _emit_json({"records": records})
    else:
        _print_table(_CURVE_COLUMNS, rows)


@main.command("reproduce")
@click.argument("dataset_id")
@click.option("--json", "as_json", is_flag=True, help="Emit records as JSON.")
@click.option("--csv", "csv_path", default=None, help="Write the dataset as CSV ('-' for stdout).")
@handle_errors
def reproduce_cmd(dataset_id, as_json, csv_path) -> None:
    """Regenerate a built-in reference dataset.

    DATASET_ID is one of: table2, table3, table4, table5, fig1, fig2, fig3.
    """
    if dataset_id not in DATASETS:
        click.echo(
            f"error: unknown dataset {dataset_id!r}; expected one of "
            f"{', '.join(sorted(DATASETS))}",
            err=True,
        )
        sys.exit(EXIT_VALIDATION)
    ds = build(dataset_id)
    if csv_path:
        _write_csv(csv_path, ds.columns, ds.rows)
    elif as_json:
        _emit_json({"name": ds.name, "columns": list(ds.columns), "rows": [list(r) for r in ds.rows]})
    else:
        _print_table(ds.columns, ds.rows)


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve_cmd(host, port) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .api import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
