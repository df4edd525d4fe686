"""Regenerate the package's reference tables and figure datasets from the
built-in scenario presets.  All outputs are deterministic, diff-friendly
lists of flat records with a fixed column order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import DesignSpace, IccPair, ParameterSpace
from .lod import lod_compound, lod_hte
from .maximin import CriterionKind, criterion_surface, maximin_compound, maximin_hte
from .power import TestKind, power_ate, power_bounds, power_curve, power_hte
from .scenarios import K10_REFERENCE, K20_REFERENCE, KDPP_BMI, KDPP_IFG, Scenario

TABLE2_RHO_Y = (0.005, 0.05, 0.1, 0.2)
TABLE2_RHO_X = (0.1, 0.2, 0.5, 0.75, 1.0)
TABLE3_LAMBDAS = (0.4, 0.6, 0.85)
KDPP_LAMBDAS = tuple(round(0.5 + 0.05 * i, 2) for i in range(10))


@dataclass(frozen=True)
class Dataset:
    name: str
    columns: tuple[str, ...]
    rows: list[tuple]

    def records(self) -> list[dict]:
        return [dict(zip(self.columns, row)) for row in self.rows]


def table2() -> Dataset:
    """Single-objective interaction LODs and their power on the two
    reference setups (40 rows)."""
    rows = []
    for scen in (K10_REFERENCE, K20_REFERENCE):
        k = scen.cost.cost_ratio
        for ry in TABLE2_RHO_Y:
            for rx in TABLE2_RHO_X:
                icc = IccPair(ry, rx)
                res = lod_hte(icc, scen.cost, scen.scales, scen.design_space)
                p = power_hte(res.design, icc, scen.effects, scen.scales)
                rows.append(
                    (k, ry, rx, res.design.m, res.design.n, res.capped, p.power)
                )
    return Dataset(
        "table2",
        ("k", "rho_y", "rho_x", "m", "n", "capped", "power_hte"),
        rows,
    )


def table3() -> Dataset:
    """Compound LODs and both powers on the k=10 reference setup (60 rows)."""
    scen = K10_REFERENCE
    rows = []
    for ry in TABLE2_RHO_Y:
        for rx in TABLE2_RHO_X:
            icc = IccPair(ry, rx)
            for lam in TABLE3_LAMBDAS:
                res = lod_compound(icc, scen.cost, scen.scales, scen.design_space, lam)
                pa = power_ate(res.design, ry, scen.effects, scen.scales)
                ph = power_hte(res.design, icc, scen.effects, scen.scales)
                rows.append(
                    (ry, rx, lam, res.design.m, res.design.n, pa.power, ph.power)
                )
    return Dataset(
        "table3",
        ("rho_y", "rho_x", "lambda", "m", "n", "power_ate", "power_hte"),
        rows,
    )


def table4() -> Dataset:
    """Compound LODs at the worked example's ICC point estimates, for both
    effect modifiers and ten priority weights.

    The LODs are computed on the default design space (the worked example's
    maximin restriction m in [8, 40], n >= 66 deliberately does not apply
    here; the reference values were produced without it).
    """
    rows = []
    unrestricted = DesignSpace()
    for scen in (KDPP_BMI, KDPP_IFG):
        label = "bmi" if scen is KDPP_BMI else "ifg"
        for lam in KDPP_LAMBDAS:
            res = lod_compound(scen.icc, scen.cost, scen.scales, unrestricted, lam)
            pa = power_ate(res.design, scen.icc.rho_y, scen.effects, scen.scales)
            ph = power_hte(res.design, scen.icc, scen.effects, scen.scales)
            rows.append(
                (
                    label,
                    lam,
                    res.objective_value,
                    res.design.m,
                    res.design.n,
                    pa.power,
                    ph.power,
                )
            )
    return Dataset(
        "table4",
        ("modifier", "lambda", "criterion", "m", "n", "power_ate", "power_hte"),
        rows,
    )


def table5() -> Dataset:
    """Compound maximin designs for the worked example with power bounds for
    the average effect and both interaction effects (10 rows)."""
    scen = KDPP_BMI
    rows = []
    for lam in KDPP_LAMBDAS:
        res = maximin_compound(
            scen.space, scen.design_space, scen.cost, scen.scales, lam
        )
        d = res.design
        b_ate = power_bounds(
            d, scen.space, scen.effects, scen.scales, TestKind.ATE
        )
        b_bmi = power_bounds(
            d, scen.space, scen.effects, scen.scales, TestKind.HTE
        )
        b_ifg = power_bounds(
            d, KDPP_IFG.space, KDPP_IFG.effects, KDPP_IFG.scales, TestKind.HTE
        )
        rows.append(
            (
                lam,
                res.min_value,
                d.m,
                d.n,
                b_ate.lower,
                b_ate.upper,
                b_bmi.lower,
                b_bmi.upper,
                b_ifg.lower,
                b_ifg.upper,
            )
        )
    return Dataset(
        "table5",
        (
            "lambda",
            "criterion",
            "m",
            "n",
            "ate_lower",
            "ate_upper",
            "hte_bmi_lower",
            "hte_bmi_upper",
            "hte_ifg_lower",
            "hte_ifg_upper",
        ),
        rows,
    )


def _corner_curves(
    scen: Scenario, kind: CriterionKind, lam: float | None
) -> list[tuple]:
    rows = []
    for corner in scen.space.corners():
        surface = criterion_surface(
            kind,
            ParameterSpace.point(corner),
            scen.design_space,
            scen.cost,
            scen.scales,
            lam,
        )
        for rec in surface.to_records():
            rows.append(
                (
                    scen.cost.cost_ratio,
                    rec["kind"],
                    rec["lambda"],
                    rec["rho_y"],
                    rec["rho_x"],
                    rec["m"],
                    rec["n"],
                    rec["value"],
                )
            )
    return rows


_CURVE_COLUMNS = ("k", "kind", "lambda", "rho_y", "rho_x", "m", "n", "value")


def fig1() -> Dataset:
    """Interaction-RE curves across cluster size at the four ICC corners of
    each reference setup, the data behind the single-objective maximin."""
    rows = []
    for scen in (K10_REFERENCE, K20_REFERENCE):
        rows.extend(_corner_curves(scen, CriterionKind.HTE_RE, None))
    return Dataset("fig1", _CURVE_COLUMNS, rows)


def fig2() -> Dataset:
    """Compound-criterion corner curves at priority weights 0.4 and 0.6 for
    each reference setup."""
    rows = []
    for scen in (K10_REFERENCE, K20_REFERENCE):
        for lam in (0.4, 0.6):
            rows.extend(_corner_curves(scen, CriterionKind.COMPOUND, lam))
    return Dataset("fig2", _CURVE_COLUMNS, rows)


FIG3_RHO_Y = (0.005, 0.05, 0.1, 0.2)


def fig3() -> Dataset:
    """Interaction power curves across the covariate ICC at four outcome-ICC
    levels, evaluated at each reference setup's maximin design."""
    rows = []
    for scen in (K10_REFERENCE, K20_REFERENCE):
        mm = maximin_hte(scen.space, scen.design_space, scen.cost, scen.scales)
        for rec in power_curve(
            mm.design,
            scen.space,
            scen.effects,
            scen.scales,
            TestKind.HTE,
            rho_y_values=list(FIG3_RHO_Y),
        ):
            rows.append(
                (
                    scen.cost.cost_ratio,
                    rec["test"],
                    rec["m"],
                    rec["n"],
                    rec["rho_y"],
                    rec["rho_x"],
                    rec["effect"],
                    rec["alpha"],
                    rec["power"],
                )
            )
    return Dataset(
        "fig3",
        ("k", "test", "m", "n", "rho_y", "rho_x", "effect", "alpha", "power"),
        rows,
    )


DATASETS: dict[str, Callable[[], Dataset]] = {
    "table2": table2,
    "table3": table3,
    "table4": table4,
    "table5": table5,
    "fig1": fig1,
    "fig2": fig2,
    "fig3": fig3,
}


def build(name: str) -> Dataset:
    try:
        builder = DATASETS[name]
    except KeyError:
        raise KeyError(
            f"unknown dataset {name!r}; expected one of {sorted(DATASETS)}"
        ) from None
    return builder()
