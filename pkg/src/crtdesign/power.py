"""Power diagnostics for the interaction (HTE) and average-effect (ATE)
tests at a fixed design, plus bounds and curves over an ICC uncertainty grid.

Power uses the normal approximation for a two-sided level-alpha Wald test
with the opposite tail ignored: Phi(|effect|/sqrt(variance) - z_{1-alpha/2}).
A zero effect therefore gives alpha/2.  A t approximation with n-2 degrees
of freedom is available as an option (``use_t=True``) but is not the default.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from statistics import NormalDist
from typing import Optional

from .core import (
    DegenerateDesignError,
    Design,
    EffectSpec,
    IccPair,
    ParameterSpace,
    ScaleModel,
    ValidationError,
    var_ate,
    var_hte,
)

_NORMAL = NormalDist()


class TestKind(Enum):
    HTE = "hte"
    ATE = "ate"


@dataclass(frozen=True)
class PowerReport:
    """Power of one test at one design and one ICC scenario."""

    power: float
    standardized_effect: float
    variance_used: float
    test: TestKind
    alpha: float


@dataclass(frozen=True)
class PowerBounds:
    """Extremes of power over an ICC grid, with the attaining pairs.

    ``degenerate_iccs`` lists grid cells where the variance was undefined
    (reported rather than silently skipped)."""

    lower: float
    upper: float
    argmin_icc: IccPair
    argmax_icc: IccPair
    degenerate_iccs: tuple[IccPair, ...] = ()


def _power_from(variance: float, effect: float, alpha: float, n: int, use_t: bool) -> float:
    se = math.sqrt(variance)
    if use_t:
        from scipy import stats

        df = max(n - 2, 1)
        crit = stats.t.ppf(1.0 - alpha / 2.0, df)
        return float(stats.t.cdf(abs(effect) / se - crit, df))
    return _NORMAL.cdf(abs(effect) / se - _NORMAL.inv_cdf(1.0 - alpha / 2.0))


def power_hte(
    d: Design,
    icc: IccPair,
    es: EffectSpec,
    sc: Optional[ScaleModel] = None,
    use_t: bool = False,
) -> PowerReport:
    """Power of the interaction test at design ``d``."""
    sc = sc or ScaleModel()
    variance = var_hte(d, icc, sc)
    return PowerReport(
        power=_power_from(variance, es.beta_hte, es.alpha, d.n, use_t),
        standardized_effect=es.standardized_hte(sc),
        variance_used=variance,
        test=TestKind.HTE,
        alpha=es.alpha,
    )


def power_ate(
    d: Design,
    rho_y: float,
    es: EffectSpec,
    sc: Optional[ScaleModel] = None,
    use_t: bool = False,
) -> PowerReport:
    """Power of the average-effect test at design ``d``.

    The variance entering the power formula carries a (1 - rho_y) adjustment
    relative to the raw average-effect variance; this is the convention the
    reference tables this package reproduces were computed under (see
    README), and it reduces to the raw variance as rho_y -> 0.
    """
    if not 0 <= rho_y < 1:
        raise ValidationError("rho_y must lie in [0, 1)")
    sc = sc or ScaleModel()
    variance = (1.0 - rho_y) * var_ate(d, IccPair(rho_y, 0.0), sc)
    return PowerReport(
        power=_power_from(variance, es.beta_ate, es.alpha, d.n, use_t),
        standardized_effect=es.standardized_ate(sc),
        variance_used=variance,
        test=TestKind.ATE,
        alpha=es.alpha,
    )


def _grid_power(
    d: Design,
    icc: IccPair,
    es: EffectSpec,
    sc: ScaleModel,
    test: TestKind,
    use_t: bool,
) -> float:
    if test is TestKind.HTE:
        return power_hte(d, icc, es, sc, use_t).power
    return power_ate(d, icc.rho_y, es, sc, use_t).power


def power_bounds(
    d: Design,
    ps: ParameterSpace,
    es: EffectSpec,
    sc: Optional[ScaleModel] = None,
    test: TestKind = TestKind.HTE,
    use_t: bool = False,
) -> PowerBounds:
    """Worst- and best-case power over the ICC grid (for the average-effect
    test the bounds depend on rho_y only)."""
    sc = sc or ScaleModel()
    lo = hi = None
    arg_lo = arg_hi = None
    degenerate: list[IccPair] = []
    for icc in ps.grid():
        try:
            p = _grid_power(d, icc, es, sc, test, use_t)
        except DegenerateDesignError:
            degenerate.append(icc)
            continue
        if lo is None or p < lo:
            lo, arg_lo = p, icc
        if hi is None or p > hi:
            hi, arg_hi = p, icc
    if lo is None:
        raise DegenerateDesignError(
            "power undefined on the entire ICC grid for this design"
        )
    return PowerBounds(
        lower=lo,
        upper=hi,
        argmin_icc=arg_lo,
        argmax_icc=arg_hi,
        degenerate_iccs=tuple(degenerate),
    )


def power_curve(
    d: Design,
    ps: ParameterSpace,
    es: EffectSpec,
    sc: Optional[ScaleModel] = None,
    test: TestKind = TestKind.HTE,
    rho_y_values: Optional[list[float]] = None,
    use_t: bool = False,
) -> list[dict]:
    """Power along the rho_x axis for a small set of fixed rho_y values.

    Returns tabular records with the fixed column contract
    (test, m, n, rho_y, rho_x, effect, alpha, power)."""
    sc = sc or ScaleModel()
    if rho_y_values is None:
        ylo, yhi = ps.rho_y_range
        if ylo == yhi:
            rho_y_values = [ylo]
        else:
            rho_y_values = [ylo + (yhi - ylo) * i / 3 for i in range(4)]
    effect = es.beta_hte if test is TestKind.HTE else es.beta_ate
    records = []
    for ry in rho_y_values:
        for rx in ps.rho_x_values():
            icc = IccPair(ry, rx)
            try:
                p = _grid_power(d, icc, es, sc, test, use_t)
            except DegenerateDesignError:
                continue
            records.append(
                {
                    "test": test.value,
                    "m": d.m,
                    "n": d.n,
                    "rho_y": ry,
                    "rho_x": rx,
                    "effect": effect,
                    "alpha": es.alpha,
                    "power": p,
                }
            )
    return records
