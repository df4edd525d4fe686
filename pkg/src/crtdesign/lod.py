"""Closed-form locally optimal designs under a budget constraint.

For one fixed ICC pair, the budget B = n(c + sm) turns design choice into a
one-dimensional problem in the cluster size m.  This module implements the
closed-form continuous optima for the interaction objective, the average
effect objective, and the weighted compound objective, together with cap
handling (a minimum number of clusters bounds m above) and integer rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .core import (
    ConfigurationError,
    CostModel,
    Design,
    DesignSpace,
    IccPair,
    ScaleModel,
    ValidationError,
    _shape_ate,
    _shape_hte,
    _var_ate_mn,
    _var_hte_mn,
    design_for_m,
    n_for_m,
)

_UNIT = ScaleModel()
_DEFAULT_SPACE = DesignSpace()


@dataclass(frozen=True)
class LodResult:
    """A locally optimal design plus how it was obtained.

    ``capped`` is true when the continuous optimum exceeded the largest
    cluster size affording the minimum number of clusters (or the optimality
    condition failed), so the cap was returned instead.
    ``condition_satisfied`` reports the existence condition for an interior
    continuous optimum.  ``objective_value`` is the minimized variance for the
    single objectives and the compound criterion for the compound objective.
    """

    design: Design
    capped: bool
    condition_satisfied: bool
    m_continuous: float
    objective_value: float


# ---------------------------------------------------------------------------
# Continuous optima
# ---------------------------------------------------------------------------


def hte_condition(icc: IccPair, k: float) -> bool:
    """Existence condition for an interior optimum of the interaction
    objective: rho_y(k+1)/(rho_y*k+1) < rho_x <= 1, evaluated in the
    algebraically equivalent form (rho_x-rho_y) - k*rho_y(1-rho_x) > 0 (the
    divide-by-k form scaled by k, which stays defined at k = 0)."""
    if icc.rho_y == 0:
        return False
    return (icc.rho_x - icc.rho_y) - k * icc.rho_y * (1.0 - icc.rho_x) > 0


def m_hte_continuous(icc: IccPair, k: float) -> float:
    """Continuous minimizer of the interaction variance under the budget.
    Returns ``inf`` when no interior optimum exists (variance decreasing in
    m throughout, so the cap is optimal)."""
    ry, rx = icc.rho_y, icc.rho_x
    if ry == 0 or ry * k == 0 and k > 0:
        # Includes subnormal rho_y whose product with k underflows: the
        # rho_y -> 0 limit has no interior optimum.
        return math.inf
    if (rx - ry) - k * ry * (1.0 - rx) <= 0:
        return math.inf
    if k == 0:
        # Free clusters: the objective is monotone increasing in m, so the
        # smallest admissible cluster size is optimal.
        return 0.0
    den = (rx - ry) / k - ry * (1.0 - rx)
    arg = (1.0 / (ry * k)) * (1.0 - ry) * (rx - ry) * (
        1.0 - (k + 2.0) * ry + (k + 1.0) * rx * ry
    )
    return ((1.0 - ry) * (1.0 - rx) + math.sqrt(max(arg, 0.0))) / den


def m_ate_continuous(rho_y: float, k: float) -> float:
    """Continuous minimizer sqrt(k(1-rho_y)/rho_y) of the average-effect
    variance; ``inf`` at rho_y = 0."""
    if not 0 <= rho_y < 1:
        raise ValidationError("rho_y must lie in [0, 1)")
    if rho_y == 0:
        return math.inf
    return math.sqrt(k * (1.0 - rho_y) / rho_y)


@dataclass(frozen=True)
class CompoundWeights:
    """Priority weights for the compound objective.

    The weights are the unit-scale reference variances of each objective at
    its own constrained continuous optimum, scaled by lambda and (1-lambda).
    Unit scales make the compound design scale-invariant, matching the
    scale-free relative-efficiency criterion.
    """

    w_ate: float
    w_hte: float
    lam: float

    def __post_init__(self) -> None:
        if not 0 <= self.lam <= 1:
            raise ValidationError("lambda must lie in [0, 1]")
        if self.w_ate < 0 or self.w_hte < 0:
            raise ValidationError("weights must be non-negative")
        if self.w_ate == 0 and self.w_hte == 0:
            raise ValidationError("at least one weight must be positive")

    @classmethod
    def for_scenario(
        cls,
        icc: IccPair,
        cm: CostModel,
        lam: float,
        ds: Optional[DesignSpace] = None,
    ) -> "CompoundWeights":
        if not 0 <= lam <= 1:
            raise ValidationError("lambda must lie in [0, 1]")
        ds = ds or _DEFAULT_SPACE
        k = cm.cost_ratio
        m_bar = ds.m_bar(cm)
        m_ate = _clamp(m_ate_continuous(icc.rho_y, k), ds.m_min, m_bar)
        m_hte = _clamp(m_hte_continuous(icc, k), ds.m_min, m_bar)
        return cls(
            w_ate=lam * _shape_ate(m_ate, icc.rho_y, k),
            w_hte=(1.0 - lam) * _shape_hte(m_hte, icc.rho_y, icc.rho_x, k),
            lam=lam,
        )


def compound_condition(icc: IccPair, k: float, w: CompoundWeights) -> bool:
    """Existence condition for an interior optimum of the compound objective:
    w_ate > w_hte * ((k+1)rho_y - rho_x(k*rho_y + 1))."""
    return w.w_ate > w.w_hte * (
        (k + 1.0) * icc.rho_y - icc.rho_x * (k * icc.rho_y + 1.0)
    )


def m_compound_continuous(icc: IccPair, k: float, w: CompoundWeights) -> float:
    """Continuous maximizer of the weighted compound objective
    w_ate/shape_ate(m) + w_hte/shape_hte_bare(m), via the closed-form
    quadratic root.  Returns ``inf`` when no interior optimum exists."""
    ry, rx = icc.rho_y, icc.rho_x
    if k == 0:
        # Free clusters: whenever the existence condition holds the compound
        # gain is monotone decreasing in m, so the floor is optimal.
        return 0.0
    a1 = ry * ry * (1.0 - rx)
    a2 = 2.0 * ry * (1.0 - ry) * (1.0 - rx)
    a3 = (1.0 - 2.0 * ry + rx * ry) * (1.0 - ry)
    b1 = ry * (rx - ry)
    qa = w.w_hte * (k * a1 - b1) - w.w_ate * ry
    qb = w.w_hte * k * a2
    qc = w.w_ate * k * (1.0 - ry) + w.w_hte * k * a3
    disc = qb * qb - 4.0 * qa * qc
    if qa == 0 or disc < 0:
        return math.inf
    root = (-qb - math.sqrt(disc)) / (2.0 * qa)
    if root <= 0:
        return math.inf
    return root


def _clamp(value: float, lo: float, hi: float) -> float:
    return min(max(value, lo), hi)


# ---------------------------------------------------------------------------
# Integer rounding
# ---------------------------------------------------------------------------


def round_design(
    m_continuous: float,
    cm: CostModel,
    objective: Callable[[Design], float],
    ds: Optional[DesignSpace] = None,
) -> Design:
    """Round a continuous cluster size to the better of floor/ceil.

    Candidates are clipped to [m_min, floor(m_bar)]; each is completed with
    the budget-maximal n and scored by ``objective`` (lower is better).  Ties
    break toward the smaller cluster size (more clusters).
    """
    ds = ds or _DEFAULT_SPACE
    m_cap = math.floor(ds.m_bar(cm))
    candidates = sorted(
        {
            int(_clamp(m, ds.m_min, m_cap))
            for m in (math.floor(m_continuous), math.ceil(m_continuous))
        }
    )
    scored = []
    for m in candidates:
        d = design_for_m(m, cm, m_continuous=m_continuous)
        scored.append((objective(d), m, d))
    if not scored:
        raise ConfigurationError("no feasible rounding candidate")
    scored.sort(key=lambda t: (t[0], t[1]))
    return scored[0][2]


# ---------------------------------------------------------------------------
# LOD entry points
# ---------------------------------------------------------------------------


def _check_space(cm: CostModel, ds: DesignSpace) -> float:
    m_bar = ds.m_bar(cm)
    if math.floor(m_bar) < ds.m_min:
        raise ConfigurationError(
            f"infeasible design space: largest affordable cluster size "
            f"{m_bar:.6g} is below m_min={ds.m_min}"
        )
    return m_bar


def lod_hte(
    icc: IccPair,
    cm: CostModel,
    sc: Optional[ScaleModel] = None,
    ds: Optional[DesignSpace] = None,
) -> LodResult:
    """Locally optimal design minimizing the interaction variance."""
    sc = sc or _UNIT
    ds = ds or _DEFAULT_SPACE
    m_bar = _check_space(cm, ds)
    k = cm.cost_ratio
    condition = hte_condition(icc, k)
    m_cont = m_hte_continuous(icc, k)
    capped = m_cont > m_bar
    m_target = m_bar if capped else _clamp(m_cont, ds.m_min, m_bar)
    design = round_design(
        m_target,
        cm,
        lambda d: _var_hte_mn(d.m, d.n, icc.rho_y, icc.rho_x, sc),
        ds,
    )
    return LodResult(
        design=design,
        capped=capped,
        condition_satisfied=condition,
        m_continuous=m_target,
        objective_value=_var_hte_mn(design.m, design.n, icc.rho_y, icc.rho_x, sc),
    )


def lod_ate(
    rho_y: float,
    cm: CostModel,
    ds: Optional[DesignSpace] = None,
    sc: Optional[ScaleModel] = None,
) -> LodResult:
    """Locally optimal design minimizing the average-effect variance."""
    sc = sc or _UNIT
    ds = ds or _DEFAULT_SPACE
    m_bar = _check_space(cm, ds)
    k = cm.cost_ratio
    if rho_y == 0:
        # Degenerate flat case: the closed form has no interior optimum.
        # Return the smallest cluster size (most clusters).
        design = design_for_m(ds.m_min, cm, m_continuous=float(ds.m_min))
        return LodResult(
            design=design,
            capped=False,
            condition_satisfied=False,
            m_continuous=float(ds.m_min),
            objective_value=_var_ate_mn(design.m, design.n, rho_y, sc),
        )
    m_cont = m_ate_continuous(rho_y, k)
    capped = m_cont > m_bar
    m_target = m_bar if capped else _clamp(m_cont, ds.m_min, m_bar)
    design = round_design(
        m_target, cm, lambda d: _var_ate_mn(d.m, d.n, rho_y, sc), ds
    )
    return LodResult(
        design=design,
        capped=capped,
        condition_satisfied=True,
        m_continuous=m_target,
        objective_value=_var_ate_mn(design.m, design.n, rho_y, sc),
    )


def _compound_gain(d_m: float, d_n: float, icc: IccPair, w: CompoundWeights) -> float:
    """Weighted compound objective at an integer candidate: weighted sum of
    inverse unit-scale variances (interaction term in the bare form the
    closed-form root optimizes).  Higher is better."""
    ry, rx = icc.rho_y, icc.rho_x
    v_ate = (1.0 + (d_m - 1.0) * ry) / (d_n * d_m)
    dep = 1.0 + (d_m - 2.0) * ry - (d_m - 1.0) * rx * ry
    return w.w_ate / v_ate + w.w_hte * dep / v_ate


def lod_compound(
    icc: IccPair,
    cm: CostModel,
    sc: Optional[ScaleModel] = None,
    ds: Optional[DesignSpace] = None,
    lam: float = 0.5,
) -> LodResult:
    """Locally optimal design for the weighted compound objective.

    ``objective_value`` is the compound criterion (weighted sum of the two
    relative efficiencies) at the returned design.
    """
    from .maximin import compound_criterion  # local import to avoid a cycle

    sc = sc or _UNIT
    ds = ds or _DEFAULT_SPACE
    if not 0 <= lam <= 1:
        raise ValidationError("lambda must lie in [0, 1]")
    m_bar = _check_space(cm, ds)
    k = cm.cost_ratio
    w = CompoundWeights.for_scenario(icc, cm, lam, ds)
    condition = compound_condition(icc, k, w)
    m_cont = m_compound_continuous(icc, k, w) if condition else math.inf
    capped = m_cont > m_bar
    m_target = m_bar if capped else _clamp(m_cont, ds.m_min, m_bar)
    design = round_design(
        m_target,
        cm,
        lambda d: -_compound_gain(d.m, d.n, icc, w),
        ds,
    )
    return LodResult(
        design=design,
        capped=capped,
        condition_satisfied=condition,
        m_continuous=m_target,
        objective_value=compound_criterion(design, icc, lam, cm, sc, ds),
    )
