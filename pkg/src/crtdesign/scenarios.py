"""Built-in scenario presets.

Two synthetic reference setups (cost ratios 10 and 20 on a 100k budget with
unit scales and standardized effects of 0.2) and a worked real-data example:
a community diabetes-prevention trial with a 20k budget, k=20, an IDRS
outcome (marginal SD 10.270 used as the outcome scale) and two candidate
effect modifiers — BMI (SD 4.031) and impaired-fasting-glucose status
(SD 0.417).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import (
    CostModel,
    DesignSpace,
    EffectSpec,
    IccPair,
    ParameterSpace,
    ScaleModel,
)


@dataclass(frozen=True)
class Scenario:
    """A complete, ready-to-run design scenario."""

    name: str
    cost: CostModel
    scales: ScaleModel
    effects: EffectSpec
    space: ParameterSpace
    design_space: DesignSpace
    icc: Optional[IccPair] = None  # point estimate, when one exists
    lam: float = 0.5


K10_REFERENCE = Scenario(
    name="k10-reference",
    cost=CostModel(total_budget=100_000, cluster_cost=500, individual_cost=50),
    scales=ScaleModel(),
    effects=EffectSpec(beta_ate=0.2, beta_hte=0.2),
    space=ParameterSpace((0.005, 0.2), (0.1, 1.0)),
    design_space=DesignSpace(),
)

K20_REFERENCE = Scenario(
    name="k20-reference",
    cost=CostModel(total_budget=100_000, cluster_cost=2000, individual_cost=100),
    scales=ScaleModel(),
    effects=EffectSpec(beta_ate=0.2, beta_hte=0.2),
    space=ParameterSpace((0.005, 0.2), (0.1, 1.0)),
    design_space=DesignSpace(),
)

KDPP_BMI = Scenario(
    name="kdpp-bmi",
    cost=CostModel(total_budget=20_000, cluster_cost=100, individual_cost=5),
    scales=ScaleModel(var_y_given_x=10.270**2, var_x=4.031**2),
    effects=EffectSpec(beta_ate=-1.5, beta_hte=-0.375),
    space=ParameterSpace((0.005, 0.1), (0.1, 0.75)),
    design_space=DesignSpace(m_min=8, m_max=40, n_min=66),
    icc=IccPair(0.028, 0.055),
)

KDPP_IFG = Scenario(
    name="kdpp-ifg",
    cost=CostModel(total_budget=20_000, cluster_cost=100, individual_cost=5),
    scales=ScaleModel(var_y_given_x=10.270**2, var_x=0.417**2),
    effects=EffectSpec(beta_ate=-1.5, beta_hte=-1.5),
    space=ParameterSpace((0.005, 0.1), (0.1, 0.75)),
    design_space=DesignSpace(m_min=8, m_max=40, n_min=66),
    icc=IccPair(0.032, 0.012),
)

SCENARIOS: dict[str, Scenario] = {
    s.name: s for s in (K10_REFERENCE, K20_REFERENCE, KDPP_BMI, KDPP_IFG)
}
