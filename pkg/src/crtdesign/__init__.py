"""Cost-constrained optimal and maximin designs for cluster randomized
trials with average-effect and treatment-effect-heterogeneity objectives."""

from .core import (
    BudgetError,
    ConfigurationError,
    CostModel,
    DegenerateDesignError,
    Design,
    DesignSpace,
    EffectSpec,
    IccPair,
    ParameterSpace,
    ScaleModel,
    ValidationError,
    design_for_m,
    hte_ate_ratio,
    n_continuous,
    n_for_m,
    var_ate,
    var_hte,
)
from .lod import (
    CompoundWeights,
    LodResult,
    compound_condition,
    hte_condition,
    lod_ate,
    lod_compound,
    lod_hte,
    m_ate_continuous,
    m_compound_continuous,
    m_hte_continuous,
    round_design,
)
from .maximin import (
    CriterionKind,
    MaximinResult,
    Surface,
    compound_criterion,
    criterion_surface,
    maximin_ate,
    maximin_compound,
    maximin_hte,
    re_ate,
    re_hte,
)
from .power import (
    PowerBounds,
    PowerReport,
    TestKind,
    power_ate,
    power_bounds,
    power_curve,
    power_hte,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetError",
    "CompoundWeights",
    "ConfigurationError",
    "CostModel",
    "CriterionKind",
    "DegenerateDesignError",
    "Design",
    "DesignSpace",
    "EffectSpec",
    "IccPair",
    "LodResult",
    "MaximinResult",
    "ParameterSpace",
    "PowerBounds",
    "PowerReport",
    "ScaleModel",
    "Surface",
    "TestKind",
    "ValidationError",
    "compound_criterion",
    "criterion_surface",
    "design_for_m",
    "hte_ate_ratio",
    "lod_ate",
    "lod_compound",
    "lod_hte",
    "maximin_ate",
    "maximin_compound",
    "maximin_hte",
    "n_continuous",
    "n_for_m",
    "power_ate",
    "power_bounds",
    "power_curve",
    "power_hte",
    "re_ate",
    "re_hte",
    "round_design",
    "compound_condition",
    "hte_condition",
    "m_ate_continuous",
    "m_compound_continuous",
    "m_hte_continuous",
    "var_ate",
    "var_hte",
]
