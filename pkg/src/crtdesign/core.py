"""Domain types and exact variance formulas for two-level cluster randomized
trials with a single baseline effect modifier.

Everything in this module is a pure function of immutable value objects, so
all operations are safe to call concurrently.

Notation used throughout the package:

* ``m``   -- cluster size (individuals per cluster), integer >= 2
* ``n``   -- number of clusters, integer >= 2
* ``rho_y`` -- outcome intracluster correlation, adjusted for the covariate
* ``rho_x`` -- covariate intracluster correlation
* ``k``   -- cluster-to-individual cost ratio c/s
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional


class ValidationError(ValueError):
    """An input violates a documented precondition."""


class ConfigurationError(ValidationError):
    """A design/search space is empty or internally inconsistent."""


class BudgetError(ValidationError):
    """A requested design is not affordable under the cost model."""


class DegenerateDesignError(ArithmeticError):
    """The interaction-variance denominator is non-positive: the requested
    (m, rho_y, rho_x) combination leaves the interaction estimator's variance
    undefined.  Raised explicitly rather than returning a negative variance,
    which would silently corrupt downstream optimization."""


@dataclass(frozen=True)
class CostModel:
    """Budget decomposition: recruiting a cluster costs ``cluster_cost`` plus
    ``individual_cost`` per member, so a design (m, n) costs n*(c + s*m)."""

    total_budget: float
    cluster_cost: float
    individual_cost: float

    def __post_init__(self) -> None:
        if not self.total_budget > 0:
            raise ValidationError("total_budget must be positive")
        if self.cluster_cost < 0:
            raise ValidationError("cluster_cost must be non-negative")
        if not self.individual_cost > 0:
            raise ValidationError("individual_cost must be positive")
        if self.total_budget < self.cluster_cost + 2 * self.individual_cost:
            raise ValidationError(
                "total_budget must afford at least one cluster of two "
                "(B >= c + 2s)"
            )

    @property
    def cost_ratio(self) -> float:
        """k = c/s, the only budget quantity entering continuous optima."""
        return self.cluster_cost / self.individual_cost

    def cost_of(self, m: int, n: int) -> float:
        return n * (self.cluster_cost + self.individual_cost * m)


@dataclass(frozen=True)
class IccPair:
    """Intracluster correlations: outcome (covariate-adjusted) and covariate."""

    rho_y: float
    rho_x: float

    def __post_init__(self) -> None:
        if not 0 <= self.rho_y < 1:
            raise ValidationError("rho_y must lie in [0, 1)")
        if not 0 <= self.rho_x <= 1:
            raise ValidationError("rho_x must lie in [0, 1]")


@dataclass(frozen=True)
class ScaleModel:
    """Variance scales: outcome residual variance given the covariate,
    covariate variance, and treatment-assignment variance E(W)(1-E(W))."""

    var_y_given_x: float = 1.0
    var_x: float = 1.0
    var_w: float = 0.25

    def __post_init__(self) -> None:
        if not self.var_y_given_x > 0:
            raise ValidationError("var_y_given_x must be positive")
        if not self.var_x > 0:
            raise ValidationError("var_x must be positive")
        if not 0 < self.var_w <= 0.25:
            raise ValidationError(
                "var_w must lie in (0, 0.25] (0.25 at 1:1 allocation)"
            )


@dataclass(frozen=True)
class Design:
    """An integer (cluster size, number of clusters) pair."""

    m: int
    n: int
    feasible: bool = True
    m_continuous: Optional[float] = None

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValidationError("cluster size m must be >= 2")
        if self.n < 2:
            raise ValidationError("number of clusters n must be >= 2")

    @property
    def total_size(self) -> int:
        return self.m * self.n


@dataclass(frozen=True)
class EffectSpec:
    """Effect sizes in outcome units: the average effect and the
    per-covariate-unit interaction effect, with a two-sided alpha."""

    beta_ate: float = 0.0
    beta_hte: float = 0.0
    alpha: float = 0.05

    def __post_init__(self) -> None:
        if not 0 < self.alpha < 1:
            raise ValidationError("alpha must lie in (0, 1)")

    def standardized_ate(self, sc: ScaleModel) -> float:
        return self.beta_ate / math.sqrt(sc.var_y_given_x)

    def standardized_hte(self, sc: ScaleModel) -> float:
        return self.beta_hte * math.sqrt(sc.var_x / sc.var_y_given_x)


@dataclass(frozen=True)
class ParameterSpace:
    """Rectangular ICC uncertainty region with a uniform evaluation grid.

    ``grid_steps`` counts intervals per axis, so the grid has grid_steps+1
    points per axis and always contains the four corners exactly."""

    rho_y_range: tuple[float, float]
    rho_x_range: tuple[float, float]
    grid_steps: int = 40

    def __post_init__(self) -> None:
        ylo, yhi = self.rho_y_range
        xlo, xhi = self.rho_x_range
        if not (0 <= ylo <= yhi < 1):
            raise ValidationError("rho_y_range must satisfy 0 <= lo <= hi < 1")
        if not (0 <= xlo <= xhi <= 1):
            raise ValidationError("rho_x_range must satisfy 0 <= lo <= hi <= 1")
        if self.grid_steps < 1:
            raise ValidationError("grid_steps must be a positive integer")

    @staticmethod
    def _axis(lo: float, hi: float, steps: int) -> list[float]:
        if lo == hi:
            return [lo]
        return [lo + (hi - lo) * i / steps for i in range(steps)] + [hi]

    def rho_y_values(self) -> list[float]:
        return self._axis(*self.rho_y_range, self.grid_steps)

    def rho_x_values(self) -> list[float]:
        return self._axis(*self.rho_x_range, self.grid_steps)

    def grid(self) -> list[IccPair]:
        return [
            IccPair(ry, rx)
            for ry in self.rho_y_values()
            for rx in self.rho_x_values()
        ]

    @property
    def cell_count(self) -> int:
        return len(self.rho_y_values()) * len(self.rho_x_values())

    def corners(self) -> list[IccPair]:
        ylo, yhi = self.rho_y_range
        xlo, xhi = self.rho_x_range
        seen: dict[tuple[float, float], IccPair] = {}
        for ry in (ylo, yhi):
            for rx in (xlo, xhi):
                seen[(ry, rx)] = IccPair(ry, rx)
        return list(seen.values())

    @classmethod
    def point(cls, icc: IccPair) -> "ParameterSpace":
        return cls((icc.rho_y, icc.rho_y), (icc.rho_x, icc.rho_x), 1)


@dataclass(frozen=True)
class DesignSpace:
    """Search bounds: cluster sizes in [m_min, m_max] (m_max defaults to the
    largest size affordable with n_min clusters) and at least n_min clusters."""

    m_min: int = 2
    m_max: Optional[int] = None
    n_min: int = 6

    def __post_init__(self) -> None:
        if self.m_min < 2:
            raise ValidationError("m_min must be >= 2")
        if self.n_min < 2:
            raise ValidationError("n_min must be >= 2")
        if self.m_max is not None and self.m_max < self.m_min:
            raise ValidationError("m_max must be >= m_min")

    def m_bar(self, cm: CostModel) -> float:
        """Continuous cap on cluster size so that n_min clusters remain
        affordable: (B/n_min - c)/s, optionally tightened by m_max."""
        cap = (cm.total_budget / self.n_min - cm.cluster_cost) / cm.individual_cost
        if self.m_max is not None:
            cap = min(cap, float(self.m_max))
        return cap

    def m_values(self, cm: CostModel) -> range:
        hi = math.floor(self.m_bar(cm))
        if hi < self.m_min:
            raise ConfigurationError(
                "design space is empty: no cluster size in "
                f"[{self.m_min}, {hi}] affords {self.n_min} clusters"
            )
        return range(self.m_min, hi + 1)


# ---------------------------------------------------------------------------
# Variance formulas
# ---------------------------------------------------------------------------


def _dep_term(m: float, rho_y: float, rho_x: float) -> float:
    """Denominator term 1 + (m-2)rho_y - (m-1)rho_x*rho_y of the interaction
    variance.  Within the valid ICC ranges it is bounded below by 1-rho_y."""
    return 1.0 + (m - 2.0) * rho_y - (m - 1.0) * rho_x * rho_y


def _var_hte_mn(
    m: float, n: float, rho_y: float, rho_x: float, sc: ScaleModel
) -> float:
    """Interaction-estimator variance at possibly non-integer (m, n)."""
    dep = _dep_term(m, rho_y, rho_x)
    if dep <= 0:
        raise DegenerateDesignError(
            f"interaction variance undefined at m={m}, rho_y={rho_y}, "
            f"rho_x={rho_x}: denominator term {dep:.6g} <= 0"
        )
    return (
        sc.var_y_given_x
        * (1.0 - rho_y)
        * (1.0 + (m - 1.0) * rho_y)
        / (n * m * sc.var_w * sc.var_x * dep)
    )


def _var_ate_mn(m: float, n: float, rho_y: float, sc: ScaleModel) -> float:
    """Average-effect-estimator variance at possibly non-integer (m, n)."""
    return sc.var_y_given_x * (1.0 + (m - 1.0) * rho_y) / (n * m * sc.var_w)


def var_hte(d: Design, icc: IccPair, sc: ScaleModel) -> float:
    """Variance of the treatment-by-covariate interaction estimator."""
    return _var_hte_mn(d.m, d.n, icc.rho_y, icc.rho_x, sc)


def var_ate(d: Design, icc: IccPair, sc: ScaleModel) -> float:
    """Variance of the covariate-adjusted average treatment effect estimator."""
    return _var_ate_mn(d.m, d.n, icc.rho_y, sc)


def hte_ate_ratio(m: int, icc: IccPair, sc: ScaleModel) -> float:
    """Multiplicative factor linking the two variances:
    var_hte = var_ate * ratio.  Equals 1/var_x at rho_x = 1 or rho_y = 0."""
    dep = _dep_term(m, icc.rho_y, icc.rho_x)
    if dep <= 0:
        raise DegenerateDesignError(
            f"ratio undefined at m={m}, rho_y={icc.rho_y}, rho_x={icc.rho_x}"
        )
    return (1.0 - icc.rho_y) / (sc.var_x * dep)


def n_for_m(m: int, cm: CostModel) -> int:
    """Largest number of clusters of size m affordable under the budget."""
    unit = cm.cluster_cost + cm.individual_cost * m
    if unit > cm.total_budget:
        raise BudgetError(
            f"cluster size {m} is unaffordable: one cluster costs {unit:.6g} "
            f"against budget {cm.total_budget:.6g}"
        )
    return math.floor(cm.total_budget / unit)


def n_continuous(m: float, cm: CostModel) -> float:
    """Budget-exhausting (non-integer) number of clusters for size m."""
    return cm.total_budget / (cm.cluster_cost + cm.individual_cost * m)


def design_for_m(m: int, cm: CostModel, m_continuous: Optional[float] = None) -> Design:
    """Build the budget-maximal design with cluster size m."""
    return Design(m=m, n=n_for_m(m, cm), feasible=True, m_continuous=m_continuous)


# Unit-scale variance shapes, used wherever scale factors cancel (relative
# efficiency, compound weights).  Both drop the common s/(B var_w) budget
# factor, i.e. they are the variances at continuous n up to one shared
# constant.


def _shape_ate(m: float, rho_y: float, k: float) -> float:
    return (k + m) * (1.0 + (m - 1.0) * rho_y) / m


def _shape_hte(m: float, rho_y: float, rho_x: float, k: float) -> float:
    dep = _dep_term(m, rho_y, rho_x)
    if dep <= 0:
        raise DegenerateDesignError(
            f"interaction variance undefined at m={m}, rho_y={rho_y}, "
            f"rho_x={rho_x}"
        )
    return (1.0 - rho_y) * _shape_ate(m, rho_y, k) / dep
