"""Maximin designs over ICC uncertainty.

A candidate design is scored by its worst-case relative efficiency (or
compound criterion) over a rectangular ICC grid; the maximin design maximizes
that worst case.  Relative efficiency compares the candidate against the
locally optimal design for each ICC pair, with the reference evaluated at its
continuous (pre-rounding) constrained optimum and the candidate at its
budget-exhausting continuous n — this keeps every value in (0, 1] exactly and
the criterion surface free of discretization kinks.

References are computed on a dedicated reference space (default: cluster
sizes from 2 up to the size affordable with 6 clusters) that is independent
of any search-space restriction, so restricting the search never redefines
what "fully efficient" means.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from . import _kernels
from .core import (
    ConfigurationError,
    CostModel,
    Design,
    DesignSpace,
    IccPair,
    ParameterSpace,
    ScaleModel,
    ValidationError,
    _shape_ate,
    _shape_hte,
    design_for_m,
)
from .lod import _clamp, m_ate_continuous, m_hte_continuous

_UNIT = ScaleModel()

THREADS_ENV = "CRTDESIGN_THREADS"

# Tolerance for collecting the set of ICC pairs attaining a worst case.
_TIE_REL = 1e-12


class CriterionKind(Enum):
    """Which efficiency criterion a surface or maximin search uses."""

    HTE_RE = "hte"
    ATE_RE = "ate"
    COMPOUND = "compound"


_KIND_CODE = {
    CriterionKind.HTE_RE: _kernels.KIND_HTE,
    CriterionKind.ATE_RE: _kernels.KIND_ATE,
    CriterionKind.COMPOUND: _kernels.KIND_COMPOUND,
}


def reference_space() -> DesignSpace:
    """Default space on which reference (fully efficient) designs live."""
    return DesignSpace(m_min=2, m_max=None, n_min=6)


def _reference_bounds(
    cm: CostModel, ref: Optional[DesignSpace]
) -> tuple[float, float]:
    ref = ref or reference_space()
    return float(ref.m_min), ref.m_bar(cm)


# ---------------------------------------------------------------------------
# Pointwise criteria
# ---------------------------------------------------------------------------


def re_hte(
    d: Design,
    icc: IccPair,
    cm: CostModel,
    sc: Optional[ScaleModel] = None,
    ds: Optional[DesignSpace] = None,
) -> float:
    """Relative efficiency of ``d`` for the interaction objective at ``icc``:
    reference variance over candidate variance.  Scale-free (``sc`` is
    accepted for signature symmetry; scales cancel in the ratio)."""
    del sc
    k = cm.cost_ratio
    m_min, m_bar = _reference_bounds(cm, ds)
    m_ref = _clamp(m_hte_continuous(icc, k), m_min, m_bar)
    return _shape_hte(m_ref, icc.rho_y, icc.rho_x, k) / _shape_hte(
        float(d.m), icc.rho_y, icc.rho_x, k
    )


def re_ate(
    d: Design,
    rho_y: float,
    cm: CostModel,
    ds: Optional[DesignSpace] = None,
) -> float:
    """Relative efficiency of ``d`` for the average-effect objective; depends
    on the outcome ICC only."""
    if not 0 <= rho_y < 1:
        raise ValidationError("rho_y must lie in [0, 1)")
    k = cm.cost_ratio
    m_min, m_bar = _reference_bounds(cm, ds)
    if rho_y == 0:
        # Flat direction: the continuous-n variance decreases up to the cap.
        m_ref = m_bar
    else:
        m_ref = _clamp(m_ate_continuous(rho_y, k), m_min, m_bar)
    return _shape_ate(m_ref, rho_y, k) / _shape_ate(float(d.m), rho_y, k)


def compound_criterion(
    d: Design,
    icc: IccPair,
    lam: float,
    cm: CostModel,
    sc: Optional[ScaleModel] = None,
    ds: Optional[DesignSpace] = None,
) -> float:
    """Weighted combination lam*RE_ate + (1-lam)*RE_hte in (0, 1]."""
    if not 0 <= lam <= 1:
        raise ValidationError("lambda must lie in [0, 1]")
    return lam * re_ate(d, icc.rho_y, cm, ds) + (1.0 - lam) * re_hte(
        d, icc, cm, sc, ds
    )


# ---------------------------------------------------------------------------
# Surfaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Surface:
    """Criterion values for every (cluster size, ICC grid point) cell."""

    kind: CriterionKind
    lam: Optional[float]
    m_values: tuple[int, ...]
    n_values: tuple[int, ...]
    grid: tuple[IccPair, ...]
    values: tuple[tuple[float, ...], ...]  # values[i][j]: m_values[i], grid[j]

    def value_at(self, m: int, icc: IccPair) -> float:
        return self.values[self.m_values.index(m)][self.grid.index(icc)]

    def as_mapping(self) -> dict[tuple[int, IccPair], float]:
        return {
            (m, icc): self.values[i][j]
            for i, m in enumerate(self.m_values)
            for j, icc in enumerate(self.grid)
        }

    def worst_case(self, i: int) -> tuple[float, list[IccPair]]:
        row = self.values[i]
        lo = min(row)
        ties = [
            self.grid[j]
            for j, v in enumerate(row)
            if v <= lo * (1.0 + _TIE_REL) + _TIE_REL
        ]
        return lo, ties

    def to_records(self) -> list[dict]:
        """Tabular export with the fixed column contract
        (m, n, rho_y, rho_x, value, kind, lambda)."""
        return [
            {
                "m": m,
                "n": self.n_values[i],
                "rho_y": icc.rho_y,
                "rho_x": icc.rho_x,
                "value": self.values[i][j],
                "kind": self.kind.value,
                "lambda": self.lam,
            }
            for i, m in enumerate(self.m_values)
            for j, icc in enumerate(self.grid)
        ]


@dataclass(frozen=True)
class MaximinResult:
    """Outcome of a maximin sweep: the chosen design, the ICC pair(s) at
    which its criterion is worst, that worst value, and the full surface."""

    design: Design
    worst_case_iccs: tuple[IccPair, ...]
    min_value: float
    surface: Surface
    kind: CriterionKind
    lam: Optional[float] = None


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def criterion_surface(
    kind: CriterionKind,
    ps: ParameterSpace,
    ds: DesignSpace,
    cm: CostModel,
    sc: Optional[ScaleModel] = None,
    lam: Optional[float] = None,
    ref: Optional[DesignSpace] = None,
) -> Surface:
    """Evaluate the chosen criterion on the full (m x ICC-grid) lattice.

    The sweep is an embarrassingly parallel map over cluster sizes; set the
    ``CRTDESIGN_THREADS`` environment variable to parallelize.  Results are
    deterministic and independent of evaluation order.
    """
    del sc  # criteria are scale-free
    if kind is CriterionKind.COMPOUND:
        if lam is None:
            raise ValidationError("a lambda value is required for the compound criterion")
        if not 0 <= lam <= 1:
            raise ValidationError("lambda must lie in [0, 1]")
    else:
        lam = None
    grid = ps.grid()
    ms = list(ds.m_values(cm))
    k = cm.cost_ratio
    ref_min, ref_bar = _reference_bounds(cm, ref)
    rys = [icc.rho_y for icc in grid]
    rxs = [icc.rho_x for icc in grid]
    code = _KIND_CODE[kind]
    lam_val = 0.0 if lam is None else lam

    threads = _thread_count()
    fms = [float(m) for m in ms]
    if threads > 1 and len(fms) > 1:
        chunk = math.ceil(len(fms) / threads)
        parts = [fms[i : i + chunk] for i in range(0, len(fms), chunk)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(
                pool.map(
                    lambda part: _kernels.criterion_matrix(
                        code, lam_val, part, rys, rxs, k, ref_min, ref_bar
                    ),
                    parts,
                )
            )
        rows = [row for part in results for row in part]
    else:
        rows = _kernels.criterion_matrix(
            code, lam_val, fms, rys, rxs, k, ref_min, ref_bar
        )

    return Surface(
        kind=kind,
        lam=lam,
        m_values=tuple(ms),
        n_values=tuple(design_for_m(m, cm).n for m in ms),
        grid=tuple(grid),
        values=tuple(tuple(row) for row in rows),
    )


def _maximin(
    kind: CriterionKind,
    ps: ParameterSpace,
    ds: DesignSpace,
    cm: CostModel,
    sc: Optional[ScaleModel],
    lam: Optional[float],
    ref: Optional[DesignSpace],
) -> MaximinResult:
    surface = criterion_surface(kind, ps, ds, cm, sc, lam, ref)
    if not surface.m_values:
        raise ConfigurationError("empty feasible design set")
    best_i = None
    best_val = -math.inf
    for i in range(len(surface.m_values)):
        lo, _ = surface.worst_case(i)
        # Strict improvement only: ties resolve to the smaller cluster size.
        if lo > best_val:
            best_val = lo
            best_i = i
    assert best_i is not None
    lo, ties = surface.worst_case(best_i)
    m = surface.m_values[best_i]
    return MaximinResult(
        design=design_for_m(m, cm),
        worst_case_iccs=tuple(ties),
        min_value=lo,
        surface=surface,
        kind=kind,
        lam=surface.lam,
    )


def maximin_hte(
    ps: ParameterSpace,
    ds: DesignSpace,
    cm: CostModel,
    sc: Optional[ScaleModel] = None,
    ref: Optional[DesignSpace] = None,
) -> MaximinResult:
    """Design maximizing the worst-case interaction RE over the ICC grid."""
    return _maximin(CriterionKind.HTE_RE, ps, ds, cm, sc, None, ref)


def maximin_ate(
    ps: ParameterSpace,
    ds: DesignSpace,
    cm: CostModel,
    sc: Optional[ScaleModel] = None,
    ref: Optional[DesignSpace] = None,
) -> MaximinResult:
    """Design maximizing the worst-case average-effect RE over the ICC grid."""
    return _maximin(CriterionKind.ATE_RE, ps, ds, cm, sc, None, ref)


def maximin_compound(
    ps: ParameterSpace,
    ds: DesignSpace,
    cm: CostModel,
    sc: Optional[ScaleModel] = None,
    lam: float = 0.5,
    ref: Optional[DesignSpace] = None,
) -> MaximinResult:
    """Design maximizing the worst-case compound criterion over the grid."""
    return _maximin(CriterionKind.COMPOUND, ps, ds, cm, sc, lam, ref)
