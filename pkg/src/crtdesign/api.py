"""Stateless HTTP service exposing the design toolkit.

Routes live under ``/v1``.  Every response echoes the validated inputs and
reports the server-side compute time, so clients can cache and detect stale
results.  Error mapping: malformed or out-of-range inputs give 400 with
machine-readable field paths, numerically degenerate scenarios give 422, and
requests whose ICC grid or cluster-size sweep exceeds the configured cell cap
give 413.

Environment variables:

* ``CRTDESIGN_CORS_ORIGINS`` — comma-separated allowed origins (default ``*``).
* ``CRTDESIGN_HOST`` / ``CRTDESIGN_PORT`` / ``CRTDESIGN_WORKERS`` — used by the
  ``run()`` helper when launching uvicorn directly.
"""

from __future__ import annotations

import os
import time
from typing import Literal, Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__
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
    n_for_m,
)
from .lod import LodResult, lod_ate, lod_compound, lod_hte
from .maximin import (
    MaximinResult,
    maximin_ate,
    maximin_compound,
    maximin_hte,
)
from .power import TestKind, power_ate, power_bounds, power_curve, power_hte

SCHEMA_VERSION = "1"

# Largest request we will evaluate: a full cluster-size sweep crossed with the
# densest supported ICC grid.
MAX_M_VALUES = 201
MAX_GRID_POINTS_PER_AXIS = 61
MAX_CELLS = MAX_M_VALUES * MAX_GRID_POINTS_PER_AXIS * MAX_GRID_POINTS_PER_AXIS


# ---------------------------------------------------------------------------
# Request models
# ---------------------------------------------------------------------------


class CostModelIn(BaseModel):
    total_budget: float
    cluster_cost: float
    individual_cost: float

    def to_domain(self) -> CostModel:
        return CostModel(self.total_budget, self.cluster_cost, self.individual_cost)


class IccIn(BaseModel):
    rho_y: float
    rho_x: float

    def to_domain(self) -> IccPair:
        return IccPair(self.rho_y, self.rho_x)


class ScalesIn(BaseModel):
    var_y_given_x: float = 1.0
    var_x: float = 1.0
    var_w: float = 0.25

    def to_domain(self) -> ScaleModel:
        return ScaleModel(self.var_y_given_x, self.var_x, self.var_w)


class DesignSpaceIn(BaseModel):
    m_min: int = 2
    m_max: Optional[int] = None
    n_min: int = 6

    def to_domain(self) -> DesignSpace:
        return DesignSpace(self.m_min, self.m_max, self.n_min)


class ParameterSpaceIn(BaseModel):
    rho_y_range: tuple[float, float]
    rho_x_range: tuple[float, float]
    grid_steps: int = 40

    def to_domain(self) -> ParameterSpace:
        return ParameterSpace(
            tuple(self.rho_y_range), tuple(self.rho_x_range), self.grid_steps
        )


class EffectsIn(BaseModel):
    beta_ate: float = 0.0
    beta_hte: float = 0.0
    alpha: float = 0.05

    def to_domain(self) -> EffectSpec:
        return EffectSpec(self.beta_ate, self.beta_hte, self.alpha)


class LodHteRequest(BaseModel):
    cost: CostModelIn
    icc: IccIn
    scales: ScalesIn = Field(default_factory=ScalesIn)
    design_space: DesignSpaceIn = Field(default_factory=DesignSpaceIn)


class LodAteRequest(BaseModel):
    cost: CostModelIn
    rho_y: float
    scales: ScalesIn = Field(default_factory=ScalesIn)
    design_space: DesignSpaceIn = Field(default_factory=DesignSpaceIn)


class LodCompoundRequest(LodHteRequest):
    lam: float = Field(0.5, alias="lambda")

    model_config = {"populate_by_name": True}


class MaximinRequest(BaseModel):
    cost: CostModelIn
    space: ParameterSpaceIn
    scales: ScalesIn = Field(default_factory=ScalesIn)
    design_space: DesignSpaceIn = Field(default_factory=DesignSpaceIn)


class MaximinCompoundRequest(MaximinRequest):
    lam: float = Field(0.5, alias="lambda")

    model_config = {"populate_by_name": True}


class DesignIn(BaseModel):
    m: int
    n: Optional[int] = None

    def to_domain(self, cost: Optional[CostModel]) -> Design:
        n = self.n
        if n is None:
            if cost is None:
                raise ValidationError("either n or a cost model must be given")
            n = n_for_m(self.m, cost)
        return Design(m=self.m, n=n)


class PowerPointRequest(BaseModel):
    design: DesignIn
    effects: EffectsIn
    test: Literal["hte", "ate"] = "hte"
    icc: Optional[IccIn] = None
    rho_y: Optional[float] = None
    scales: ScalesIn = Field(default_factory=ScalesIn)
    cost: Optional[CostModelIn] = None
    use_t: bool = False


class PowerBoundsRequest(BaseModel):
    design: DesignIn
    effects: EffectsIn
    space: ParameterSpaceIn
    test: Literal["hte", "ate"] = "hte"
    scales: ScalesIn = Field(default_factory=ScalesIn)
    cost: Optional[CostModelIn] = None
    use_t: bool = False


class PowerCurveRequest(PowerBoundsRequest):
    rho_y_values: Optional[list[float]] = None


# ---------------------------------------------------------------------------
# Application factory
# ---------------------------------------------------------------------------


def _field_path(loc) -> str:
    return ".".join(str(p) for p in loc if p != "body")


def create_app() -> FastAPI:
    app = FastAPI(
        title="crtdesign",
        version=__version__,
        description=(
            "Cost-constrained optimal and maximin cluster-randomized-trial "
            "designs for average-effect and effect-heterogeneity objectives."
        ),
    )

    origins = os.environ.get("CRTDESIGN_CORS_ORIGINS", "*")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[o.strip() for o in origins.split(",")],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def _on_request_validation(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={
                "error": "validation",
                "details": [
                    {"field": _field_path(e["loc"]), "message": e["msg"]}
                    for e in exc.errors()
                ],
            },
        )

    @app.exception_handler(ValidationError)
    async def _on_domain_validation(request: Request, exc: ValidationError):
        return JSONResponse(
            status_code=400,
            content={
                "error": "validation",
                "details": [{"field": "", "message": str(exc)}],
            },
        )

    @app.exception_handler(DegenerateDesignError)
    async def _on_degenerate(request: Request, exc: DegenerateDesignError):
        return JSONResponse(
            status_code=422,
            content={"error": "degenerate", "message": str(exc)},
        )

    def _envelope(request_model: BaseModel, started: float, result: dict) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "inputs": request_model.model_dump(),
            "compute_seconds": time.perf_counter() - started,
            "result": result,
        }

    def _check_cells(ps: ParameterSpace, ds: DesignSpace, cm: CostModel) -> None:
        m_count = len(ds.m_values(cm))
        cells = m_count * ps.cell_count
        if cells > MAX_CELLS:
            raise _TooLarge(cells)

    class _TooLarge(Exception):
        def __init__(self, cells: int):
            self.cells = cells

    @app.exception_handler(_TooLarge)
    async def _on_too_large(request: Request, exc: _TooLarge):
        return JSONResponse(
            status_code=413,
            content={
                "error": "too_large",
                "message": (
                    f"requested evaluation has {exc.cells} cells; the cap is "
                    f"{MAX_CELLS}"
                ),
            },
        )

    def _lod_payload(res: LodResult) -> dict:
        return {
            "design": {"m": res.design.m, "n": res.design.n},
            "capped": res.capped,
            "condition_satisfied": res.condition_satisfied,
            "m_continuous": res.m_continuous,
            "objective_value": res.objective_value,
        }

    @app.post("/v1/lod/hte")
    def lod_hte_route(req: LodHteRequest):
        started = time.perf_counter()
        res = lod_hte(
            req.icc.to_domain(),
            req.cost.to_domain(),
            req.scales.to_domain(),
            req.design_space.to_domain(),
        )
        return _envelope(req, started, _lod_payload(res))

    @app.post("/v1/lod/ate")
    def lod_ate_route(req: LodAteRequest):
        started = time.perf_counter()
        res = lod_ate(
            req.rho_y,
            req.cost.to_domain(),
            req.design_space.to_domain(),
            req.scales.to_domain(),
        )
        return _envelope(req, started, _lod_payload(res))

    @app.post("/v1/lod/compound")
    def lod_compound_route(req: LodCompoundRequest):
        started = time.perf_counter()
        res = lod_compound(
            req.icc.to_domain(),
            req.cost.to_domain(),
            req.scales.to_domain(),
            req.design_space.to_domain(),
            req.lam,
        )
        return _envelope(req, started, _lod_payload(res))

    def _maximin_payload(res: MaximinResult, include_surface: bool) -> dict:
        payload = {
            "design": {"m": res.design.m, "n": res.design.n},
            "min_value": res.min_value,
            "kind": res.kind.value,
            "lambda": res.lam,
            "worst_case_iccs": [
                {"rho_y": icc.rho_y, "rho_x": icc.rho_x}
                for icc in res.worst_case_iccs
            ],
        }
        if include_surface:
            payload["surface"] = res.surface.to_records()
        return payload

    def _run_maximin(req, fn, surface: bool, lam=None):
        started = time.perf_counter()
        ps = req.space.to_domain()
        ds = req.design_space.to_domain()
        cm = req.cost.to_domain()
        sc = req.scales.to_domain()
        _check_cells(ps, ds, cm)
        res = fn(ps, ds, cm, sc) if lam is None else fn(ps, ds, cm, sc, lam)
        return _envelope(req, started, _maximin_payload(res, surface))

    @app.post("/v1/maximin/hte")
    def maximin_hte_route(req: MaximinRequest, surface: bool = False):
        return _run_maximin(req, maximin_hte, surface)

    @app.post("/v1/maximin/ate")
    def maximin_ate_route(req: MaximinRequest, surface: bool = False):
        return _run_maximin(req, maximin_ate, surface)

    @app.post("/v1/maximin/compound")
    def maximin_compound_route(req: MaximinCompoundRequest, surface: bool = False):
        return _run_maximin(req, maximin_compound, surface, lam=req.lam)

    @app.post("/v1/power/point")
    def power_point_route(req: PowerPointRequest):
        started = time.perf_counter()
        cost = req.cost.to_domain() if req.cost else None
        d = req.design.to_domain(cost)
        es = req.effects.to_domain()
        sc = req.scales.to_domain()
        if req.test == "hte":
            if req.icc is None:
                raise ValidationError("the interaction test needs an icc pair")
            report = power_hte(d, req.icc.to_domain(), es, sc, req.use_t)
        else:
            if req.rho_y is None:
                raise ValidationError("the average-effect test needs rho_y")
            report = power_ate(d, req.rho_y, es, sc, req.use_t)
        return _envelope(
            req,
            started,
            {
                "test": report.test.value,
                "design": {"m": d.m, "n": d.n},
                "power": report.power,
                "standardized_effect": report.standardized_effect,
                "variance_used": report.variance_used,
                "alpha": report.alpha,
            },
        )

    @app.post("/v1/power/bounds")
    def power_bounds_route(req: PowerBoundsRequest):
        started = time.perf_counter()
        cost = req.cost.to_domain() if req.cost else None
        d = req.design.to_domain(cost)
        ps = req.space.to_domain()
        if ps.cell_count > MAX_CELLS:
            raise _TooLarge(ps.cell_count)
        bounds = power_bounds(
            d,
            ps,
            req.effects.to_domain(),
            req.scales.to_domain(),
            TestKind(req.test),
            req.use_t,
        )
        return _envelope(
            req,
            started,
            {
                "test": req.test,
                "design": {"m": d.m, "n": d.n},
                "lower": bounds.lower,
                "upper": bounds.upper,
                "argmin_icc": {
                    "rho_y": bounds.argmin_icc.rho_y,
                    "rho_x": bounds.argmin_icc.rho_x,
                },
                "argmax_icc": {
                    "rho_y": bounds.argmax_icc.rho_y,
                    "rho_x": bounds.argmax_icc.rho_x,
                },
                "degenerate_iccs": [
                    {"rho_y": icc.rho_y, "rho_x": icc.rho_x}
                    for icc in bounds.degenerate_iccs
                ],
            },
        )

    @app.post("/v1/power/curve")
    def power_curve_route(req: PowerCurveRequest):
        started = time.perf_counter()
        cost = req.cost.to_domain() if req.cost else None
        d = req.design.to_domain(cost)
        ps = req.space.to_domain()
        if ps.cell_count > MAX_CELLS:
            raise _TooLarge(ps.cell_count)
        records = power_curve(
            d,
            ps,
            req.effects.to_domain(),
            req.scales.to_domain(),
            TestKind(req.test),
            req.rho_y_values,
            req.use_t,
        )
        return _envelope(req, started, {"records": records})

    @app.get("/v1/health")
    def health():
        from ._kernels import BACKEND

        return {
            "status": "ok",
            "version": __version__,
            "schema_version": SCHEMA_VERSION,
            "kernel_backend": BACKEND,
        }

    @app.get("/v1/schema")
    def schema():
        return {
            "schema_version": SCHEMA_VERSION,
            "openapi": app.openapi(),
        }

    return app


app = create_app()


def run() -> None:
    """Launch via uvicorn using the documented environment variables."""
    import uvicorn

    uvicorn.run(
        "crtdesign.api:app",
        host=os.environ.get("CRTDESIGN_HOST", "127.0.0.1"),
        port=int(os.environ.get("CRTDESIGN_PORT", "8000")),
        workers=int(os.environ.get("CRTDESIGN_WORKERS", "1")),
    )
