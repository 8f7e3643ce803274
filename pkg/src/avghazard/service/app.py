"""FastAPI application exposing estimation, oracle and simulation endpoints.

All math lives in the core package; handlers translate payloads and map
library errors to HTTP 400 responses.  Run locally with
``uvicorn avghazard.service:app``.
"""

from __future__ import annotations

import math

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..average import Extrapolation, average_hazard, average_hazard_harmonic
from ..core import fit_kaplan_meier, ingest
from ..errors import AvgHazardError
from ..io import parse_grid
from ..piecewise import PiecewiseExpModel
from ..simulate import SimulationConfig, run_bias_study
from .schemas import (
    EstimatePoint,
    EstimateRequest,
    EstimateResponse,
    OraclePoint,
    OracleRequest,
    OracleResponse,
    SimulateRequest,
    SimulateResponse,
    SummaryRowOut,
)


def _resolve_taus(taus: list[float] | None, tau_grid: str | None) -> list[float]:
    if taus is not None:
        return taus
    return parse_grid(tau_grid)


def _resolve_model(hazard_model, constant_hazard) -> PiecewiseExpModel:
    if hazard_model is not None:
        return PiecewiseExpModel(tuple(hazard_model.cuts), tuple(hazard_model.hazards))
    return PiecewiseExpModel.constant(constant_hazard)


def create_app() -> FastAPI:
    app = FastAPI(title="avghazard service", version=__version__)

    @app.exception_handler(AvgHazardError)
    async def _domain_error(request: Request, exc: AvgHazardError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "version": __version__}

    @app.post("/estimate", response_model=EstimateResponse)
    def estimate(req: EstimateRequest) -> EstimateResponse:
        data = ingest([(r.time, r.status) for r in req.records])
        fit = fit_kaplan_meier(data)
        extrapolation = Extrapolation(req.extrapolation)
        harmonic_index = {float(t): j for j, t in enumerate(fit.table.times, start=1)}
        points = []
        for tau in _resolve_taus(req.taus, req.tau_grid):
            est = average_hazard(fit, tau, extrapolation)
            harmonic = None
            if req.harmonic and tau in harmonic_index:
                harmonic = average_hazard_harmonic(fit, harmonic_index[tau])
            points.append(
                EstimatePoint(
                    tau=est.tau,
                    cum_incidence=est.cum_incidence,
                    rmst=est.rmst,
                    ah=est.value,
                    degenerate=est.degenerate,
                    harmonic=harmonic,
                )
            )
        return EstimateResponse(
            n_observations=data.n, n_events=data.n_events, points=points
        )

    @app.post("/oracle", response_model=OracleResponse)
    def oracle(req: OracleRequest) -> OracleResponse:
        model = _resolve_model(req.hazard_model, req.constant_hazard)
        fn = {
            "survival": model.survival,
            "cumhaz": model.cum_hazard,
            "density": model.density,
            "ah": model.average_hazard,
        }[req.what]
        points = [
            OraclePoint(tau=tau, value=fn(tau))
            for tau in _resolve_taus(req.taus, req.tau_grid)
        ]
        return OracleResponse(what=req.what, points=points)

    @app.post("/simulate", response_model=SimulateResponse)
    def simulate(req: SimulateRequest) -> SimulateResponse:
        config = SimulationConfig(
            model=_resolve_model(req.hazard_model, req.constant_hazard),
            censor_time=req.censor_time,
            sample_sizes=tuple(req.sample_sizes),
            replications=req.replications,
            tau_grid=tuple(parse_grid(req.tau_grid)),
            seed=req.seed,
            extrapolation=Extrapolation(req.extrapolation),
        )
        summary = run_bias_study(config)
        rows = [
            SummaryRowOut(
                n=r.n,
                tau=r.tau,
                true_ah=r.true_ah,
                mean_ah=r.mean_ah if not math.isnan(r.mean_ah) else 0.0,
                bias=r.bias if not math.isnan(r.bias) else 0.0,
                mc_se=r.mc_se,
                n_defined=r.n_defined,
                n_degenerate=r.n_degenerate,
            )
            for r in summary.rows
        ]
        return SimulateResponse(rows=rows, max_abs_bias=summary.max_abs_bias())

    return app


app = create_app()
