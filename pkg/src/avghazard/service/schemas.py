"""Pydantic request/response models for the service layer."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, model_validator


class RecordIn(BaseModel):
    """One right-censored observation; status 1 = event, 0 = censored."""

    time: float = Field(gt=0, description="observation time, > 0")
    status: Literal[0, 1]


class HazardModelSpec(BaseModel):
    """Piecewise-constant hazard: cuts ascending from 0, one rate per piece."""

    cuts: list[float]
    hazards: list[float]


class EstimateRequest(BaseModel):
    records: list[RecordIn] = Field(min_length=1)
    taus: list[float] | None = None
    tau_grid: str | None = Field(
        default=None, description="grid spec start:stop:step, alternative to taus"
    )
    extrapolation: Literal["error", "carry-forward"] = "error"
    harmonic: bool = False

    @model_validator(mode="after")
    def _exactly_one_tau_source(self):
        if (self.taus is None) == (self.tau_grid is None):
            raise ValueError("provide exactly one of 'taus' or 'tau_grid'")
        if self.taus is not None and not self.taus:
            raise ValueError("'taus' must be non-empty")
        return self


class EstimatePoint(BaseModel):
    tau: float
    cum_incidence: float
    rmst: float
    ah: float
    degenerate: bool
    harmonic: float | None = None


class EstimateResponse(BaseModel):
    n_observations: int
    n_events: int
    points: list[EstimatePoint]


class OracleRequest(BaseModel):
    hazard_model: HazardModelSpec | None = None
    constant_hazard: float | None = Field(default=None, gt=0)
    taus: list[float] | None = None
    tau_grid: str | None = None
    what: Literal["survival", "cumhaz", "density", "ah"] = "ah"

    @model_validator(mode="after")
    def _exactly_one_model_and_tau_source(self):
        if (self.hazard_model is None) == (self.constant_hazard is None):
            raise ValueError("provide exactly one of 'hazard_model' or 'constant_hazard'")
        if (self.taus is None) == (self.tau_grid is None):
            raise ValueError("provide exactly one of 'taus' or 'tau_grid'")
        if self.taus is not None and not self.taus:
            raise ValueError("'taus' must be non-empty")
        return self


class OraclePoint(BaseModel):
    tau: float
    value: float


class OracleResponse(BaseModel):
    what: str
    points: list[OraclePoint]


class SimulateRequest(BaseModel):
    hazard_model: HazardModelSpec | None = None
    constant_hazard: float | None = Field(default=None, gt=0)
    censor_time: float = Field(gt=0)
    sample_sizes: list[int] = Field(min_length=1)
    replications: int = Field(ge=1, le=100_000)
    tau_grid: str = Field(description="grid spec start:stop:step")
    seed: int = Field(default=42, ge=0)
    extrapolation: Literal["error", "carry-forward"] = "carry-forward"

    @model_validator(mode="after")
    def _exactly_one_model(self):
        if (self.hazard_model is None) == (self.constant_hazard is None):
            raise ValueError("provide exactly one of 'hazard_model' or 'constant_hazard'")
        return self


class SummaryRowOut(BaseModel):
    n: int
    tau: float
    true_ah: float
    mean_ah: float
    bias: float
    mc_se: float
    n_defined: int
    n_degenerate: int


class SimulateResponse(BaseModel):
    rows: list[SummaryRowOut]
    max_abs_bias: dict[int, float]
