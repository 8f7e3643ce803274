"""Average-hazard estimation for right-censored time-to-event data.

Core pieces: exact step-function survival estimators, the average-hazard
plug-in estimate with its harmonic-mean form at event times, analytic
piecewise-exponential models for ground truth, and a reproducible Monte
Carlo bias-study harness.  A CLI (``avghazard``) and a FastAPI service
(``avghazard.service``) wrap the same functions.
"""

__version__ = "0.1.0"

from . import errors
from .average import (
    AHEstimate,
    DiscreteHazardTable,
    Extrapolation,
    average_hazard,
    average_hazard_curve,
    average_hazard_harmonic,
    cumulative_incidence,
    discrete_hazard,
    rmst,
)
from .core import (
    EventTable,
    KaplanMeierFit,
    NelsonAalenFit,
    Observation,
    Status,
    StepFunction,
    SurvivalData,
    event_table,
    fit_kaplan_meier,
    fit_nelson_aalen,
    ingest,
)
from .piecewise import PiecewiseExpModel
from .simulate import (
    SimulationConfig,
    SimulationSummary,
    SummaryRow,
    run_bias_study,
    run_replication,
)

__all__ = [
    "__version__",
    "errors",
    "AHEstimate",
    "DiscreteHazardTable",
    "Extrapolation",
    "average_hazard",
    "average_hazard_curve",
    "average_hazard_harmonic",
    "cumulative_incidence",
    "discrete_hazard",
    "rmst",
    "EventTable",
    "KaplanMeierFit",
    "NelsonAalenFit",
    "Observation",
    "Status",
    "StepFunction",
    "SurvivalData",
    "event_table",
    "fit_kaplan_meier",
    "fit_nelson_aalen",
    "ingest",
    "PiecewiseExpModel",
    "SimulationConfig",
    "SimulationSummary",
    "SummaryRow",
    "run_bias_study",
    "run_replication",
]
