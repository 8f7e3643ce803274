"""Average hazard over [0, tau] from a fitted survival curve.

The point estimate is cumulative incidence divided by restricted mean
survival time, both read off the same step function.  Because the curve is
piecewise constant, the denominator integral is identically the sum of
per-interval rectangles, and at observed event times the whole ratio can be
rewritten as a weighted harmonic mean of the discrete hazard increments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Sequence

import numpy as np

from .core import KaplanMeierFit, _freeze
from .errors import (
    AvgHazardError,
    ConfigError,
    EventIndexError,
    NoEventsError,
    NonPositiveTauError,
)


class Extrapolation(Enum):
    """Policy for evaluation beyond the largest observation time."""

    ERROR = "error"
    CARRY_FORWARD = "carry-forward"


@dataclass(frozen=True)
class AHEstimate:
    """Average-hazard point estimate at one truncation time.

    ``value`` is cum_incidence / rmst.  ``degenerate`` marks a zero numerator
    (no events observed by tau), where the estimate is 0 by convention.
    """

    tau: float
    cum_incidence: float
    rmst: float
    value: float
    degenerate: bool


def rmst(
    fit: KaplanMeierFit,
    tau: float,
    extrapolation: Extrapolation = Extrapolation.ERROR,
) -> float:
    """Restricted mean survival time: the exact integral of S over [0, tau].

    With CARRY_FORWARD and tau beyond the last observation, the final survival
    value extends to tau.
    """
    carry = extrapolation is Extrapolation.CARRY_FORWARD
    return fit.survival.integral_to(tau, carry_forward=carry)


def cumulative_incidence(fit: KaplanMeierFit, tau: float) -> float:
    """Probability of an event by tau: 1 - S(tau)."""
    if math.isnan(tau) or tau <= 0.0:
        raise NonPositiveTauError(tau)
    return 1.0 - fit.survival.value_at(tau)


def average_hazard(
    fit: KaplanMeierFit,
    tau: float,
    extrapolation: Extrapolation = Extrapolation.ERROR,
) -> AHEstimate:
    """Average hazard over [0, tau]: (1 - S(tau)) / integral of S.

    tau exactly at an event time includes that jump in the numerator
    (right-continuity).  A zero numerator yields value 0 with the degenerate
    flag set rather than an error, so sparse samples still produce estimates.
    """
    if math.isnan(tau) or tau <= 0.0:
        raise NonPositiveTauError(tau)
    carry = extrapolation is Extrapolation.CARRY_FORWARD
    s_tau = fit.survival.value_at(tau, carry_forward=carry)
    numerator = 1.0 - s_tau
    denominator = fit.survival.integral_to(tau, carry_forward=carry)
    return AHEstimate(
        tau=tau,
        cum_incidence=numerator,
        rmst=denominator,
        value=numerator / denominator,
        degenerate=numerator == 0.0,
    )


def average_hazard_curve(
    fit: KaplanMeierFit,
    taus: Sequence[float],
    extrapolation: Extrapolation = Extrapolation.ERROR,
) -> list[AHEstimate]:
    """Average hazard along a strictly increasing grid of truncation times.

    Errors raised at a grid point carry the offending index in their
    ``grid_index`` attribute.
    """
    taus = list(taus)
    if not taus:
        raise ConfigError("tau grid must be non-empty")
    if any(b <= a for a, b in zip(taus, taus[1:])):
        raise ConfigError("tau grid must be strictly increasing")
    out = []
    for i, tau in enumerate(taus):
        try:
            out.append(average_hazard(fit, tau, extrapolation))
        except AvgHazardError as err:
            if hasattr(err, "grid_index"):
                err.grid_index = i
            raise
    return out


@dataclass(frozen=True, eq=False)
class DiscreteHazardTable:
    """Per-event-time hazard and density increments.

    For event time t_j with gap g_j = t_j - t_{j-1} (t_0 = 0):
    hazard ``d_j / (r_j * g_j)`` and density ``hazard * S(t_{j-1})``.
    Both quantities exist only at observed event times.
    """

    times: np.ndarray
    gaps: np.ndarray
    hazard: np.ndarray
    density: np.ndarray

    def __post_init__(self):
        for arr in (self.times, self.gaps, self.hazard, self.density):
            _freeze(arr)

    @property
    def n_event_times(self) -> int:
        return int(self.times.size)

    def rows(self) -> Iterator[tuple[float, float, float, float]]:
        for row in zip(self.times, self.gaps, self.hazard, self.density):
            yield tuple(float(x) for x in row)


def discrete_hazard(fit: KaplanMeierFit) -> DiscreteHazardTable:
    """Discrete hazard and density increments at the observed event times."""
    if not fit.has_events:
        raise NoEventsError("discrete hazard requires at least one event")
    table = fit.table
    prev_times = np.concatenate(([0.0], table.times[:-1]))
    gaps = table.times - prev_times
    hazard = table.n_events / (table.n_at_risk * gaps)
    # survival value just before each event time: 1, S(t_1), ..., S(t_{K-1})
    surv_prev = fit.survival.values[:-1]
    density = hazard * surv_prev
    return DiscreteHazardTable(
        times=table.times.copy(),
        gaps=gaps,
        hazard=hazard,
        density=density,
    )


def average_hazard_harmonic(fit: KaplanMeierFit, k: int) -> float:
    """Average hazard at the k-th event time via its harmonic-mean form.

    Computes sum(f_j g_j) / sum(f_j g_j / h_j) over the first k event times,
    a weighted harmonic mean of the discrete hazards.  Only defined with tau
    at an observed event time, because the discrete hazard has no value
    between events; elsewhere use :func:`average_hazard`.  Agrees with the
    plug-in estimate at t_k up to rounding.
    """
    if not fit.has_events:
        raise NoEventsError("harmonic form requires at least one event")
    n_times = fit.table.n_event_times
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= n_times:
        raise EventIndexError(k, n_times)
    table = discrete_hazard(fit)
    weights = table.density[:k] * table.gaps[:k]
    numerator = float(np.sum(weights))
    denominator = float(np.sum(weights / table.hazard[:k]))
    return numerator / denominator
