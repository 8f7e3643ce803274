"""Right-censored survival data and nonparametric step-function estimators.

Observed data are (time, status) records with status 1 for an event and 0
for right censoring.  Fitted survival and cumulative-hazard curves are exact
step functions: evaluation and definite integration are rectangle sums, never
quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Iterator

import numpy as np

from .errors import (
    BadStatusError,
    EmptyInputError,
    NonFiniteTimeError,
    NonPositiveTauError,
    NonPositiveTimeError,
    OutOfDomainError,
)


class Status(IntEnum):
    CENSORED = 0
    EVENT = 1


@dataclass(frozen=True)
class Observation:
    """A single right-censored time-to-event record."""

    time: float
    status: Status


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class SurvivalData:
    """Observations sorted ascending by time, events before censorings at ties.

    The tie ordering encodes the convention that a subject censored at t is
    still at risk for an event at t.
    """

    times: np.ndarray
    events: np.ndarray  # bool, True where the event was observed

    def __post_init__(self):
        if self.times.size == 0:
            raise EmptyInputError()
        _freeze(self.times)
        _freeze(self.events)

    @classmethod
    def from_arrays(cls, times, events) -> "SurvivalData":
        """Sort raw arrays into the canonical order.  Values must already be
        valid (finite, positive times; boolean-like status)."""
        times = np.asarray(times, dtype=np.float64)
        events = np.asarray(events, dtype=bool)
        # stable sort: time ascending, events before censorings at equal times
        order = np.lexsort((~events, times))
        return cls(times[order].copy(), events[order].copy())

    @property
    def n(self) -> int:
        return int(self.times.size)

    @property
    def n_events(self) -> int:
        return int(self.events.sum())

    @property
    def max_time(self) -> float:
        return float(self.times[-1])

    def observations(self) -> list[Observation]:
        return [
            Observation(float(t), Status.EVENT if e else Status.CENSORED)
            for t, e in zip(self.times, self.events)
        ]

    def scaled(self, factor: float) -> "SurvivalData":
        """Return a copy with every time multiplied by ``factor`` (> 0)."""
        if not factor > 0:
            raise ValueError("scale factor must be > 0")
        return SurvivalData.from_arrays(self.times * factor, self.events)


def ingest(records: Iterable[tuple[float, int]]) -> SurvivalData:
    """Validate and sort raw (time, status) records.

    status is 1 for an observed event and 0 for right censoring.  Raises
    EmptyInputError, NonFiniteTimeError, NonPositiveTimeError or
    BadStatusError with the offending record index.
    """
    records = list(records)
    if not records:
        raise EmptyInputError()
    times = np.empty(len(records), dtype=np.float64)
    events = np.empty(len(records), dtype=bool)
    for i, (time, status) in enumerate(records):
        t = float(time)
        if math.isnan(t) or math.isinf(t):
            raise NonFiniteTimeError(i, time)
        if t <= 0.0:
            raise NonPositiveTimeError(i, time)
        if not isinstance(status, (int, np.integer)) or status not in (0, 1):
            raise BadStatusError(i, status)
        times[i] = t
        events[i] = bool(status)
    return SurvivalData.from_arrays(times, events)


@dataclass(frozen=True, eq=False)
class EventTable:
    """Distinct observed event times with event counts and risk-set sizes.

    ``times`` is strictly increasing and covers event times only; censoring
    times never get a row.  ``n_at_risk[j]`` counts observations with
    time >= times[j], so censorings tied with an event time are still at risk.
    The table is empty when the data contain no events.
    """

    times: np.ndarray
    n_events: np.ndarray
    n_at_risk: np.ndarray
    n_total: int

    def __post_init__(self):
        _freeze(self.times)
        _freeze(self.n_events)
        _freeze(self.n_at_risk)

    @property
    def n_event_times(self) -> int:
        return int(self.times.size)

    @property
    def has_events(self) -> bool:
        return self.times.size > 0

    def rows(self) -> Iterator[tuple[float, int, int]]:
        for t, d, r in zip(self.times, self.n_events, self.n_at_risk):
            yield float(t), int(d), int(r)


def event_table(data: SurvivalData) -> EventTable:
    """Aggregate sorted observations into the event/risk table."""
    ev_times = data.times[data.events]
    uniq, counts = np.unique(ev_times, return_counts=True)
    # observations with time >= t_j; tied censorings stay in the risk set
    at_risk = data.n - np.searchsorted(data.times, uniq, side="left")
    return EventTable(
        times=uniq.astype(np.float64),
        n_events=counts.astype(np.int64),
        n_at_risk=at_risk.astype(np.int64),
        n_total=data.n,
    )


@dataclass(frozen=True, eq=False)
class StepFunction:
    """Right-continuous piecewise-constant function on [0, domain_limit].

    ``values[m]`` holds on [knots[m], knots[m+1]); the last value extends to
    domain_limit.  Evaluation picks the last knot <= t; integration sums
    rectangle areas exactly.
    """

    knots: np.ndarray
    values: np.ndarray
    domain_limit: float
    _cum_areas: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        knots = np.asarray(self.knots, dtype=np.float64)
        values = np.asarray(self.values, dtype=np.float64)
        if knots.size == 0 or knots[0] != 0.0:
            raise ValueError("knots must start at 0")
        if knots.size != values.size:
            raise ValueError("one value per knot required")
        if np.any(np.diff(knots) <= 0):
            raise ValueError("knots must be strictly increasing")
        if not self.domain_limit >= knots[-1]:
            raise ValueError("domain_limit must cover the last knot")
        object.__setattr__(self, "knots", _freeze(knots))
        object.__setattr__(self, "values", _freeze(values))
        # cumulative rectangle areas up to each knot
        seg = values[:-1] * np.diff(knots)
        cum = np.concatenate(([0.0], np.cumsum(seg)))
        object.__setattr__(self, "_cum_areas", _freeze(cum))

    def _locate(self, t: float, carry_forward: bool) -> int:
        if math.isnan(t) or t < 0.0:
            raise OutOfDomainError(t, self.domain_limit)
        if t > self.domain_limit and not carry_forward:
            raise OutOfDomainError(t, self.domain_limit)
        return int(np.searchsorted(self.knots, t, side="right")) - 1

    def value_at(self, t: float, carry_forward: bool = False) -> float:
        """Value at t (right-continuous).  Raises OutOfDomainError past
        domain_limit unless carry_forward is set."""
        return float(self.values[self._locate(t, carry_forward)])

    def integral_to(self, tau: float, carry_forward: bool = False) -> float:
        """Exact integral over [0, tau] as a sum of rectangle areas."""
        if math.isnan(tau) or tau <= 0.0:
            raise NonPositiveTauError(tau)
        m = self._locate(tau, carry_forward)
        return float(self._cum_areas[m] + self.values[m] * (tau - self.knots[m]))


@dataclass(frozen=True, eq=False)
class KaplanMeierFit:
    """Product-limit survival curve with its event table.

    With no events the curve is identically 1 (degenerate fit; ``has_events``
    is False and downstream estimates flag themselves accordingly).
    """

    table: EventTable
    survival: StepFunction
    domain_limit: float

    @property
    def has_events(self) -> bool:
        return self.table.has_events


@dataclass(frozen=True, eq=False)
class NelsonAalenFit:
    """Cumulative-hazard step function with its event table."""

    table: EventTable
    cum_hazard: StepFunction
    domain_limit: float

    @property
    def has_events(self) -> bool:
        return self.table.has_events


def fit_kaplan_meier(data: SurvivalData) -> KaplanMeierFit:
    """Fit the product-limit survival estimator.

    S(t) multiplies (1 - d_j/r_j) over event times t_j <= t and is constant
    between event times.
    """
    table = event_table(data)
    surv = np.cumprod(1.0 - table.n_events / table.n_at_risk)
    step = StepFunction(
        knots=np.concatenate(([0.0], table.times)),
        values=np.concatenate(([1.0], surv)),
        domain_limit=data.max_time,
    )
    return KaplanMeierFit(table=table, survival=step, domain_limit=data.max_time)


def fit_nelson_aalen(data: SurvivalData) -> NelsonAalenFit:
    """Fit the cumulative-hazard estimator H(t) = sum of d_j/r_j over t_j <= t."""
    table = event_table(data)
    cum = np.cumsum(table.n_events / table.n_at_risk)
    step = StepFunction(
        knots=np.concatenate(([0.0], table.times)),
        values=np.concatenate(([0.0], cum)),
        domain_limit=data.max_time,
    )
    return NelsonAalenFit(table=table, cum_hazard=step, domain_limit=data.max_time)
