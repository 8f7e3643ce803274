"""Shared fixtures and independent reference implementations.

The brute-force functions below deliberately avoid the library's code paths
(plain Python loops, explicit counting, explicit rectangle sums) so tests can
check the estimators against an independent route.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest

import avghazard as ah

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# the worked 10-subject sample: 7 events, 3 censored at 120
SAMPLE_RECORDS = [
    (10.0, 1),
    (21.0, 1),
    (34.0, 1),
    (48.0, 1),
    (65.0, 1),
    (85.0, 1),
    (109.0, 1),
    (120.0, 0),
    (120.0, 0),
    (120.0, 0),
]

THREE_PIECE = ah.PiecewiseExpModel((0.0, 2.0, 5.0), (1.0, 0.0, 1.0))


@pytest.fixture
def sample_data():
    return ah.ingest(SAMPLE_RECORDS)


@pytest.fixture
def sample_fit(sample_data):
    return ah.fit_kaplan_meier(sample_data)


@pytest.fixture(scope="session")
def figure_protocol_summary():
    """Full bias-study protocol: rate 0.01, censored at 120, four sample
    sizes, 1000 replications, tau grid 10..120 step 5."""
    config = ah.SimulationConfig(
        model=ah.PiecewiseExpModel.constant(0.01),
        censor_time=120.0,
        sample_sizes=(10, 30, 50, 100),
        replications=1000,
        tau_grid=tuple(10.0 + 5.0 * i for i in range(23)),
        seed=42,
        extrapolation=ah.Extrapolation.CARRY_FORWARD,
    )
    return ah.run_bias_study(config)


def random_records(rng: np.random.Generator, max_n: int = 30, ensure_event: bool = False):
    """Random right-censored records; roughly half the datasets carry ties."""
    n = int(rng.integers(1, max_n + 1))
    if rng.random() < 0.5:
        times = np.floor(rng.exponential(40.0, n)) + 1.0
    else:
        times = rng.uniform(0.5, 120.0, n)
    status = (rng.random(n) < 0.7).astype(int)
    if ensure_event and status.sum() == 0:
        status[int(rng.integers(0, n))] = 1
    return list(zip(times.tolist(), [int(s) for s in status]))


def brute_event_rows(records):
    """(t, d, r) rows by explicit counting over the raw records."""
    event_times = sorted({t for t, s in records if s == 1})
    rows = []
    for u in event_times:
        d = sum(1 for t, s in records if s == 1 and t == u)
        r = sum(1 for t, _ in records if t >= u)
        rows.append((u, d, r))
    return rows


def brute_survival_at(records, t):
    """Product-limit value at t computed by plain loops."""
    s = 1.0
    for u, d, r in brute_event_rows(records):
        if u <= t:
            s *= 1.0 - d / r
    return s


def brute_plugin_average_hazard(records, tau):
    """Explicit-summation average hazard at tau.

    Numerator 1 - S(tau); denominator the rectangle sum
    S(t_{j-1}) (t_j - t_{j-1}) over event times t_j <= tau plus the partial
    rectangle S(t_i) (tau - t_i), with t_0 = 0.
    """
    numerator = 1.0 - brute_survival_at(records, tau)
    denominator = 0.0
    prev_t, s_prev = 0.0, 1.0
    for u, d, r in brute_event_rows(records):
        if u > tau:
            break
        denominator += s_prev * (u - prev_t)
        prev_t = u
        s_prev *= 1.0 - d / r
    denominator += s_prev * (tau - prev_t)
    return numerator / denominator


def rel_err(actual, expected):
    if actual == expected:
        return 0.0
    return abs(actual - expected) / max(abs(actual), abs(expected))
