"""Piecewise-constant-hazard models: closed forms and exact sampling.

These models are the analytic ground truth for simulation studies: survival,
cumulative hazard, density, restricted mean and average hazard all have
closed forms, and event times are drawn by exact inversion of the cumulative
hazard (no rejection, no quadrature).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import SurvivalData
from .errors import ModelError, NonPositiveTauError


@dataclass(frozen=True)
class PiecewiseExpModel:
    """Hazard constant on [cuts[k], cuts[k+1]); the last piece is unbounded.

    The hazard is right-continuous at cuts.  Pieces with zero hazard are
    allowed; a final zero piece puts positive mass at +infinity, which a
    censoring step must resolve before the draws enter a dataset.
    """

    cuts: tuple[float, ...]
    hazards: tuple[float, ...]

    def __post_init__(self):
        cuts = tuple(float(c) for c in self.cuts)
        hazards = tuple(float(h) for h in self.hazards)
        if len(cuts) == 0:
            raise ModelError("model needs at least one piece")
        if len(cuts) != len(hazards):
            raise ModelError("cuts and hazards must have the same length")
        if cuts[0] != 0.0:
            raise ModelError("first cut must be 0")
        if any(not math.isfinite(c) for c in cuts):
            raise ModelError("cuts must be finite")
        if any(b <= a for a, b in zip(cuts, cuts[1:])):
            raise ModelError("cuts must be strictly increasing")
        if any(not math.isfinite(h) or h < 0.0 for h in hazards):
            raise ModelError("hazards must be finite and >= 0")
        object.__setattr__(self, "cuts", cuts)
        object.__setattr__(self, "hazards", hazards)

    @classmethod
    def constant(cls, rate: float) -> "PiecewiseExpModel":
        return cls((0.0,), (rate,))

    @property
    def n_pieces(self) -> int:
        return len(self.cuts)

    def _piece_end(self, k: int) -> float:
        return self.cuts[k + 1] if k + 1 < len(self.cuts) else math.inf

    def hazard_at(self, t: float) -> float:
        """Hazard value at t (right-continuous at cuts)."""
        if t < 0.0:
            raise ValueError("t must be >= 0")
        k = self._piece_index(t)
        return self.hazards[k]

    def _piece_index(self, t: float) -> int:
        # last cut <= t
        lo, hi = 0, len(self.cuts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.cuts[mid] <= t:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def cum_hazard(self, t: float) -> float:
        """H(t): hazard integrated over [0, t], exact piecewise-linear sum."""
        if t < 0.0:
            raise ValueError("t must be >= 0")
        total = 0.0
        for k, (a, lam) in enumerate(zip(self.cuts, self.hazards)):
            if a >= t:
                break
            b = min(self._piece_end(k), t)
            total += lam * (b - a)
        return total

    def survival(self, t: float) -> float:
        """S(t) = exp(-H(t))."""
        return math.exp(-self.cum_hazard(t))

    def cdf(self, t: float) -> float:
        """1 - S(t), computed as -expm1(-H(t)) for accuracy near 0."""
        return -math.expm1(-self.cum_hazard(t))

    def density(self, t: float) -> float:
        """f(t) = hazard(t) * S(t), using the right-continuous hazard at cuts."""
        return self.hazard_at(t) * self.survival(t)

    def _rmst_terms(self, tau: float) -> tuple[Fraction, Fraction]:
        """Exact rational (1 - S(tau), integral of S over [0, tau]).

        Per piece with positive hazard the integral is (S(a) - S(b)) / lam,
        i.e. the probability mass of the piece over its rate; with zero
        hazard it is S(a) * (b - a).  The float mass and survival values are
        combined as exact rationals so the ratio of the two terms is
        correctly rounded; in particular a constant-hazard model returns its
        rate bit-exactly for every tau.
        """
        h_start = 0.0
        cdf_start = Fraction(0)
        integral = Fraction(0)
        for k, (a, lam) in enumerate(zip(self.cuts, self.hazards)):
            if a >= tau:
                break
            b = min(self._piece_end(k), tau)
            h_end = h_start + lam * (b - a)
            cdf_end = Fraction(-math.expm1(-h_end))
            if lam > 0.0:
                integral += (cdf_end - cdf_start) / Fraction(lam)
            else:
                integral += (1 - cdf_start) * (Fraction(b) - Fraction(a))
            h_start = h_end
            cdf_start = cdf_end
        return cdf_start, integral

    def rmst(self, tau: float) -> float:
        """Restricted mean survival time: closed-form integral of S over [0, tau]."""
        if math.isnan(tau) or tau <= 0.0:
            raise NonPositiveTauError(tau)
        _, integral = self._rmst_terms(tau)
        return float(integral)

    def average_hazard(self, tau: float) -> float:
        """Average hazard (1 - S(tau)) / rmst(tau) with an exactly rounded ratio."""
        if math.isnan(tau) or tau <= 0.0:
            raise NonPositiveTauError(tau)
        cdf_tau, integral = self._rmst_terms(tau)
        if cdf_tau == 0:
            return 0.0
        return float(cdf_tau / integral)

    def inverse_cum_hazard(self, target):
        """Smallest t with H(t) >= target; +inf when H never reaches it.

        Accepts a scalar or an array; zero-hazard pieces are skipped exactly.
        """
        arr = np.asarray(target, dtype=np.float64)
        cuts = np.asarray(self.cuts)
        hazards = np.asarray(self.hazards)
        widths = np.append(np.diff(cuts), np.inf)
        # zero the width first so a zero-hazard final piece never forms 0 * inf
        seg = hazards * np.where(hazards > 0.0, widths, 0.0)
        cum = np.concatenate(([0.0], np.cumsum(seg)))
        idx = np.searchsorted(cum, arr, side="left")
        piece = np.minimum(idx, len(cuts)) - 1
        with np.errstate(divide="ignore", invalid="ignore"):
            out = cuts[piece] + (arr - cum[piece]) / hazards[piece]
        out = np.where(idx > len(cuts), np.inf, out)
        out = np.where(arr <= 0.0, 0.0, out)
        if np.ndim(target) == 0:
            return float(out)
        return out

    def sample(self, rng: np.random.Generator) -> float:
        """One event-time draw by inverse transform of a unit exponential."""
        return float(self.inverse_cum_hazard(rng.exponential()))

    def sample_censored(
        self, censor_time: float, n: int, rng: np.random.Generator
    ) -> SurvivalData:
        """n independent draws, right-censored at censor_time.

        Draws at or below the censoring time are events; later (possibly
        infinite) draws are recorded as censored at censor_time.
        """
        if not censor_time > 0.0:
            raise ValueError("censor_time must be > 0")
        if n < 1:
            raise ValueError("n must be >= 1")
        draws = self.inverse_cum_hazard(rng.exponential(size=n))
        observed = np.minimum(draws, censor_time)
        is_event = draws <= censor_time
        return SurvivalData.from_arrays(observed, is_event)
