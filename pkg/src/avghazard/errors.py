"""Exception types shared across the package."""

from __future__ import annotations


class AvgHazardError(Exception):
    """Base class for every error raised by this package."""


class EmptyInputError(AvgHazardError):
    """No observations were supplied."""

    def __init__(self, message: str = "input contains no observations"):
        super().__init__(message)


class NonPositiveTimeError(AvgHazardError):
    """An observation time was zero or negative."""

    def __init__(self, index: int, value):
        self.index = index
        self.value = value
        super().__init__(f"record {index}: time must be > 0, got {value!r}")


class NonFiniteTimeError(AvgHazardError):
    """An observation time was NaN or infinite."""

    def __init__(self, index: int, value):
        self.index = index
        self.value = value
        super().__init__(f"record {index}: time must be finite, got {value!r}")


class BadStatusError(AvgHazardError):
    """A status indicator was something other than 0 or 1."""

    def __init__(self, index: int, value):
        self.index = index
        self.value = value
        super().__init__(f"record {index}: status must be 0 or 1, got {value!r}")


class NoEventsError(AvgHazardError):
    """Requested quantity is only defined when at least one event was observed."""

    def __init__(self, message: str = "no events observed"):
        super().__init__(message)


class OutOfDomainError(AvgHazardError):
    """Evaluation point lies outside the fitted time domain.

    ``grid_index`` is set when the error was raised while walking a grid of
    evaluation points.
    """

    def __init__(self, value: float, domain_limit: float | None = None):
        self.value = value
        self.domain_limit = domain_limit
        self.grid_index: int | None = None
        detail = f"t={value!r} is outside the domain"
        if domain_limit is not None:
            detail += f" [0, {domain_limit!r}]"
        super().__init__(detail)


class NonPositiveTauError(AvgHazardError):
    """Truncation time must be strictly positive."""

    def __init__(self, value):
        self.value = value
        self.grid_index: int | None = None
        super().__init__(f"tau must be > 0, got {value!r}")


class EventIndexError(AvgHazardError):
    """Event-time index is outside 1..K."""

    def __init__(self, index: int, n_event_times: int):
        self.index = index
        self.n_event_times = n_event_times
        super().__init__(
            f"event index {index} out of range 1..{n_event_times}"
        )


class ModelError(AvgHazardError):
    """Piecewise-exponential model description is invalid."""


class ConfigError(AvgHazardError):
    """Simulation or grid configuration is invalid."""


class CsvFormatError(AvgHazardError):
    """Input CSV does not follow the documented contract."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


class ModelFileError(AvgHazardError):
    """Model description file cannot be parsed or validated."""
