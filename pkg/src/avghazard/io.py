"""File formats and text rendering shared by the CLI and the service.

Dataset CSV: header ``time,status``, one record per line, time a decimal
literal > 0, status 0 (censored) or 1 (event).  UTF-8 with LF or CRLF.

Model file: JSON object with ``cuts`` (ascending, starting at 0) and
``hazards`` (same length) arrays; hazards are per-time-unit rates.

Numbers in output CSVs use shortest round-trip decimal rendering so emitted
files are byte-stable and parse back to the exact same doubles.
"""

from __future__ import annotations

import json
import math
import os
from pathlib import Path
from typing import Iterable, Sequence

from .core import SurvivalData, ingest
from .errors import CsvFormatError, ModelError, ModelFileError
from .piecewise import PiecewiseExpModel


def format_value(x) -> str:
    """Round-trip-exact text for floats; plain text for strings, ints, bools."""
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def read_survival_csv(path: str | Path) -> SurvivalData:
    """Parse a dataset CSV into validated survival data.

    Raises CsvFormatError carrying the 1-based line number of the first
    offending line (the header is line 1).
    """
    try:
        text = Path(path).read_text(encoding="utf-8-sig")
    except OSError as err:
        raise CsvFormatError(0, f"cannot read {path}: {err}") from err
    lines = text.splitlines()
    if not lines:
        raise CsvFormatError(1, "empty file; expected header 'time,status'")
    header = [part.strip() for part in lines[0].split(",")]
    if header != ["time", "status"]:
        raise CsvFormatError(1, f"expected header 'time,status', got {lines[0]!r}")
    records: list[tuple[float, int]] = []
    line_nos: list[int] = []
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = [part.strip() for part in line.split(",")]
        if len(parts) != 2:
            raise CsvFormatError(line_no, f"expected 2 fields, got {len(parts)}")
        try:
            time = float(parts[0])
        except ValueError:
            raise CsvFormatError(line_no, f"bad time value {parts[0]!r}") from None
        if not math.isfinite(time):
            raise CsvFormatError(line_no, f"time must be finite, got {parts[0]!r}")
        if time <= 0:
            raise CsvFormatError(line_no, f"time must be > 0, got {parts[0]!r}")
        if parts[1] not in ("0", "1"):
            raise CsvFormatError(line_no, f"status must be 0 or 1, got {parts[1]!r}")
        records.append((time, int(parts[1])))
        line_nos.append(line_no)
    if not records:
        raise CsvFormatError(len(lines), "no data rows")
    return ingest(records)


def read_model_file(path: str | Path) -> PiecewiseExpModel:
    """Parse and validate a JSON model description."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as err:
        raise ModelFileError(f"cannot read {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise ModelFileError(f"{path}: not valid JSON ({err})") from err
    if not isinstance(raw, dict) or "cuts" not in raw or "hazards" not in raw:
        raise ModelFileError(f"{path}: expected an object with 'cuts' and 'hazards'")
    cuts, hazards = raw["cuts"], raw["hazards"]
    if not isinstance(cuts, list) or not isinstance(hazards, list):
        raise ModelFileError(f"{path}: 'cuts' and 'hazards' must be arrays")
    if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in cuts + hazards):
        raise ModelFileError(f"{path}: 'cuts' and 'hazards' must contain numbers")
    try:
        return PiecewiseExpModel(tuple(cuts), tuple(hazards))
    except ModelError as err:
        raise ModelFileError(f"{path}: {err}") from err


def parse_float_list(text: str) -> list[float]:
    """Comma-separated floats, e.g. '48,50,65'."""
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError as err:
        raise ValueError(f"bad numeric list {text!r}: {err}") from err
    if not values:
        raise ValueError(f"empty numeric list {text!r}")
    return values


def parse_grid(spec: str) -> list[float]:
    """Grid spec 'start:stop:step', inclusive of stop when it lands on the grid."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid spec must be start:stop:step, got {spec!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as err:
        raise ValueError(f"bad grid spec {spec!r}: {err}") from err
    if step <= 0:
        raise ValueError("grid step must be > 0")
    if stop < start:
        raise ValueError("grid stop must be >= start")
    # tolerance keeps an exactly-landing stop inside despite rounding
    count = int(math.floor((stop - start) / step + 1e-9))
    return [start + i * step for i in range(count + 1)]


def write_csv_atomic(path: str | Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Write a CSV via a temp file and rename, so failures leave no partial file."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    try:
        with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(format_value(v) for v in row) + "\n")
        os.replace(tmp, path)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise
