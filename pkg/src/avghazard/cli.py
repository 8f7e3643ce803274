"""Command-line front end.

Thin client over the library: subcommands parse flags and move CSV bytes,
all computation happens in the core modules.

Exit codes: 0 success, 2 flag or input-parse errors (with line number for
CSV problems), 3 domain errors naming the offending tau, 4 invalid model
file.  Output files are written to a temp file and renamed on success.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .average import (
    Extrapolation,
    average_hazard,
    average_hazard_harmonic,
)
from .core import fit_kaplan_meier
from .errors import (
    AvgHazardError,
    CsvFormatError,
    ModelFileError,
    NonPositiveTauError,
    OutOfDomainError,
)
from .io import (
    format_value,
    parse_float_list,
    parse_grid,
    read_model_file,
    read_survival_csv,
    write_csv_atomic,
)
from .piecewise import PiecewiseExpModel
from .simulate import SimulationConfig, run_bias_study

DEFAULT_SEED = 42
DEFAULT_TAU_GRID = "10:120:5"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avghazard",
        description="Average-hazard estimation, simulation and analytic oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="estimate average hazard from a dataset CSV")
    est.add_argument("input", help="dataset CSV with header time,status")
    est.add_argument("--tau", help="comma-separated truncation times")
    est.add_argument("--tau-grid", help="grid spec start:stop:step")
    est.add_argument(
        "--extrapolation",
        choices=[e.value for e in Extrapolation],
        default=Extrapolation.ERROR.value,
        help="policy for tau beyond the last observation (default: error)",
    )
    est.add_argument(
        "--harmonic",
        action="store_true",
        help="also emit the harmonic-form value where tau is an observed event time",
    )
    est.add_argument("--out", help="output CSV path (default: stdout)")

    sim = sub.add_parser("simulate", help="run a Monte Carlo bias study")
    model_group = sim.add_mutually_exclusive_group(required=True)
    model_group.add_argument("--hazard-model", help="JSON model file with cuts and hazards")
    model_group.add_argument("--constant-hazard", type=float, help="single constant rate")
    sim.add_argument("--censor-at", type=float, required=True, help="censoring time")
    sim.add_argument("--n", required=True, help="comma-separated sample sizes")
    sim.add_argument("--reps", type=int, default=1000, help="replications per sample size")
    sim.add_argument("--tau-grid", default=DEFAULT_TAU_GRID, help="grid spec start:stop:step")
    sim.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"RNG seed (default: {DEFAULT_SEED})")
    sim.add_argument(
        "--extrapolation",
        choices=[e.value for e in Extrapolation],
        default=Extrapolation.CARRY_FORWARD.value,
        help="policy for tau beyond the last observation (default: carry-forward)",
    )
    sim.add_argument("--out", required=True, help="summary CSV path")

    orc = sub.add_parser("oracle", help="evaluate a piecewise-exponential model")
    model_group = orc.add_mutually_exclusive_group(required=True)
    model_group.add_argument("--hazard-model", help="JSON model file with cuts and hazards")
    model_group.add_argument("--constant-hazard", type=float, help="single constant rate")
    orc.add_argument("--tau", help="comma-separated evaluation times")
    orc.add_argument("--tau-grid", help="grid spec start:stop:step")
    orc.add_argument(
        "--what",
        choices=["survival", "cumhaz", "density", "ah"],
        default="ah",
        help="quantity to evaluate (default: ah)",
    )
    orc.add_argument("--out", help="output CSV path (default: stdout)")
    return parser


def _taus_from_args(args) -> list[float]:
    if args.tau is not None and args.tau_grid is not None:
        raise ValueError("pass either --tau or --tau-grid, not both")
    if args.tau is not None:
        return parse_float_list(args.tau)
    if args.tau_grid is not None:
        return parse_grid(args.tau_grid)
    raise ValueError("one of --tau or --tau-grid is required")


def _emit(out_path: str | None, header: Sequence[str], rows) -> None:
    if out_path is None:
        sys.stdout.write(",".join(header) + "\n")
        for row in rows:
            sys.stdout.write(",".join(format_value(v) for v in row) + "\n")
    else:
        write_csv_atomic(out_path, header, rows)


def _cmd_estimate(args) -> int:
    taus = _taus_from_args(args)
    data = read_survival_csv(args.input)
    fit = fit_kaplan_meier(data)
    extrapolation = Extrapolation(args.extrapolation)
    harmonic_index = {float(t): j for j, t in enumerate(fit.table.times, start=1)}
    header = ["tau", "cum_incidence", "rmst", "ah", "degenerate"]
    if args.harmonic:
        header.append("harmonic")
    rows = []
    for tau in taus:
        est = average_hazard(fit, tau, extrapolation)
        row = [est.tau, est.cum_incidence, est.rmst, est.value, est.degenerate]
        if args.harmonic:
            k = harmonic_index.get(tau)
            row.append("" if k is None else format_value(average_hazard_harmonic(fit, k)))
        rows.append(row)
    _emit(args.out, header, rows)
    return 0


def _cmd_simulate(args) -> int:
    if args.hazard_model is not None:
        model = read_model_file(args.hazard_model)
    else:
        model = PiecewiseExpModel.constant(args.constant_hazard)
    sample_sizes = []
    for v in parse_float_list(args.n):
        if v != int(v):
            raise ValueError(f"sample sizes must be integers, got {v!r}")
        sample_sizes.append(int(v))
    config = SimulationConfig(
        model=model,
        censor_time=args.censor_at,
        sample_sizes=tuple(sample_sizes),
        replications=args.reps,
        tau_grid=tuple(parse_grid(args.tau_grid)),
        seed=args.seed,
        extrapolation=Extrapolation(args.extrapolation),
    )
    summary = run_bias_study(config)
    header = ["n", "tau", "true_ah", "mean_ah", "bias", "mc_se", "n_defined", "n_degenerate"]
    rows = [
        [r.n, r.tau, r.true_ah, r.mean_ah, r.bias, r.mc_se, r.n_defined, r.n_degenerate]
        for r in summary.rows
    ]
    write_csv_atomic(args.out, header, rows)
    digest = ", ".join(
        f"n={n} max|bias|={format_value(b)}" for n, b in sorted(summary.max_abs_bias().items())
    )
    sys.stdout.write(digest + "\n")
    return 0


def _cmd_oracle(args) -> int:
    if args.hazard_model is not None:
        model = read_model_file(args.hazard_model)
    else:
        model = PiecewiseExpModel.constant(args.constant_hazard)
    taus = _taus_from_args(args)
    fn = {
        "survival": model.survival,
        "cumhaz": model.cum_hazard,
        "density": model.density,
        "ah": model.average_hazard,
    }[args.what]
    rows = [[tau, fn(tau)] for tau in taus]
    _emit(args.out, ["tau", "value"], rows)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "estimate":
            return _cmd_estimate(args)
        if args.command == "simulate":
            return _cmd_simulate(args)
        return _cmd_oracle(args)
    except CsvFormatError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except ModelFileError as err:
        print(f"error: {err}", file=sys.stderr)
        return 4
    except (OutOfDomainError, NonPositiveTauError) as err:
        if args.command == "oracle":
            print(f"error: {err}", file=sys.stderr)
            return 2
        where = f" (tau grid index {err.grid_index})" if err.grid_index is not None else ""
        print(f"error: {err}{where}", file=sys.stderr)
        return 3
    except (ValueError, AvgHazardError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
