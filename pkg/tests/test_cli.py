import json
import math
import subprocess
import sys

import pytest

import avghazard as ah
from avghazard.cli import main

from conftest import FIXTURES, SAMPLE_RECORDS

SAMPLE_CSV = FIXTURES / "sample_survival.csv"
MODEL_JSON = FIXTURES / "three_piece_model.json"


def read_csv(path):
    header, *lines = path.read_text().splitlines()
    return header.split(","), [line.split(",") for line in lines]


class TestEstimate:
    def test_single_tau(self, tmp_path):
        out = tmp_path / "est.csv"
        code = main(["estimate", str(SAMPLE_CSV), "--tau", "109", "--out", str(out)])
        assert code == 0
        header, rows = read_csv(out)
        assert header == ["tau", "cum_incidence", "rmst", "ah", "degenerate"]
        (row,) = rows
        assert float(row[0]) == 109.0
        assert float(row[3]) == pytest.approx(0.7 / 69.9, rel=1e-12)
        assert row[4] == "false"

    def test_grid_matches_library_curve(self, tmp_path):
        out = tmp_path / "est.csv"
        assert main(["estimate", str(SAMPLE_CSV), "--tau-grid", "10:120:1", "--out", str(out)]) == 0
        _, rows = read_csv(out)
        fit = ah.fit_kaplan_meier(ah.ingest(SAMPLE_RECORDS))
        expected = ah.average_hazard_curve(fit, [10.0 + i for i in range(111)])
        assert len(rows) == len(expected)
        for row, est in zip(rows, expected):
            # round-trip rendering: parsed floats equal library doubles exactly
            assert float(row[0]) == est.tau
            assert float(row[1]) == est.cum_incidence
            assert float(row[2]) == est.rmst
            assert float(row[3]) == est.value

    def test_harmonic_column_blank_between_events(self, tmp_path):
        out = tmp_path / "est.csv"
        code = main(
            ["estimate", str(SAMPLE_CSV), "--tau", "21,50", "--harmonic", "--out", str(out)]
        )
        assert code == 0
        header, rows = read_csv(out)
        assert header[-1] == "harmonic"
        assert float(rows[0][5]) == pytest.approx(0.2 / 19.9, rel=1e-12)
        assert rows[1][5] == ""

    def test_stdout_when_no_out(self, capsys):
        assert main(["estimate", str(SAMPLE_CSV), "--tau", "109"]) == 0
        captured = capsys.readouterr().out.splitlines()
        assert captured[0] == "tau,cum_incidence,rmst,ah,degenerate"
        assert len(captured) == 2

    def test_bad_status_exits_2_citing_line(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("time,status\n10,1\n12,2\n")
        assert main(["estimate", str(bad), "--tau", "5"]) == 2
        assert "line 3" in capsys.readouterr().err

    def test_bad_header_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("t,s\n10,1\n")
        assert main(["estimate", str(bad), "--tau", "5"]) == 2
        assert "line 1" in capsys.readouterr().err

    def test_domain_error_exits_3_naming_tau(self, capsys):
        assert main(["estimate", str(SAMPLE_CSV), "--tau", "130"]) == 3
        assert "130" in capsys.readouterr().err

    def test_carry_forward_allows_late_tau(self, tmp_path):
        out = tmp_path / "est.csv"
        code = main(
            ["estimate", str(SAMPLE_CSV), "--tau", "130",
             "--extrapolation", "carry-forward", "--out", str(out)]
        )
        assert code == 0
        _, rows = read_csv(out)
        assert float(rows[0][2]) == pytest.approx(76.2, rel=1e-12)

    def test_requires_some_tau(self, capsys):
        assert main(["estimate", str(SAMPLE_CSV)]) == 2

    def test_rejects_both_tau_forms(self, capsys):
        assert main(["estimate", str(SAMPLE_CSV), "--tau", "5", "--tau-grid", "1:9:1"]) == 2

    def test_no_partial_file_on_error(self, tmp_path):
        out = tmp_path / "est.csv"
        assert main(["estimate", str(SAMPLE_CSV), "--tau", "130", "--out", str(out)]) == 3
        assert not out.exists()
        assert not out.with_name(out.name + ".tmp").exists()


class TestSimulate:
    ARGS = [
        "simulate", "--constant-hazard", "0.01", "--censor-at", "120",
        "--n", "10,30", "--reps", "40", "--tau-grid", "20:120:50", "--seed", "11",
    ]

    def test_writes_summary_and_digest(self, tmp_path, capsys):
        out = tmp_path / "sim.csv"
        assert main(self.ARGS + ["--out", str(out)]) == 0
        header, rows = read_csv(out)
        assert header == ["n", "tau", "true_ah", "mean_ah", "bias", "mc_se", "n_defined", "n_degenerate"]
        assert len(rows) == 2 * 3  # two sample sizes, three grid points
        assert all(float(r[2]) == 0.01 for r in rows)
        digest = capsys.readouterr().out
        assert "n=10" in digest and "n=30" in digest and "max|bias|" in digest

    def test_byte_identical_reruns(self, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(self.ARGS + ["--out", str(out1)]) == 0
        assert main(self.ARGS + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_model_file_input(self, tmp_path):
        out = tmp_path / "sim.csv"
        code = main(
            ["simulate", "--hazard-model", str(MODEL_JSON), "--censor-at", "10",
             "--n", "5", "--reps", "5", "--tau-grid", "1:10:3", "--out", str(out)]
        )
        assert code == 0
        _, rows = read_csv(out)
        model = ah.PiecewiseExpModel((0.0, 2.0, 5.0), (1.0, 0.0, 1.0))
        assert float(rows[0][2]) == model.average_hazard(1.0)

    def test_invalid_model_file_exits_4(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"cuts": [0, 2], "hazards": [1]}))
        assert main(
            ["simulate", "--hazard-model", str(bad), "--censor-at", "10",
             "--n", "5", "--reps", "5", "--tau-grid", "1:10:3",
             "--out", str(tmp_path / "x.csv")]
        ) == 4

    def test_model_and_constant_are_exclusive(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(self.ARGS + ["--hazard-model", str(MODEL_JSON), "--out", str(tmp_path / "x.csv")])
        assert exc.value.code == 2

    def test_bad_grid_exits_2(self, tmp_path):
        assert main(
            ["simulate", "--constant-hazard", "0.01", "--censor-at", "120",
             "--n", "10", "--reps", "5", "--tau-grid", "junk",
             "--out", str(tmp_path / "x.csv")]
        ) == 2

    def test_tau_beyond_censoring_exits_2(self, tmp_path):
        assert main(
            ["simulate", "--constant-hazard", "0.01", "--censor-at", "120",
             "--n", "10", "--reps", "5", "--tau-grid", "20:130:10",
             "--out", str(tmp_path / "x.csv")]
        ) == 2


class TestOracle:
    def test_average_hazard_values(self, tmp_path):
        out = tmp_path / "oracle.csv"
        code = main(
            ["oracle", "--hazard-model", str(MODEL_JSON), "--tau", "2,5",
             "--what", "ah", "--out", str(out)]
        )
        assert code == 0
        _, rows = read_csv(out)
        assert float(rows[0][1]) == 1.0
        expected = (1 - math.exp(-2)) / ((1 - math.exp(-2)) + 3 * math.exp(-2))
        assert float(rows[1][1]) == pytest.approx(expected, rel=1e-9)

    def test_ah_inside_flat_interval(self, tmp_path):
        out = tmp_path / "oracle.csv"
        assert main(
            ["oracle", "--hazard-model", str(MODEL_JSON), "--tau", "3", "--out", str(out)]
        ) == 0
        _, rows = read_csv(out)
        assert float(rows[0][1]) == pytest.approx(1 - math.exp(-2), rel=1e-12)

    def test_survival_values(self, tmp_path):
        out = tmp_path / "oracle.csv"
        assert main(
            ["oracle", "--hazard-model", str(MODEL_JSON), "--tau", "3",
             "--what", "survival", "--out", str(out)]
        ) == 0
        _, rows = read_csv(out)
        assert float(rows[0][1]) == pytest.approx(math.exp(-2), rel=1e-15)

    def test_constant_hazard_grid(self, capsys):
        assert main(["oracle", "--constant-hazard", "0.01", "--tau-grid", "10:30:10"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "tau,value"
        assert [float(line.split(",")[1]) for line in lines[1:]] == [0.01, 0.01, 0.01]

    def test_missing_model_file_exits_4(self, tmp_path):
        assert main(["oracle", "--hazard-model", str(tmp_path / "nope.json"), "--tau", "2"]) == 4

    def test_nonpositive_tau_for_ah_exits_2(self):
        assert main(["oracle", "--constant-hazard", "0.01", "--tau", "0"]) == 2


def test_console_entry_point_runs():
    result = subprocess.run(
        [sys.executable, "-m", "avghazard.cli", "oracle", "--constant-hazard", "0.5", "--tau", "2"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert result.stdout.splitlines()[1] == "2.0,0.5"
