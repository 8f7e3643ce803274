import math

import pytest

from avghazard.errors import CsvFormatError, ModelFileError
from avghazard.io import (
    format_value,
    parse_float_list,
    parse_grid,
    read_model_file,
    read_survival_csv,
    write_csv_atomic,
)

from conftest import FIXTURES, THREE_PIECE


class TestReadSurvivalCsv:
    def test_fixture_roundtrip(self):
        data = read_survival_csv(FIXTURES / "sample_survival.csv")
        assert data.n == 10
        assert data.n_events == 7
        assert data.max_time == 120.0

    def test_crlf_and_blank_lines(self, tmp_path):
        path = tmp_path / "crlf.csv"
        path.write_bytes(b"time,status\r\n10,1\r\n\r\n20,0\r\n")
        data = read_survival_csv(path)
        assert list(data.times) == [10.0, 20.0]

    def test_utf8_bom(self, tmp_path):
        path = tmp_path / "bom.csv"
        path.write_bytes(b"\xef\xbb\xbftime,status\n10,1\n")
        assert read_survival_csv(path).n == 1

    @pytest.mark.parametrize(
        "body,line_no",
        [
            ("time,status\nx,1\n", 2),
            ("time,status\n10,1\n-3,0\n", 3),
            ("time,status\nnan,1\n", 2),
            ("time,status\n10,2\n", 2),
            ("time,status\n10\n", 2),
            ("when,status\n10,1\n", 1),
        ],
    )
    def test_errors_carry_line_numbers(self, tmp_path, body, line_no):
        path = tmp_path / "bad.csv"
        path.write_text(body)
        with pytest.raises(CsvFormatError) as exc:
            read_survival_csv(path)
        assert exc.value.line_no == line_no

    def test_header_only_rejected(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("time,status\n")
        with pytest.raises(CsvFormatError):
            read_survival_csv(path)


class TestReadModelFile:
    def test_fixture(self):
        assert read_model_file(FIXTURES / "three_piece_model.json") == THREE_PIECE

    @pytest.mark.parametrize(
        "body",
        [
            "not json",
            "[1, 2]",
            '{"cuts": [0, 2]}',
            '{"cuts": [0, 2], "hazards": [1]}',
            '{"cuts": [1, 2], "hazards": [1, 1]}',
            '{"cuts": [0, 2], "hazards": ["a", "b"]}',
            '{"cuts": [0, 2], "hazards": [1, true]}',
        ],
    )
    def test_rejects_invalid(self, tmp_path, body):
        path = tmp_path / "model.json"
        path.write_text(body)
        with pytest.raises(ModelFileError):
            read_model_file(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ModelFileError):
            read_model_file(tmp_path / "nope.json")


class TestGridParsing:
    def test_inclusive_stop_on_grid(self):
        grid = parse_grid("10:120:5")
        assert len(grid) == 23
        assert grid[0] == 10.0 and grid[-1] == 120.0

    def test_stop_off_grid_excluded(self):
        assert parse_grid("10:12:5") == [10.0]
        assert parse_grid("0.5:2.4:0.5") == [0.5, 1.0, 1.5, 2.0]

    def test_degenerate_single_point(self):
        assert parse_grid("7:7:1") == [7.0]

    @pytest.mark.parametrize("spec", ["10:120", "a:b:c", "10:120:0", "120:10:5"])
    def test_rejects_bad_specs(self, spec):
        with pytest.raises(ValueError):
            parse_grid(spec)

    def test_float_list(self):
        assert parse_float_list("48,50,65") == [48.0, 50.0, 65.0]
        with pytest.raises(ValueError):
            parse_float_list("48,x")
        with pytest.raises(ValueError):
            parse_float_list("")


class TestRendering:
    def test_floats_round_trip(self):
        for value in (0.7 / 69.9, 1e-300, 123456.789, math.pi):
            assert float(format_value(value)) == value

    def test_plain_types(self):
        assert format_value(True) == "true"
        assert format_value(False) == "false"
        assert format_value(42) == "42"
        assert format_value("x") == "x"
        assert format_value(math.nan) == "nan"

    def test_atomic_write(self, tmp_path):
        path = tmp_path / "out.csv"
        write_csv_atomic(path, ["a", "b"], [[1, 2.5], [3, "z"]])
        assert path.read_text() == "a,b\n1,2.5\n3,z\n"
        assert list(tmp_path.iterdir()) == [path]
