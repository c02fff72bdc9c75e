"""Tests for CSV tables and SVG plots."""

import re

import numpy as np
import pandas as pd
import pytest

from ddqe.exceptions import DomainError, InvalidConfigError
from ddqe.reports import CsvTable, default_series, emit_svg


@pytest.fixture
def table():
    t = np.linspace(0.0, 1.0, 5)
    return CsvTable.from_columns(
        "demo",
        {
            "t": t,
            "purity_me": 1.0 - 0.1 * t,
            "purity_mc": 1.0 - 0.11 * t,
            "purity_mc_stderr": np.full(5, 0.01),
            "validity": np.ones(5, dtype=int),
        },
        {"t": "time"},
    )


class TestCsvTable:
    def test_header_and_units_rows(self):
        table = CsvTable.from_columns("small", {"t": [0.0, 0.5], "a": [1.0, 0.25]}, {"t": "time"})
        assert table.to_csv_text() == "t,a\ntime,\n0.0,1.0\n0.5,0.25\n"

    def test_write_is_deterministic(self, table, tmp_path):
        first = table.write(tmp_path / "a.csv").read_bytes()
        second = table.write(tmp_path / "nested" / "b.csv").read_bytes()
        assert first == second
        assert b"\r\n" not in first

    def test_read_back(self, table, tmp_path):
        path = table.write(tmp_path / "demo.csv")
        loaded = CsvTable.read(path)
        assert loaded.name == "demo"
        assert loaded.columns == table.columns
        assert loaded.units == {"t": "time"}
        assert np.allclose(loaded.column("purity_me"), table.column("purity_me"), rtol=1e-15, atol=0.0)
        assert np.array_equal(loaded.column("validity"), table.column("validity"))

    def test_label_columns_allowed(self):
        table = CsvTable("checks", pd.DataFrame({"check": ["a", "b"], "value": [0.1, 0.2]}))
        assert table.to_csv_text().splitlines()[2] == "a,0.1"

    def test_duplicate_columns(self):
        with pytest.raises(InvalidConfigError) as exc:
            CsvTable("dup", pd.DataFrame([[1.0, 2.0]], columns=["a", "a"]))
        assert exc.value.key == "columns"

    def test_units_for_unknown_column(self):
        with pytest.raises(InvalidConfigError) as exc:
            CsvTable.from_columns("u", {"t": [0.0]}, {"x": "length"})
        assert exc.value.key == "units"

    @pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
    def test_non_finite(self, bad):
        with pytest.raises(DomainError):
            CsvTable.from_columns("nf", {"t": [0.0, 1.0], "a": [1.0, bad]})

    def test_missing_column(self, table):
        with pytest.raises(InvalidConfigError) as exc:
            table.column("purity")
        assert exc.value.key == "purity"
        assert table.unit("purity_me") == ""


class TestSvg:
    def test_default_series_skip_errors_and_validity(self, table):
        assert default_series(table, "t") == ["purity_me", "purity_mc"]

    def test_series_are_tagged(self, table):
        svg = emit_svg(table)
        assert svg.lstrip().startswith("<?xml")
        assert 'id="series-purity_me"' in svg
        assert 'id="series-purity_mc"' in svg

    @pytest.mark.parametrize("name", ["purity_me", "purity_mc"])
    def test_series_group_holds_one_path(self, table, name):
        svg = emit_svg(table)
        group = re.search(rf'<g id="series-{re.escape(name)}">(.*?)</g>', svg, re.S)
        assert group is not None
        assert group.group(1).count("<path ") == 1
        assert "<polyline" not in group.group(1)

    def test_monte_carlo_series_dashed(self, table):
        svg = emit_svg(table, y=["purity_mc"])
        assert "stroke-dasharray" in svg

    def test_byte_identical(self, table, tmp_path):
        a = emit_svg(table, path=tmp_path / "plots" / "a.svg")
        b = emit_svg(table)
        assert a == b
        assert (tmp_path / "plots" / "a.svg").read_text(encoding="utf-8") == a

    def test_empty_table(self):
        empty = CsvTable.from_columns("empty", {"t": np.array([]), "y": np.array([])})
        with pytest.raises(DomainError):
            emit_svg(empty)

    def test_no_series(self):
        only_x = CsvTable.from_columns("x", {"t": [0.0, 1.0]})
        with pytest.raises(InvalidConfigError) as exc:
            emit_svg(only_x)
        assert exc.value.key == "y"

    def test_unknown_column(self, table):
        with pytest.raises(InvalidConfigError):
            emit_svg(table, y=["nope"])
