"""Scaling family, slope fit, and file outputs."""

import math

import pytest

from cycbase.report import (
    fit_slope,
    run_scaling,
    scaling_family,
    scaling_report,
    write_csv,
    write_plot,
)


def test_family_degrees():
    fam = scaling_family(3)
    assert [K.degree for K in fam] == [10, 20, 40]
    assert fam[0].order() == 28800


def test_family_needs_a_level():
    with pytest.raises(ValueError):
        scaling_family(0)


def test_run_scaling_rows():
    rows = run_scaling(levels=2)
    assert [r["degree"] for r in rows] == [10, 20]
    assert all(r["conclusion"] == "controls" for r in rows)
    assert rows[0]["control_order"] == "800"
    assert rows[1]["control_order"] == "1280000"
    assert all(r["seconds"] > 0 for r in rows)


def test_fit_slope_exact():
    rows = [{"degree": 10, "seconds": 1.0},
            {"degree": 100, "seconds": 100.0}]
    assert math.isclose(fit_slope(rows), 2.0, abs_tol=1e-9)


def test_fit_slope_needs_two_points():
    with pytest.raises(ValueError):
        fit_slope([{"degree": 10, "seconds": 1.0}])


def test_outputs(tmp_path):
    rows = [{"degree": 10, "seconds": 0.5, "group_order": "28800",
             "control_order": "800", "conclusion": "controls"},
            {"degree": 20, "seconds": 2.0, "group_order": "1658880000",
             "control_order": "1280000", "conclusion": "controls"}]
    csv_path = tmp_path / "s.csv"
    png_path = tmp_path / "s.png"
    write_csv(rows, str(csv_path))
    write_plot(rows, fit_slope(rows), str(png_path))
    text = csv_path.read_text()
    assert text.splitlines()[0] == \
        "degree,seconds,group_order,control_order,conclusion"
    assert "28800" in text
    assert png_path.read_bytes()[:4] == b"\x89PNG"


def test_scaling_report_bundle(tmp_path):
    rep = scaling_report(str(tmp_path), levels=2)
    assert rep["slope"] == pytest.approx(
        fit_slope(rep["rows"]), abs=1e-12)
    assert (tmp_path / "scaling.csv").exists()
    assert (tmp_path / "scaling.png").exists()
