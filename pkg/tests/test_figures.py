"""Figure data builders, CSV layout, and chart rendering."""
import csv

import pytest

from seqstate.errors import CapacityError
from seqstate.figures import FIGURE_IDS, build_figure, render_chart, write_csv


def test_figure_ids_and_scale_validation():
    assert FIGURE_IDS == tuple(range(1, 13))
    with pytest.raises(ValueError):
        build_figure(0)
    with pytest.raises(ValueError):
        build_figure(13)
    with pytest.raises(ValueError):
        build_figure(1, "poster")


def test_profile_figure_structure():
    data = build_figure(1, "desk", n_max=5)
    names = [c.name for c in data.curves]
    assert names == ["prime", "sprime", "triangular", "fibonacci", "pa3", "abundant"]
    for curve in data.curves:
        assert curve.columns == ("qubit", "entropy")
        assert [row[0] for row in curve.rows] == [1, 2, 3, 4, 5]


def test_crossover_figure_has_both_measures():
    data = build_figure(2, "desk", n_max=6)
    names = {c.name for c in data.curves}
    assert names == {
        "avg_th_fibonacci", "avg_th_pa3", "avg_all_fibonacci", "avg_all_pa3",
    }
    th = next(c for c in data.curves if c.name == "avg_th_fibonacci")
    assert [row[0] for row in th.rows] == [2, 3, 4, 5, 6]


def test_bound_curve_present_in_sweep_figures():
    data = build_figure(5, "desk", n_max=6)
    names = [c.name for c in data.curves]
    assert names[-1] == "bound"
    bound = data.curves[-1]
    assert bound.columns == ("n", "max_avg_all")


def test_oscillation_figure_delta_column():
    data = build_figure(7, "desk", n_max=8)
    curve = data.curves[0]
    assert curve.columns == ("n", "e_avg_th", "delta")
    assert curve.rows[0][2] == ""
    for prev, row in zip(curve.rows, curve.rows[1:]):
        assert row[2] == pytest.approx(row[1] - prev[1])


def test_full_scale_lucky_figures_hit_the_cap():
    with pytest.raises(CapacityError):
        build_figure(9, "full")
    with pytest.raises(CapacityError):
        build_figure(10, "full")


def test_write_csv_layout_and_determinism(tmp_path):
    data = build_figure(4, "desk", n_max=5, r_max=3)
    paths = write_csv(data, tmp_path)
    assert [p.name for p in paths] == ["figure04_pa_ratio.csv"]
    first = paths[0].read_bytes()
    with open(paths[0], newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["r", "e_avg_all"]
    assert [row[0] for row in rows[1:]] == ["1", "2", "3"]
    again = write_csv(build_figure(4, "desk", n_max=5, r_max=3), tmp_path)
    assert again[0].read_bytes() == first


def test_grover_figure_profile_columns(tmp_path):
    data = build_figure(11, "desk", n_max=8)
    assert {c.name for c in data.curves} == {"pa3", "pa4", "pa5", "pa7", "pa9", "pa17"}
    for curve in data.curves:
        assert curve.columns == ("n", "marked_count", "tau", "density", "g_real", "g_int")
        assert [row[0] for row in curve.rows] == list(range(4, 9))


def test_render_chart_writes_svg(tmp_path):
    data = build_figure(4, "desk", n_max=5, r_max=3)
    path = render_chart(data, tmp_path)
    assert path.name == "figure04.svg"
    head = path.read_bytes()[:200]
    assert b"<svg" in head or b"<?xml" in head
