from rpac.plotting import plot_bler
from rpac.sim import BlerPoint


def test_zero_error_points_and_bounds(tmp_path):
    curves = {
        "a": [BlerPoint(3.0, 100, 10, union_bound=0.2), BlerPoint(4.0, 1000, 0, union_bound=0.03)],
        "b": [BlerPoint(3.0, 50, 0)],
    }
    out = plot_bler(curves, tmp_path / "f.png", title="x")
    assert out.stat().st_size > 1000
    assert plot_bler(curves, tmp_path / "g.svg", show_bound=False).read_text().startswith("<?xml")


def test_empty_figure(tmp_path):
    assert plot_bler({}, tmp_path / "e.png").exists()
