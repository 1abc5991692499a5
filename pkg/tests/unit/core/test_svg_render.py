from core.svg_render import DEFAULT_THEME, SvgRenderer, render_to_svg
from tests.fixtures.sample_data import crossing_x, unit_square


def test_elements():
    svg = render_to_svg(crossing_x(), renderer=SvgRenderer(scale=10, margin=5))
    assert svg.lstrip().startswith("<?xml") or "<svg" in svg
    assert svg.count("<path") == 2
    # 4 个顶点加 1 个交叉点标记
    assert svg.count("<circle") == 5


def test_labels_and_roles():
    roles = ["clause:1"] * 4
    svg = render_to_svg(unit_square(), labels={0: "C_1"}, roles=roles,
                        renderer=SvgRenderer(scale=10, margin=5))
    assert "C_1" in svg
    assert DEFAULT_THEME.role_colors["clause"] in svg


def test_writes_file(tmp_path):
    path = tmp_path / "square.svg"
    text = render_to_svg(unit_square(), str(path), renderer=SvgRenderer(scale=20, margin=4))
    assert path.exists()
    assert "<svg" in path.read_text()
    assert "<svg" in text


def test_scale_from_settings(fresh_settings, monkeypatch):
    monkeypatch.setenv("TARKIT_SVG_SCALE", "7")
    assert SvgRenderer().scale == 7.0
