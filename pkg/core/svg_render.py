#!/usr/bin/env python3
"""
TARKit SVG 图形输出 (drawsvg)
顶点、边、交叉点；可选顶点标签与按部件着色。坐标只在渲染时取浮点。
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional, Sequence

import drawsvg as draw

from core.drawing import Drawing, crossings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Theme:
    background: str = "#ffffff"
    edge: str = "#37474f"
    vertex_fill: str = "#ffffff"
    vertex_stroke: str = "#263238"
    crossing: str = "#d32f2f"
    label: str = "#212121"
    role_colors: Dict[str, str] = field(default_factory=lambda: {
        "frame": "#78909c",
        "clause": "#1e88e5",
        "variable": "#43a047",
        "connector": "#8e24aa",
        "path": "#fb8c00",
    })


DEFAULT_THEME = Theme()


class SvgRenderer:
    """把画法渲染为 drawsvg.Drawing；y 轴向上"""

    def __init__(self, scale: Optional[float] = None, margin: Optional[float] = None,
                 theme: Optional[Theme] = None, vertex_radius: float = 3.5, font_size: float = 10.0):
        if scale is None or margin is None:
            from core.config import get_settings

            settings = get_settings()
            scale = settings.svg_scale if scale is None else scale
            margin = settings.svg_margin if margin is None else margin
        self.scale = scale
        self.margin = margin
        self.theme = theme or DEFAULT_THEME
        self.vertex_radius = vertex_radius
        self.font_size = font_size

    def _role_color(self, role: Optional[str], default: str) -> str:
        if not role:
            return default
        return self.theme.role_colors.get(role.split(":", 1)[0], default)

    def render(self, d: Drawing, labels: Optional[Mapping[int, str]] = None,
               roles: Optional[Sequence[str]] = None, mark_crossings: bool = True) -> draw.Drawing:
        points = [p.as_floats() for p in d.positions]
        if points:
            min_x = min(x for x, _ in points)
            max_x = max(x for x, _ in points)
            min_y = min(y for _, y in points)
            max_y = max(y for _, y in points)
        else:
            min_x = max_x = min_y = max_y = 0.0
        width = (max_x - min_x) * self.scale + 2 * self.margin
        height = (max_y - min_y) * self.scale + 2 * self.margin

        def to_canvas(x: float, y: float):
            return (x - min_x) * self.scale + self.margin, (max_y - y) * self.scale + self.margin

        canvas = draw.Drawing(width, height)
        canvas.append(draw.Rectangle(0, 0, width, height, fill=self.theme.background))

        for a, b in d.graph.edges:
            x1, y1 = to_canvas(*points[a])
            x2, y2 = to_canvas(*points[b])
            role = roles[a] if roles and roles[a] == roles[b] else None
            canvas.append(draw.Line(x1, y1, x2, y2, stroke=self._role_color(role, self.theme.edge),
                                    stroke_width=1.2))

        if mark_crossings:
            for c in crossings(d):
                cx, cy = to_canvas(*c.point.as_floats())
                canvas.append(draw.Circle(cx, cy, self.vertex_radius * 0.7, fill="none",
                                          stroke=self.theme.crossing, stroke_width=1))

        for v, (x, y) in enumerate(points):
            cx, cy = to_canvas(x, y)
            role = roles[v] if roles else None
            canvas.append(draw.Circle(cx, cy, self.vertex_radius,
                                      fill=self._role_color(role, self.theme.vertex_fill),
                                      stroke=self.theme.vertex_stroke, stroke_width=1))
            if labels and v in labels:
                canvas.append(draw.Text(labels[v], self.font_size, cx + self.vertex_radius + 2,
                                        cy - self.vertex_radius - 2, fill=self.theme.label,
                                        font_family="DejaVu Sans, sans-serif"))
        return canvas


def render_to_svg(d: Drawing, path: Optional[str] = None, labels: Optional[Mapping[int, str]] = None,
                  roles: Optional[Sequence[str]] = None, renderer: Optional[SvgRenderer] = None) -> str:
    """渲染为 SVG 文本；给定 path 时同时写文件"""
    canvas = (renderer or SvgRenderer()).render(d, labels=labels, roles=roles)
    if path:
        canvas.save_svg(path)
        logger.debug("wrote %s (%d vertices, %d edges)", path, d.n, d.m)
    return canvas.as_svg()
