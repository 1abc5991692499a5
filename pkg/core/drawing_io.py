#!/usr/bin/env python3
"""
画法文件读写
JSON 文档 {"n": .., "edges": [[a, b], ..], "positions": [[x, y], ..]}。

坐标可以是整数、"p/q" 字符串、十进制数（按书写形式精确转换），
或 ["a", "b"] 表示 a + b·√3。有理坐标逐位往返。
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Union

from core.drawing import Drawing, Graph
from core.errors import DrawingFormatError, InvalidGraphError
from core.exact import format_scalar, parse_scalar
from core.geometry import Point


def drawing_from_dict(doc: Dict[str, Any]) -> Drawing:
    if not isinstance(doc, dict):
        raise DrawingFormatError("drawing document must be an object")
    for key in ("n", "edges", "positions"):
        if key not in doc:
            raise DrawingFormatError(f"missing field {key!r}")
    n = doc["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise DrawingFormatError(f"'n' must be a non-negative integer, got {n!r}")
    try:
        graph = Graph(n, tuple((int(a), int(b)) for a, b in doc["edges"]))
    except (TypeError, ValueError) as e:
        raise DrawingFormatError(f"malformed edge list: {e}")
    except InvalidGraphError as e:
        raise DrawingFormatError(e.message, e.details)
    positions = doc["positions"]
    if not isinstance(positions, list) or len(positions) != n:
        raise DrawingFormatError(f"expected {n} positions, got {len(positions) if isinstance(positions, list) else positions!r}")
    points = []
    for i, pos in enumerate(positions):
        if not isinstance(pos, (list, tuple)) or len(pos) != 2:
            raise DrawingFormatError(f"position {i} must be [x, y]")
        points.append(Point(parse_scalar(pos[0]), parse_scalar(pos[1])))
    return Drawing(graph, tuple(points))


def drawing_to_dict(d: Drawing) -> Dict[str, Any]:
    """转换为字典格式"""
    return {
        "n": d.n,
        "edges": [list(e) for e in d.graph.edges],
        "positions": [[format_scalar(p.x), format_scalar(p.y)] for p in d.positions],
    }


def loads(text: str) -> Drawing:
    try:
        doc = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as e:
        raise DrawingFormatError(f"not a JSON document: {e.msg} at line {e.lineno}")
    return drawing_from_dict(doc)


def dumps(d: Drawing, indent: Optional[int] = None) -> str:
    return json.dumps(drawing_to_dict(d), indent=indent)


def load_drawing(path: Union[str, Path]) -> Drawing:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise DrawingFormatError(f"cannot read drawing file {path}: {e.strerror}")
    return loads(text)


def save_drawing(d: Drawing, path: Union[str, Path]) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(dumps(d, indent=2) + "\n", encoding="utf-8")
    return target


def graph_from_dict(doc: Dict[str, Any]) -> Graph:
    """图文件: {"n": .., "edges": [..]}，positions 可省略"""
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise DrawingFormatError("graph document needs 'n' and 'edges'")
    try:
        return Graph(int(doc["n"]), tuple((int(a), int(b)) for a, b in doc["edges"]))
    except (TypeError, ValueError) as e:
        raise DrawingFormatError(f"malformed graph: {e}")
    except InvalidGraphError as e:
        raise DrawingFormatError(e.message, e.details)


def load_graph(path: Union[str, Path]) -> Graph:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"), parse_float=Fraction)
    except OSError as e:
        raise DrawingFormatError(f"cannot read graph file {path}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise DrawingFormatError(f"not a JSON document: {e.msg} at line {e.lineno}")
    return graph_from_dict(doc)
