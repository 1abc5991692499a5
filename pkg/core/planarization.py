#!/usr/bin/env python3
"""
TARKit 平面化与胞结构
- planarize: 把每个交叉点替换为顶点 P(D)，共点交叉合并
- cell_structure: 旋转系统遍历求胞（面），识别无界胞
- comb_signature: 组合等价的规范签名（含镜像）
"""

import hashlib
import logging
from dataclasses import dataclass
from enum import Enum
from functools import cmp_to_key
from typing import Dict, List, Optional, Sequence, Tuple

from core.drawing import Crossing, Drawing, Graph, crossings, ensure_valid
from core.errors import DisconnectedDrawingError
from core.exact import sign
from core.geometry import Direction, Point, cross, dot
from core.structured_logging import log_performance

logger = logging.getLogger(__name__)

Dart = Tuple[int, int]


class OriginKind(Enum):
    ORIGINAL = "ORIGINAL"
    CROSSING = "CROSSING"


@dataclass(frozen=True)
class VertexOrigin:
    kind: OriginKind
    vertex: Optional[int] = None
    crossings: Tuple[int, ...] = ()


@dataclass(frozen=True)
class EdgeOrigin:
    """平面化边对应的原始边及其在原边上的段序号"""
    edge: int
    segment: int


@dataclass(frozen=True)
class PlanarizedDrawing:
    drawing: Drawing
    origin: Tuple[VertexOrigin, ...]
    edge_origin: Tuple[EdgeOrigin, ...]
    crossings: Tuple[Crossing, ...]
    source_n: int
    source_m: int

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def merged(self) -> bool:
        """存在三条及以上边共点"""
        return self.drawing.n - self.source_n != len(self.crossings)

    def crossing_vertices(self) -> List[int]:
        return [v for v, o in enumerate(self.origin) if o.kind == OriginKind.CROSSING]


@log_performance("planarize")
def planarize(d: Drawing) -> PlanarizedDrawing:
    ensure_valid(d)
    found = crossings(d)
    positions: List[Point] = list(d.positions)
    origin: List[VertexOrigin] = [VertexOrigin(OriginKind.ORIGINAL, v) for v in range(d.n)]

    point_vertex: Dict[Point, int] = {}
    point_crossings: Dict[Point, List[int]] = {}
    on_edge: Dict[int, Dict[Point, int]] = {}
    for ci, c in enumerate(found):
        if c.point not in point_vertex:
            point_vertex[c.point] = len(positions)
            positions.append(c.point)
            point_crossings[c.point] = []
        point_crossings[c.point].append(ci)
        vid = point_vertex[c.point]
        on_edge.setdefault(c.edge_a, {})[c.point] = vid
        on_edge.setdefault(c.edge_b, {})[c.point] = vid
    for p, vid in point_vertex.items():
        origin.append(VertexOrigin(OriginKind.CROSSING, None, tuple(point_crossings[p])))

    edges: List[Tuple[int, int]] = []
    edge_origin: List[EdgeOrigin] = []
    for ei, (a, b) in enumerate(d.graph.edges):
        pa, pb = d.positions[a], d.positions[b]
        r = pb - pa
        rr = dot(r, r)
        stops = sorted(on_edge.get(ei, {}).items(), key=lambda item: dot(item[0] - pa, r) / rr)
        chain = [a] + [vid for _, vid in stops] + [b]
        for s, (u, v) in enumerate(zip(chain, chain[1:])):
            edges.append((u, v))
            edge_origin.append(EdgeOrigin(ei, s))

    plane = Drawing(Graph(len(positions), tuple(edges)), tuple(positions))
    logger.debug("planarized n=%d m=%d -> n'=%d m'=%d", d.n, d.m, plane.n, plane.m)
    return PlanarizedDrawing(plane, tuple(origin), tuple(edge_origin), tuple(found), d.n, d.m)


def _half(u: Direction) -> int:
    return 0 if sign(u.dy) > 0 or (u.dy == 0 and sign(u.dx) > 0) else 1


def _ccw_cmp(u: Direction, w: Direction) -> int:
    hu, hw = _half(u), _half(w)
    if hu != hw:
        return hu - hw
    return -sign(cross(u, w))


def rotation_system(d: Drawing) -> List[List[int]]:
    """每个顶点的邻居按逆时针角度排序"""
    adj = d.graph.adjacency()
    rot = []
    for v in range(d.n):
        pv = d.positions[v]
        rot.append(sorted(adj[v], key=cmp_to_key(lambda a, b: _ccw_cmp(d.positions[a] - pv, d.positions[b] - pv))))
    return rot


@dataclass(frozen=True)
class CellStructure:
    """胞: 每个胞是半边 (u, v) 的循环序列，胞位于半边左侧"""
    cells: Tuple[Tuple[Dart, ...], ...]
    unbounded_cell: int
    dart_cell: Dict[Dart, int]

    @property
    def sizes(self) -> List[int]:
        return [len(c) for c in self.cells]

    @property
    def f(self) -> int:
        return len(self.cells)

    @property
    def k(self) -> int:
        """无界胞大小"""
        return len(self.cells[self.unbounded_cell])

    def outer_boundary(self) -> List[int]:
        return [u for u, _ in self.cells[self.unbounded_cell]]

    def outer_is_simple_polygon(self) -> bool:
        cycle = self.outer_boundary()
        return len(cycle) >= 3 and len(set(cycle)) == len(cycle)

    def is_outer(self, dart: Dart) -> bool:
        return self.dart_cell[dart] == self.unbounded_cell


def _next_dart(rot: List[List[int]], pos: Dict[Dart, int], dart: Dart) -> Dart:
    u, v = dart
    ring = rot[v]
    return (v, ring[(pos[(v, u)] - 1) % len(ring)])


def _outer_dart(d: Drawing, rot: List[List[int]]) -> Optional[Dart]:
    v = min(range(d.n), key=lambda i: d.positions[i].key())
    if not rot[v]:
        return None
    pv = d.positions[v]
    # v 是字典序最小点，邻居方向都在 (-90°, 90°]，取最逆时针者
    top = rot[v][0]
    for w in rot[v][1:]:
        if sign(cross(d.positions[top] - pv, d.positions[w] - pv)) > 0:
            top = w
    return (v, top)


def cell_structure(p) -> CellStructure:
    """
    旋转系统遍历求所有胞。
    输入为 PlanarizedDrawing（或已知无交叉的 Drawing），须连通。
    """
    d = p.drawing if isinstance(p, PlanarizedDrawing) else p
    if not d.graph.is_connected():
        raise DisconnectedDrawingError("cell structure requires a connected drawing",
                                       {"components": len(d.graph.components())})
    if d.m == 0:
        return CellStructure(((),), 0, {})

    rot = rotation_system(d)
    pos = {(v, w): i for v in range(d.n) for i, w in enumerate(rot[v])}
    dart_cell: Dict[Dart, int] = {}
    cells: List[Tuple[Dart, ...]] = []
    for start in sorted(pos):
        if start in dart_cell:
            continue
        cycle = []
        dart = start
        while dart not in dart_cell:
            dart_cell[dart] = len(cells)
            cycle.append(dart)
            dart = _next_dart(rot, pos, dart)
        cells.append(tuple(cycle))
    outer = _outer_dart(d, rot)
    return CellStructure(tuple(cells), dart_cell[outer], dart_cell)


def euler_audit(d: Drawing) -> Tuple[int, int]:
    """(f, −n + m + cr + 2)，连通且无共点交叉时两者相等"""
    p = planarize(d)
    cs = cell_structure(p)
    return cs.f, -d.n + d.m + p.crossing_count + 2


@dataclass(frozen=True)
class CombSignature:
    code: Tuple

    def digest(self) -> str:
        return hashlib.sha1(repr(self.code).encode("utf-8")).hexdigest()[:16]


def _encode(rot: List[List[int]], kinds: Sequence[int], cs: CellStructure, start: Dart, mirrored: bool) -> Tuple:
    label: Dict[int, int] = {start[0]: 0}
    ref: Dict[int, int] = {start[0]: start[1]}
    order = [start[0]]
    code = []
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        ring = rot[x]
        j = ring.index(ref[x])
        seq = ring[j:] + ring[:j]
        if mirrored:
            seq = [seq[0]] + seq[1:][::-1]
        for y in seq:
            if y not in label:
                label[y] = len(order)
                ref[y] = x
                order.append(y)
        row = tuple(
            (label[y], cs.is_outer((y, x) if mirrored else (x, y)))
            for y in seq
        )
        code.append((kinds[x], row))
    return tuple(code)


def comb_signature(d: Drawing) -> CombSignature:
    """
    组合等价签名: 平面化后的旋转系统 + 无界胞标记 + 交叉顶点标记，
    对所有起始半边与两种定向取字典序最小。
    """
    p = planarize(d)
    plane = p.drawing
    cs = cell_structure(p)
    kinds = [0 if o.kind == OriginKind.ORIGINAL else 1 for o in p.origin]
    if plane.m == 0:
        return CombSignature(((plane.n, 0), ((kinds[0], ()),)))
    rot = rotation_system(plane)
    best = None
    for start in cs.dart_cell:
        for mirrored in (False, True):
            code = _encode(rot, kinds, cs, start, mirrored)
            if best is None or code < best:
                best = code
    return CombSignature(((plane.n, plane.m), best))
