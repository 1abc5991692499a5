#!/usr/bin/env python3
"""
TARKit 画法模型
图、直线画法、有效性检查、交叉枚举以及总角分辨率 (TAR) 的精确计算。

TAR(D) = min(AR(D), CR(D))：
- AR: 共享顶点的两条边之间的最小夹角（所有入射边对，不只相邻对）
- CR: 交叉边对形成的锐角或直角中的最小者
"""

import bisect
import itertools
import math
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from core.errors import InvalidDrawingError, InvalidGraphError
from core.exact import Scalar
from core.geometry import (
    THRESHOLDS,
    AngleClass,
    ExactAngle,
    IntersectionKind,
    Point,
    orientation,
    segment_intersection,
)

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

# 浮点包围盒预筛选的容差
_BOX_EPS = 1e-7


@dataclass(frozen=True)
class Graph:
    """无向简单图，顶点编号 [0, n)"""
    n: int
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 0:
            raise InvalidGraphError(f"negative vertex count {self.n}")
        normalized = []
        seen = set()
        for raw in self.edges:
            a, b = int(raw[0]), int(raw[1])
            if a == b:
                raise InvalidGraphError(f"self-loop at vertex {a}", {"edge": [a, b]})
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise InvalidGraphError(f"edge {(a, b)} out of range for n={self.n}", {"edge": [a, b]})
            e = (min(a, b), max(a, b))
            if e in seen:
                raise InvalidGraphError(f"duplicate edge {e}", {"edge": list(e)})
            seen.add(e)
            normalized.append(e)
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> List[List[int]]:
        adj: List[List[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def incident_edges(self) -> List[List[int]]:
        inc: List[List[int]] = [[] for _ in range(self.n)]
        for idx, (a, b) in enumerate(self.edges):
            inc[a].append(idx)
            inc[b].append(idx)
        return inc

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def degrees(self) -> List[int]:
        return [len(nbrs) for nbrs in self.adjacency()]

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return nx.is_connected(self.to_networkx())

    def components(self) -> List[List[int]]:
        """连通分量，按最小顶点编号排序"""
        comps = [sorted(c) for c in nx.connected_components(self.to_networkx())]
        return sorted(comps, key=lambda c: c[0])

    def induced(self, vertices: Sequence[int]) -> Tuple["Graph", Dict[int, int]]:
        index = {v: i for i, v in enumerate(vertices)}
        edges = tuple((index[a], index[b]) for a, b in self.edges if a in index and b in index)
        return Graph(len(vertices), edges), index


def cycle_graph(k: int) -> Graph:
    return Graph(k, tuple((i, (i + 1) % k) for i in range(k)))


def path_graph(k: int) -> Graph:
    return Graph(k, tuple((i, i + 1) for i in range(k - 1)))


@dataclass(frozen=True)
class Drawing:
    """直线画法: 图 + 每个顶点的精确坐标"""
    graph: Graph
    positions: Tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(self.positions))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    def segment(self, edge_index: int) -> Tuple[Point, Point]:
        a, b = self.graph.edges[edge_index]
        return self.positions[a], self.positions[b]

    def transformed(self, fn: Callable[[Point], Point]) -> "Drawing":
        return Drawing(self.graph, tuple(fn(p) for p in self.positions))

    def translated(self, dx: Scalar, dy: Scalar) -> "Drawing":
        return self.transformed(lambda p: Point(p.x + dx, p.y + dy))

    def scaled(self, factor: Scalar) -> "Drawing":
        return self.transformed(lambda p: Point(p.x * factor, p.y * factor))

    def reflected(self) -> "Drawing":
        """关于 y 轴镜像"""
        return self.transformed(lambda p: Point(-p.x, p.y))

    def relabeled(self, perm: Sequence[int]) -> "Drawing":
        """顶点 v 改名为 perm[v]"""
        positions: List[Optional[Point]] = [None] * self.n
        for v, p in enumerate(self.positions):
            positions[perm[v]] = p
        edges = tuple((perm[a], perm[b]) for a, b in self.graph.edges)
        return Drawing(Graph(self.n, edges), tuple(positions))

    def subdrawing(self, vertices: Sequence[int]) -> "Drawing":
        g, _ = self.graph.induced(vertices)
        return Drawing(g, tuple(self.positions[v] for v in vertices))


class ViolationKind(Enum):
    POSITION_COUNT = "position count mismatch"
    COINCIDENT_VERTICES = "coincident vertices"
    VERTEX_ON_EDGE = "vertex on edge interior"
    OVERLAPPING_EDGES = "overlapping edges"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    vertices: Tuple[int, ...] = ()
    edges: Tuple[int, ...] = ()

    def __str__(self) -> str:
        parts = [self.kind.value]
        if self.vertices:
            parts.append(f"vertices={list(self.vertices)}")
        if self.edges:
            parts.append(f"edges={list(self.edges)}")
        return " ".join(parts)


def _float_boxes(d: Drawing) -> List[Tuple[float, float, float, float]]:
    boxes = []
    floats = [p.as_floats() for p in d.positions]
    for a, b in d.graph.edges:
        (x1, y1), (x2, y2) = floats[a], floats[b]
        boxes.append((min(x1, x2), min(y1, y2), max(x1, x2), max(y1, y2)))
    return boxes


def candidate_edge_pairs(d: Drawing) -> Iterator[Tuple[int, int]]:
    """包围盒相交的边对 (i < j)，按 x 扫描"""
    boxes = _float_boxes(d)
    order = sorted(range(len(boxes)), key=lambda i: boxes[i][0])
    active: List[int] = []
    for i in order:
        x0, y0, x1, y1 = boxes[i]
        active = [j for j in active if boxes[j][2] >= x0 - _BOX_EPS]
        for j in active:
            bj = boxes[j]
            if bj[1] <= y1 + _BOX_EPS and y0 <= bj[3] + _BOX_EPS:
                yield (min(i, j), max(i, j))
        active.append(i)


def _vertices_near_edges(d: Drawing) -> Iterator[Tuple[int, int]]:
    """包围盒内的 (顶点, 边) 候选"""
    floats = [p.as_floats() for p in d.positions]
    order = sorted(range(d.n), key=lambda v: floats[v][0])
    xs = [floats[v][0] for v in order]
    for idx, (x0, y0, x1, y1) in enumerate(_float_boxes(d)):
        lo = bisect.bisect_left(xs, x0 - _BOX_EPS)
        hi = bisect.bisect_right(xs, x1 + _BOX_EPS)
        for v in order[lo:hi]:
            if y0 - _BOX_EPS <= floats[v][1] <= y1 + _BOX_EPS:
                yield v, idx


def validate(d: Drawing) -> List[Violation]:
    """精确检查画法不变量；返回空列表表示有效"""
    if len(d.positions) != d.n:
        return [Violation(ViolationKind.POSITION_COUNT)]

    violations: List[Violation] = []
    by_point: Dict[Point, List[int]] = {}
    for v, p in enumerate(d.positions):
        by_point.setdefault(p, []).append(v)
    coincident = set()
    for group in by_point.values():
        if len(group) > 1:
            violations.append(Violation(ViolationKind.COINCIDENT_VERTICES, vertices=tuple(group)))
            coincident.update(group)

    for v, idx in _vertices_near_edges(d):
        a, b = d.graph.edges[idx]
        if v in (a, b):
            continue
        p, pa, pb = d.positions[v], d.positions[a], d.positions[b]
        if p == pa or p == pb:
            continue
        if orientation(pa, pb, p) == 0 and min(pa.x, pb.x) <= p.x <= max(pa.x, pb.x) \
                and min(pa.y, pb.y) <= p.y <= max(pa.y, pb.y):
            violations.append(Violation(ViolationKind.VERTEX_ON_EDGE, vertices=(v,), edges=(idx,)))

    for i, j in candidate_edge_pairs(d):
        ea, eb = d.graph.edges[i], d.graph.edges[j]
        if coincident.intersection(ea + eb):
            continue
        p1, p2 = d.segment(i)
        q1, q2 = d.segment(j)
        if orientation(p1, p2, q1) != 0 or orientation(p1, p2, q2) != 0:
            continue
        if segment_intersection(p1, p2, q1, q2).kind == IntersectionKind.DEGENERATE:
            violations.append(Violation(ViolationKind.OVERLAPPING_EDGES, edges=(i, j)))
    return violations


def ensure_valid(d: Drawing) -> Drawing:
    violations = validate(d)
    if violations:
        raise InvalidDrawingError(f"invalid drawing: {violations[0]}", violations)
    return d


@dataclass(frozen=True)
class Crossing:
    edge_a: int
    edge_b: int
    point: Point


def crossings(d: Drawing) -> List[Crossing]:
    """所有真交叉，逐对枚举；共点交叉分别报告"""
    found = []
    for i, j in candidate_edge_pairs(d):
        ea, eb = d.graph.edges[i], d.graph.edges[j]
        if set(ea) & set(eb):
            continue
        p1, p2 = d.segment(i)
        q1, q2 = d.segment(j)
        hit = segment_intersection(p1, p2, q1, q2)
        if hit.kind == IntersectionKind.PROPER_CROSSING:
            found.append(Crossing(i, j, hit.point))
    found.sort(key=lambda c: (c.edge_a, c.edge_b))
    return found


def crossing_number(d: Drawing) -> int:
    return len(crossings(d))


def multi_crossing_points(d: Drawing) -> Dict[Point, Tuple[int, ...]]:
    """三条及以上边共点相交的位置 -> 经过该点的边"""
    through: Dict[Point, set] = {}
    for c in crossings(d):
        through.setdefault(c.point, set()).update((c.edge_a, c.edge_b))
    return {p: tuple(sorted(es)) for p, es in through.items() if len(es) >= 3}


@dataclass(frozen=True)
class TarValue:
    """最小角；angle 为 None 表示 UNCONSTRAINED（无任何角）"""
    angle: Optional[ExactAngle] = None

    @property
    def unconstrained(self) -> bool:
        return self.angle is None

    def classify(self, threshold: int) -> AngleClass:
        if self.angle is None:
            return AngleClass.ABOVE
        return self.angle.classify(threshold)

    def degrees(self) -> float:
        return float("inf") if self.angle is None else self.angle.degrees()

    def compare(self, other: "TarValue") -> int:
        if self.angle is None or other.angle is None:
            return (self.angle is None) - (other.angle is None)
        return self.angle.compare(other.angle)

    def __str__(self) -> str:
        return "inf" if self.angle is None else f"{self.degrees():.6f}"


UNCONSTRAINED = TarValue(None)


def _min_value(current: TarValue, candidate: ExactAngle) -> TarValue:
    if current.angle is None or candidate.compare(current.angle) < 0:
        return TarValue(candidate)
    return current


@dataclass(frozen=True)
class TarReport:
    tar: TarValue
    ar: TarValue
    cr: TarValue
    classes: Dict[int, AngleClass] = field(default_factory=dict)
    witness: Tuple[Any, ...] = ()
    crossing_count: int = 0

    def summary_line(self) -> str:
        cls = " ".join(f"vs{t}={self.classes[t].value}" for t in THRESHOLDS)
        return f"TAR = {self.tar}; {cls}"

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            "tar": str(self.tar),
            "ar": str(self.ar),
            "cr": str(self.cr),
            "classes": {f"vs{t}": self.classes[t].value for t in THRESHOLDS},
            "witness": list(self.witness),
            "crossings": self.crossing_count,
        }


def angular_resolution(d: Drawing) -> Tuple[TarValue, Tuple[Any, ...]]:
    ar = UNCONSTRAINED
    witness: Tuple[Any, ...] = ()
    incident = d.graph.incident_edges()
    for v in range(d.n):
        pv = d.positions[v]
        for e1, e2 in itertools.combinations(incident[v], 2):
            u = d.graph.edges[e1]
            w = d.graph.edges[e2]
            a = ExactAngle.between(d.positions[u[0] + u[1] - v] - pv, d.positions[w[0] + w[1] - v] - pv)
            new = _min_value(ar, a)
            if new is not ar:
                ar, witness = new, ("vertex", v, e1, e2)
    return ar, witness


def crossing_resolution(d: Drawing, found: Optional[Iterable[Crossing]] = None) -> Tuple[TarValue, Tuple[Any, ...]]:
    cr = UNCONSTRAINED
    witness: Tuple[Any, ...] = ()
    for c in (crossings(d) if found is None else found):
        p1, p2 = d.segment(c.edge_a)
        q1, q2 = d.segment(c.edge_b)
        new = _min_value(cr, ExactAngle.crossing(p2 - p1, q2 - q1))
        if new is not cr:
            cr, witness = new, ("crossing", c.edge_a, c.edge_b)
    return cr, witness


def tar(d: Drawing) -> TarReport:
    """精确计算 TAR(D)，并给出对 60°/90°/120° 的分类"""
    ensure_valid(d)
    found = crossings(d)
    ar, ar_witness = angular_resolution(d)
    cr, cr_witness = crossing_resolution(d, found)
    if ar.compare(cr) <= 0:
        total, witness = ar, ar_witness
    else:
        total, witness = cr, cr_witness
    classes = {t: total.classify(t) for t in THRESHOLDS}
    return TarReport(total, ar, cr, classes, witness, len(found))


def tar_class(d: Drawing, threshold: int = 60) -> AngleClass:
    return tar(d).classes[threshold]


def float_tar(positions: Sequence[Tuple[float, float]], edges: Sequence[Edge]) -> float:
    """
    浮点 TAR（度），用于优化器内循环。
    不检查有效性；退化情况由调用方拒绝。
    """
    best = float("inf")
    incident: Dict[int, List[int]] = {}
    for idx, (a, b) in enumerate(edges):
        incident.setdefault(a, []).append(idx)
        incident.setdefault(b, []).append(idx)
    for v, es in incident.items():
        if len(es) < 2:
            continue
        vx, vy = positions[v]
        dirs = []
        for e in es:
            a, b = edges[e]
            ox, oy = positions[a + b - v]
            dirs.append(math.atan2(oy - vy, ox - vx))
        for t1, t2 in itertools.combinations(dirs, 2):
            diff = abs(t1 - t2) % (2 * math.pi)
            best = min(best, math.degrees(min(diff, 2 * math.pi - diff)))
    for i, j in itertools.combinations(range(len(edges)), 2):
        (a, b), (c, e) = edges[i], edges[j]
        if len({a, b, c, e}) < 4:
            continue
        p1, p2, q1, q2 = positions[a], positions[b], positions[c], positions[e]
        rx, ry = p2[0] - p1[0], p2[1] - p1[1]
        sx, sy = q2[0] - q1[0], q2[1] - q1[1]
        denom = rx * sy - ry * sx
        if denom == 0:
            continue
        t = ((q1[0] - p1[0]) * sy - (q1[1] - p1[1]) * sx) / denom
        u = ((q1[0] - p1[0]) * ry - (q1[1] - p1[1]) * rx) / denom
        if 0 < t < 1 and 0 < u < 1:
            ang = math.degrees(math.atan2(abs(denom), abs(rx * sx + ry * sy)))
            best = min(best, ang)
    return best
