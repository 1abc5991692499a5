#!/usr/bin/env python3
"""
TARKit 归约图的 60° 布局

坐标写成 (x, η)，实际点为 (x, √3·η)；水平边 η 不变，±60° 边满足 Δx = ±Δη。
所有边只取水平或 ±60° 方向，因此所有夹角和交叉角都是 60° 的倍数，TAR 恰为 60°。

- 框架三角形边长 1；t_k = (k, 1/2)，b_k = (k + 1/2, 0)，扇形中心 O_j = (K − 1/2, j)
- 变量 i 的六边形边长 s_i = 1/q_i（q_i 为大于 2(m+1) 的第 i 个素数），真文字一侧朝右
- 连接部件边长 t_i = m − (m+1)·s_i，使部件恰好填满 X_i 到 X'_i
- 子句-文字路径按固定顺序布线，第一段长度从 k/(2D) 中依次尝试
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

from core.cnf import Assignment, Literal
from core.drawing import Drawing, ensure_valid, tar
from core.errors import RoutingError, UnsatisfyingAssignmentError
from core.exact import QSqrt3, simplify
from core.geometry import AngleClass, IntersectionKind, Point, segment_intersection
from core.reduction import ReductionOutput
from core.structured_logging import log_performance

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


def primes_above(bound: int) -> Iterator[int]:
    candidate = bound + 1
    while True:
        if candidate >= 2 and all(candidate % d for d in range(2, int(candidate ** 0.5) + 1)):
            yield candidate
        candidate += 1


def _point(x: Fraction, eta: Fraction) -> Point:
    return Point(Fraction(x), simplify(QSqrt3(0, eta)))


@dataclass(frozen=True)
class GadgetScale:
    hexagon: Fraction
    connector: Fraction
    right_side_positive: bool


def gadget_scales(r: ReductionOutput, a: Assignment) -> Dict[int, GadgetScale]:
    m = r.n_clauses
    primes = primes_above(2 * (m + 1))
    scales = {}
    for i in range(1, r.n_vars + 1):
        s = Fraction(1, next(primes))
        scales[i] = GadgetScale(s, m - (m + 1) * s, a.value(i))
    return scales


def _slot_position(slot: tuple, k: int, m: int, scales: Dict[int, GadgetScale]) -> Tuple[Fraction, Fraction]:
    kind = slot[0]
    if kind == "t":
        return Fraction(slot[1]), HALF
    if kind == "b":
        return slot[1] + HALF, Fraction(0)
    if kind == "fan":
        return k - HALF, Fraction(slot[1])
    if kind == "rim":
        j, rim = slot[1], slot[2]
        offset = {2: (Fraction(1), Fraction(0)), 3: (HALF, HALF), 4: (-HALF, HALF)}[rim]
        return k - HALF + offset[0], j + offset[1]
    if kind == "u":
        return Fraction(slot[1]), m + HALF
    if kind == "w":
        return slot[1] + HALF, Fraction(m + 1)

    i = slot[1]
    sc = scales[i]
    cx, s = Fraction(i - 1), sc.hexagon

    def side(positive: bool) -> int:
        return 1 if positive == sc.right_side_positive else -1

    if kind == "row":
        return cx + side(slot[3]) * s / 2, HALF + s / 2 + slot[2] * s
    if kind == "hub":
        return cx, HALF + slot[2] * s
    if kind == "lit":
        return cx + side(slot[3]) * s, HALF + slot[2] * s
    if kind == "apex":
        return cx, HALF + (m + 1) * s
    if kind == "corner":
        t = sc.connector
        return cx + (t / 2 if slot[2] else -t / 2), HALF + (m + 1) * s + t / 2
    raise ValueError(f"no position rule for slot {slot}")


class _Router:
    """逐条布线；每条路径只与已放置的边做局部检查，最后整体 ensure_valid"""

    def __init__(self, r: ReductionOutput, coords: Dict[int, Tuple[Fraction, Fraction]]):
        self.r = r
        self.coords = coords
        self.points = {v: _point(*xy) for v, xy in coords.items()}
        self.occupied = {p: v for v, p in self.points.items()}
        self.segments = [(a, b) for a, b in r.graph.edges if a in coords and b in coords]

    def _fits(self, chain: List[int], placed: Dict[int, Point]) -> bool:
        points = dict(self.points)
        for v, p in placed.items():
            if p in self.occupied:
                return False
            points[v] = p
        if len(set(placed.values())) != len(placed):
            return False
        new_edges = list(zip(chain, chain[1:]))
        for a, b in new_edges:
            p1, p2 = points[a], points[b]
            if p1 == p2:
                return False
            for c, d in self.segments:
                hit = segment_intersection(p1, p2, points[c], points[d])
                if hit.kind == IntersectionKind.DEGENERATE:
                    return False
        first, last = new_edges[0], new_edges[-1]
        if segment_intersection(points[first[0]], points[first[1]],
                                points[last[0]], points[last[1]]).kind != IntersectionKind.NONE:
            return False
        return True

    def place(self, chain: List[int], placed: Dict[int, Tuple[Fraction, Fraction]]) -> bool:
        points = {v: _point(*xy) for v, xy in placed.items()}
        if not self._fits(chain, points):
            return False
        self.coords.update(placed)
        self.points.update(points)
        self.occupied.update({p: v for v, p in points.items()})
        self.segments.extend(zip(chain, chain[1:]))
        return True


def _route_order(r: ReductionOutput, a: Assignment, j: int) -> List[Tuple[Literal, int]]:
    """
    (文字, 方向): 第一个真文字水平出发 (0)；其余两个按文字顶点高度，高者 +60° (+1)，低者 −60° (−1)。
    """
    clause = r.instance.clauses[j - 1]
    chosen = next(lit for lit in clause if a.satisfies_literal(lit))
    rest = [lit for lit in clause if lit != chosen]
    # 文字顶点高度 1/2 + j·s_i，变量编号小者更高；同一变量时正文字向上
    rest.sort(key=lambda lit: (lit.var, not lit.positive))
    return [(chosen, 0), (rest[0], 1), (rest[1], -1)]


def _path_points(c: Tuple[Fraction, Fraction], v: Tuple[Fraction, Fraction], direction: int,
                 faces_right: bool, step: Fraction) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
    cx, ceta = c
    vx, veta = v
    if direction == 0:
        m1 = (cx + step, ceta)
        rise = abs(veta - ceta)
        m2 = (m1[0] + rise, veta)
        return m1, m2
    m1 = (cx + step, ceta + direction * step)
    rise = abs(m1[1] - veta)
    m2 = (vx + rise if faces_right else vx - rise, m1[1])
    return m1, m2


@log_performance("reduction.layout_satisfying")
def layout_satisfying(r: ReductionOutput, a: Assignment, max_attempts: Optional[int] = None) -> Drawing:
    """
    可满足赋值 → TAR 恰为 60° 的画法。
    每个变量部件真文字一侧朝右；每个子句第一个真文字的路径水平出发、斜走到文字顶点高度、再水平到达；
    其余两条路径 ±60° 出发、水平向左、最后一段 ±60° 从右（真文字）或从左（假文字）到达。
    """
    f = r.instance
    if a.num_vars != f.num_vars:
        raise UnsatisfyingAssignmentError(f"assignment covers {a.num_vars} variables, instance has {f.num_vars}",
                                          {"assignment": a.bits()})
    if not f.satisfied_by(a):
        raise UnsatisfyingAssignmentError("assignment unsatisfying",
                                          {"assignment": a.bits(), "unsatisfied": f.unsatisfied_clauses(a)})
    k, m = r.n_vars + r.n_clauses, r.n_clauses
    scales = gadget_scales(r, a)
    coords: Dict[int, Tuple[Fraction, Fraction]] = {}
    for v, slot in enumerate(r.slots):
        if slot[0] != "path":
            coords[v] = _slot_position(slot, k, m, scales)

    denominator = next(primes_above(max([2 * (m + 1)] + [sc.hexagon.denominator for sc in scales.values()])))
    attempts = max_attempts or denominator - 1
    router = _Router(r, coords)
    for j in range(1, m + 1):
        c = r.clause_vertex(j)
        for lit, direction in _route_order(r, a, j):
            path = next(p for p in r.paths_of(j) if p.literal == lit)
            _, m1, m2, v = path.vertices
            faces_right = a.satisfies_literal(lit)
            for step_index in range(1, attempts + 1):
                step = Fraction(step_index, 2 * denominator)
                p1, p2 = _path_points(coords[c], coords[v], direction, faces_right, step)
                if router.place(list(path.vertices), {m1: p1, m2: p2}):
                    break
            else:
                raise RoutingError(f"could not route the path from C_{j} to literal {lit}",
                                   {"clause": j, "literal": lit.to_int(), "attempts": attempts})

    d = Drawing(r.graph, tuple(_point(*coords[v]) for v in range(r.graph.n)))
    ensure_valid(d)
    report = tar(d)
    if report.classes[60] != AngleClass.EQUAL:
        raise RoutingError("layout does not reach exactly 60 degrees", {"tar": str(report.tar)})
    logger.info("layout for %s: n=%d m=%d crossings=%d", a.bits(), d.n, d.m, report.crossing_count)
    return d
