#!/usr/bin/env python3
"""
TARKit 画法构造器
- layered_8gon: m = 2n − 6 且 TAR > 60° 的分层八边形族
- regular_polygon: 正多边形（可精确时用 Q(√3) 坐标，否则有理近似）
- random_drawing: 由种子决定的随机画法，用于模糊测试
"""

import itertools
import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.drawing import Drawing, Graph, path_graph, tar, validate
from core.errors import BudgetExceededError, PreconditionError, WitnessMismatchError
from core.exact import QSqrt3, simplify
from core.geometry import AngleClass, Point

logger = logging.getLogger(__name__)

# 正多边形有理近似的最小分母；实际分母取 max(POLYGON_DENOMINATOR, kk**4)
POLYGON_DENOMINATOR = 10 ** 6
# 超过此边数时 kk**4 超出双精度 cos/sin 的有效位数
MAX_POLYGON_SIDES = 10 ** 4

# 八边形层 (a, h, c, H): 顶点 (a,h) (c,H) (−c,H) (−a,h) (−a,−h) (−c,−H) (c,−H) (a,−h)
_INNER_LAYER = (Fraction(2), Fraction(1), Fraction(9, 5), Fraction(4))
_OUTER_LAYER = (Fraction(5), Fraction(9, 4), Fraction(9, 4), Fraction(5))
# 最内层的两条弦
_INNER_CHORDS = ((0, 3), (4, 7))


def _octagon(a: Fraction, h: Fraction, c: Fraction, big_h: Fraction, scale: int = 1) -> List[Point]:
    raw = [(a, h), (c, big_h), (-c, big_h), (-a, h), (-a, -h), (-c, -big_h), (c, -big_h), (a, -h)]
    return [Point(x * scale, y * scale) for x, y in raw]


def layered_8gon(k: int, verify: bool = True) -> Drawing:
    """
    k 层嵌套八边形: 每层 8 条边，相邻层间 8 条径向边，最内层两条弦。
    n = 8k, m = 16k − 6。外层是同一八边形的整数倍缩放，径向边沿过原点的射线。
    """
    if k < 1:
        raise PreconditionError(f"layered 8-gon needs k >= 1, got {k}", {"k": k})
    positions: List[Point] = _octagon(*_INNER_LAYER)
    for layer in range(1, k):
        positions.extend(_octagon(*_OUTER_LAYER, scale=layer))

    edges: List[Tuple[int, int]] = []
    for layer in range(k):
        base = 8 * layer
        edges.extend((base + i, base + (i + 1) % 8) for i in range(8))
        if layer + 1 < k:
            edges.extend((base + i, base + 8 + i) for i in range(8))
    edges.extend(_INNER_CHORDS)

    d = Drawing(Graph(8 * k, tuple(edges)), tuple(positions))
    if verify:
        report = tar(d)
        if report.classes[60] != AngleClass.ABOVE or report.crossing_count:
            raise WitnessMismatchError("layered 8-gon lost its TAR > 60° guarantee",
                                       {"k": k, "tar": str(report.tar), "crossings": report.crossing_count})
    logger.debug("layered_8gon k=%d n=%d m=%d", k, d.n, d.m)
    return d


# cos/sin(30°·j)，j = 0..11
_HALF = Fraction(1, 2)
_R3_2 = QSqrt3(0, _HALF)
_UNIT_30: Tuple[Tuple[object, object], ...] = (
    (Fraction(1), Fraction(0)),
    (_R3_2, _HALF),
    (_HALF, _R3_2),
    (Fraction(0), Fraction(1)),
    (-_HALF, _R3_2),
    (-_R3_2, _HALF),
    (Fraction(-1), Fraction(0)),
    (-_R3_2, -_HALF),
    (-_HALF, -_R3_2),
    (Fraction(0), Fraction(-1)),
    (_HALF, -_R3_2),
    (_R3_2, -_HALF),
)


def regular_polygon_points(kk: int, radius: int = 1) -> List[Point]:
    """正 kk 边形顶点，逆时针，第一个顶点在 (radius, 0)"""
    if kk < 3:
        raise PreconditionError(f"a polygon needs at least 3 vertices, got {kk}", {"kk": kk})
    if kk > MAX_POLYGON_SIDES:
        raise PreconditionError(f"regular polygons are limited to {MAX_POLYGON_SIDES} vertices, got {kk}",
                                {"kk": kk, "max": MAX_POLYGON_SIDES})
    if 12 % kk == 0:
        step = 12 // kk
        return [Point(simplify(_UNIT_30[j * step][0] * radius), simplify(_UNIT_30[j * step][1] * radius))
                for j in range(kk)]
    den = max(POLYGON_DENOMINATOR, kk ** 4)
    points = []
    for j in range(kk):
        t = 2 * math.pi * j / kk
        points.append(Point(Fraction(round(radius * math.cos(t) * den), den),
                            Fraction(round(radius * math.sin(t) * den), den)))
    return points


def regular_polygon(kk: int) -> Drawing:
    """
    正 kk 边形画法。kk 整除 12 时坐标在 Q(√3) 中精确；
    其余情况为分母 max(10^6, kk^4) 的有理近似，kk 至多 MAX_POLYGON_SIDES；严格凸，各阈值分类与理想内角 (kk−2)·180°/kk 一致。
    """
    points = regular_polygon_points(kk)
    return Drawing(Graph(kk, tuple((i, (i + 1) % kk) for i in range(kk))), tuple(points))


def straight_path(length: int, origin: Optional[Point] = None) -> Drawing:
    """length 个顶点的水平直线路径，相邻顶点间距 1"""
    origin = origin or Point(Fraction(0), Fraction(0))
    points = tuple(Point(origin.x + i, origin.y) for i in range(length))
    return Drawing(path_graph(length), points)


def random_drawing(n: int, m: int, seed: int, coordinate_range: int = 100,
                   max_retries: Optional[int] = None) -> Drawing:
    """
    随机画法: 顶点取 [0, coordinate_range) 上的整数坐标，边无放回抽样。
    坐标反复重采样直到 validate 通过；同样的输入总是得到同样的画法。
    """
    pairs = list(itertools.combinations(range(n), 2))
    if n < 0 or not 0 <= m <= len(pairs):
        raise PreconditionError(f"cannot place {m} edges on {n} vertices", {"n": n, "m": m})
    if coordinate_range <= 0:
        raise PreconditionError("coordinate_range must be positive", {"coordinate_range": coordinate_range})
    if max_retries is None:
        from core.config import get_settings

        max_retries = get_settings().random_retries

    rng = np.random.default_rng(seed)
    chosen = sorted(rng.choice(len(pairs), size=m, replace=False).tolist()) if m else []
    graph = Graph(n, tuple(pairs[i] for i in chosen))
    for attempt in range(max_retries):
        coords = rng.integers(0, coordinate_range, size=(n, 2))
        d = Drawing(graph, tuple(Point(Fraction(int(x)), Fraction(int(y))) for x, y in coords))
        if not validate(d):
            if attempt:
                logger.debug("random_drawing seed=%d accepted after %d resamples", seed, attempt)
            return d
    raise BudgetExceededError(f"no valid drawing of n={n}, m={m} within {max_retries} samples",
                              {"seed": seed, "coordinate_range": coordinate_range, "retries": max_retries})


def random_drawing_of(graph: Graph, seed: int, coordinate_range: int = 100,
                      max_retries: Optional[int] = None) -> Drawing:
    """给定图的随机坐标画法"""
    if max_retries is None:
        from core.config import get_settings

        max_retries = get_settings().random_retries
    rng = np.random.default_rng(seed)
    for _ in range(max_retries):
        coords = rng.integers(0, coordinate_range, size=(graph.n, 2))
        d = Drawing(graph, tuple(Point(Fraction(int(x)), Fraction(int(y))) for x, y in coords))
        if not validate(d):
            return d
    raise BudgetExceededError(f"no valid drawing of the given graph within {max_retries} samples",
                              {"seed": seed, "coordinate_range": coordinate_range})


def side_by_side(parts: Sequence[Drawing], gap: int = 2) -> Drawing:
    """把若干画法水平排开合并为一个（按包围盒平移）"""
    positions: List[Point] = []
    edges: List[Tuple[int, int]] = []
    cursor: Optional[Fraction] = None
    for part in parts:
        if part.n == 0:
            continue
        xs = [Fraction(math.floor(float(p.x))) for p in part.positions]
        left = min(xs)
        right = max(Fraction(math.ceil(float(p.x))) for p in part.positions)
        shift = (Fraction(0) if cursor is None else cursor + gap) - left
        base = len(positions)
        positions.extend(Point(p.x + shift, p.y) for p in part.positions)
        edges.extend((a + base, b + base) for a, b in part.graph.edges)
        cursor = right + shift
    return Drawing(Graph(len(positions), tuple(edges)), tuple(positions))
