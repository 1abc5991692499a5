#!/usr/bin/env python3
"""
TARKit 例外目录 E0–E9
边数超过 2n − 6 却仍允许 TAR > 60° 的有限个小图，每个带一个见证画法。

识别分两层:
- recognize_graph: 图同构（Theorem 1 关心的层面）
- recognize_drawing: 组合等价签名（平面画法层面）
"""

import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from core.drawing import Drawing, Graph, ensure_valid, tar
from core.errors import DisconnectedDrawingError, WitnessMismatchError
from core.exact import QSqrt3
from core.generators import regular_polygon
from core.geometry import AngleClass, Point
from core.planarization import CombSignature, comb_signature
from core.structured_logging import log_performance

logger = logging.getLogger(__name__)

FAMILIES = ("E0", "E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8", "E9")
VARIANT_COUNTS = {"E1": 4, "E8": 2, "E9": 2}
E1_VARIANT_NAMES = {1: "edge", 2: "path-3", 3: "path-4", 4: "star K1,3"}


@dataclass(frozen=True, order=True)
class ExceptionId:
    family: str
    variant: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown exception family {self.family!r}")
        if not 1 <= self.variant <= VARIANT_COUNTS.get(self.family, 1):
            raise ValueError(f"{self.family} has no variant {self.variant}")

    def __str__(self) -> str:
        if VARIANT_COUNTS.get(self.family, 1) == 1:
            return self.family
        return f"{self.family}({self.variant})"


@dataclass(frozen=True)
class CatalogEntry:
    id: ExceptionId
    graph: Graph
    witness: Drawing
    signature: Optional[CombSignature]
    description: str

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m


def _drawing(coords: Sequence[Tuple[object, object]], edges: Sequence[Tuple[int, int]]) -> Drawing:
    points = tuple(Point(x if isinstance(x, QSqrt3) else Fraction(x),
                         y if isinstance(y, QSqrt3) else Fraction(y)) for x, y in coords)
    return Drawing(Graph(len(points), tuple(edges)), points)


def _cycle(k: int) -> List[Tuple[int, int]]:
    return [(i, (i + 1) % k) for i in range(k)]


def _witnesses() -> List[Tuple[ExceptionId, str, Drawing]]:
    half = Fraction(1, 2)
    r3_2 = QSqrt3(0, half)
    out: List[Tuple[ExceptionId, str, Drawing]] = []

    out.append((ExceptionId("E0"), "three vertices and one edge",
                _drawing([(0, 0), (1, 0), (0, 1)], [(0, 1)])))

    out.append((ExceptionId("E1", 1), "tree: single edge",
                _drawing([(0, 0), (1, 0)], [(0, 1)])))
    out.append((ExceptionId("E1", 2), "tree: path on 3 vertices",
                _drawing([(0, 0), (1, 0), (2, 0)], [(0, 1), (1, 2)])))
    out.append((ExceptionId("E1", 3), "tree: path on 4 vertices",
                _drawing([(0, 0), (1, 0), (2, 0), (3, 0)], [(0, 1), (1, 2), (2, 3)])))
    # 三条射线两两 120°
    out.append((ExceptionId("E1", 4), "tree: star K1,3",
                _drawing([(0, 0), (1, 0), (-half, r3_2), (-half, -r3_2)], [(0, 1), (0, 2), (0, 3)])))

    out.append((ExceptionId("E2"), "empty 4-gon",
                _drawing([(0, 0), (1, 0), (1, 1), (0, 1)], _cycle(4))))
    out.append((ExceptionId("E3"), "4-gon with a pendant vertex",
                _drawing([(0, 0), (1, 0), (1, 1), (0, 1), (2, 2)], _cycle(4) + [(2, 4)])))

    pentagon = regular_polygon(5)
    out.append((ExceptionId("E4"), "empty 5-gon", pentagon))

    # 内点 5 连接两个不相邻顶点 0、2
    out.append((ExceptionId("E5"), "5-gon with an inner vertex joined to two non-neighbouring vertices",
                _drawing([(-2, 0), (0, -2), (2, 0), (3, 4), (-3, 4), (0, 1)],
                         _cycle(5) + [(0, 5), (2, 5)])))

    # 内边 5–6；胞: {6,2,3,4}、{4,0,5,6} 两个四边形，{0,1,2,6,5} 五边形
    out.append((ExceptionId("E6"), "5-gon with an inner edge split into two 4-gons and one 5-gon",
                _drawing([(0, 10), (-10, 6), (2, -6), (15, -6), (10, 6), (0, 0), (4, 0)],
                         _cycle(5) + [(0, 5), (5, 6), (2, 6), (4, 6)])))

    out.append((ExceptionId("E7"), "6-gon with a diagonal between opposite vertices",
                _drawing([(-3, 0), (-2, 3), (2, 3), (3, 0), (2, -3), (-2, -3)],
                         _cycle(6) + [(0, 3)])))

    # 中心 6 连接 0、2、4，三个空四边形
    out.append((ExceptionId("E8", 1), "6-gon with an inner vertex and three empty 4-gons",
                _drawing([(4, 0), (3, 5), (-2, 3), (-6, 0), (-2, -3), (3, -5), (0, 0)],
                         _cycle(6) + [(0, 6), (2, 6), (4, 6)])))
    # 内边 6–7，四个空四边形
    out.append((ExceptionId("E8", 2), "6-gon with an inner edge and four empty 4-gons",
                _drawing([(9, 0), (3, 4), (-3, 4), (-9, 0), (-3, -4), (3, -4), (-2, 0), (2, 0)],
                         _cycle(6) + [(6, 7), (1, 7), (5, 7), (2, 6), (4, 6)])))

    # 六边形顶点 0 为凹点（度 4），内部路径 6–7–8，五个空四边形
    e9_coords = [(0, 0), (-8, 53), (47, 37), (64, 0), (47, -37), (-8, -53), (34, 22), (45, 0), (34, -22)]
    e9_edges = _cycle(6) + [(6, 7), (7, 8), (0, 6), (0, 8), (2, 6), (3, 7), (4, 8)]
    out.append((ExceptionId("E9", 1), "6-gon with a path on 3 vertices inside",
                _drawing(e9_coords, e9_edges)))
    # 同上再加外侧顶点 9：顶点 0 成为内部 4-环 0–6–7–8 的度 4 顶点
    out.append((ExceptionId("E9", 2), "6-gon with a 4-cycle inside",
                _drawing(e9_coords + [(-90, 0)], e9_edges + [(1, 9), (5, 9)])))
    return out


def _signature(d: Drawing) -> Optional[CombSignature]:
    if not d.graph.is_connected():
        return None
    return comb_signature(d)


@log_performance("exception_catalog.build")
def _build() -> Tuple[CatalogEntry, ...]:
    entries = []
    for eid, description, witness in _witnesses():
        report = tar(witness)
        if report.classes[60] != AngleClass.ABOVE:
            raise WitnessMismatchError(f"witness for {eid} is not above 60 degrees",
                                       {"id": str(eid), "tar": str(report.tar)})
        entries.append(CatalogEntry(eid, witness.graph, witness, _signature(witness), description))
    logger.debug("exception catalog built with %d entries", len(entries))
    return tuple(entries)


_catalog: Optional[Tuple[CatalogEntry, ...]] = None
_lock = threading.Lock()


def catalog() -> List[CatalogEntry]:
    """完整目录（含两顶点的单边），只构建一次"""
    global _catalog
    with _lock:
        if _catalog is None:
            _catalog = _build()
        return list(_catalog)


def theorem1_catalog() -> List[CatalogEntry]:
    """n ≥ 3 的条目（Theorem 1 的例外）"""
    return [e for e in catalog() if e.n >= 3]


def entry(eid: ExceptionId) -> CatalogEntry:
    for e in catalog():
        if e.id == eid:
            return e
    raise KeyError(str(eid))


def recognize_graph(g: Graph) -> Optional[ExceptionId]:
    """g 与某个目录图同构时返回其编号"""
    candidates = [e for e in catalog() if e.n == g.n and e.m == g.m]
    if not candidates:
        return None
    target = g.to_networkx()
    degrees = sorted(g.degrees())
    for e in candidates:
        if sorted(e.graph.degrees()) != degrees:
            continue
        if nx.is_isomorphic(target, e.graph.to_networkx()):
            return e.id
    return None


def recognize_drawing(d: Drawing) -> Optional[ExceptionId]:
    """
    组合等价识别: 比较平面化后的规范签名。
    不连通的画法只可能是 E0（一条边加一个孤立点，组合上唯一）。
    """
    ensure_valid(d)
    if not d.graph.is_connected():
        found = recognize_graph(d.graph)
        if found == ExceptionId("E0"):
            return found
        raise DisconnectedDrawingError("drawing-level recognition requires a connected drawing",
                                       {"components": len(d.graph.components())})
    if d.n > max(e.n for e in catalog()):
        return None
    sig = comb_signature(d)
    for e in catalog():
        if e.signature is not None and e.signature == sig:
            return e.id
    return None


def signature_index() -> Dict[str, ExceptionId]:
    """签名摘要 → 编号"""
    return {e.signature.digest(): e.id for e in catalog() if e.signature is not None}
