#!/usr/bin/env python3
"""
TARKit 边数上界检查器

每个检查器只负责计算和报告；“TAR > 60° ⇒ 上界成立”这类定理实例由调用方断言。
报告中 holds 为假且 TAR 相对 60° 为 ABOVE（并且不属于例外）即构成反例。
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, Union

from core.drawing import Drawing, Graph, crossings, ensure_valid, tar
from core.errors import DisconnectedDrawingError, PreconditionError, WitnessMismatchError
from core.exact import sign
from core.exception_catalog import ExceptionId, recognize_drawing, recognize_graph
from core.generators import regular_polygon_points, side_by_side, straight_path
from core.geometry import AngleClass, Point, cross, dot
from core.planarization import CellStructure, cell_structure, planarize, rotation_system

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundReport:
    """
    单条上界检查结果。
    value 是被比较的量: 边数 m，或 Observation 1 的内度数之和。
    """
    statement: str
    n: int
    m: int
    value: int
    bound: int
    holds: bool
    tar_class_60: AngleClass
    k: Optional[int] = None
    p: Optional[int] = None
    exception: Optional[ExceptionId] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def refutes(self) -> bool:
        """上界被违反而画法 TAR > 60° 且不在例外中"""
        return not self.holds and self.tar_class_60 == AngleClass.ABOVE and self.exception is None

    def summary_line(self) -> str:
        parts = [f"{self.statement}:", f"n={self.n}", f"m={self.m}"]
        if self.k is not None:
            parts.append(f"k={self.k}")
        if self.p is not None:
            parts.append(f"p={self.p}")
        if self.value != self.m:
            parts.append(f"value={self.value}")
        parts += [f"bound={self.bound}", f"holds={'yes' if self.holds else 'no'}",
                  f"vs60={self.tar_class_60.value}"]
        if self.exception is not None:
            parts.append(f"exception={self.exception}")
        return " ".join(parts)

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            "statement": self.statement,
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "p": self.p,
            "value": self.value,
            "bound": self.bound,
            "holds": self.holds,
            "tar_class_60": self.tar_class_60.value,
            "exception": None if self.exception is None else str(self.exception),
            "details": self.details,
        }


def _require_connected(d: Drawing) -> None:
    if not d.graph.is_connected():
        raise DisconnectedDrawingError("statement applies to connected drawings only",
                                       {"components": len(d.graph.components())})


def _require_plane(d: Drawing, statement: str) -> None:
    if crossings(d):
        raise PreconditionError(f"{statement} applies to plane drawings only", {"statement": statement})


def _unbounded_size(d: Drawing) -> Tuple[int, CellStructure]:
    cs = cell_structure(planarize(d))
    return cs.k, cs


def check_lemma1(d: Drawing) -> BoundReport:
    """m ≤ 2n − 2 − ⌈k/2⌉，k 为 P(D) 无界胞的大小"""
    ensure_valid(d)
    _require_connected(d)
    if d.n < 1:
        raise PreconditionError("lemma 1 needs at least one vertex")
    k, _ = _unbounded_size(d)
    bound = 2 * d.n - 2 - -(-k // 2)
    return BoundReport("lemma1", d.n, d.m, d.m, bound, d.m <= bound, tar(d).classes[60], k=k)


def check_lemma1_corollary(d: Drawing) -> BoundReport:
    """连通且 n ≥ 3 时的推论 m ≤ 2n − 4"""
    ensure_valid(d)
    _require_connected(d)
    if d.n < 3:
        raise PreconditionError("the 2n - 4 corollary needs n >= 3", {"n": d.n})
    k, _ = _unbounded_size(d)
    bound = 2 * d.n - 4
    return BoundReport("lemma1_corollary", d.n, d.m, d.m, bound, d.m <= bound, tar(d).classes[60], k=k)


def inner_degrees(d: Drawing) -> Dict[int, int]:
    """外边界为简单多边形的平面画法中，多边形各顶点的内度数"""
    ensure_valid(d)
    _require_plane(d, "observation1")
    _require_connected(d)
    _, cs = _unbounded_size(d)
    if not cs.outer_is_simple_polygon():
        raise PreconditionError("boundary of the unbounded cell is not a simple polygon",
                                {"boundary": cs.outer_boundary()})
    degrees = d.graph.degrees()
    return {v: degrees[v] - 2 for v in cs.outer_boundary()}


def check_observation1(d: Drawing) -> BoundReport:
    """Σ d'_i ≤ 2p − 7"""
    inner = inner_degrees(d)
    p = len(inner)
    if p <= 3:
        raise PreconditionError(f"observation 1 needs a boundary polygon with p > 3, got p={p}", {"p": p})
    total = sum(inner.values())
    bound = 2 * p - 7
    return BoundReport("observation1", d.n, d.m, total, bound, total <= bound, tar(d).classes[60],
                       p=p, details={"inner_degrees": {str(v): deg for v, deg in sorted(inner.items())}})


def _is_path3(g: Graph) -> bool:
    return g.n == 3 and g.m == 2


def _is_4gon(g: Graph) -> bool:
    return g.n == 4 and g.m == 4 and all(deg == 2 for deg in g.degrees())


def check_lemma2(d: Drawing) -> BoundReport:
    """连通平面画法，n ≥ 3，不是 3 顶点路径也不是 4-gon: m ≤ 2n − 5"""
    ensure_valid(d)
    _require_plane(d, "lemma2")
    _require_connected(d)
    if d.n < 3:
        raise PreconditionError("lemma 2 needs n >= 3", {"n": d.n})
    if _is_path3(d.graph):
        raise PreconditionError("lemma 2 excludes the path on 3 vertices", {"excluded": "path-3"})
    if _is_4gon(d.graph):
        raise PreconditionError("lemma 2 excludes the 4-gon", {"excluded": "4-gon"})
    k, _ = _unbounded_size(d)
    bound = 2 * d.n - 5
    return BoundReport("lemma2", d.n, d.m, d.m, bound, d.m <= bound, tar(d).classes[60], k=k)


def check_lemma3(d: Drawing) -> BoundReport:
    """连通平面画法，n ≥ 3: m ≤ 2n − 6，除非组合等价于 E1–E9 之一"""
    ensure_valid(d)
    _require_plane(d, "lemma3")
    _require_connected(d)
    if d.n < 3:
        raise PreconditionError("lemma 3 needs n >= 3", {"n": d.n})
    k, _ = _unbounded_size(d)
    bound = 2 * d.n - 6
    eid = recognize_drawing(d)
    return BoundReport("lemma3", d.n, d.m, d.m, bound, d.m <= bound, tar(d).classes[60], k=k, exception=eid,
                       details={"case": classify_lemma3_case(d).value})


class Lemma3Case(Enum):
    TRIANGLE_HULL = "unbounded cell of size at most 3"
    SIZE_4 = "unbounded cell of size 4"
    SIZE_5 = "unbounded cell of size 5"
    SIZE_6 = "unbounded cell of size 6"
    SIZE_7_PLUS = "unbounded cell of size at least 7"


def classify_lemma3_case(d: Drawing) -> Lemma3Case:
    """按无界胞大小划分情形"""
    ensure_valid(d)
    _require_connected(d)
    k, _ = _unbounded_size(d)
    if k >= 7:
        return Lemma3Case.SIZE_7_PLUS
    return {4: Lemma3Case.SIZE_4, 5: Lemma3Case.SIZE_5, 6: Lemma3Case.SIZE_6}.get(k, Lemma3Case.TRIANGLE_HULL)


class Theorem1Outcome(Enum):
    BOUND_HOLDS = "BOUND_HOLDS"
    EXCEPTION = "EXCEPTION"
    # 上界被违反且不是例外：TAR(G) ≤ 60°（给了见证时已确认）
    TAR_AT_MOST_60 = "TAR_AT_MOST_60"
    REFUTED_WITNESS = "REFUTED_WITNESS"


@dataclass(frozen=True)
class Theorem1Result:
    outcome: Theorem1Outcome
    n: int
    m: int
    bound: int
    exception: Optional[ExceptionId] = None
    witness_class: Optional[AngleClass] = None

    @property
    def refutes(self) -> bool:
        return self.outcome == Theorem1Outcome.REFUTED_WITNESS

    def summary_line(self) -> str:
        line = f"theorem1: n={self.n} m={self.m} bound={self.bound} outcome={self.outcome.value}"
        if self.exception is not None:
            line += f" exception={self.exception}"
        if self.witness_class is not None:
            line += f" vs60={self.witness_class.value}"
        return line

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            "statement": "theorem1",
            "outcome": self.outcome.value,
            "n": self.n,
            "m": self.m,
            "bound": self.bound,
            "exception": None if self.exception is None else str(self.exception),
            "witness_class": None if self.witness_class is None else self.witness_class.value,
        }


def _same_graph(a: Graph, b: Graph) -> bool:
    return a.n == b.n and set(a.edges) == set(b.edges)


def check_theorem1(g: Graph, witness: Optional[Drawing] = None) -> Theorem1Result:
    """m ≤ 2n − 6，除非 g 是例外图"""
    if g.n < 3:
        raise PreconditionError("theorem 1 needs n >= 3", {"n": g.n})
    if witness is not None and not _same_graph(g, witness.graph):
        raise WitnessMismatchError("witness is not a drawing of the given graph",
                                   {"graph_n": g.n, "witness_n": witness.n})
    bound = 2 * g.n - 6
    if g.m <= bound:
        return Theorem1Result(Theorem1Outcome.BOUND_HOLDS, g.n, g.m, bound)
    eid = recognize_graph(g)
    if eid is not None:
        return Theorem1Result(Theorem1Outcome.EXCEPTION, g.n, g.m, bound, exception=eid)
    if witness is None:
        return Theorem1Result(Theorem1Outcome.TAR_AT_MOST_60, g.n, g.m, bound)
    cls = tar(witness).classes[60]
    if cls == AngleClass.ABOVE:
        logger.error("theorem 1 refuted: n=%d m=%d witness above 60 degrees", g.n, g.m)
        return Theorem1Result(Theorem1Outcome.REFUTED_WITNESS, g.n, g.m, bound, witness_class=cls)
    return Theorem1Result(Theorem1Outcome.TAR_AT_MOST_60, g.n, g.m, bound, witness_class=cls)


def check_disconnected(d: Drawing) -> Union[BoundReport, ExceptionId]:
    """
    不连通画法: 一条边加一个孤立点是 E0；否则逐分量套用 Lemma 1，
    汇总得到 m ≤ 2n − 6。
    """
    ensure_valid(d)
    if d.graph.is_connected():
        raise PreconditionError("check_disconnected needs a disconnected drawing")
    if d.n < 3:
        raise PreconditionError("check_disconnected needs n >= 3", {"n": d.n})
    if recognize_graph(d.graph) == ExceptionId("E0"):
        return ExceptionId("E0")
    components = []
    for comp in d.graph.components():
        sub = d.subdrawing(comp)
        k, _ = _unbounded_size(sub)
        components.append({
            "vertices": comp,
            "n": sub.n,
            "m": sub.m,
            "k": k,
            "lemma1_bound": 2 * sub.n - 2 - -(-k // 2),
        })
    bound = 2 * d.n - 6
    return BoundReport("disconnected", d.n, d.m, d.m, bound, d.m <= bound, tar(d).classes[60],
                       details={"components": components})


def replace_degree4_with_crossing(d: Drawing, v: int) -> Drawing:
    """
    删除度 4 顶点 v，把旋转序中相对的两对邻居各用一条直边连起来，
    两条新边恰在 v 原来的位置交叉。要求相对射线精确共线且方向相反。
    """
    ensure_valid(d)
    if not 0 <= v < d.n:
        raise PreconditionError(f"vertex {v} out of range", {"vertex": v})
    ring = rotation_system(d)[v]
    if len(ring) != 4:
        raise PreconditionError(f"vertex {v} has degree {len(ring)}, expected 4", {"vertex": v, "degree": len(ring)})
    pairs = ((ring[0], ring[2]), (ring[1], ring[3]))
    existing = set(d.graph.edges)
    for a, b in pairs:
        if (min(a, b), max(a, b)) in existing:
            raise PreconditionError(f"edge {(a, b)} already present", {"edge": [a, b]})
    here = d.positions[v]
    for a, b in pairs:
        ra, rb = d.positions[a] - here, d.positions[b] - here
        if sign(cross(ra, rb)) != 0 or sign(dot(ra, rb)) >= 0:
            raise PreconditionError(f"rays {v}->{a} and {v}->{b} are not opposite",
                                    {"vertex": v, "pair": [a, b]})

    def relabel(u: int) -> int:
        return u if u < v else u - 1

    edges = [(relabel(a), relabel(b)) for a, b in d.graph.edges if v not in (a, b)]
    edges.extend((relabel(a), relabel(b)) for a, b in pairs)
    positions = tuple(p for u, p in enumerate(d.positions) if u != v)
    return ensure_valid(Drawing(Graph(d.n - 1, tuple(edges)), positions))


@dataclass(frozen=True)
class Gt120Result:
    yes: bool
    witness: Optional[Drawing] = None
    reason: Optional[str] = None

    def summary_line(self) -> str:
        return "YES" if self.yes else f"NO({self.reason})"


def _walk(adj: List[List[int]], start: int) -> List[int]:
    """沿路径或圈从 start 走一遍"""
    order = [start]
    seen = {start}
    while True:
        nxt = [w for w in adj[order[-1]] if w not in seen]
        if not nxt:
            return order
        order.append(nxt[0])
        seen.add(nxt[0])


def characterize_gt120(g: Graph) -> Gt120Result:
    """
    TAR(G) > 120° 当且仅当每个连通分量是长度 ≥ 7 的圈或路径。
    YES 时给出见证: 正多边形与直线路径并排，精确验证相对 120° 为 ABOVE。
    """
    adj = g.adjacency()
    for v, nbrs in enumerate(adj):
        if len(nbrs) >= 3:
            return Gt120Result(False, reason=f"vertex {v} of degree {len(nbrs)}")

    parts: List[Drawing] = []
    labels: List[int] = []
    for comp in g.components():
        members = set(comp)
        m_c = sum(1 for a, _ in g.edges if a in members)
        if m_c == len(comp):
            if len(comp) <= 6:
                return Gt120Result(False, reason=f"cycle of length {len(comp)}")
            order = _walk(adj, comp[0])
            points = regular_polygon_points(len(order))
            parts.append(Drawing(Graph(len(order), tuple((i, (i + 1) % len(order)) for i in range(len(order)))),
                                 tuple(points)))
        else:
            ends = [u for u in comp if len(adj[u]) <= 1]
            order = _walk(adj, ends[0])
            parts.append(straight_path(len(order)))
        labels.extend(order)

    merged = side_by_side(parts)
    positions: List[Optional[Point]] = [None] * g.n
    for slot, original in enumerate(labels):
        positions[original] = merged.positions[slot]
    witness = Drawing(g, tuple(positions))
    cls = tar(witness).classes[120]
    if cls != AngleClass.ABOVE:
        raise WitnessMismatchError("greater-than-120 witness failed the exact check",
                                   {"class": cls.value})
    return Gt120Result(True, witness=witness)


@dataclass
class CheckSummary:
    reports: List[BoundReport] = field(default_factory=list)
    theorem1: Optional[Theorem1Result] = None
    exception: Optional[ExceptionId] = None
    lemma3_case: Optional[Lemma3Case] = None
    skipped: Dict[str, str] = field(default_factory=dict)

    @property
    def refuted(self) -> bool:
        if self.theorem1 is not None and self.theorem1.refutes:
            return True
        return any(r.refutes for r in self.reports)

    def lines(self) -> List[str]:
        out = [r.summary_line() for r in self.reports]
        if self.theorem1 is not None:
            out.append(self.theorem1.summary_line())
        if self.exception is not None:
            out.append(f"disconnected: exception={self.exception}")
        if self.lemma3_case is not None:
            out.append(f"lemma3_case: {self.lemma3_case.value}")
        for name, why in sorted(self.skipped.items()):
            out.append(f"{name}: skipped ({why})")
        out.append(f"refuted: {'yes' if self.refuted else 'no'}")
        return out

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            "reports": [r.to_dict() for r in self.reports],
            "theorem1": None if self.theorem1 is None else self.theorem1.to_dict(),
            "exception": None if self.exception is None else str(self.exception),
            "lemma3_case": None if self.lemma3_case is None else self.lemma3_case.value,
            "skipped": dict(self.skipped),
            "refuted": self.refuted,
        }


def check_all(d: Drawing) -> CheckSummary:
    """运行所有适用的检查器"""
    ensure_valid(d)
    summary = CheckSummary()
    checks = []
    if d.graph.is_connected():
        checks = [check_lemma1, check_lemma1_corollary, check_observation1, check_lemma2, check_lemma3]
        try:
            summary.lemma3_case = classify_lemma3_case(d)
        except PreconditionError as e:
            summary.skipped["lemma3_case"] = e.message
    for check in checks:
        name = check.__name__.replace("check_", "")
        try:
            summary.reports.append(check(d))
        except PreconditionError as e:
            summary.skipped[name] = e.message
    if not d.graph.is_connected():
        try:
            result = check_disconnected(d)
        except PreconditionError as e:
            summary.skipped["disconnected"] = e.message
        else:
            if isinstance(result, ExceptionId):
                summary.exception = result
            else:
                summary.reports.append(result)
    if d.n >= 3:
        summary.theorem1 = check_theorem1(d.graph, d)
    else:
        summary.skipped["theorem1"] = "theorem 1 needs n >= 3"
    if summary.refuted:
        logger.error("check_all found a refutation: %s", "; ".join(summary.lines()))
    return summary
