#!/usr/bin/env python3
"""
TARKit 3-SAT → TAR ≥ 60° 归约构造

图由以下部件拼成（K = n + m）:
- 底部路径: 2K − 1 个交替朝下/朝上的三角形，上侧顶点 t_0..t_K，下侧 b_0..b_{K−1}
- 子句部件: 共享中心的 4 个三角形扇形，m 个自下而上叠放在底部路径最右三角形之上，
  中间边缘顶点为子句顶点 C_j（朝右）
- 顶部路径: 2K − 1 个三角形，下侧 u_0..u_K（最右一条边与最上面的扇形共享）
- 变量部件: 三角形 + m 个六边形（各 6 个三角形共享中心）+ 三角形，A_{i,1} 与 X_i 重合
- 连接部件: 两个共边三角形，连接变量部件顶端与 X'_i
- 子句-文字路径: 每个 (子句, 文字) 一条 3 边路径 C_j – M1 – M2 – 文字顶点

X_i = t_{i−1}，B1 = t_n；X'_i = u_{i−1}，B2 = u_n。
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from core.cnf import Assignment, Literal, SatInstance
from core.drawing import Drawing, Graph, tar
from core.errors import DecodeError, PreconditionError
from core.exact import sign
from core.geometry import AngleClass
from core.structured_logging import log_performance

logger = logging.getLogger(__name__)

Slot = Tuple


@dataclass(frozen=True)
class ClauseLiteralPath:
    clause: int
    literal: Literal
    vertices: Tuple[int, int, int, int]

    @property
    def clause_vertex(self) -> int:
        return self.vertices[0]

    @property
    def literal_vertex(self) -> int:
        return self.vertices[3]


@dataclass(frozen=True)
class ReductionOutput:
    instance: SatInstance
    graph: Graph
    slots: Tuple[Slot, ...]
    membership: Tuple[str, ...]
    clause_vertices: Tuple[int, ...]
    anchors: Dict[str, int]
    literal_vertices: Dict[Tuple[int, int, bool], int]
    paths: Tuple[ClauseLiteralPath, ...]
    index: Dict[Slot, int] = field(repr=False, compare=False, default_factory=dict)

    @property
    def n_vars(self) -> int:
        return self.instance.num_vars

    @property
    def n_clauses(self) -> int:
        return self.instance.m

    def clause_vertex(self, j: int) -> int:
        return self.clause_vertices[j - 1]

    def literal_vertex(self, lit: Literal, j: int) -> int:
        return self.literal_vertices[(lit.var, j, lit.positive)]

    def paths_of(self, j: int) -> List[ClauseLiteralPath]:
        return [p for p in self.paths if p.clause == j]

    def role_names(self) -> Dict[int, str]:
        """特殊顶点 → 名称（C_j、X_{i,j}、¬X_{i,j}、锚点）"""
        names = {v: f"C_{j}" for j, v in enumerate(self.clause_vertices, start=1)}
        for (var, j, positive), v in self.literal_vertices.items():
            names[v] = f"X_{{{var},{j}}}" if positive else f"¬X_{{{var},{j}}}"
        for name, v in self.anchors.items():
            names.setdefault(v, name)
        return names

    def to_dict(self) -> dict:
        names = self.role_names()
        return {
            "n": self.graph.n,
            "m": self.graph.m,
            "variables": self.n_vars,
            "clauses": self.n_clauses,
            "edges": [list(e) for e in self.graph.edges],
            "roles": {str(v): names[v] for v in sorted(names)},
            "membership": list(self.membership),
            "paths": [
                {"clause": p.clause, "literal": p.literal.to_int(), "vertices": list(p.vertices)}
                for p in self.paths
            ],
        }


class _Builder:
    def __init__(self):
        self.slots: List[Slot] = []
        self.membership: List[str] = []
        self.index: Dict[Slot, int] = {}
        self.edges: List[Tuple[int, int]] = []

    def vertex(self, slot: Slot, member: str) -> int:
        if slot in self.index:
            raise ValueError(f"slot {slot} added twice")
        self.index[slot] = len(self.slots)
        self.slots.append(slot)
        self.membership.append(member)
        return self.index[slot]

    def alias(self, slot: Slot, v: int) -> None:
        """同一个顶点的第二个名字（部件之间的重合点）"""
        self.index[slot] = v

    def edge(self, a: Slot, b: Slot) -> None:
        self.edges.append((self.index[a], self.index[b]))

    def triangle(self, a: Slot, b: Slot, c: Slot) -> None:
        self.edge(a, b)
        self.edge(b, c)
        self.edge(a, c)


def _add_frame(b: _Builder, k: int, m: int) -> None:
    # 底部路径
    for i in range(k + 1):
        b.vertex(("t", i), "frame:bottom")
    for i in range(k):
        b.vertex(("b", i), "frame:bottom")
    for i in range(k):
        b.edge(("t", i), ("t", i + 1))
        b.edge(("t", i), ("b", i))
        b.edge(("t", i + 1), ("b", i))
    for i in range(k - 1):
        b.edge(("b", i), ("b", i + 1))

    # 子句扇形: 边缘 r0..r4，r2 = C_j
    b.alias(("rim", 1, 0), b.index[("t", k - 1)])
    b.alias(("rim", 1, 1), b.index[("t", k)])
    for j in range(1, m + 1):
        if j > 1:
            b.alias(("rim", j, 0), b.index[("rim", j - 1, 4)])
            b.alias(("rim", j, 1), b.index[("rim", j - 1, 3)])
        b.vertex(("fan", j), f"clause:{j}")
        for r in (2, 3, 4):
            b.vertex(("rim", j, r), f"clause:{j}")
        for r in range(5):
            b.edge(("fan", j), ("rim", j, r))
        for r in (1, 2, 3):
            b.edge(("rim", j, r), ("rim", j, r + 1))

    # 顶部路径，最右边与最上面扇形的 r4–r3 重合
    for i in range(k - 1):
        b.vertex(("u", i), "frame:top")
    b.alias(("u", k - 1), b.index[("rim", m, 4)])
    b.alias(("u", k), b.index[("rim", m, 3)])
    for i in range(k):
        b.vertex(("w", i), "frame:top")
    for i in range(k):
        if i < k - 1:
            b.edge(("u", i), ("u", i + 1))
        b.edge(("u", i), ("w", i))
        b.edge(("u", i + 1), ("w", i))
    for i in range(k - 1):
        b.edge(("w", i), ("w", i + 1))


def _add_variable(b: _Builder, i: int, m: int) -> None:
    member = f"variable:{i}"
    for r in range(m + 1):
        for positive in (True, False):
            b.vertex(("row", i, r, positive), member)
    for j in range(1, m + 1):
        b.vertex(("hub", i, j), member)
        for positive in (True, False):
            b.vertex(("lit", i, j, positive), member)
    b.vertex(("apex", i), member)

    b.triangle(("t", i - 1), ("row", i, 0, True), ("row", i, 0, False))
    for j in range(1, m + 1):
        hub = ("hub", i, j)
        for positive in (True, False):
            lower, lit, upper = ("row", i, j - 1, positive), ("lit", i, j, positive), ("row", i, j, positive)
            b.edge(hub, lower)
            b.edge(hub, lit)
            b.edge(hub, upper)
            b.edge(lower, lit)
            b.edge(lit, upper)
        b.edge(("row", i, j, True), ("row", i, j, False))
    b.edge(("apex", i), ("row", i, m, True))
    b.edge(("apex", i), ("row", i, m, False))

    connector = f"connector:{i}"
    b.vertex(("corner", i, 0), connector)
    b.vertex(("corner", i, 1), connector)
    b.triangle(("apex", i), ("corner", i, 0), ("corner", i, 1))
    b.edge(("corner", i, 0), ("u", i - 1))
    b.edge(("corner", i, 1), ("u", i - 1))


@log_performance("reduction.build_graph")
def build_reduction_graph(f: SatInstance) -> ReductionOutput:
    """按实例构造归约图以及全部角色映射"""
    n, m = f.num_vars, f.m
    if m == 0:
        raise PreconditionError("the construction needs at least one clause", {"clauses": 0})
    k = n + m
    b = _Builder()
    _add_frame(b, k, m)
    for i in range(1, n + 1):
        _add_variable(b, i, m)

    paths = []
    for j, clause in enumerate(f.clauses, start=1):
        for lit in clause:
            tag = f"path:{j}:{lit.to_int()}"
            m1 = b.vertex(("path", j, lit.to_int(), 1), tag)
            m2 = b.vertex(("path", j, lit.to_int(), 2), tag)
            c = b.index[("rim", j, 2)]
            v = b.index[("lit", lit.var, j, lit.positive)]
            b.edges.extend([(c, m1), (m1, m2), (m2, v)])
            paths.append(ClauseLiteralPath(j, lit, (c, m1, m2, v)))

    anchors = {f"X_{i}": b.index[("t", i - 1)] for i in range(1, n + 1)}
    anchors.update({f"X'_{i}": b.index[("u", i - 1)] for i in range(1, n + 1)})
    anchors["B1"] = b.index[("t", n)]
    anchors["B2"] = b.index[("u", n)]

    literal_vertices = {(i, j, positive): b.index[("lit", i, j, positive)]
                        for i in range(1, n + 1) for j in range(1, m + 1) for positive in (True, False)}
    out = ReductionOutput(
        instance=f,
        graph=Graph(len(b.slots), tuple(b.edges)),
        slots=tuple(b.slots),
        membership=tuple(b.membership),
        clause_vertices=tuple(b.index[("rim", j, 2)] for j in range(1, m + 1)),
        anchors=anchors,
        literal_vertices=literal_vertices,
        paths=tuple(paths),
        index=dict(b.index),
    )
    logger.info("reduction graph for %d variables, %d clauses: n=%d m=%d", n, m, out.graph.n, out.graph.m)
    return out


@dataclass(frozen=True)
class ConstructionAudit:
    expected: Dict[str, int]
    counted: Dict[str, int]

    @property
    def consistent(self) -> bool:
        return self.expected == self.counted

    def mismatches(self) -> Dict[str, Tuple[int, int]]:
        return {k: (self.expected[k], self.counted.get(k, -1))
                for k in self.expected if self.expected[k] != self.counted.get(k)}

    def to_dict(self) -> dict:
        return {"expected": dict(self.expected), "counted": dict(self.counted), "consistent": self.consistent}


def expected_counts(n: int, m: int) -> Dict[str, int]:
    """各部件清单推出的闭式计数"""
    k = n + m
    return {
        "vertices": (2 * k + 1) + 4 * m + (2 * k - 1) + n * (5 * m + 5) + 6 * m,
        "edges": (4 * k - 1) + 8 * m + (4 * k - 2) + n * (11 * m + 10) + 9 * m,
        "triangles": 2 * (2 * k - 1) + 4 * m + n * (6 * m + 2) + 2 * n,
        "bottom_path_triangles": 2 * k - 1,
        "top_path_triangles": 2 * k - 1,
        "clause_gadget_triangles": 4 * m,
        "variable_gadget_triangles": n * (6 * m + 2),
        "connector_triangles": 2 * n,
        "clause_literal_paths": 3 * m,
        "path_edges": 9 * m,
        "connected": 1,
    }


def _triangles(g: nx.Graph) -> List[Tuple[int, ...]]:
    found = []
    for clique in nx.enumerate_all_cliques(g):
        if len(clique) > 3:
            break
        if len(clique) == 3:
            found.append(tuple(clique))
    return found


# 三角形按其中出现的槽位种类归属到部件
_TRIANGLE_KINDS = (
    ("bottom_path_triangles", ("b",)),
    ("top_path_triangles", ("w",)),
    ("clause_gadget_triangles", ("fan",)),
    ("variable_gadget_triangles", ("row", "hub")),
    ("connector_triangles", ("corner",)),
)


def construction_audit(r: ReductionOutput) -> ConstructionAudit:
    """闭式计数与对生成图的暴力计数对比"""
    g = r.graph.to_networkx()
    triangles = _triangles(g)
    path_edges = 0
    for p in r.paths:
        path_edges += sum(1 for a, b in zip(p.vertices, p.vertices[1:]) if g.has_edge(a, b))
    counted = {
        "vertices": g.number_of_nodes(),
        "edges": g.number_of_edges(),
        "triangles": len(triangles),
    }
    for name, kinds in _TRIANGLE_KINDS:
        counted[name] = sum(1 for tri in triangles if any(r.slots[v][0] in kinds for v in tri))
    counted.update({
        "clause_literal_paths": len(r.paths),
        "path_edges": path_edges,
        "connected": int(nx.is_connected(g)),
    })
    audit = ConstructionAudit(expected_counts(r.n_vars, r.n_clauses), counted)
    if not audit.consistent:
        logger.warning("construction audit mismatch: %s", audit.mismatches())
    return audit


# 解码

@dataclass(frozen=True)
class LiteralChoice:
    """子句 j 水平出发的路径所到达的文字，以及该文字顶点是否朝向子句列"""
    clause: int
    literal: Literal
    faces_clauses: bool


def frame_direction(r: ReductionOutput, d: Drawing) -> int:
    """子句列在变量部件右侧为 +1，镜像后为 −1"""
    c1 = d.positions[r.clause_vertex(1)]
    x1 = d.positions[r.anchors["X_1"]]
    direction = sign(c1.x - x1.x)
    if direction == 0:
        raise DecodeError("cannot orient the frame: C_1 and X_1 are vertically aligned")
    return direction


def literal_choices(r: ReductionOutput, d: Drawing) -> List[LiteralChoice]:
    direction = frame_direction(r, d)
    choices = []
    for j in range(1, r.n_clauses + 1):
        horizontal = [p for p in r.paths_of(j)
                      if d.positions[p.vertices[0]].y == d.positions[p.vertices[1]].y]
        if not horizontal:
            raise DecodeError(f"no clause-literal path leaves C_{j} horizontally", {"clause": j})
        path = horizontal[0]
        v = d.positions[path.literal_vertex]
        partner = d.positions[r.literal_vertex(-path.literal, j)]
        faces = sign(v.x - partner.x) == direction
        choices.append(LiteralChoice(j, path.literal, faces))
    return choices


def resolve_choices(f: SatInstance, choices: Sequence[LiteralChoice]) -> Assignment:
    """把选中的文字设为真，其余变量默认为假"""
    values: Dict[int, bool] = {}
    for choice in choices:
        if not choice.faces_clauses:
            raise DecodeError(f"literal {choice.literal} chosen at C_{choice.clause} does not face the clauses",
                              {"clause": choice.clause, "literal": choice.literal.to_int()})
        lit = choice.literal
        if values.get(lit.var, lit.positive) != lit.positive:
            raise DecodeError(f"contradictory literals for x{lit.var}", {"variable": lit.var})
        values[lit.var] = lit.positive
    assignment = Assignment(tuple(values.get(i, False) for i in range(1, f.num_vars + 1)))
    if not f.satisfied_by(assignment):
        raise DecodeError("decoded assignment does not satisfy the instance",
                          {"unsatisfied": f.unsatisfied_clauses(assignment)})
    return assignment


def decode_assignment(r: ReductionOutput, d: Drawing) -> Assignment:
    """
    从 TAR ≥ 60° 的画法读出可满足赋值。
    每个子句取水平离开 C_j 的那条路径，其文字顶点朝向子句列，对应文字为真。
    """
    if d.n != r.graph.n or set(d.graph.edges) != set(r.graph.edges):
        raise DecodeError("drawing does not match the reduction graph",
                          {"n": d.n, "expected_n": r.graph.n})
    report = tar(d)
    if report.classes[60] == AngleClass.BELOW:
        raise PreconditionError("decoding needs a drawing with TAR >= 60 degrees", {"tar": str(report.tar)})
    assignment = resolve_choices(r.instance, literal_choices(r, d))
    logger.debug("decoded assignment %s", assignment)
    return assignment


def slot_of(r: ReductionOutput, v: int) -> Optional[Slot]:
    return r.slots[v] if 0 <= v < len(r.slots) else None
