#!/usr/bin/env python3
"""
TARKit 坐标优化器
在顶点坐标上最大化 TAR 的启发式搜索，加上极小实例的穷举网格 oracle。

- maximize_tar: 多起点爬山，浮点目标 + 精确复核
- grid_oracle: n ≤ 5 时在整数网格上穷举，给出精确最优
"""

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from core.drawing import Drawing, Graph, TarReport, float_tar, tar, validate
from core.errors import BudgetExceededError, ConfigurationError, PreconditionError
from core.generators import random_drawing_of
from core.geometry import AngleClass, Point
from core.structured_logging import log_performance

logger = logging.getLogger(__name__)

# 结果坐标吸附到 1/SNAP_DENOMINATOR 的整数倍
SNAP_DENOMINATOR = 1024
# 两个顶点浮点距离低于此值视为重合，拒绝该步
MIN_SEPARATION = 1e-6
GRID_MAX_VERTICES = 5


@dataclass(frozen=True)
class OptConfig:
    restarts: int = 8
    steps: int = 400
    initial_step: float = 4.0
    cooling: float = 0.995
    seed: int = 0
    box: int = 20

    def __post_init__(self):
        for name in ("restarts", "steps", "box"):
            if getattr(self, name) <= 0:
                raise ConfigurationError(f"{name} must be positive", {"field": name, "value": getattr(self, name)})
        if self.initial_step <= 0:
            raise ConfigurationError("initial_step must be positive", {"value": self.initial_step})
        if not 0 < self.cooling < 1:
            raise ConfigurationError("cooling must lie in (0, 1)", {"value": self.cooling})
        if self.seed < 0:
            raise ConfigurationError("seed must be non-negative", {"value": self.seed})


@dataclass(frozen=True)
class OptResult:
    best: Drawing
    best_tar_degrees: float
    exact_class_60: AngleClass
    exact_class_90: AngleClass
    exact_class_120: AngleClass
    trace: Tuple[float, ...] = ()
    report: Optional[TarReport] = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {
            "best_tar_degrees": self.best_tar_degrees,
            "classes": {
                "vs60": self.exact_class_60.value,
                "vs90": self.exact_class_90.value,
                "vs120": self.exact_class_120.value,
            },
            "trace": list(self.trace),
            "n": self.best.n,
            "m": self.best.m,
        }


def _result(best: Drawing, trace: Sequence[float] = ()) -> OptResult:
    report = tar(best)
    return OptResult(
        best=best,
        best_tar_degrees=report.tar.degrees(),
        exact_class_60=report.classes[60],
        exact_class_90=report.classes[90],
        exact_class_120=report.classes[120],
        trace=tuple(trace),
        report=report,
    )


def _start(g: Graph, cfg: OptConfig, rng: np.random.Generator) -> Drawing:
    """[-box, box]² 内的随机整数起点，精确有效"""
    start = random_drawing_of(g, seed=int(rng.integers(0, 2 ** 63 - 1)), coordinate_range=2 * cfg.box + 1)
    return start.translated(-cfg.box, -cfg.box)


def _snap(g: Graph, coords: np.ndarray) -> Drawing:
    points = tuple(Point(Fraction(round(float(x) * SNAP_DENOMINATOR), SNAP_DENOMINATOR),
                         Fraction(round(float(y) * SNAP_DENOMINATOR), SNAP_DENOMINATOR)) for x, y in coords)
    return Drawing(g, points)


def _separated(coords: np.ndarray, v: int) -> bool:
    gaps = np.hypot(coords[:, 0] - coords[v, 0], coords[:, 1] - coords[v, 1])
    gaps[v] = np.inf
    return bool(gaps.min() > MIN_SEPARATION) if len(gaps) > 1 else True


def _climb(g: Graph, cfg: OptConfig, restart: int) -> Tuple[Drawing, float]:
    """单次重启：返回精确有效的画法及其浮点 TAR"""
    rng = np.random.default_rng([cfg.seed, restart])
    start = _start(g, cfg, rng)
    coords = np.array([p.as_floats() for p in start.positions], dtype=float)
    edges = list(g.edges)
    current = float_tar(coords.tolist(), edges)
    step = cfg.initial_step
    for _ in range(cfg.steps):
        v = int(rng.integers(0, g.n))
        candidate = coords.copy()
        candidate[v] = np.clip(candidate[v] + rng.normal(0.0, step, size=2), -cfg.box, cfg.box)
        step *= cfg.cooling
        if not _separated(candidate, v):
            continue
        value = float_tar(candidate.tolist(), edges)
        if value >= current:
            coords, current = candidate, value

    snapped = _snap(g, coords)
    if validate(snapped):
        logger.debug("restart %d: snapped drawing invalid, keeping start", restart)
        return start, float_tar([p.as_floats() for p in start.positions], edges)
    return snapped, current


def _better(a: Drawing, b: Drawing) -> bool:
    return tar(a).tar.compare(tar(b).tar) > 0


@log_performance("optimizer.maximize_tar")
def maximize_tar(g: Graph, cfg: Optional[OptConfig] = None, parallel: bool = False,
                 workers: Optional[int] = None) -> OptResult:
    """
    多起点爬山最大化 TAR(D)。
    每步随机挑一个顶点加衰减的高斯偏移；浮点 TAR 不下降即接受（平局接受）。
    每次重启的结果吸附到有理坐标后精确复核；取精确意义下最好的一次，平局取编号小者。
    parallel=True 时各重启在进程池中运行，结果与顺序执行相同。
    """
    if g.n == 0:
        raise PreconditionError("cannot optimize the empty graph")
    if cfg is None:
        from core.config import get_settings

        cfg = get_settings().optimizer_config()

    if parallel and cfg.restarts > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(_climb, itertools.repeat(g), itertools.repeat(cfg), range(cfg.restarts)))
    else:
        runs = [_climb(g, cfg, r) for r in range(cfg.restarts)]

    best = runs[0][0]
    for drawing, _ in runs[1:]:
        if _better(drawing, best):
            best = drawing
    result = _result(best, [value for _, value in runs])
    logger.info("maximize_tar n=%d m=%d restarts=%d best=%.6f vs60=%s",
                g.n, g.m, cfg.restarts, result.best_tar_degrees, result.exact_class_60.value)
    return result


def grid_points(grid_size: int, box: Optional[int] = None) -> List[Point]:
    """
    每边 grid_size 个点的方形网格。
    box 为 None 时坐标为 0..grid_size−1；否则等距铺满 [−box, box]。
    """
    if grid_size < 1:
        raise PreconditionError("grid_size must be positive", {"grid_size": grid_size})
    if box is None:
        axis = [Fraction(i) for i in range(grid_size)]
    elif grid_size == 1:
        axis = [Fraction(0)]
    else:
        axis = [Fraction(-box) + Fraction(2 * box * i, grid_size - 1) for i in range(grid_size)]
    return [Point(x, y) for x in axis for y in axis]


def grid_placements(n: int, grid_size: int) -> int:
    """不同网格点上放置 n 个顶点的有序方案数"""
    total = 1
    cells = grid_size * grid_size
    for i in range(n):
        total *= max(cells - i, 0)
    return total


@log_performance("optimizer.grid_oracle")
def grid_oracle(g: Graph, grid_size: int, box: Optional[int] = None,
                budget: Optional[int] = None) -> OptResult:
    """
    穷举网格上的全部有效画法，返回精确意义下的最优。
    浮点 TAR 只用于剪枝；候选一律精确复核。
    """
    if g.n > GRID_MAX_VERTICES:
        raise PreconditionError(f"grid oracle supports at most {GRID_MAX_VERTICES} vertices, got {g.n}",
                                {"n": g.n})
    if g.n == 0:
        raise PreconditionError("cannot place the empty graph")
    if budget is None:
        from core.config import get_settings

        budget = get_settings().grid_budget
    placements = grid_placements(g.n, grid_size)
    if placements > budget:
        raise BudgetExceededError(f"{placements} placements exceed the grid budget {budget}",
                                  {"placements": placements, "budget": budget, "grid_size": grid_size})

    points = grid_points(grid_size, box)
    floats = [p.as_floats() for p in points]
    edges = list(g.edges)
    best: Optional[Drawing] = None
    best_value = -1.0
    for combo in itertools.permutations(range(len(points)), g.n):
        value = float_tar([floats[i] for i in combo], edges)
        if value < best_value - 1e-9:
            continue
        d = Drawing(g, tuple(points[i] for i in combo))
        if validate(d):
            continue
        if best is None or _better(d, best):
            best, best_value = d, tar(d).tar.degrees()
    if best is None:
        raise PreconditionError("no valid placement on this grid", {"grid_size": grid_size, "n": g.n})
    logger.debug("grid_oracle n=%d grid=%d placements=%d best=%.6f", g.n, grid_size, placements, best_value)
    return _result(best)
