#!/usr/bin/env python3
"""
TARKit 命令行工具
统一的入口: TAR 计算、上界检查、例外识别、画法生成、优化、3-SAT 归约与解码、目录导出。

退出码:
  0  成功
  1  检查发现反例（上界被违反且 TAR > 60°，且不在例外目录中）
  2  输入错误或 TarError
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

# 直接运行脚本时把仓库根目录加入路径
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from core.bounds import characterize_gt120, check_all
from core.cnf import Assignment, enumerate_satisfying, load_cnf
from core.config import Settings, get_settings
from core.drawing import Drawing, tar
from core.drawing_io import dumps, load_drawing, load_graph, save_drawing
from core.errors import TarError
from core.exception_catalog import catalog, recognize_drawing, recognize_graph
from core.generators import layered_8gon, random_drawing, regular_polygon
from core.optimizer import OptConfig, grid_oracle, maximize_tar
from core.prometheus_metrics import TarKitMetrics, get_metrics
from core.reduction import build_reduction_graph, construction_audit, decode_assignment
from core.reduction_layout import layout_satisfying
from core.structured_logging import TraceContext, setup_logging
from core.svg_render import render_to_svg

logger = logging.getLogger("tar_cli")

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_ERROR = 2

SERVICE_NAME = "tar-cli"


class _Context:
    """子命令共享的配置与指标"""

    def __init__(self, settings: Settings, metrics: Optional[TarKitMetrics]):
        self.settings = settings
        self.metrics = metrics

    def evaluation(self, kind: str) -> None:
        if self.metrics is not None:
            self.metrics.record_evaluation(kind)


def _emit_drawing(d: Drawing, output: Optional[str], svg: Optional[str], labels=None, roles=None) -> None:
    """写画法文件；未给 output 时打印到标准输出"""
    if output:
        save_drawing(d, output)
        print(f"drawing written: {output} (n={d.n}, m={d.m})")
    elif not svg:
        print(dumps(d, indent=2))
    if svg:
        render_to_svg(d, svg, labels=labels, roles=roles)
        print(f"figure written: {svg}")


def cmd_tar(args, ctx: _Context) -> int:
    d = load_drawing(args.drawing)
    report = tar(d)
    if ctx.metrics is not None:
        ctx.metrics.record_tar(report)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.summary_line())
        if args.verbose_report:
            print(f"AR = {report.ar}; CR = {report.cr}; crossings = {report.crossing_count}")
            print(f"witness = {report.witness}")
    return EXIT_OK


def cmd_check(args, ctx: _Context) -> int:
    d = load_drawing(args.drawing)
    summary = check_all(d)
    if ctx.metrics is not None:
        ctx.metrics.record_check_summary(summary)
    if args.json:
        print(json.dumps(summary.to_dict(), indent=2))
    else:
        for line in summary.lines():
            print(line)
    return EXIT_REFUTED if summary.refuted else EXIT_OK


def cmd_recognize(args, ctx: _Context) -> int:
    if args.graph:
        found = recognize_graph(load_graph(args.drawing))
    else:
        found = recognize_drawing(load_drawing(args.drawing))
    ctx.evaluation("recognize")
    print(found if found is not None else "none")
    return EXIT_OK


def cmd_characterize(args, ctx: _Context) -> int:
    result = characterize_gt120(load_graph(args.graph))
    ctx.evaluation("characterize")
    print(f"tar > 120: {result.summary_line()}")
    if result.witness is not None and (args.output or args.svg):
        _emit_drawing(result.witness, args.output, args.svg)
    return EXIT_OK


def cmd_generate(args, ctx: _Context) -> int:
    if args.family == "layered8gon":
        d = layered_8gon(args.k)
    elif args.family == "polygon":
        d = regular_polygon(args.k)
    else:
        d = random_drawing(args.n, args.m, args.seed, coordinate_range=args.range)
    ctx.evaluation("generate")
    _emit_drawing(d, args.output, args.svg)
    return EXIT_OK


def cmd_optimize(args, ctx: _Context) -> int:
    g = load_graph(args.graph)
    if args.grid:
        result = grid_oracle(g, args.grid, box=args.box)
    else:
        base = ctx.settings.optimizer_config()
        cfg = OptConfig(
            restarts=args.restarts or base.restarts,
            steps=args.steps or base.steps,
            initial_step=base.initial_step,
            cooling=base.cooling,
            seed=base.seed if args.seed is None else args.seed,
            box=args.box or base.box,
        )
        result = maximize_tar(g, cfg, parallel=args.parallel, workers=args.workers)
        if ctx.metrics is not None:
            ctx.metrics.record_optimizer_run(cfg.restarts, result.best_tar_degrees)
    ctx.evaluation("optimize")
    print(result.report.summary_line())
    if args.output or args.svg:
        _emit_drawing(result.best, args.output, args.svg)
    return EXIT_OK


def _choose_assignment(instance, text: Optional[str]) -> Optional[Assignment]:
    if text:
        try:
            return Assignment.parse(text)
        except ValueError as e:
            raise TarError(f"bad assignment {text!r}: {e}")
    return next(enumerate_satisfying(instance), None)


def cmd_reduce(args, ctx: _Context) -> int:
    instance = load_cnf(args.cnf)
    r = build_reduction_graph(instance)
    if ctx.metrics is not None:
        ctx.metrics.record_reduction("build")
    print(f"reduction: variables={r.n_vars} clauses={r.n_clauses} n={r.graph.n} m={r.graph.m}")

    if args.graph_output:
        target = Path(args.graph_output)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(json.dumps(r.to_dict(), indent=2) + "\n", encoding="utf-8")
        print(f"graph written: {target}")

    if args.audit:
        audit = construction_audit(r)
        if ctx.metrics is not None:
            ctx.metrics.record_reduction("audit")
        for key in audit.expected:
            print(f"  {key}: expected={audit.expected[key]} counted={audit.counted.get(key)}")
        print(f"audit: {'consistent' if audit.consistent else 'MISMATCH'}")
        if not audit.consistent:
            return EXIT_ERROR

    if args.layout or args.assignment:
        assignment = _choose_assignment(instance, args.assignment)
        if assignment is None:
            print("instance is unsatisfiable; no 60 degree layout exists", file=sys.stderr)
            return EXIT_ERROR
        d = layout_satisfying(r, assignment)
        if ctx.metrics is not None:
            ctx.metrics.record_reduction("layout")
        print(f"layout for {assignment.bits()}: {tar(d).summary_line()}")
        labels = r.role_names() if args.labels else None
        _emit_drawing(d, args.output, args.svg, labels=labels, roles=list(r.membership))
    return EXIT_OK


def cmd_decode(args, ctx: _Context) -> int:
    instance = load_cnf(args.cnf)
    r = build_reduction_graph(instance)
    assignment = decode_assignment(r, load_drawing(args.drawing))
    if ctx.metrics is not None:
        ctx.metrics.record_reduction("decode")
    print(f"assignment: {assignment.bits()}")
    return EXIT_OK


def _entry_filename(eid) -> str:
    return str(eid).replace("(", "_").replace(")", "")


def cmd_catalog(args, ctx: _Context) -> int:
    entries = catalog()
    if args.action == "list":
        for e in entries:
            print(f"{e.id}: n={e.n} m={e.m} {e.description}")
        return EXIT_OK

    target = Path(args.directory)
    target.mkdir(parents=True, exist_ok=True)
    index = []
    for e in entries:
        name = _entry_filename(e.id)
        save_drawing(e.witness, target / f"{name}.drawing")
        if args.svg:
            render_to_svg(e.witness, str(target / f"{name}.svg"))
        index.append({"id": str(e.id), "file": f"{name}.drawing", "n": e.n, "m": e.m,
                      "description": e.description})
    (target / "index.json").write_text(json.dumps(index, indent=2) + "\n", encoding="utf-8")
    print(f"exported {len(entries)} catalog entries to {target}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tar_cli", description="TARKit 总角分辨率工具")
    parser.add_argument("-v", "--verbose", action="store_true", help="输出 DEBUG 日志")
    parser.add_argument("--metrics-out", help="结束时把 Prometheus 指标写入文件")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tar", help="计算画法的精确 TAR")
    p.add_argument("drawing")
    p.add_argument("--json", action="store_true")
    p.add_argument("--details", dest="verbose_report", action="store_true", help="同时输出 AR/CR 与见证")
    p.set_defaults(handler=cmd_tar)

    p = sub.add_parser("check", help="运行全部适用的上界检查")
    p.add_argument("drawing")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("recognize", help="识别例外图")
    p.add_argument("drawing")
    p.add_argument("--graph", action="store_true", help="输入为图文件，按同构识别")
    p.set_defaults(handler=cmd_recognize)

    p = sub.add_parser("characterize", help="判定 TAR(G) > 120°")
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p.add_argument("--svg")
    p.set_defaults(handler=cmd_characterize)

    p = sub.add_parser("generate", help="生成画法")
    p.add_argument("family", choices=["layered8gon", "polygon", "random"])
    p.add_argument("--k", type=int, default=2, help="层数或多边形边数")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--m", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--range", type=int, default=100, help="随机坐标范围")
    p.add_argument("-o", "--output")
    p.add_argument("--svg")
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("optimize", help="搜索 TAR 尽量大的画法")
    p.add_argument("graph")
    p.add_argument("--restarts", type=int)
    p.add_argument("--steps", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--box", type=int)
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--workers", type=int)
    p.add_argument("--grid", type=int, help="改用网格穷举，参数为每边点数")
    p.add_argument("-o", "--output")
    p.add_argument("--svg")
    p.set_defaults(handler=cmd_optimize)

    p = sub.add_parser("reduce", help="3-SAT 实例 → 归约图（可选 60° 布局）")
    p.add_argument("cnf")
    p.add_argument("--graph-output", help="把归约图写成 JSON")
    p.add_argument("--audit", action="store_true", help="核对部件计数")
    p.add_argument("--layout", action="store_true", help="用第一个可满足赋值布局")
    p.add_argument("--assignment", help="指定赋值，如 TFT")
    p.add_argument("--labels", action="store_true", help="在图中标注特殊顶点")
    p.add_argument("-o", "--output")
    p.add_argument("--svg")
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("decode", help="从归约图的画法读出赋值")
    p.add_argument("cnf")
    p.add_argument("drawing")
    p.set_defaults(handler=cmd_decode)

    p = sub.add_parser("catalog", help="例外目录")
    p.add_argument("action", choices=["export", "list"])
    p.add_argument("directory", nargs="?", default="catalog")
    p.add_argument("--svg", action="store_true")
    p.set_defaults(handler=cmd_catalog)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_ERROR

    try:
        settings = get_settings()
    except TarError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_ERROR
    setup_logging(SERVICE_NAME, "DEBUG" if args.verbose else settings.log_level,
                  settings.log_format, stream=sys.stderr)
    metrics = get_metrics(SERVICE_NAME) if settings.metrics_enabled else None
    ctx = _Context(settings, metrics)

    try:
        with TraceContext(f"cli.{args.command}"):
            code = args.handler(args, ctx)
    except TarError as e:
        logger.debug("command %s failed: %s", args.command, e.to_dict())
        print(f"error: {e.message}", file=sys.stderr)
        code = EXIT_ERROR
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        code = EXIT_ERROR

    if args.metrics_out and metrics is not None:
        Path(args.metrics_out).write_bytes(metrics.get_metrics())
    return code


if __name__ == "__main__":
    sys.exit(main())
