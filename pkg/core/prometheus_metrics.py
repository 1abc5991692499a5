#!/usr/bin/env python3
"""
TARKit Prometheus 指标
每个实例持有私有 CollectorRegistry；CLI 用 --metrics-out 导出文本，
tar-service 通过 /metrics 暴露。
"""

import logging
import threading
import time
from datetime import datetime
from typing import Any, Dict, Optional

from prometheus_client import (
    CONTENT_TYPE_LATEST,
    CollectorRegistry,
    Counter,
    Enum,
    Gauge,
    Histogram,
    Info,
    generate_latest,
)

logger = logging.getLogger(__name__)

HEALTH_STATES = ("healthy", "unhealthy", "degraded")
REQUEST_BUCKETS = (0.01, 0.05, 0.1, 0.5, 1.0, 5.0, 30.0)


class TarKitMetrics:
    """TAR 计算、界检查、优化与归约的指标"""

    def __init__(self, service_name: str, registry: Optional[CollectorRegistry] = None):
        self.service_name = service_name
        self.registry = registry or CollectorRegistry()
        r = self.registry

        self.service_info = Info("tarkit_service", "TARKit 服务信息", registry=r)
        self.service_info.info({
            "service_name": service_name,
            "version": "1.0.0",
            "started": datetime.now().isoformat(timespec="seconds"),
        })

        # HTTP
        self.requests = Counter("tarkit_requests_total", "HTTP 请求数",
                                ["method", "endpoint", "status_code"], registry=r)
        self.request_seconds = Histogram("tarkit_request_duration_seconds", "HTTP 请求耗时",
                                         ["method", "endpoint"], buckets=REQUEST_BUCKETS, registry=r)

        # 计算
        self.evaluations = Counter("tarkit_evaluations_total", "按种类统计的计算次数",
                                   ["kind"], registry=r)
        self.tar_vs60 = Counter("tarkit_tar_vs60_total", "TAR 相对 60° 的分类结果",
                                ["angle_class"], registry=r)
        self.checks = Counter("tarkit_checks_total", "界检查结果",
                              ["statement", "outcome"], registry=r)
        self.refutations = Counter("tarkit_theorem_refutations_total",
                                   "违反界且 TAR > 60° 的非例外画法", registry=r)
        self.optimizer_restarts = Counter("tarkit_optimizer_restarts_total", "优化器重启次数", registry=r)
        self.optimizer_best = Gauge("tarkit_optimizer_best_degrees", "最近一次优化的 TAR（度）", registry=r)
        self.reductions = Counter("tarkit_reductions_total", "归约各阶段执行次数",
                                  ["stage"], registry=r)

        self.health = Enum("tarkit_health_status", "服务健康状态", states=list(HEALTH_STATES), registry=r)
        self.last_health_check = Gauge("tarkit_last_health_check_timestamp", "最后健康检查时间", registry=r)
        self.set_health_status("healthy")

    def record_request(self, method: str, endpoint: str, status_code: int, duration: float) -> None:
        self.requests.labels(method=method, endpoint=endpoint, status_code=str(status_code)).inc()
        self.request_seconds.labels(method=method, endpoint=endpoint).observe(duration)

    def record_evaluation(self, kind: str) -> None:
        self.evaluations.labels(kind=kind).inc()

    def record_tar(self, report: Any) -> None:
        """一次 tar() 的结果（TarReport）"""
        self.record_evaluation("tar")
        self.tar_vs60.labels(angle_class=report.classes[60].value).inc()

    def record_check(self, statement: str, outcome: str) -> None:
        """outcome: holds / violated / refuted / skipped，或 Theorem 1 的结论"""
        self.checks.labels(statement=statement, outcome=outcome).inc()
        if outcome == "refuted":
            self.refutations.inc()

    def record_check_summary(self, summary: Any) -> None:
        """check_all() 的全部结论（CheckSummary）"""
        for report in summary.reports:
            if report.refutes:
                outcome = "refuted"
            else:
                outcome = "holds" if report.holds else "violated"
            self.record_check(report.statement, outcome)
        if summary.theorem1 is not None:
            t1 = summary.theorem1
            self.record_check("theorem1", "refuted" if t1.refutes else t1.outcome.value.lower())
        for name in summary.skipped:
            self.record_check(name, "skipped")

    def record_optimizer_run(self, restarts: int, best_degrees: float) -> None:
        self.optimizer_restarts.inc(restarts)
        self.optimizer_best.set(best_degrees)

    def record_reduction(self, stage: str) -> None:
        """stage: build / audit / layout / decode"""
        self.reductions.labels(stage=stage).inc()

    def set_health_status(self, status: str) -> None:
        self.health.state(status)
        self.last_health_check.set_to_current_time()

    def get_metrics(self) -> bytes:
        return generate_latest(self.registry)


def instrument_flask_app(app, metrics: TarKitMetrics) -> None:
    """请求计数与耗时，外加同端口的 /metrics"""
    from flask import Response, g, request

    @app.before_request
    def _start_timer():
        g.metrics_start = time.perf_counter()

    @app.after_request
    def _record(response):
        start = getattr(g, "metrics_start", None)
        if start is not None:
            metrics.record_request(request.method, request.endpoint or "unknown",
                                   response.status_code, time.perf_counter() - start)
        return response

    @app.route("/metrics")
    def metrics_endpoint():
        return Response(metrics.get_metrics(), mimetype=CONTENT_TYPE_LATEST)


_instances: Dict[str, TarKitMetrics] = {}
_lock = threading.Lock()


def get_metrics(service_name: str) -> TarKitMetrics:
    """每个服务名一个实例"""
    with _lock:
        if service_name not in _instances:
            _instances[service_name] = TarKitMetrics(service_name)
        return _instances[service_name]


def setup_metrics_for_flask_app(app, service_name: str) -> TarKitMetrics:
    metrics = get_metrics(service_name)
    instrument_flask_app(app, metrics)
    logger.info("prometheus metrics enabled for %s", service_name)
    return metrics
