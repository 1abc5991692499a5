#!/usr/bin/env python3
"""
TARKit 结构化日志
- 每条记录一行 JSON（或纯文本，见 TARKIT_LOG_FORMAT）
- TraceContext: 一条 CLI 命令或一次 HTTP 请求的追踪范围
- RequestContext: HTTP 请求的 id / method / path
- log_performance: 核心运算的 DEBUG 耗时日志，附带图规模 n、m
"""

import json
import logging
import os
import time
import uuid
from contextvars import ContextVar
from datetime import datetime, timezone
from functools import wraps
from typing import Any, Callable, Dict, Optional, TextIO, TypeVar

SERVICE_NAME = "tarkit"
SERVICE_VERSION = "1.0.0"
PLAIN_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"

_trace: ContextVar[Optional[Dict[str, Any]]] = ContextVar("tarkit_trace", default=None)
_request: ContextVar[Optional[Dict[str, Any]]] = ContextVar("tarkit_request", default=None)

_trace_logger = logging.getLogger("tarkit.trace")

F = TypeVar("F", bound=Callable[..., Any])


def size_tags(obj: Any) -> Dict[str, int]:
    """Graph / Drawing / ReductionOutput 的 n、m；其它对象给空字典"""
    graph = getattr(obj, "graph", obj)
    n, m = getattr(graph, "n", None), getattr(graph, "m", None)
    if isinstance(n, int) and isinstance(m, int):
        return {"n": n, "m": m}
    return {}


class StructuredFormatter(logging.Formatter):
    """一行一个 JSON 对象"""

    def __init__(self, service_name: str = SERVICE_NAME, version: str = SERVICE_VERSION):
        super().__init__()
        self.service = {
            "name": service_name,
            "version": version,
            "hostname": os.getenv("HOSTNAME", "localhost"),
        }

    def format(self, record: logging.LogRecord) -> str:
        stamp = datetime.fromtimestamp(record.created, timezone.utc)
        entry: Dict[str, Any] = {
            "timestamp": stamp.isoformat().replace("+00:00", "Z"),
            "service": self.service,
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "source": f"{record.module}:{record.lineno}",
        }
        trace = _trace.get()
        if trace:
            entry["trace"] = trace
        req = _request.get()
        if req:
            entry["request"] = req

        tags = getattr(record, "tarkit", None)
        if tags:
            entry["tarkit"] = tags
        duration = getattr(record, "duration", None)
        if duration is not None:
            entry["duration_ms"] = round(duration * 1000, 3)

        if record.exc_info and record.exc_info[0] is not None:
            entry["exception"] = {
                "type": record.exc_info[0].__name__,
                "message": str(record.exc_info[1]),
                "traceback": self.formatException(record.exc_info),
            }
        return json.dumps(entry, ensure_ascii=False, separators=(",", ":"), default=str)


def log_event(logger: logging.Logger, level: int, message: str,
              duration: Optional[float] = None, **tags: Any) -> None:
    """带 tarkit 标签的一条记录；duration 以秒计"""
    if not logger.isEnabledFor(level):
        return
    extra: Dict[str, Any] = {"tarkit": tags}
    if duration is not None:
        extra["duration"] = duration
    logger.log(level, message, extra=extra)


class TraceContext:
    """追踪范围；退出时记一条带耗时的结果"""

    def __init__(self, operation_name: str, trace_id: Optional[str] = None,
                 tags: Optional[Dict[str, Any]] = None):
        self.operation_name = operation_name
        self.trace_id = trace_id or uuid.uuid4().hex
        self.span_id = uuid.uuid4().hex[:16]
        self.tags: Dict[str, Any] = dict(tags or {})
        self._token = None
        self._start = 0.0

    def __enter__(self) -> "TraceContext":
        self._start = time.perf_counter()
        self._token = _trace.set({
            "trace_id": self.trace_id,
            "span_id": self.span_id,
            "operation_name": self.operation_name,
            "tags": self.tags,
        })
        return self

    def __exit__(self, exc_type, exc, tb) -> bool:
        duration = time.perf_counter() - self._start
        if self._token is not None:
            _trace.reset(self._token)
            self._token = None
        failed = exc_type is not None
        log_event(
            _trace_logger,
            logging.WARNING if failed else logging.INFO,
            f"{self.operation_name} {'failed' if failed else 'completed'}",
            duration=duration,
            **{
                **self.tags,
                "operation": self.operation_name,
                "trace_id": self.trace_id,
                "status": "error" if failed else "success",
                "error_type": exc_type.__name__ if failed else None,
            },
        )
        return False

    def add_tag(self, key: str, value: Any) -> None:
        self.tags[key] = value


class RequestContext:
    """HTTP 请求上下文"""

    def __init__(self, request_id: Optional[str] = None, **fields: Any):
        self.request_id = request_id or uuid.uuid4().hex
        self.fields = fields
        self._token = None

    def __enter__(self) -> "RequestContext":
        self._token = _request.set({"id": self.request_id, **self.fields})
        return self

    def __exit__(self, exc_type, exc, tb) -> bool:
        if self._token is not None:
            _request.reset(self._token)
            self._token = None
        return False


def log_performance(operation_name: str) -> Callable[[F], F]:
    """耗时日志装饰器（DEBUG）。第一个参数是图、画法或归约结果时附带 n、m"""
    logger = logging.getLogger(f"tarkit.performance.{operation_name}")

    def decorator(func: F) -> F:
        @wraps(func)
        def wrapper(*args, **kwargs):
            if not logger.isEnabledFor(logging.DEBUG):
                return func(*args, **kwargs)
            tags = size_tags(args[0]) if args else {}
            start = time.perf_counter()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                log_event(logger, logging.DEBUG, f"{operation_name} failed",
                          duration=time.perf_counter() - start,
                          operation=operation_name, status="error", error=str(e), **tags)
                raise
            log_event(logger, logging.DEBUG, f"{operation_name} completed",
                      duration=time.perf_counter() - start,
                      operation=operation_name, status="success", **tags)
            return result
        return wrapper  # type: ignore[return-value]
    return decorator


def setup_logging(service_name: str = SERVICE_NAME,
                  log_level: str = "INFO",
                  log_format: str = "structured",
                  stream: Optional[TextIO] = None) -> logging.Handler:
    """根记录器上只保留一个 TARKit handler；重复调用会替换它"""
    root = logging.getLogger()
    for handler in [h for h in root.handlers if getattr(h, "_tarkit", False)]:
        root.removeHandler(handler)

    handler = logging.StreamHandler(stream)
    handler._tarkit = True  # type: ignore[attr-defined]
    if log_format == "structured":
        handler.setFormatter(StructuredFormatter(service_name))
    else:
        handler.setFormatter(logging.Formatter(PLAIN_FORMAT))
    root.addHandler(handler)
    root.setLevel(getattr(logging, log_level.upper(), logging.INFO))
    return handler


def get_current_trace_id() -> Optional[str]:
    trace = _trace.get()
    return trace["trace_id"] if trace else None
