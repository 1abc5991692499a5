import os
import sys
import logging
from datetime import datetime

from flask import Flask, g, jsonify, request

# Add the repository root to the Python path so that `core.*` resolves
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..', '..')))
from core.bounds import check_all
from core.config import get_settings
from core.drawing import tar
from core.drawing_io import drawing_from_dict
from core.errors import TarError
from core.exception_catalog import catalog, recognize_drawing
from core.prometheus_metrics import setup_metrics_for_flask_app
from core.structured_logging import RequestContext, TraceContext, setup_logging

SERVICE_NAME = "tar-service"
REQUEST_ID_HEADER = "X-Request-ID"

logger = logging.getLogger(SERVICE_NAME)


def _drawing_from_request():
    payload = request.get_json(silent=True)
    if payload is None:
        raise TarError("request body must be a JSON drawing document")
    # {"drawing": {...}} 与裸文档两种写法都接受
    return drawing_from_dict(payload.get("drawing", payload) if isinstance(payload, dict) else payload)


def _install_request_context(app: Flask) -> None:
    """每个请求一个 RequestContext + TraceContext，响应头回传请求 id"""

    @app.before_request
    def _enter():
        scope = RequestContext(request.headers.get(REQUEST_ID_HEADER),
                               method=request.method, path=request.path)
        g.request_scope = scope.__enter__()
        g.trace = TraceContext(f"http.{request.endpoint or 'unknown'}",
                               tags={"method": request.method}).__enter__()

    @app.after_request
    def _tag(response):
        trace = getattr(g, "trace", None)
        if trace is not None:
            trace.add_tag("status_code", response.status_code)
        scope = getattr(g, "request_scope", None)
        if scope is not None:
            response.headers[REQUEST_ID_HEADER] = scope.request_id
        return response

    @app.teardown_request
    def _leave(exc):
        exc_info = (type(exc), exc, exc.__traceback__) if exc is not None else (None, None, None)
        trace = g.pop("trace", None)
        if trace is not None:
            trace.__exit__(*exc_info)
        scope = g.pop("request_scope", None)
        if scope is not None:
            scope.__exit__(*exc_info)


def create_app(metrics_enabled=None) -> Flask:
    """构建 Flask 应用；测试中可关闭指标"""
    settings = get_settings()
    app = Flask(__name__)
    enabled = settings.metrics_enabled if metrics_enabled is None else metrics_enabled
    metrics = setup_metrics_for_flask_app(app, SERVICE_NAME) if enabled else None
    _install_request_context(app)
    started = datetime.now()

    @app.errorhandler(TarError)
    def handle_tar_error(e: TarError):
        logger.warning("request rejected: %s (%s)", e.message, type(e).__name__)
        return jsonify(e.to_dict()), 400

    # --- Health Check Endpoint ---
    @app.route('/health', methods=['GET'])
    def health_check():
        """Health check endpoint."""
        if metrics is not None:
            metrics.set_health_status('healthy')
        return jsonify({
            "status": "healthy",
            "service": SERVICE_NAME,
            "started": started.isoformat(),
            "catalog_entries": len(catalog()),
        }), 200

    @app.route('/tar', methods=['POST'])
    def tar_endpoint():
        d = _drawing_from_request()
        report = tar(d)
        if metrics is not None:
            metrics.record_tar(report)
        return jsonify({"summary": report.summary_line(), **report.to_dict()}), 200

    @app.route('/check', methods=['POST'])
    def check_endpoint():
        d = _drawing_from_request()
        summary = check_all(d)
        if metrics is not None:
            metrics.record_check_summary(summary)
        if summary.refuted:
            logger.error("check refuted a bound: n=%d m=%d", d.n, d.m)
        return jsonify({"lines": summary.lines(), **summary.to_dict()}), 200

    @app.route('/recognize', methods=['POST'])
    def recognize_endpoint():
        d = _drawing_from_request()
        found = recognize_drawing(d)
        if metrics is not None:
            metrics.record_evaluation('recognize')
        return jsonify({"exception": None if found is None else str(found)}), 200

    @app.route('/catalog', methods=['GET'])
    def catalog_endpoint():
        entries = [
            {"id": str(e.id), "n": e.n, "m": e.m, "description": e.description}
            for e in catalog()
        ]
        return jsonify({"entries": entries, "count": len(entries)}), 200

    logger.info("%s ready (metrics %s)", SERVICE_NAME, "on" if metrics is not None else "off")
    return app


setup_logging(SERVICE_NAME, get_settings().log_level, get_settings().log_format)
app = create_app()


if __name__ == '__main__':
    app.run(host='0.0.0.0', port=get_settings().service_port)
