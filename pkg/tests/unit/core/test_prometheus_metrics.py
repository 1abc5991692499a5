from flask import Flask

from core.bounds import check_all
from core.drawing import tar
from core.prometheus_metrics import TarKitMetrics, get_metrics, instrument_flask_app
from tests.fixtures.sample_data import k4_plane, unit_square


def _sample(metrics, name, labels=None):
    return metrics.registry.get_sample_value(name, labels or {})


def test_counters():
    m = TarKitMetrics("unit")
    m.record_evaluation("recognize")
    m.record_check("lemma1", "holds")
    m.record_check("theorem1", "refuted")
    m.record_optimizer_run(4, 72.5)
    m.record_reduction("build")
    assert _sample(m, "tarkit_evaluations_total", {"kind": "recognize"}) == 1
    assert _sample(m, "tarkit_checks_total", {"statement": "lemma1", "outcome": "holds"}) == 1
    assert _sample(m, "tarkit_theorem_refutations_total") == 1
    assert _sample(m, "tarkit_optimizer_restarts_total") == 4
    assert _sample(m, "tarkit_optimizer_best_degrees") == 72.5
    assert _sample(m, "tarkit_reductions_total", {"stage": "build"}) == 1


def test_record_tar_counts_class():
    m = TarKitMetrics("unit")
    m.record_tar(tar(unit_square()))
    m.record_tar(tar(k4_plane()))
    assert _sample(m, "tarkit_evaluations_total", {"kind": "tar"}) == 2
    assert _sample(m, "tarkit_tar_vs60_total", {"angle_class": "ABOVE"}) == 1
    assert _sample(m, "tarkit_tar_vs60_total", {"angle_class": "BELOW"}) == 1


def test_record_check_summary():
    m = TarKitMetrics("unit")
    summary = check_all(unit_square())
    m.record_check_summary(summary)
    assert _sample(m, "tarkit_checks_total", {"statement": "lemma1", "outcome": "holds"}) == 1
    assert _sample(m, "tarkit_checks_total", {"statement": "theorem1", "outcome": "exception"}) == 1
    assert _sample(m, "tarkit_theorem_refutations_total") == 0


def test_private_registries_are_independent():
    a, b = TarKitMetrics("a"), TarKitMetrics("b")
    a.record_evaluation("tar")
    assert _sample(b, "tarkit_evaluations_total", {"kind": "tar"}) is None


def test_exposition_text():
    m = TarKitMetrics("unit")
    m.set_health_status("degraded")
    text = m.get_metrics().decode()
    assert 'tarkit_health_status{tarkit_health_status="degraded"} 1.0' in text
    assert "tarkit_service_info" in text


def test_singleton():
    assert get_metrics("unit-singleton") is get_metrics("unit-singleton")


def test_flask_instrumentation():
    app = Flask(__name__)
    m = TarKitMetrics("flask-unit")
    instrument_flask_app(app, m)

    @app.route("/ping")
    def ping():
        return "pong"

    client = app.test_client()
    assert client.get("/ping").status_code == 200
    response = client.get("/metrics")
    assert response.status_code == 200
    assert b"tarkit_requests_total" in response.data
    assert _sample(m, "tarkit_requests_total", {"method": "GET", "endpoint": "ping", "status_code": "200"}) == 1
