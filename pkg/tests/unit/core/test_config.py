import os

import dotenv
import pytest

from core.config import Settings, get_settings
from core.errors import ConfigurationError
from core.optimizer import OptConfig


def test_defaults(fresh_settings):
    s = get_settings()
    assert s.log_level == "INFO"
    assert s.log_format == "structured"
    assert s.opt_restarts == 8
    assert s.grid_budget == 2_000_000
    assert s.service_port == 8400
    assert s.metrics_enabled is True


def test_singleton(fresh_settings):
    assert get_settings() is get_settings()


def test_environment_overrides(monkeypatch, fresh_settings):
    monkeypatch.setenv("TARKIT_OPT_RESTARTS", "3")
    monkeypatch.setenv("TARKIT_LOG_LEVEL", "debug")
    monkeypatch.setenv("TARKIT_METRICS_ENABLED", "off")
    monkeypatch.setenv("TARKIT_SVG_SCALE", "12.5")
    s = get_settings()
    assert s.opt_restarts == 3
    assert s.log_level == "DEBUG"
    assert s.metrics_enabled is False
    assert s.svg_scale == 12.5


def test_dotenv_file(tmp_path, monkeypatch, fresh_settings):
    monkeypatch.setattr("core.config.load_dotenv", dotenv.load_dotenv)
    env_file = tmp_path / ".env"
    env_file.write_text("TARKIT_OPT_STEPS=77\nTARKIT_GRID_BUDGET=1000\n")
    try:
        s = Settings.from_env(str(env_file))
        assert s.opt_steps == 77
        assert s.grid_budget == 1000
    finally:
        # load_dotenv 直接写入 os.environ
        os.environ.pop("TARKIT_OPT_STEPS", None)
        os.environ.pop("TARKIT_GRID_BUDGET", None)


@pytest.mark.parametrize("key,value", [
    ("TARKIT_OPT_RESTARTS", "zero"),
    ("TARKIT_OPT_RESTARTS", "0"),
    ("TARKIT_OPT_COOLING", "1.5"),
    ("TARKIT_LOG_FORMAT", "xml"),
    ("TARKIT_METRICS_ENABLED", "maybe"),
    ("TARKIT_SVG_SCALE", "-1"),
])
def test_invalid_values(monkeypatch, fresh_settings, key, value):
    monkeypatch.setenv(key, value)
    with pytest.raises(ConfigurationError):
        Settings.from_env()


def test_optimizer_config(monkeypatch, fresh_settings):
    monkeypatch.setenv("TARKIT_OPT_SEED", "5")
    cfg = get_settings().optimizer_config()
    assert isinstance(cfg, OptConfig)
    assert cfg.seed == 5
    assert cfg.restarts == 8
