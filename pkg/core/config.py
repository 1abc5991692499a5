#!/usr/bin/env python3
"""
TARKit 配置
从环境变量（及 .env 文件）读取运行参数，所有键以 TARKIT_ 为前缀。
"""

import logging
import os
import threading
from dataclasses import dataclass
from typing import Callable, Optional, TypeVar

from dotenv import load_dotenv

from core.errors import ConfigurationError

logger = logging.getLogger(__name__)

T = TypeVar("T")

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _env(name: str, default: T, cast: Callable[[str], T]) -> T:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return cast(raw.strip())
    except ValueError as e:
        raise ConfigurationError(f"invalid value for {name}: {raw!r}", {"variable": name}) from e


def _bool(raw: str) -> bool:
    lowered = raw.lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ValueError(raw)


@dataclass(frozen=True)
class Settings:
    log_level: str = "INFO"
    log_format: str = "structured"
    opt_restarts: int = 8
    opt_steps: int = 400
    opt_initial_step: float = 4.0
    opt_cooling: float = 0.995
    opt_box: int = 20
    opt_seed: int = 0
    grid_budget: int = 2_000_000
    random_retries: int = 1000
    svg_scale: float = 40.0
    svg_margin: float = 20.0
    service_port: int = 8400
    metrics_enabled: bool = True

    @classmethod
    def from_env(cls, dotenv_path: Optional[str] = None) -> "Settings":
        """加载 .env 后读取环境变量"""
        load_dotenv(dotenv_path)
        settings = cls(
            log_level=_env("TARKIT_LOG_LEVEL", cls.log_level, str).upper(),
            log_format=_env("TARKIT_LOG_FORMAT", cls.log_format, str).lower(),
            opt_restarts=_env("TARKIT_OPT_RESTARTS", cls.opt_restarts, int),
            opt_steps=_env("TARKIT_OPT_STEPS", cls.opt_steps, int),
            opt_initial_step=_env("TARKIT_OPT_INITIAL_STEP", cls.opt_initial_step, float),
            opt_cooling=_env("TARKIT_OPT_COOLING", cls.opt_cooling, float),
            opt_box=_env("TARKIT_OPT_BOX", cls.opt_box, int),
            opt_seed=_env("TARKIT_OPT_SEED", cls.opt_seed, int),
            grid_budget=_env("TARKIT_GRID_BUDGET", cls.grid_budget, int),
            random_retries=_env("TARKIT_RANDOM_RETRIES", cls.random_retries, int),
            svg_scale=_env("TARKIT_SVG_SCALE", cls.svg_scale, float),
            svg_margin=_env("TARKIT_SVG_MARGIN", cls.svg_margin, float),
            service_port=_env("TARKIT_SERVICE_PORT", cls.service_port, int),
            metrics_enabled=_env("TARKIT_METRICS_ENABLED", cls.metrics_enabled, _bool),
        )
        settings.validate()
        return settings

    def validate(self) -> None:
        if self.log_format not in ("structured", "plain"):
            raise ConfigurationError(f"TARKIT_LOG_FORMAT must be structured or plain, got {self.log_format!r}")
        for name in ("opt_restarts", "opt_steps", "opt_box", "grid_budget", "random_retries"):
            if getattr(self, name) <= 0:
                raise ConfigurationError(f"{name} must be positive", {"field": name})
        if self.opt_initial_step <= 0:
            raise ConfigurationError("opt_initial_step must be positive")
        if not 0 < self.opt_cooling < 1:
            raise ConfigurationError("opt_cooling must lie in (0, 1)")
        if self.svg_scale <= 0:
            raise ConfigurationError("svg_scale must be positive")

    def optimizer_config(self):
        """默认 OptConfig"""
        from core.optimizer import OptConfig

        return OptConfig(
            restarts=self.opt_restarts,
            steps=self.opt_steps,
            initial_step=self.opt_initial_step,
            cooling=self.opt_cooling,
            seed=self.opt_seed,
            box=self.opt_box,
        )


_settings: Optional[Settings] = None
_lock = threading.Lock()


def get_settings() -> Settings:
    """获取进程级配置单例"""
    global _settings
    with _lock:
        if _settings is None:
            _settings = Settings.from_env()
            logger.debug("settings loaded: %s", _settings)
        return _settings


def reset_settings() -> None:
    global _settings
    with _lock:
        _settings = None
