import os

import pytest

from core.config import reset_settings


@pytest.fixture(scope="session", autouse=True)
def default_settings():
    """整个测试会话使用默认配置，不受外部 TARKIT_* 环境变量和 .env 影响"""
    with pytest.MonkeyPatch.context() as mp:
        for key in list(os.environ):
            if key.startswith("TARKIT_"):
                mp.delenv(key, raising=False)
        mp.setattr("core.config.load_dotenv", lambda *args, **kwargs: False)
        reset_settings()
        yield
    reset_settings()


@pytest.fixture
def fresh_settings():
    """修改环境变量的测试用；前后都清空配置单例"""
    reset_settings()
    yield
    reset_settings()
