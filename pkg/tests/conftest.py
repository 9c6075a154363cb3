import numpy as np
import pytest
from loguru import logger

from spflag.config import RunConfig


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: полные прогоны наборов с большим числом испытаний")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def small_config():
    """Конфигурация с малым числом испытаний для быстрых прогонов наборов"""
    return RunConfig(seed=7, trials=2)


@pytest.fixture
def log_messages():
    """Сообщения loguru уровня WARNING и выше"""
    messages = []
    handler_id = logger.add(lambda message: messages.append(message.record["message"]), level="WARNING")
    yield messages
    logger.remove(handler_id)


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("SPFLAG_SEED", "SPFLAG_TRIALS", "SPFLAG_WORKERS", "SPFLAG_RECORD", "SPFLAG_DB"):
        monkeypatch.delenv(name, raising=False)
