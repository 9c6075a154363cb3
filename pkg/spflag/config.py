"""
Настройки запуска: сид, число испытаний, допуски и формат вывода

Значения по умолчанию берутся из переменных окружения SPFLAG_* (файл .env),
флаги командной строки их переопределяют.
"""
import math
import os
from typing import Dict, Iterable, Literal, Optional

from dotenv import load_dotenv
from loguru import logger
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .core.errors import UsageError


class Tolerances(BaseModel):
    """Пороги невязок для проверок"""
    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    m2c: float = 1e-12
    group: float = 1e-10
    sp2nc: float = 1e-10
    lft_forms: float = 1e-9
    lft_composition: float = 1e-8
    transport: float = 1e-9
    cross_ratio: float = 1e-8
    metric_forms: float = 1e-10
    metric_invariance: float = 1e-5
    inversion: float = 1e-6
    origin: float = 1e-9
    curvature_trace: float = 1e-9
    curvature_det: float = 1e-8
    haar_bound_factor: float = 5.0
    connection: float = 1e-7
    maurer_cartan: float = 1e-4
    curvature_forms: float = 1e-10
    f0_residual: float = 1e-10
    gl_residual: float = 1e-8
    einstein_spread: float = 1e-3
    einstein_off_diagonal: float = 1e-5
    pullback: float = 1e-7
    fs_rotation: float = 1e-10
    product: float = 1e-13
    norm_drift: float = 1e-9
    cocycle: float = 1e-9
    time_reversal: float = 1e-11
    geodesic: float = 1e-10
    transition: float = 1e-12


class RunConfig(BaseModel):
    """Параметры одного запуска CLI"""
    model_config = ConfigDict(extra="forbid")

    seed: int = 42
    trials: int = Field(default=20, ge=1)
    workers: int = Field(default=1, ge=1)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    format: Literal["json", "csv"] = "json"
    out: Optional[str] = None
    record: bool = False
    db_path: Optional[str] = None


def env_defaults() -> Dict[str, object]:
    """Значения по умолчанию из окружения"""
    load_dotenv()
    values: Dict[str, object] = {}
    for key, name in (("seed", "SPFLAG_SEED"), ("trials", "SPFLAG_TRIALS"), ("workers", "SPFLAG_WORKERS")):
        raw = os.getenv(name)
        if raw is not None:
            values[key] = raw
    if os.getenv("SPFLAG_RECORD"):
        values["record"] = os.getenv("SPFLAG_RECORD", "0").lower() in ("1", "true", "yes")
    return values


def parse_tolerance_overrides(items: Iterable[str]) -> Dict[str, float]:
    """
    Разбор записей KEY=VAL

    Raises:
        UsageError: при неизвестном ключе или нечисловом значении
    """
    overrides: Dict[str, float] = {}
    for item in items:
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in Tolerances.model_fields:
            raise UsageError(f"Неизвестный допуск: '{item}'. Доступны: {', '.join(sorted(Tolerances.model_fields))}")
        try:
            overrides[key] = float(value)
        except ValueError as e:
            raise UsageError(f"Допуск {key} должен быть числом, получено '{value}'") from e
        if not math.isfinite(overrides[key]) or overrides[key] <= 0:
            raise UsageError(f"Допуск {key} должен быть положительным конечным числом")
    return overrides


def build_config(
    seed: Optional[int] = None,
    trials: Optional[int] = None,
    workers: Optional[int] = None,
    tol: Iterable[str] = (),
    format: Optional[str] = None,
    out: Optional[str] = None,
    record: Optional[bool] = None,
    db_path: Optional[str] = None,
) -> RunConfig:
    """
    Собирает RunConfig: окружение, затем явные аргументы

    Raises:
        UsageError: если значения не проходят валидацию
    """
    values = env_defaults()
    explicit = {
        "seed": seed, "trials": trials, "workers": workers,
        "format": format, "out": out, "record": record, "db_path": db_path,
    }
    values.update({k: v for k, v in explicit.items() if v is not None})
    values["tolerances"] = Tolerances(**parse_tolerance_overrides(tol))
    try:
        config = RunConfig(**values)
    except ValidationError as e:
        raise UsageError(f"Неверные параметры запуска: {e}") from e
    logger.debug(f"Конфигурация: seed={config.seed}, trials={config.trials}, workers={config.workers}")
    return config
