"""
Базовый интерфейс для наборов проверок
"""
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from loguru import logger

from ..errors import DomainError
from ...config import RunConfig


@dataclass
class CheckResult:
    """Результат одной проверки"""
    name: str
    passed: bool
    residual: float
    tolerance: float
    detail: Dict[str, Any] = field(default_factory=dict)
    error: Optional[str] = None

    def as_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "residual": _finite(self.residual),
            "tolerance": self.tolerance,
            "detail": self.detail,
            "error": self.error,
        }


def _finite(value: float) -> Optional[float]:
    value = float(value)
    return value if np.isfinite(value) else None


def check(name: str, residual: float, tolerance: float, **detail) -> CheckResult:
    """Проверка вида residual < tolerance"""
    residual = float(residual)
    return CheckResult(name=name, passed=bool(residual < tolerance), residual=residual, tolerance=tolerance, detail=detail)


def flag(name: str, ok: bool, **detail) -> CheckResult:
    """Логическая проверка без численной невязки"""
    return CheckResult(name=name, passed=bool(ok), residual=0.0 if ok else 1.0, tolerance=0.5, detail=detail)


@dataclass
class SuiteReport:
    """Результаты набора"""
    suite: str
    seed: int
    checks: List[CheckResult]
    elapsed_ms: int

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class Suite(ABC):
    """Базовый класс для всех наборов проверок"""

    name: str = ""

    def __init__(self, config: RunConfig):
        self.config = config
        self.tol = config.tolerances

    def rng(self, salt: int = 0) -> np.random.Generator:
        """Генератор, зависящий только от сида запуска, имени набора и соли"""
        key = [self.config.seed, salt] + [ord(ch) for ch in self.name]
        return np.random.default_rng(np.random.SeedSequence(key))

    @abstractmethod
    def checks(self) -> List[Callable[[], List[CheckResult]]]:
        """
        Список функций-проверок набора

        Returns:
            Функции без аргументов, каждая возвращает список CheckResult
        """
        raise NotImplementedError

    def run(self) -> SuiteReport:
        """Запускает все проверки; ошибка предметной области превращается в проваленную проверку"""
        start_time = time.perf_counter()
        results: List[CheckResult] = []
        for fn in self.checks():
            try:
                results.extend(fn())
            except DomainError as e:
                logger.error(f"Набор {self.name}: проверка {fn.__name__} прервана: {e}")
                results.append(CheckResult(
                    name=fn.__name__, passed=False, residual=float("inf"), tolerance=0.0, error=str(e),
                ))
        elapsed = int((time.perf_counter() - start_time) * 1000)
        failed = [r.name for r in results if not r.passed]
        if failed:
            logger.warning(f"Набор {self.name}: провалено {len(failed)} из {len(results)}: {failed}")
        else:
            logger.info(f"Набор {self.name}: все {len(results)} проверок пройдены за {elapsed} мс")
        return SuiteReport(suite=self.name, seed=self.config.seed, checks=results, elapsed_ms=elapsed)
