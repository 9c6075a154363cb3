"""
Реестр наборов проверок
"""
from typing import Dict, List, Type

from .base import Suite
from .coset import CosetSuite
from .dynamics import DynamicsSuite
from .em import EMSuite
from .forms import FormsSuite
from .liealg import LieAlgebraSuite
from .quat import QuaternionSuite
from .roots import RootsSuite
from .s4 import S4Suite
from ..errors import UnknownSuite
from ...config import RunConfig

SUITES: Dict[str, Type[Suite]] = {
    cls.name: cls
    for cls in (
        QuaternionSuite,
        CosetSuite,
        FormsSuite,
        LieAlgebraSuite,
        S4Suite,
        EMSuite,
        DynamicsSuite,
        RootsSuite,
    )
}


def suite_names() -> List[str]:
    return ["all"] + list(SUITES)


def resolve(name: str, config: RunConfig) -> List[Suite]:
    """
    Наборы для имени из командной строки; "all" дает все в фиксированном порядке

    Raises:
        UnknownSuite: если имя не зарегистрировано
    """
    if name == "all":
        return [cls(config) for cls in SUITES.values()]
    if name not in SUITES:
        raise UnknownSuite(f"Неизвестный набор '{name}'. Доступны: {', '.join(suite_names())}")
    return [SUITES[name](config)]
