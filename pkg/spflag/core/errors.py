"""
Исключения предметной области
"""


class UsageError(ValueError):
    """Неверное использование интерфейса (код выхода 2)"""


class UnknownSuite(UsageError):
    """Неизвестное имя набора проверок"""


class DomainError(ValueError):
    """Нарушено предусловие операции (код выхода 3)"""


class MalformedM2C(DomainError):
    """Комплексная 2x2 матрица не имеет кватернионной структуры"""


class DimensionMismatch(DomainError):
    """Несогласованные размеры матриц"""


class ShapeMismatch(DomainError):
    """Касательный вектор не совпадает по форме с точкой"""


class NonSquare(DomainError):
    """Ожидалась квадратная матрица"""


class NotHyperHermitian(DomainError):
    """Матрица не совпадает со своей сопряженной"""


class PairingFailure(DomainError):
    """Спектр комплексного вложения не разбивается на пары"""


class SingularInvSqrt(DomainError):
    """Обратный корень от вырожденной матрицы"""


class NotGroupElement(DomainError):
    """Матрица не принадлежит Sp(n)"""


class SingularDenominator(DomainError):
    """Знаменатель дробно-линейного действия вырожден"""


class DegenerateQuadruple(DomainError):
    """Вырожденная четверка точек для двойного отношения"""


class DependentDirections(DomainError):
    """Касательные направления линейно зависимы"""


class IndexOutOfRange(DomainError):
    """Индекс генератора вне допустимого диапазона"""


class NotEigenvector(DomainError):
    """Функция не является собственным вектором элемента Картана"""


class ChartBoundary(DomainError):
    """Точка лежит на границе угловой карты"""


class TooCloseToPole(DomainError):
    """Точка слишком близко к полюсу сферы"""


class TerminationViolated(DomainError):
    """Ряд для g_l не обрывается при заданных (l, N)"""


class NotSkewAdjoint(DomainError):
    """Генератор не антиэрмитов"""


class NotUnitQuaternion(DomainError):
    """Кватернион не единичный"""


class PartitionMismatch(DomainError):
    """Разбиение генератора не согласовано с вектором состояния"""


class InvalidRank(DomainError):
    """Недопустимый ранг системы корней"""


class UnsupportedWeightCount(DomainError):
    """Метка частицы определена только для 1, 2 или 3 весов"""


class OddDimension(DomainError):
    """Ожидалась четная размерность сферы"""


class FieldSpecError(DomainError):
    """Не удалось разобрать описание поля"""


class SecondOrderResidue(RuntimeError):
    """В коммутаторе не сократились члены второго порядка (ошибка реализации)"""


class DecompositionMismatch(RuntimeError):
    """Разложение поля не совпало с действием оператора (ошибка реализации)"""
