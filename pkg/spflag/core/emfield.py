"""
Оператор p* = d0 + i d1 + j d2 + k d3 на кватернионных полиномиальных полях

Поле psi = A0 e + A1 i + A2 j + A3 k задается четырьмя многочленами от x0..x3
с рациональными коэффициентами; x0 играет роль циклического времени.
Все производные точные, поэтому тождества проверяются равенством коэффициентов.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from tokenize import TokenError
from typing import Dict, Iterable, List, Mapping, Tuple

import numpy as np
import sympy
from loguru import logger
from sympy.parsing.sympy_parser import parse_expr, rationalize, standard_transformations
from sympy.polys.domains import QQ
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.rings import PolyElement, ring

from .errors import DecompositionMismatch, FieldSpecError
from .quaternion import STRUCTURE, Quaternion, mul

VARIABLES = ("x0", "x1", "x2", "x3")
COMPONENTS = ("A0", "A1", "A2", "A3")
PRODUCT_TOL = 1e-13


@lru_cache(maxsize=1)
def field_ring():
    """Кольцо QQ[x0, x1, x2, x3] и его образующие"""
    R, *gens = ring(",".join(VARIABLES), QQ)
    return R, tuple(gens)


@dataclass(frozen=True)
class QPolyField:
    """psi = A0 e + A1 i + A2 j + A3 k"""
    components: Tuple[PolyElement, PolyElement, PolyElement, PolyElement]

    @classmethod
    def zero(cls) -> "QPolyField":
        R, _ = field_ring()
        return cls(tuple(R.zero for _ in range(4)))

    @classmethod
    def from_components(cls, values: Mapping[str, PolyElement]) -> "QPolyField":
        R, _ = field_ring()
        return cls(tuple(R(values.get(name, 0)) for name in COMPONENTS))

    @property
    def scalar(self) -> PolyElement:
        return self.components[0]

    @property
    def vector(self) -> Tuple[PolyElement, PolyElement, PolyElement]:
        return self.components[1], self.components[2], self.components[3]

    def __add__(self, other: "QPolyField") -> "QPolyField":
        return QPolyField(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "QPolyField") -> "QPolyField":
        return QPolyField(tuple(a - b for a, b in zip(self.components, other.components)))

    def scale(self, c) -> "QPolyField":
        return QPolyField(tuple(a * c for a in self.components))

    def derivative(self, axis: int) -> "QPolyField":
        """Покомпонентная производная по x_axis"""
        _, gens = field_ring()
        return QPolyField(tuple(a.diff(gens[axis]) for a in self.components))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.components)

    def as_strings(self) -> Dict[str, str]:
        return {name: str(a) for name, a in zip(COMPONENTS, self.components)}


@dataclass(frozen=True)
class FieldDecomposition:
    """Скалярный член A0,0 - div A, поля E = -A,0 - grad A0 и B = rot A"""
    scalar: PolyElement
    E: Tuple[PolyElement, PolyElement, PolyElement]
    B: Tuple[PolyElement, PolyElement, PolyElement]

    def vector_part(self) -> Tuple[PolyElement, PolyElement, PolyElement]:
        """-E + B"""
        return tuple(b - e for e, b in zip(self.E, self.B))

    def as_dict(self) -> Dict[str, object]:
        return {
            "scalar": str(self.scalar),
            "E": [str(e) for e in self.E],
            "B": [str(b) for b in self.B],
        }


def left_basis_product(r: int, psi: QPolyField) -> QPolyField:
    """e_r psi по таблице умножения кватернионов"""
    R, _ = field_ring()
    out = []
    for c in range(4):
        term = R.zero
        for b in range(4):
            coef = int(STRUCTURE[r, b, c])
            if coef:
                term += psi.components[b] * coef
        out.append(term)
    return QPolyField(tuple(out))


def apply_pstar(psi: QPolyField) -> QPolyField:
    """p* psi = sum_r e_r d_r psi"""
    result = QPolyField.zero()
    for r in range(4):
        result = result + left_basis_product(r, psi.derivative(r))
    return result


def _decompose(psi: QPolyField) -> FieldDecomposition:
    _, x = field_ring()
    a0 = psi.scalar
    a = psi.vector
    scalar = a0.diff(x[0]) - sum((a[i].diff(x[i + 1]) for i in range(3)), a0.ring.zero)
    e = tuple(-a[i].diff(x[0]) - a0.diff(x[i + 1]) for i in range(3))
    b = (
        a[2].diff(x[2]) - a[1].diff(x[3]),
        a[0].diff(x[3]) - a[2].diff(x[1]),
        a[1].diff(x[1]) - a[0].diff(x[2]),
    )
    return FieldDecomposition(scalar=scalar, E=e, B=b)


def decomposition_residual(psi: QPolyField, decomposition: FieldDecomposition) -> QPolyField:
    """p* psi - (scalar + (-E + B)); тождественный ноль при согласованном разложении"""
    expected = QPolyField((decomposition.scalar,) + decomposition.vector_part())
    return apply_pstar(psi) - expected


def decompose(psi: QPolyField) -> FieldDecomposition:
    """
    Разложение поля на скалярный член, E и B

    Каждый вызов сверяется с apply_pstar равенством многочленов.

    Raises:
        DecompositionMismatch: если тождество p* psi = scalar - E + B нарушено
    """
    decomposition = _decompose(psi)
    residual = decomposition_residual(psi, decomposition)
    if not residual.is_zero():
        raise DecompositionMismatch(f"p* psi расходится с разложением: {residual.as_strings()}")
    return decomposition


def quaternion_product_identity(v: Quaternion, w: Quaternion) -> float:
    """max |vw - [(v0 w0 - v.w) + (v0 w + w0 v + v x w)]|"""
    vv, wv = v.vector, w.vector
    scalar = v.w * w.w - float(vv @ wv)
    vector = v.w * wv + w.w * vv + np.cross(vv, wv)
    assembled = np.concatenate([[scalar], vector])
    return float(np.abs(mul(v, w).as_array() - assembled).max())


# ---------------------------------------------------------------------------
# описание поля и случайные поля

_TRANSFORMATIONS = standard_transformations + (rationalize,)


def parse_polynomial(text: str) -> PolyElement:
    """
    Многочлен от x0..x3 из строки

    Raises:
        FieldSpecError: при синтаксической ошибке или посторонних символах
    """
    R, _ = field_ring()
    symbols = {name: sympy.Symbol(name) for name in VARIABLES}
    try:
        expr = parse_expr(text, local_dict=symbols, transformations=_TRANSFORMATIONS)
    except (SyntaxError, TypeError, ValueError, AttributeError, TokenError, sympy.SympifyError) as e:
        raise FieldSpecError(f"Не удалось разобрать '{text}': {e}") from e
    extra = {str(s) for s in getattr(expr, "free_symbols", set())} - set(VARIABLES)
    if extra:
        raise FieldSpecError(f"Посторонние символы в '{text}': {sorted(extra)}")
    try:
        return R.from_expr(expr)
    except (ValueError, TypeError, CoercionFailed) as e:
        raise FieldSpecError(f"'{text}' не многочлен от {', '.join(VARIABLES)}") from e


def parse_field_spec(specs: Iterable[str]) -> QPolyField:
    """
    Поле из записей вида "A1=x1", "A0=x0*x3"

    Raises:
        FieldSpecError: при неизвестной компоненте или повторе
    """
    values: Dict[str, PolyElement] = {}
    for spec in specs:
        name, sep, body = spec.partition("=")
        name = name.strip()
        if not sep or name not in COMPONENTS:
            raise FieldSpecError(f"Ожидалось A0..A3=многочлен, получено '{spec}'")
        if name in values:
            raise FieldSpecError(f"Компонента {name} задана дважды")
        values[name] = parse_polynomial(body)
    logger.debug(f"Поле: {values}")
    return QPolyField.from_components(values)


def monomials(max_degree: int) -> List[PolyElement]:
    """Все мономы степени <= max_degree"""
    R, x = field_ring()
    out = [R.one]
    for degree in range(1, max_degree + 1):
        for combo in combinations_with_replacement(range(4), degree):
            m = R.one
            for i in combo:
                m *= x[i]
            out.append(m)
    return out


def random_field(rng: np.random.Generator, max_degree: int = 3, terms: int = 6, bound: int = 5) -> QPolyField:
    """Случайное поле с целыми коэффициентами из [-bound, bound]"""
    R, _ = field_ring()
    basis = monomials(max_degree)
    components = []
    for _ in range(4):
        poly = R.zero
        for index in rng.choice(len(basis), size=terms, replace=True):
            poly += basis[int(index)] * int(rng.integers(-bound, bound + 1))
        components.append(poly)
    return QPolyField(tuple(components))
