"""
Внешние формы с кватернионными коэффициентами

Формы не хранятся символьно: 1-формы задаются коэффициентами при dx_r,
2-формы коэффициентами при dx_r ^ dx_s (r < s), и вычисляются на явных
касательных векторах.
"""
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from loguru import logger

from .errors import DependentDirections, DimensionMismatch, ShapeMismatch
from .coset import GrassmannPoint
from .quaternion import BASIS, Quaternion, qconj_array
from .quatmat import QuatMatrix, adjoint, func_hermitian, inverse

CONNECTION_STEP = 1e-6
MAURER_CARTAN_STEP = 1e-4


def base_pairs(dim: int) -> List[Tuple[int, int]]:
    """Упорядоченные пары (r, s), r < s"""
    return list(combinations(range(dim), 2))


@dataclass
class QOneForm:
    """Сумма dx_r * coeffs[r], coeffs формы (D, rows, cols, 4)"""
    coeffs: np.ndarray

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    def coefficient(self, r: int) -> QuatMatrix:
        return QuatMatrix(self.coeffs[r])

    def adjoint(self) -> "QOneForm":
        return QOneForm(qconj_array(self.coeffs.transpose(0, 2, 1, 3)))

    def __add__(self, other: "QOneForm") -> "QOneForm":
        return QOneForm(self.coeffs + other.coeffs)

    def __mul__(self, scale: float) -> "QOneForm":
        return QOneForm(self.coeffs * float(scale))

    __rmul__ = __mul__

    def evaluate(self, v: np.ndarray) -> QuatMatrix:
        """Значение на векторе с компонентами v[r]"""
        return QuatMatrix(np.tensordot(np.asarray(v, dtype=float), self.coeffs, axes=1))


@dataclass
class QTwoForm:
    """Сумма (dx_r ^ dx_s) * coeffs[p] по парам base_pairs(dim)"""
    coeffs: np.ndarray
    dim: int

    @property
    def pairs(self) -> List[Tuple[int, int]]:
        return base_pairs(self.dim)

    def coefficient(self, r: int, s: int) -> QuatMatrix:
        if r == s:
            return QuatMatrix(np.zeros(self.coeffs.shape[1:]))
        sign = 1.0 if r < s else -1.0
        index = self.pairs.index((min(r, s), max(r, s)))
        return QuatMatrix(sign * self.coeffs[index])

    def component(self, basis_index: int) -> np.ndarray:
        """Вещественная 2-форма при e_basis_index (для коэффициентов 1x1)"""
        if self.coeffs.shape[1:3] != (1, 1):
            raise ShapeMismatch("Компоненты определены для скалярных кватернионных коэффициентов")
        return self.coeffs[:, 0, 0, basis_index].copy()

    def evaluate(self, v1: np.ndarray, v2: np.ndarray) -> QuatMatrix:
        """Значение на паре векторов: сумма c_rs (v1_r v2_s - v1_s v2_r)"""
        weights = np.array([v1[r] * v2[s] - v1[s] * v2[r] for r, s in self.pairs])
        return QuatMatrix(np.tensordot(weights, self.coeffs, axes=1))


def wedge(a: QOneForm, b: QOneForm) -> QTwoForm:
    """Внешнее произведение, коэффициент при (r, s): a_r b_s - a_s b_r"""
    if a.dim != b.dim:
        raise DimensionMismatch(f"Разные базы дифференциалов: {a.dim} и {b.dim}")
    coeffs = []
    for r, s in base_pairs(a.dim):
        product = a.coefficient(r) @ b.coefficient(s) - a.coefficient(s) @ b.coefficient(r)
        coeffs.append(product.data)
    return QTwoForm(np.array(coeffs), a.dim)


def basis_one_form(r: int, q: Quaternion, dim: int = 4) -> QOneForm:
    """Форма dx_r q"""
    coeffs = np.zeros((dim, 1, 1, 4))
    coeffs[r, 0, 0] = q.as_array()
    return QOneForm(coeffs)


def quaternion_differential() -> QOneForm:
    """dY = dy0 e + dy1 i + dy2 j + dy3 k"""
    coeffs = np.zeros((4, 1, 1, 4))
    for r, q in enumerate(BASIS):
        coeffs[r, 0, 0] = q.as_array()
    return QOneForm(coeffs)


def dY_wedge(dY: Optional[QOneForm] = None) -> Tuple[QTwoForm, QTwoForm]:
    """(dY ^ dY*, dY* ^ dY)"""
    dY = dY if dY is not None else quaternion_differential()
    return wedge(dY, dY.adjoint()), wedge(dY.adjoint(), dY)


def hodge_star_matrix() -> np.ndarray:
    """
    Звезда Ходжа на 2-формах R^4 (евклидова метрика, ориентация dx0^dx1^dx2^dx3)

    Матрица 6x6 в базисе base_pairs(4).
    """
    pairs = base_pairs(4)
    star = np.zeros((6, 6))
    for col, (r, s) in enumerate(pairs):
        t, u = sorted(set(range(4)) - {r, s})
        perm = [r, s, t, u]
        inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
        star[pairs.index((t, u)), col] = -1.0 if inversions % 2 else 1.0
    return star


def duality_signs(form: QTwoForm) -> Dict[int, Optional[int]]:
    """
    Собственные значения звезды Ходжа на компонентах e1, e2, e3

    Returns:
        {индекс базиса: +1, -1 или None, если компонента не собственная}
    """
    star = hodge_star_matrix()
    signs: Dict[int, Optional[int]] = {}
    for index in (1, 2, 3):
        v = form.component(index)
        starred = star @ v
        if np.allclose(starred, v, atol=1e-14):
            signs[index] = 1
        elif np.allclose(starred, -v, atol=1e-14):
            signs[index] = -1
        else:
            signs[index] = None
    return signs


# ---------------------------------------------------------------------------
# форма Маурера-Картана

@dataclass
class ConnectionBlocks:
    """Блоки w = g* dg/dt вдоль пути"""
    omega11: QuatMatrix
    omega12: QuatMatrix
    omega21: QuatMatrix
    omega22: QuatMatrix

    def full(self) -> QuatMatrix:
        return QuatMatrix.from_blocks([[self.omega11, self.omega12], [self.omega21, self.omega22]])

    def skew_residual(self) -> float:
        """max |w + w*|"""
        w = self.full()
        return (w + adjoint(w)).max_abs()

    def off_diagonal_residual(self) -> float:
        """max |w21 + w12*|"""
        return (self.omega21 + adjoint(self.omega12)).max_abs()


def connection_form(g_path: Callable[[float], QuatMatrix], t: float, step: float = CONNECTION_STEP) -> QuatMatrix:
    """g(t)* (g(t + h) - g(t - h)) / 2h"""
    derivative = (g_path(t + step) - g_path(t - step)) * (0.5 / step)
    return adjoint(g_path(t)) @ derivative


def _split(w: QuatMatrix, j: int) -> Tuple[QuatMatrix, QuatMatrix, QuatMatrix, QuatMatrix]:
    if not 0 < j < w.rows:
        raise DimensionMismatch(f"Разбиение j={j} не подходит для матрицы {w.shape}")
    return w.split(j)


def connection_blocks(
    g_path: Callable[[float], QuatMatrix],
    t: float,
    j: int,
    step: float = CONNECTION_STEP,
) -> ConnectionBlocks:
    """Блоки w11, w12, w21, w22 формы g* dg в направлении пути"""
    return ConnectionBlocks(*_split(connection_form(g_path, t, step), j))


def maurer_cartan_residual(
    g_family: Callable[[float, float], QuatMatrix],
    s: float,
    t: float,
    j: int,
    step: float = MAURER_CARTAN_STEP,
) -> Dict[str, float]:
    """
    Поблочная невязка dw + w ^ w = 0 для двухпараметрического семейства

    d_s w_t - d_t w_s + [w_s, w_t] вычисляется центральными разностями.
    """
    def omega_s(a: float, b: float) -> QuatMatrix:
        return connection_form(lambda x: g_family(x, b), a, step)

    def omega_t(a: float, b: float) -> QuatMatrix:
        return connection_form(lambda y: g_family(a, y), b, step)

    d_s_omega_t = (omega_t(s + step, t) - omega_t(s - step, t)) * (0.5 / step)
    d_t_omega_s = (omega_s(s, t + step) - omega_s(s, t - step)) * (0.5 / step)
    ws, wt = omega_s(s, t), omega_t(s, t)
    residual = d_s_omega_t - d_t_omega_s + ws @ wt - wt @ ws
    blocks = _split(residual, j)
    return {name: block.max_abs() for name, block in zip(("11", "12", "21", "22"), blocks)}


# ---------------------------------------------------------------------------
# кривизна

@dataclass
class CurvaturePair:
    """Omega11, Omega22 и следовые формы R11, R22 на паре направлений"""
    omega11: QuatMatrix
    omega22: QuatMatrix
    r11: Quaternion
    r22: Quaternion


def _independent(v1: QuatMatrix, v2: QuatMatrix) -> bool:
    stacked = np.vstack([v1.data.ravel(), v2.data.ravel()])
    return np.linalg.matrix_rank(stacked, tol=1e-12 * max(1.0, float(np.abs(stacked).max()))) == 2


def omega12(Y: GrassmannPoint, dY: QuatMatrix) -> QuatMatrix:
    """w12 = A* dY D для сечения с A = (1 + YY*)^(-1/2), D = (1 + Y*Y)^(-1/2)"""
    y = Y.X
    a = func_hermitian(QuatMatrix.identity(y.rows) + y @ adjoint(y), "invsqrt")
    d = func_hermitian(QuatMatrix.identity(y.cols) + adjoint(y) @ y, "invsqrt")
    return adjoint(a) @ dY @ d


def curvature_blocks(Y: GrassmannPoint, dY1: QuatMatrix, dY2: QuatMatrix, strict: bool = True) -> CurvaturePair:
    """
    Omega11 = w12 ^ w12*, Omega22 = w12* ^ w12 и R11, R22 на паре (dY1, dY2)

    Raises:
        ShapeMismatch: если направления не совпадают по форме с точкой
        DependentDirections: если strict и направления линейно зависимы
    """
    for v in (dY1, dY2):
        if v.shape != Y.dims:
            raise ShapeMismatch(f"Направление {v.shape} не совпадает с точкой {Y.dims}")
    if not _independent(dY1, dY2):
        if strict:
            raise DependentDirections("Направления dY1 и dY2 линейно зависимы")
        logger.warning("Направления dY1 и dY2 линейно зависимы, кривизна на них нулевая")

    w1, w2 = omega12(Y, dY1), omega12(Y, dY2)
    omega11 = w1 @ adjoint(w2) - w2 @ adjoint(w1)
    omega22 = adjoint(w1) @ w2 - adjoint(w2) @ w1

    y = Y.X
    da = inverse(QuatMatrix.identity(y.rows) + y @ adjoint(y))
    db = inverse(QuatMatrix.identity(y.cols) + adjoint(y) @ y)
    r11 = (dY1 @ db @ adjoint(dY2) @ da - dY2 @ db @ adjoint(dY1) @ da).trace()
    r22 = (adjoint(dY1) @ da @ dY2 @ db - adjoint(dY2) @ da @ dY1 @ db).trace()
    return CurvaturePair(omega11=omega11, omega22=omega22, r11=r11, r22=r22)
