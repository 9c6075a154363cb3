"""
Кватернионные матрицы: сопряжение, комплексное вложение, матричные функции,
проверка принадлежности Sp(n) и перестановка в Sp(2n, C)

Вся спектральная работа идет через эрмитово комплексное вложение размера 2n x 2n.
"""
from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from .errors import (
    DimensionMismatch,
    DomainError,
    MalformedM2C,
    NonSquare,
    NotGroupElement,
    NotHyperHermitian,
    PairingFailure,
    SingularDenominator,
    SingularInvSqrt,
)
from .quaternion import (
    Quaternion,
    from_m2c_array,
    m2c_residual_array,
    qconj_array,
    qmul_array,
    to_m2c_array,
    STRUCTURE,
)

EXP_SERIES_ORDER = 18
EXP_SCALE_TARGET = 0.5
PAIRING_RTOL = 1e-8
STRUCTURE_TOL = 1e-9
CONDITION_LIMIT = 1e12


class QuatMatrix:
    """Плотная прямоугольная матрица кватернионов, хранение (rows, cols, 4)"""

    __slots__ = ("data",)
    __array_ufunc__ = None

    def __init__(self, data: np.ndarray):
        data = np.array(data, dtype=float)
        if data.ndim != 3 or data.shape[-1] != 4:
            raise DimensionMismatch(f"Ожидался массив (rows, cols, 4), получено {data.shape}")
        self.data = data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QuatMatrix":
        return cls(np.zeros((rows, cols, 4)))

    @classmethod
    def identity(cls, n: int) -> "QuatMatrix":
        data = np.zeros((n, n, 4))
        data[np.arange(n), np.arange(n), 0] = 1.0
        return cls(data)

    @classmethod
    def scalar(cls, q: Quaternion) -> "QuatMatrix":
        """Матрица 1x1"""
        return cls(q.as_array().reshape(1, 1, 4))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Quaternion]]) -> "QuatMatrix":
        return cls(np.array([[q.as_array() for q in row] for row in rows]))

    @classmethod
    def from_real(cls, a: np.ndarray) -> "QuatMatrix":
        """Вещественная матрица как кватернионная (только компонента e)"""
        a = np.asarray(a, dtype=float)
        data = np.zeros(a.shape + (4,))
        data[..., 0] = a
        return cls(data)

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence["QuatMatrix"]]) -> "QuatMatrix":
        return cls(np.concatenate(
            [np.concatenate([b.data for b in row], axis=1) for row in blocks], axis=0
        ))

    @classmethod
    def from_embedding(cls, m: np.ndarray, tol: float = STRUCTURE_TOL) -> "QuatMatrix":
        """
        Проекция комплексной матрицы 2r x 2c обратно в кватернионы

        Raises:
            MalformedM2C: если блоки 2x2 не имеют кватернионной структуры
        """
        m = np.asarray(m, dtype=complex)
        if m.ndim != 2 or m.shape[0] % 2 or m.shape[1] % 2:
            raise DimensionMismatch(f"Вложение должно иметь четные размеры, получено {m.shape}")
        r, c = m.shape[0] // 2, m.shape[1] // 2
        blocks = m.reshape(r, 2, c, 2).transpose(0, 2, 1, 3)
        residual = float(m2c_residual_array(blocks).max()) if blocks.size else 0.0
        scale = max(1.0, float(np.abs(m).max())) if m.size else 1.0
        if residual > tol * scale:
            raise MalformedM2C(f"Невязка кватернионной структуры {residual:.3e}")
        return cls(from_m2c_array(blocks))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape[0], self.data.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, r: int, c: int) -> Quaternion:
        return Quaternion.from_array(self.data[r, c])

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "QuatMatrix":
        return QuatMatrix(self.data[r0:r1, c0:c1])

    def split(self, j: int) -> Tuple["QuatMatrix", "QuatMatrix", "QuatMatrix", "QuatMatrix"]:
        """Блоки A (j x j), B, C, D квадратной матрицы"""
        n = self.rows
        return (self.block(0, j, 0, j), self.block(0, j, j, n),
                self.block(j, n, 0, j), self.block(j, n, j, n))

    def adjoint(self) -> "QuatMatrix":
        return adjoint(self)

    def embed(self) -> np.ndarray:
        """Комплексное вложение: каждый элемент заменяется блоком m(C^2)"""
        r, c = self.shape
        return to_m2c_array(self.data).transpose(0, 2, 1, 3).reshape(2 * r, 2 * c)

    def trace(self) -> Quaternion:
        """Кватернионный след"""
        if not self.is_square:
            raise NonSquare(f"След определен для квадратных матриц, получено {self.shape}")
        return Quaternion.from_array(np.einsum("iic->c", self.data))

    def complex_trace(self) -> float:
        """След комплексного вложения, равный 2 Re tr"""
        return 2.0 * self.trace().w

    def norm1(self) -> float:
        """1-норма комплексного вложения"""
        return float(np.abs(self.embed()).sum(axis=0).max()) if self.data.size else 0.0

    def max_abs(self) -> float:
        return float(np.abs(self.data).max()) if self.data.size else 0.0

    def __matmul__(self, other: "QuatMatrix") -> "QuatMatrix":
        return matmul(self, other)

    def __add__(self, other: "QuatMatrix") -> "QuatMatrix":
        _check_same_shape(self, other)
        return QuatMatrix(self.data + other.data)

    def __sub__(self, other: "QuatMatrix") -> "QuatMatrix":
        _check_same_shape(self, other)
        return QuatMatrix(self.data - other.data)

    def __neg__(self) -> "QuatMatrix":
        return QuatMatrix(-self.data)

    def __mul__(self, other) -> "QuatMatrix":
        if isinstance(other, (int, float, np.floating)):
            return QuatMatrix(self.data * float(other))
        return NotImplemented

    __rmul__ = __mul__

    def left_scale(self, q: Quaternion) -> "QuatMatrix":
        """Умножение всех элементов на кватернион слева"""
        return QuatMatrix(qmul_array(np.broadcast_to(q.as_array(), self.data.shape), self.data))

    def right_scale(self, q: Quaternion) -> "QuatMatrix":
        """Умножение всех элементов на кватернион справа"""
        return QuatMatrix(qmul_array(self.data, np.broadcast_to(q.as_array(), self.data.shape)))

    def allclose(self, other: "QuatMatrix", atol: float) -> bool:
        return self.shape == other.shape and bool(np.all(np.abs(self.data - other.data) <= atol))

    def distance(self, other: "QuatMatrix") -> float:
        """Максимальное поэлементное отклонение"""
        _check_same_shape(self, other)
        return float(np.abs(self.data - other.data).max()) if self.data.size else 0.0

    def __repr__(self) -> str:
        return f"QuatMatrix({self.rows}x{self.cols})"


class GroupElement(QuatMatrix):
    """Элемент Sp(n): квадратная матрица с g* g = 1"""

    __slots__ = ()


def _check_same_shape(a: QuatMatrix, b: QuatMatrix) -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"Размеры не совпадают: {a.shape} и {b.shape}")


def matmul(a: QuatMatrix, b: QuatMatrix) -> QuatMatrix:
    """Матричное произведение с сохранением порядка кватернионных множителей"""
    if a.cols != b.rows:
        raise DimensionMismatch(f"Нельзя умножить {a.shape} на {b.shape}")
    return QuatMatrix(np.einsum("ika,kjb,abc->ijc", a.data, b.data, STRUCTURE))


def adjoint(m: QuatMatrix) -> QuatMatrix:
    """Сопряженно-транспонированная матрица"""
    return QuatMatrix(qconj_array(m.data.transpose(1, 0, 2)))


def is_skew_adjoint(m: QuatMatrix, tol: float = 1e-10) -> bool:
    return m.is_square and (m + adjoint(m)).max_abs() <= tol * max(1.0, m.max_abs())


def group_residual(g: QuatMatrix) -> float:
    """max |g* g - 1|"""
    if not g.is_square:
        raise NonSquare(f"Ожидалась квадратная матрица, получено {g.shape}")
    return (adjoint(g) @ g).distance(QuatMatrix.identity(g.rows))


def as_group_element(g: QuatMatrix, tol: float = 1e-10) -> GroupElement:
    """
    Проверяет g* g = 1 и возвращает GroupElement

    Raises:
        NotGroupElement: если невязка больше tol
    """
    if isinstance(g, GroupElement):
        return g
    if not g.is_square:
        raise NotGroupElement(f"Элемент группы должен быть квадратным, получено {g.shape}")
    residual = group_residual(g)
    if residual > tol:
        raise NotGroupElement(f"g* g отличается от единицы на {residual:.3e}")
    return GroupElement(g.data)


def expm_embedding(m: np.ndarray) -> np.ndarray:
    """Экспонента комплексной матрицы: масштабирование и возведение в квадрат"""
    norm = float(np.abs(m).sum(axis=0).max()) if m.size else 0.0
    squarings = 0
    while norm >= EXP_SCALE_TARGET:
        norm /= 2.0
        squarings += 1
    scaled = m / (2.0 ** squarings)
    eye = np.eye(m.shape[0], dtype=complex)
    # схема Горнера для ряда порядка EXP_SERIES_ORDER
    result = eye.copy()
    for order in range(EXP_SERIES_ORDER, 0, -1):
        result = eye + (scaled @ result) / order
    for _ in range(squarings):
        result = result @ result
    return result


def exp(m: QuatMatrix) -> QuatMatrix:
    """
    Матричная экспонента

    Для антиэрмитовой m результат удовлетворяет g* g = 1.

    Raises:
        NonSquare: если m не квадратная
    """
    if not m.is_square:
        raise NonSquare(f"Экспонента определена для квадратных матриц, получено {m.shape}")
    return QuatMatrix.from_embedding(expm_embedding(m.embed()))


def hermitian_embedding(p: QuatMatrix, tol: float = 1e-10) -> np.ndarray:
    """Эрмитово вложение гиперэрмитовой матрицы"""
    if not p.is_square:
        raise NotHyperHermitian(f"Ожидалась квадратная матрица, получено {p.shape}")
    deviation = p.distance(adjoint(p))
    if deviation > tol * max(1.0, p.max_abs()):
        raise NotHyperHermitian(f"P* - P = {deviation:.3e}")
    e = p.embed()
    return 0.5 * (e + e.conj().T)


def eigvals_hyperhermitian(p: QuatMatrix, tol: float = 1e-10) -> np.ndarray:
    """
    Вещественные собственные значения гиперэрмитовой матрицы n x n

    Каждое значение встречается во вложении дважды; пары усредняются.

    Raises:
        NotHyperHermitian: если P* != P
        PairingFailure: если спектр вложения не разбивается на пары
    """
    values = scipy.linalg.eigvalsh(hermitian_embedding(p, tol))
    first, second = values[0::2], values[1::2]
    scale = max(1.0, float(np.abs(values).max())) if values.size else 1.0
    gap = float(np.abs(first - second).max()) if values.size else 0.0
    if gap > PAIRING_RTOL * scale:
        raise PairingFailure(f"Собственные значения не образуют пары: разрыв {gap:.3e}")
    return 0.5 * (first + second)


def _sinc_sqrt(lam: np.ndarray) -> np.ndarray:
    root = np.sqrt(lam)
    return np.sinc(root / np.pi)


SPECTRAL_FUNCTIONS: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "sin_sqrt": lambda lam: np.sin(np.sqrt(lam)),
    "sinc_sqrt": _sinc_sqrt,
    "cos_sqrt": lambda lam: np.cos(np.sqrt(lam)),
    "sqrt": np.sqrt,
    "invsqrt": lambda lam: 1.0 / np.sqrt(lam),
}


def func_hermitian(p: QuatMatrix, tag: str, tol: float = 1e-10) -> QuatMatrix:
    """
    Применяет скалярную функцию к гиперэрмитовой матрице

    Args:
        p: гиперэрмитова матрица
        tag: одно из sin_sqrt, sinc_sqrt, cos_sqrt, sqrt, invsqrt

    Raises:
        NotHyperHermitian: если P* != P
        SingularInvSqrt: если для invsqrt есть собственные значения <= tol
    """
    if tag not in SPECTRAL_FUNCTIONS:
        raise DomainError(f"Неизвестная функция '{tag}'")
    values, vectors = scipy.linalg.eigh(hermitian_embedding(p, tol))
    if tag == "invsqrt" and values.min() <= tol:
        raise SingularInvSqrt(f"Минимальное собственное значение {values.min():.3e}")
    if tag != "invsqrt":
        # sqrt-функции определены на неотрицательной полуоси
        values = np.where(values < 0.0, 0.0, values)
    mapped = (vectors * SPECTRAL_FUNCTIONS[tag](values)) @ vectors.conj().T
    return QuatMatrix.from_embedding(mapped)


def inverse(m: QuatMatrix) -> QuatMatrix:
    """
    Обратная матрица через комплексное вложение

    Raises:
        NonSquare: если m не квадратная
        SingularDenominator: при числе обусловленности выше 1e12
            или нарушенной кватернионной структуре результата
    """
    if not m.is_square:
        raise NonSquare(f"Обращение требует квадратной матрицы, получено {m.shape}")
    e = m.embed()
    cond = np.linalg.cond(e)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularDenominator(f"Число обусловленности {cond:.3e}")
    inv = scipy.linalg.solve(e, np.eye(e.shape[0], dtype=complex))
    try:
        return QuatMatrix.from_embedding(inv, tol=STRUCTURE_TOL)
    except MalformedM2C as exc:
        raise SingularDenominator(f"Обратная матрица потеряла кватернионную структуру: {exc}")


def det_hyperhermitian(p: QuatMatrix, tol: float = 1e-10) -> float:
    """Определитель как произведение парных собственных значений"""
    return float(np.prod(eigvals_hyperhermitian(p, tol)))


def block_diag(*blocks: QuatMatrix) -> QuatMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = np.zeros((rows, cols, 4))
    r = c = 0
    for b in blocks:
        data[r:r + b.rows, c:c + b.cols] = b.data
        r += b.rows
        c += b.cols
    return QuatMatrix(data)


def sp2nc_permutation(n: int) -> np.ndarray:
    """Перестановка, переводящая 1_n (x) j в j (x) 1_n"""
    return np.concatenate([np.arange(0, 2 * n, 2), np.arange(1, 2 * n, 2)])


def symplectic_form(n: int) -> np.ndarray:
    """j (x) 1_n = [[0, 1], [-1, 0]] поблочно"""
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]]).astype(complex)


def permute_embedding(m: QuatMatrix) -> np.ndarray:
    perm = sp2nc_permutation(m.rows)
    return m.embed()[np.ix_(perm, perm)]


def to_sp2nc(g: QuatMatrix, tol: float = 1e-10) -> np.ndarray:
    """
    Представление элемента Sp(n) комплексной матрицей из Sp(2n, C) и U(2n)

    Raises:
        NotGroupElement: если g* g != 1
    """
    g = as_group_element(g, tol)
    return permute_embedding(g)


def sp2nc_residuals(big_g: np.ndarray) -> Tuple[float, float]:
    """Невязки условий G' J G = J и G* G = 1"""
    n = big_g.shape[0] // 2
    form = symplectic_form(n)
    symplectic = float(np.abs(big_g.T @ form @ big_g - form).max())
    unitary = float(np.abs(big_g.conj().T @ big_g - np.eye(2 * n)).max())
    return symplectic, unitary


def sp2nc_algebra_blocks(gen: QuatMatrix) -> Dict[str, float]:
    """
    Блочная структура алгебры [[a, b], [-b*, -a']] после перестановки

    Returns:
        Невязки: a* = -a, b' = b и совпадение нижних блоков
    """
    n = gen.rows
    big = permute_embedding(gen)
    a, b = big[:n, :n], big[:n, n:]
    c, d = big[n:, :n], big[n:, n:]
    return {
        "a_skew": float(np.abs(a.conj().T + a).max()),
        "b_symmetric": float(np.abs(b.T - b).max()),
        "lower_left": float(np.abs(c + b.conj().T).max()),
        "lower_right": float(np.abs(d + a.T).max()),
    }


def random_quatmatrix(rng: np.random.Generator, rows: int, cols: int, scale: float = 1.0) -> QuatMatrix:
    return QuatMatrix(scale * rng.standard_normal((rows, cols, 4)))


def random_skew(rng: np.random.Generator, n: int, scale: float = 1.0) -> QuatMatrix:
    """Случайный элемент алгебры sp(n): M - M*"""
    m = random_quatmatrix(rng, n, n, scale)
    return QuatMatrix(0.5 * (m - adjoint(m)).data)


def random_group_element(rng: np.random.Generator, n: int, scale: float = 1.0) -> GroupElement:
    return as_group_element(exp(random_skew(rng, n, scale)))


def random_hermitian_psd(rng: np.random.Generator, n: int, rank: Optional[int] = None) -> QuatMatrix:
    """Случайная неотрицательная гиперэрмитова матрица Q Q*"""
    q = random_quatmatrix(rng, n, rank or n)
    return QuatMatrix(0.5 * ((q @ adjoint(q)) + adjoint(q @ adjoint(q))).data)
