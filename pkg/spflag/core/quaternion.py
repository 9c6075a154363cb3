"""
Кватернионы: арифметика, сопряжение, норма и представление m(C^2)

Базис e, i, j, k хранится в порядке компонент (w, x, y, z).
Функции с суффиксом _array работают с массивами формы (..., 4).
"""
from dataclasses import dataclass
from typing import Iterable, Tuple

import numpy as np

from .errors import MalformedM2C


def _structure_constants() -> np.ndarray:
    """Тензор C[a, b, c]: коэффициент при e_c в произведении e_a e_b"""
    table = {
        (1, 1): (0, -1.0), (2, 2): (0, -1.0), (3, 3): (0, -1.0),
        (1, 2): (3, 1.0), (2, 1): (3, -1.0),
        (2, 3): (1, 1.0), (3, 2): (1, -1.0),
        (3, 1): (2, 1.0), (1, 3): (2, -1.0),
    }
    c = np.zeros((4, 4, 4))
    for a in range(4):
        c[0, a, a] = 1.0
        c[a, 0, a] = 1.0
    for (a, b), (target, sign) in table.items():
        c[a, b, target] = sign
    return c


STRUCTURE = _structure_constants()
_CONJ = np.array([1.0, -1.0, -1.0, -1.0])


def qmul_array(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Поэлементное кватернионное произведение массивов (..., 4)"""
    return np.einsum("...a,...b,abc->...c", a, b, STRUCTURE)


def qconj_array(a: np.ndarray) -> np.ndarray:
    """Кватернионное сопряжение массива (..., 4)"""
    return np.asarray(a, dtype=float) * _CONJ


def to_m2c_array(a: np.ndarray) -> np.ndarray:
    """Образ массива кватернионов в m(C^2), форма (..., 2, 2)"""
    a = np.asarray(a, dtype=float)
    w, x, y, z = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    out = np.empty(a.shape[:-1] + (2, 2), dtype=complex)
    out[..., 0, 0] = w + 1j * z
    out[..., 0, 1] = x + 1j * y
    out[..., 1, 0] = -x + 1j * y
    out[..., 1, 1] = w - 1j * z
    return out


def m2c_residual_array(m: np.ndarray) -> np.ndarray:
    """Отклонение блоков (..., 2, 2) от кватернионной структуры"""
    r1 = np.abs(m[..., 1, 1] - np.conj(m[..., 0, 0]))
    r2 = np.abs(m[..., 1, 0] + np.conj(m[..., 0, 1]))
    return np.maximum(r1, r2)


def from_m2c_array(m: np.ndarray) -> np.ndarray:
    """Проекция блоков (..., 2, 2) на кватернионы без проверки структуры"""
    m = np.asarray(m, dtype=complex)
    out = np.empty(m.shape[:-2] + (4,))
    out[..., 0] = 0.5 * (m[..., 0, 0] + m[..., 1, 1]).real
    out[..., 1] = 0.5 * (m[..., 0, 1] - m[..., 1, 0]).real
    out[..., 2] = 0.5 * (m[..., 0, 1] + m[..., 1, 0]).imag
    out[..., 3] = 0.5 * (m[..., 0, 0] - m[..., 1, 1]).imag
    return out


@dataclass(frozen=True)
class Quaternion:
    """Кватернион w e + x i + y j + z k"""
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_array(cls, a: Iterable[float]) -> "Quaternion":
        w, x, y, z = (float(v) for v in a)
        return cls(w, x, y, z)

    def as_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    @property
    def scalar(self) -> float:
        return self.w

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __add__(self, other: "Quaternion") -> "Quaternion":
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Quaternion") -> "Quaternion":
        if not isinstance(other, Quaternion):
            return NotImplemented
        return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return mul(self, other)
        if isinstance(other, (int, float, np.floating)):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float, np.floating)):
            return self * other
        return NotImplemented

    def conj(self) -> "Quaternion":
        return conj(self)

    def norm_sq(self) -> float:
        return norm_sq(self)


E = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)
BASIS: Tuple[Quaternion, ...] = (E, I, J, K)

# almost-complex структура j в m(C^2)
JMAT = np.array([[0.0, 1.0], [-1.0, 0.0]], dtype=complex)


def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Произведение кватернионов (некоммутативное)"""
    return Quaternion.from_array(qmul_array(a.as_array(), b.as_array()))


def conj(q: Quaternion) -> Quaternion:
    """Сопряженный кватернион w e - x i - y j - z k"""
    return Quaternion(q.w, -q.x, -q.y, -q.z)


def norm_sq(q: Quaternion) -> float:
    """Квадрат нормы |q|^2"""
    return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z


def to_m2c(q: Quaternion) -> np.ndarray:
    """Образ кватерниона в m(C^2): [[w+iz, x+iy], [-(x-iy), w-iz]]"""
    return to_m2c_array(q.as_array())


def from_m2c(m: np.ndarray, tol: float = 1e-12) -> Quaternion:
    """
    Обратное отображение из m(C^2)

    Raises:
        MalformedM2C: если нарушены соотношения r22 = conj(r11), r21 = -conj(r12)
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise MalformedM2C(f"Ожидалась матрица 2x2, получено {m.shape}")
    residual = float(m2c_residual_array(m))
    if residual > tol * max(1.0, float(np.abs(m).max())):
        raise MalformedM2C(f"Нарушена кватернионная структура: невязка {residual:.3e}")
    return Quaternion.from_array(from_m2c_array(m))


def j_conjugate(m: np.ndarray) -> np.ndarray:
    """Преобразование j' m j, переводящее образ q в комплексно сопряженный"""
    return JMAT.T @ np.asarray(m, dtype=complex) @ JMAT


def random_quaternion(rng: np.random.Generator, scale: float = 1.0) -> Quaternion:
    """Случайный кватернион с нормальными компонентами"""
    return Quaternion.from_array(scale * rng.standard_normal(4))


def random_unit_array(rng: np.random.Generator, size: Tuple[int, ...] = ()) -> np.ndarray:
    """Равномерная выборка на S^3 через нормированные гауссовы векторы"""
    g = rng.standard_normal(tuple(size) + (4,))
    return g / np.linalg.norm(g, axis=-1, keepdims=True)
