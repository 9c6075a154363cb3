"""
Эволюция состояния Psi(t) = exp(t g) Psi(0)

Время t здесь галилеево (глобальный параметр эволюции); циклические времена
живут внутри кватернионных компонент и не интегрируются.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np
from loguru import logger

from .errors import DimensionMismatch, NotSkewAdjoint, NotUnitQuaternion, PartitionMismatch
from .quaternion import Quaternion, conj, norm_sq
from .quatmat import GroupElement, QuatMatrix, adjoint, as_group_element, exp, is_skew_adjoint

SKEW_TOL = 1e-10
UNIT_TOL = 1e-12


@dataclass(frozen=True)
class StateVector:
    """Столбец n x 1 кватернионов; первые k компонент относятся к системе, остальные к окружению"""
    components: QuatMatrix
    k: int

    def __post_init__(self):
        if self.components.cols != 1:
            raise DimensionMismatch(f"Состояние должно быть столбцом, получено {self.components.shape}")
        if not 0 <= self.k <= self.components.rows:
            raise PartitionMismatch(f"Разбиение k={self.k} вне 0..{self.components.rows}")

    @classmethod
    def from_quaternions(cls, values: Sequence[Quaternion], k: int) -> "StateVector":
        return cls(QuatMatrix.from_rows([[q] for q in values]), k)

    @property
    def n(self) -> int:
        return self.components.rows

    @property
    def system(self) -> QuatMatrix:
        return self.components.block(0, self.k, 0, 1)

    @property
    def surroundings(self) -> QuatMatrix:
        return self.components.block(self.k, self.n, 0, 1)

    def norm_sq(self) -> float:
        return _norm_sq(self.components)

    def system_norm_sq(self) -> float:
        return _norm_sq(self.system)

    def surroundings_norm_sq(self) -> float:
        return _norm_sq(self.surroundings)


def _norm_sq(v: QuatMatrix) -> float:
    return float(np.sum(v.data ** 2))


def random_state(rng: np.random.Generator, n: int, k: int) -> StateVector:
    return StateVector(QuatMatrix(rng.standard_normal((n, 1, 4))), k)


def check_generator(gen: QuatMatrix, tol: float = SKEW_TOL) -> None:
    """
    Raises:
        NotSkewAdjoint: если gen* != -gen
    """
    if not is_skew_adjoint(gen, tol):
        residual = (gen + adjoint(gen)).max_abs() if gen.is_square else float("nan")
        raise NotSkewAdjoint(f"Генератор {gen.shape} не антиэрмитов: |g + g*| = {residual:.3e}")


def propagator(gen: QuatMatrix, t: float) -> QuatMatrix:
    """exp(t g)"""
    check_generator(gen)
    return exp(gen * float(t))


def evolve(gen: QuatMatrix, psi0: StateVector, t: float) -> StateVector:
    """
    Psi(t) = exp(t g) Psi(0)

    Raises:
        NotSkewAdjoint: если g не принадлежит sp(n)
        DimensionMismatch: если размер g не совпадает с размером состояния
    """
    if gen.rows != psi0.n:
        raise DimensionMismatch(f"Генератор {gen.shape} не действует на состояние длины {psi0.n}")
    return StateVector(propagator(gen, t) @ psi0.components, psi0.k)


def norm_drift(gen: QuatMatrix, psi0: StateVector, t_max: float = 10.0, steps: int = 100) -> float:
    """max |norm_sq(Psi(t)) - norm_sq(Psi(0))| на сетке [0, t_max]"""
    start = psi0.norm_sq()
    return max(abs(evolve(gen, psi0, t).norm_sq() - start) for t in np.linspace(0.0, t_max, steps + 1))


def cocycle_check(gen: QuatMatrix, t: float, t0: float) -> float:
    """max |exp(t g) - exp((t - t0) g) exp(t0 g)|"""
    return propagator(gen, t).distance(propagator(gen, t - t0) @ propagator(gen, t0))


def time_reversal_check(gen: QuatMatrix, t: float) -> float:
    """max |exp(t g) - exp(-t g*)|"""
    check_generator(gen)
    return exp(gen * float(t)).distance(exp(adjoint(gen) * float(-t)))


# ---------------------------------------------------------------------------
# геодезические

def geodesic_generator(u: Quaternion) -> QuatMatrix:
    """[[0, u], [-u*, 0]]"""
    return QuatMatrix.from_rows([[Quaternion(), u], [-conj(u), Quaternion()]])


def geodesic_block(u: Quaternion, omega: float, t: float) -> GroupElement:
    """
    [[cos(wt), sin(wt) u], [-sin(wt) u*, cos(wt)]]

    Raises:
        NotUnitQuaternion: если |u|^2 != 1
    """
    if abs(norm_sq(u) - 1.0) > UNIT_TOL:
        raise NotUnitQuaternion(f"|u|^2 = {norm_sq(u):.15f}")
    phase = omega * t
    c, s = math.cos(phase), math.sin(phase)
    block = QuatMatrix.from_rows([[Quaternion(c), u * s], [-conj(u) * s, Quaternion(c)]])
    return as_group_element(block)


def geodesic_exp_residual(u: Quaternion, omega: float, t: float) -> float:
    """max |geodesic_block - exp(wt [[0, u], [-u*, 0]])|"""
    return geodesic_block(u, omega, t).distance(exp(geodesic_generator(u) * (omega * t)))


# ---------------------------------------------------------------------------
# переходы между системой и окружением

@dataclass
class TransitionSplit:
    """
    g Psi = [h_v v - p V; p* v + h_V V]

    exchange_in действует на систему, exchange_out на окружение.
    """
    system_rotation: QuatMatrix
    surroundings_rotation: QuatMatrix
    exchange_in: QuatMatrix
    exchange_out: QuatMatrix

    def reconstruct(self) -> QuatMatrix:
        return QuatMatrix.from_blocks([
            [self.system_rotation + self.exchange_in],
            [self.exchange_out + self.surroundings_rotation],
        ])

    def magnitudes(self) -> Dict[str, float]:
        return {
            "system_rotation": math.sqrt(_norm_sq(self.system_rotation)),
            "surroundings_rotation": math.sqrt(_norm_sq(self.surroundings_rotation)),
            "exchange_in": math.sqrt(_norm_sq(self.exchange_in)),
            "exchange_out": math.sqrt(_norm_sq(self.exchange_out)),
        }


def generator_blocks(gen: QuatMatrix, k: int) -> Tuple[QuatMatrix, QuatMatrix, QuatMatrix, QuatMatrix]:
    """
    (h_v, h_V, p, p*) для g = [[h_v, -p], [p*, h_V]]

    Raises:
        PartitionMismatch: если разбиение k не согласовано с g
    """
    if not gen.is_square or not 0 < k < gen.rows:
        raise PartitionMismatch(f"Разбиение k={k} не подходит для генератора {gen.shape}")
    a, b, c, d = gen.split(k)
    return a, d, -b, c


def transition_split(gen: QuatMatrix, psi: StateVector) -> TransitionSplit:
    """
    Четыре слагаемых g Psi: h_v v, h_V V, -p V, p* v

    Raises:
        PartitionMismatch: если g не согласован с разбиением состояния
    """
    if gen.rows != psi.n:
        raise PartitionMismatch(f"Генератор {gen.shape} и состояние длины {psi.n} не согласованы")
    h_v, h_V, p, p_star = generator_blocks(gen, psi.k)
    v, V = psi.system, psi.surroundings
    return TransitionSplit(
        system_rotation=h_v @ v,
        surroundings_rotation=h_V @ V,
        exchange_in=-(p @ V),
        exchange_out=p_star @ v,
    )


def casimir_value(gen: QuatMatrix, k: int) -> Tuple[float, float]:
    """
    Re tr(h_v h_v* + p p*) + Re tr(h_V h_V* + p* p) и -Re tr(g^2)

    Для антиэрмитова g оба значения совпадают.
    """
    h_v, h_V, p, _ = generator_blocks(gen, k)
    blocks = (h_v @ adjoint(h_v) + p @ adjoint(p)).trace().w + (h_V @ adjoint(h_V) + adjoint(p) @ p).trace().w
    return float(blocks), float(-(gen @ gen).trace().w)


def trajectory(
    gen: QuatMatrix,
    psi0: StateVector,
    times: Sequence[float],
    workers: int = 1,
) -> List[Dict[str, float]]:
    """
    Строки t, нормы и величины обменных членов вдоль эволюции

    Точки по t независимы и при workers > 1 считаются параллельно; порядок строк сохраняется.
    """
    check_generator(gen)

    def row(t: float) -> Dict[str, float]:
        psi = evolve(gen, psi0, t)
        split = transition_split(gen, psi).magnitudes() if 0 < psi.k < psi.n else {}
        return {
            "t": float(t),
            "norm_sq": psi.norm_sq(),
            "system_norm_sq": psi.system_norm_sq(),
            "surroundings_norm_sq": psi.surroundings_norm_sq(),
            "exchange_in": split.get("exchange_in", 0.0),
            "exchange_out": split.get("exchange_out", 0.0),
        }

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, times))
    else:
        rows = [row(t) for t in times]
    logger.debug(f"Траектория: {len(rows)} точек, n={psi0.n}, k={psi0.k}")
    return rows
