"""
Геометрия смежных классов Sp(j+k)/Sp(j)xSp(k)

Параметризация через экспоненту алгебры, дробно-линейное действие на
грассмановых координатах, проективные инварианты, инвариантная метрика,
след и определитель метрического тензора, усреднение по Хаару.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from loguru import logger

from .errors import (
    DegenerateQuadruple,
    DimensionMismatch,
    DomainError,
    NonSquare,
    PairingFailure,
    ShapeMismatch,
    SingularDenominator,
)
from .quaternion import qmul_array, random_unit_array
from .quatmat import (
    GroupElement,
    QuatMatrix,
    adjoint,
    as_group_element,
    eigvals_hyperhermitian,
    func_hermitian,
    inverse,
)

PUSHFORWARD_STEP = 1e-6
DET_RTOL = 1e-8


@dataclass(frozen=True)
class GrassmannPoint:
    """Неоднородные координаты X (j x k) на грассманиане"""
    X: QuatMatrix

    @property
    def dims(self) -> Tuple[int, int]:
        return self.X.shape


@dataclass(frozen=True)
class CosetParam:
    """Параметр xi (j x k) элемента смежного класса exp([[0, xi], [-xi*, 0]])"""
    xi: QuatMatrix

    @property
    def Z(self) -> QuatMatrix:
        """Z = sin(sqrt(xi xi*)) / sqrt(xi xi*) xi"""
        return func_hermitian(self.xi @ adjoint(self.xi), "sinc_sqrt") @ self.xi

    def group_element(self) -> GroupElement:
        return coset_element(self.xi)

    def grassmann_point(self) -> GrassmannPoint:
        """X = Z (1 - Z*Z)^(-1/2)"""
        z = self.Z
        one = QuatMatrix.identity(z.cols)
        return GrassmannPoint(z @ func_hermitian(one - adjoint(z) @ z, "invsqrt"))

    def grassmann_point_left(self) -> GrassmannPoint:
        """X = (1 - ZZ*)^(-1/2) Z"""
        z = self.Z
        one = QuatMatrix.identity(z.rows)
        return GrassmannPoint(func_hermitian(one - z @ adjoint(z), "invsqrt") @ z)


def skew_block(xi: QuatMatrix) -> QuatMatrix:
    """Элемент алгебры [[0, xi], [-xi*, 0]]"""
    j, k = xi.shape
    return QuatMatrix.from_blocks([
        [QuatMatrix.zeros(j, j), xi],
        [-adjoint(xi), QuatMatrix.zeros(k, k)],
    ])


def coset_element(xi: QuatMatrix) -> GroupElement:
    """
    Элемент группы [[cos sqrt(xi xi*), Z], [-Z*, cos sqrt(xi* xi)]]

    Совпадает с exp(skew_block(xi)).
    """
    left = xi @ adjoint(xi)
    right = adjoint(xi) @ xi
    z = func_hermitian(left, "sinc_sqrt") @ xi
    g = QuatMatrix.from_blocks([
        [func_hermitian(left, "cos_sqrt"), z],
        [-adjoint(z), func_hermitian(right, "cos_sqrt")],
    ])
    return as_group_element(g)


def _blocks(g: QuatMatrix, j: int) -> Tuple[QuatMatrix, QuatMatrix, QuatMatrix, QuatMatrix]:
    if not g.is_square:
        raise NonSquare(f"Элемент группы должен быть квадратным, получено {g.shape}")
    if not 0 < j < g.rows:
        raise DimensionMismatch(f"Разбиение j={j} не подходит для матрицы {g.shape}")
    return g.split(j)


def _check_point(g: QuatMatrix, X: GrassmannPoint) -> int:
    j, k = X.dims
    if j + k != g.rows:
        raise DimensionMismatch(f"Точка {X.dims} не согласована с элементом {g.shape}")
    return j


def lft_apply(g: QuatMatrix, X: GrassmannPoint) -> GrassmannPoint:
    """
    Дробно-линейное действие Y = (AX + B)(CX + D)^(-1)

    Raises:
        SingularDenominator: если CX + D вырождена
    """
    j = _check_point(g, X)
    a, b, c, d = _blocks(g, j)
    return GrassmannPoint((a @ X.X + b) @ inverse(c @ X.X + d))


def lft_apply_left(g: QuatMatrix, X: GrassmannPoint) -> GrassmannPoint:
    """Вторая форма действия Y = (-XB* + A*)^(-1)(XD* - C*)"""
    j = _check_point(g, X)
    a, b, c, d = _blocks(g, j)
    x = X.X
    return GrassmannPoint(inverse(adjoint(a) - x @ adjoint(b)) @ (x @ adjoint(d) - adjoint(c)))


def lft_forms_residual(g: QuatMatrix, X: GrassmannPoint) -> float:
    """Расхождение двух форм дробно-линейного действия"""
    return lft_apply(g, X).X.distance(lft_apply_left(g, X).X)


def lft_composition_residual(g2: QuatMatrix, g1: QuatMatrix, X: GrassmannPoint) -> float:
    """|lft(g2, lft(g1, X)) - lft(g2 g1, X)|"""
    return lft_apply(g2, lft_apply(g1, X)).X.distance(lft_apply(g2 @ g1, X).X)


@dataclass
class TransportResiduals:
    """Невязки четырех тождеств переноса"""
    plus_left: float
    plus_right: float
    difference: float
    difference_swapped: float

    def max(self) -> float:
        return max(self.plus_left, self.plus_right, self.difference, self.difference_swapped)


def transport_identities(g: QuatMatrix, Xa: GrassmannPoint, Xb: GrassmannPoint) -> TransportResiduals:
    """
    Проверяет тождества для 1 + Ya Yb*, 1 + Ya* Yb и две факторизации Ya - Yb

    Raises:
        SingularDenominator: если знаменатели вырождены
    """
    j = _check_point(g, Xa)
    if Xa.dims != Xb.dims:
        raise DimensionMismatch(f"Точки разных размеров: {Xa.dims} и {Xb.dims}")
    a, b, c, d = _blocks(g, j)
    xa, xb = Xa.X, Xb.X
    ya, yb = lft_apply(g, Xa).X, lft_apply(g, Xb).X
    one_j = QuatMatrix.identity(xa.rows)
    one_k = QuatMatrix.identity(xa.cols)

    left_a = inverse(adjoint(a) - xa @ adjoint(b))
    left_b = inverse(adjoint(a) - xb @ adjoint(b))
    right_a = inverse(c @ xa + d)
    right_b = inverse(c @ xb + d)

    plus_left = (one_j + ya @ adjoint(yb)).distance(
        left_a @ (one_j + xa @ adjoint(xb)) @ inverse(a - b @ adjoint(xb))
    )
    plus_right = (one_k + adjoint(ya) @ yb).distance(
        inverse(adjoint(xa) @ adjoint(c) + adjoint(d)) @ (one_k + adjoint(xa) @ xb) @ right_b
    )
    difference = (ya - yb).distance(left_a @ (xa - xb) @ right_b)
    difference_swapped = (ya - yb).distance(left_b @ (xa - xb) @ right_a)
    return TransportResiduals(plus_left, plus_right, difference, difference_swapped)


def cross_ratio(Ya: GrassmannPoint, Yb: GrassmannPoint, Yc: GrassmannPoint, Yd: GrassmannPoint) -> float:
    """
    Скалярная часть tr[(Ya - Yb)(Yc - Yb)^(-1)(Yc - Yd)(Ya - Yd)^(-1)]

    Raises:
        DegenerateQuadruple: если обращаемые разности вырождены или не квадратны
    """
    if Ya.X.rows != Ya.X.cols:
        raise DegenerateQuadruple(f"Двойное отношение требует j = k, получено {Ya.dims}")
    if len({Ya.dims, Yb.dims, Yc.dims, Yd.dims}) != 1:
        raise DimensionMismatch("Точки разных размеров")
    try:
        inv_cb = inverse(Yc.X - Yb.X)
        inv_ad = inverse(Ya.X - Yd.X)
    except SingularDenominator as exc:
        raise DegenerateQuadruple(f"Вырожденная четверка точек: {exc}")
    product = (Ya.X - Yb.X) @ inv_cb @ (Yc.X - Yd.X) @ inv_ad
    return product.trace().w


def _metric_factors(X: GrassmannPoint) -> Tuple[QuatMatrix, QuatMatrix]:
    x = X.X
    one_j = QuatMatrix.identity(x.rows)
    one_k = QuatMatrix.identity(x.cols)
    return inverse(one_j + x @ adjoint(x)), inverse(one_k + adjoint(x) @ x)


def _check_tangent(X: GrassmannPoint, dX: QuatMatrix) -> None:
    if dX.shape != X.dims:
        raise ShapeMismatch(f"Касательный вектор {dX.shape} не совпадает с точкой {X.dims}")


def metric_form(X: GrassmannPoint, dX: QuatMatrix) -> float:
    """ds^2 = Re tr[(1 + XX*)^(-1) dX (1 + X*X)^(-1) dX*]"""
    _check_tangent(X, dX)
    left, right = _metric_factors(X)
    return (left @ dX @ right @ adjoint(dX)).trace().w


def metric_form_expanded(X: GrassmannPoint, dX: QuatMatrix) -> float:
    """Та же метрика через (1 + X*X)^(-1) = 1 - X*(1 + XX*)^(-1) X"""
    _check_tangent(X, dX)
    left, _ = _metric_factors(X)
    x = X.X
    first = left @ dX @ adjoint(dX)
    second = left @ dX @ adjoint(x) @ left @ x @ adjoint(dX)
    return (first - second).trace().w


def metric_form_squared(X: GrassmannPoint, dX: QuatMatrix) -> float:
    """Метрика как |S|^2, S = (1 + XX*)^(-1/2) dX (1 + X*X)^(-1/2)"""
    _check_tangent(X, dX)
    x = X.X
    one_j = QuatMatrix.identity(x.rows)
    one_k = QuatMatrix.identity(x.cols)
    s = func_hermitian(one_j + x @ adjoint(x), "invsqrt") @ dX @ func_hermitian(one_k + adjoint(x) @ x, "invsqrt")
    return float(np.sum(s.data ** 2))


def pushforward(
    mapping: Callable[[GrassmannPoint], GrassmannPoint],
    X: GrassmannPoint,
    dX: QuatMatrix,
    step: float = PUSHFORWARD_STEP,
) -> QuatMatrix:
    """Центральная разность отображения вдоль dX"""
    plus = mapping(GrassmannPoint(X.X + dX * step)).X
    minus = mapping(GrassmannPoint(X.X - dX * step)).X
    return (plus - minus) * (0.5 / step)


def metric_invariance_check(g: QuatMatrix, X: GrassmannPoint, dX: QuatMatrix, step: float = PUSHFORWARD_STEP) -> float:
    """
    |ds^2(Y, dY) - ds^2(X, dX)| для Y = g.X и dY из конечной разности

    Raises:
        SingularDenominator: если действие не определено
    """
    _check_tangent(X, dX)
    Y = lft_apply(g, X)
    dY = pushforward(lambda p: lft_apply(g, p), X, dX, step)
    return abs(metric_form(Y, dY) - metric_form(X, dX))


def inversion_check(X: GrassmannPoint, dX: QuatMatrix, step: float = PUSHFORWARD_STEP) -> float:
    """Инвариантность метрики Sp2/Sp1^2 относительно X -> X^(-1)"""
    _check_tangent(X, dX)
    if X.dims != (1, 1):
        raise ShapeMismatch(f"Инверсия проверяется только для 1x1, получено {X.dims}")
    def invert(p: GrassmannPoint) -> GrassmannPoint:
        return GrassmannPoint(inverse(p.X))

    Y = invert(X)
    dY = pushforward(invert, X, dX, step)
    return abs(metric_form(Y, dY) - metric_form(X, dX))


@dataclass
class OriginResiduals:
    """Невязки тождеств для образа начала координат Y = BD^(-1)"""
    second_form: float
    aa: float
    dd: float
    connection_metric: Optional[float] = None


def origin_identities(g: QuatMatrix, j: int, dY: Optional[QuatMatrix] = None) -> OriginResiduals:
    """
    Образ начала Y = BD^(-1) = -(A*)^(-1) C*, 1 + YY* = (AA*)^(-1), 1 + Y*Y = (DD*)^(-1)

    Если задан dY, дополнительно сравнивает ds^2 в Y с Tr(w12 w12*), w12 = A* dY D.
    """
    a, b, c, d = _blocks(g, j)
    y = b @ inverse(d)
    k = g.rows - j
    residuals = OriginResiduals(
        second_form=y.distance(-(inverse(adjoint(a)) @ adjoint(c))),
        aa=(QuatMatrix.identity(j) + y @ adjoint(y)).distance(inverse(a @ adjoint(a))),
        dd=(QuatMatrix.identity(k) + adjoint(y) @ y).distance(inverse(d @ adjoint(d))),
    )
    if dY is not None:
        w12 = adjoint(a) @ dY @ d
        direct = metric_form(GrassmannPoint(y), dY)
        residuals.connection_metric = abs(direct - (w12 @ adjoint(w12)).trace().w)
    return residuals


def _check_curvature_shape(Q: QuatMatrix, n: int, k: int) -> None:
    if not 0 < k < n or Q.shape != (k, n):
        raise ShapeMismatch(f"Ожидалась матрица Q размера {k}x{n}, получено {Q.shape}")


def curvature_trace(Q: QuatMatrix, n: int, k: int) -> Tuple[float, float]:
    """
    Обе части тождества tr[(1 + Q*Q)^(-1)] = 2(n - k) + tr[(1 + QQ*)^(-1)]

    Следы берутся в комплексном вложении, Q имеет размер k x n.
    """
    _check_curvature_shape(Q, n, k)
    lhs = inverse(QuatMatrix.identity(n) + adjoint(Q) @ Q).complex_trace()
    rhs = 2.0 * (n - k) + inverse(QuatMatrix.identity(k) + Q @ adjoint(Q)).complex_trace()
    return lhs, rhs


def curvature_det(Q: QuatMatrix, n: int, k: int) -> float:
    """
    det(Omega) = det(1 + QQ*)^(-(k + n))

    det(1 + QQ*) считается как произведение парных собственных значений
    и сверяется с корнем из определителя комплексного вложения.

    Raises:
        PairingFailure: если два способа расходятся
    """
    _check_curvature_shape(Q, n, k)
    shifted = QuatMatrix.identity(k) + Q @ adjoint(Q)
    det_pairs = float(np.prod(eigvals_hyperhermitian(shifted)))
    det_embedding = float(np.sqrt(abs(np.linalg.det(shifted.embed()))))
    if abs(det_pairs - det_embedding) > DET_RTOL * max(1.0, det_embedding):
        raise PairingFailure(f"det(1+QQ*): {det_pairs:.12e} против {det_embedding:.12e}")
    return det_pairs ** (-(k + n))


def flag_sphere_dims(n: int) -> List[int]:
    """Размерности сфер S^(4m) в разложении Sp(n)/Sp(1)^n"""
    return [4 * m for m in range(n - 1, 0, -1)]


def flag_dimension(n: int) -> int:
    """dim Sp(n) - dim Sp(1)^n"""
    return n * (2 * n + 1) - 3 * n


# ---------------------------------------------------------------------------
# усреднение по слою Sp(1)^m

Alpha = Callable[[GroupElement], np.ndarray]
Sigma = Callable[[np.ndarray, np.ndarray], np.ndarray]


def fundamental_sigma(units: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Фундаментальное действие diag(u_1, ..., u_m) на векторе из H^m (m, 4)"""
    return qmul_array(units, v)


def trivial_sigma(units: np.ndarray, v: np.ndarray) -> np.ndarray:
    return v


def fiber_element(units: np.ndarray) -> GroupElement:
    """Диагональный элемент структурной группы"""
    m = units.shape[0]
    data = np.zeros((m, m, 4))
    data[np.arange(m), np.arange(m)] = units
    return GroupElement(data)


@dataclass
class HaarEstimate:
    """Оценка Монте-Карло со стандартной ошибкой"""
    value: np.ndarray
    stderr: np.ndarray
    samples: int


def _haar_chunk(alpha: Alpha, sigma: Sigma, x: QuatMatrix, samples: int, seed_seq: np.random.SeedSequence):
    rng = np.random.default_rng(seed_seq)
    units = random_unit_array(rng, (samples, x.cols))
    total = None
    total_sq = None
    for u in units:
        # x eta: столбец c умножается справа на u_c
        moved = GroupElement(qmul_array(x.data, np.broadcast_to(u, x.data.shape)))
        value = np.asarray(sigma(u, alpha(moved)), dtype=float)
        total = value.copy() if total is None else total + value
        total_sq = value ** 2 if total_sq is None else total_sq + value ** 2
    return total, total_sq


def haar_average(
    alpha: Alpha,
    sigma: Sigma,
    x: QuatMatrix,
    samples: int,
    seed: int,
    workers: int = 1,
) -> HaarEstimate:
    """
    f(x) = E_eta[sigma(eta) alpha(x eta)] по равномерной мере на (S^3)^m

    Поток случайных чисел каждого исполнителя выводится из seed через
    SeedSequence.spawn, так что результат зависит только от (seed, workers).
    """
    if samples < 1:
        raise DomainError("Число выборок должно быть не меньше 1")
    workers = max(1, min(workers, samples))
    sizes = [samples // workers + (1 if i < samples % workers else 0) for i in range(workers)]
    streams = np.random.SeedSequence(seed).spawn(workers)
    if workers == 1:
        parts = [_haar_chunk(alpha, sigma, x, sizes[0], streams[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda a: _haar_chunk(alpha, sigma, x, *a), zip(sizes, streams)))
    total = sum(p[0] for p in parts)
    total_sq = sum(p[1] for p in parts)
    mean = total / samples
    variance = np.maximum(total_sq / samples - mean ** 2, 0.0)
    stderr = np.sqrt(variance / samples)
    logger.debug(f"Усреднение по Хаару: {samples} выборок, {workers} исполнителей")
    return HaarEstimate(value=mean, stderr=stderr, samples=samples)


def equivariance_residual(
    alpha: Alpha,
    sigma: Sigma,
    x: QuatMatrix,
    xi_units: np.ndarray,
    samples: int,
    seed: int,
    workers: int = 1,
) -> Tuple[float, float]:
    """
    Сравнивает f(x xi) и sigma(xi^(-1)) f(x) на общем потоке случайных чисел

    Returns:
        (максимальная невязка, суммарная стандартная ошибка)
    """
    xi = fiber_element(xi_units)
    shifted = haar_average(alpha, sigma, x @ xi, samples, seed, workers)
    base = haar_average(alpha, sigma, x, samples, seed, workers)
    inverse_units = xi_units * np.array([1.0, -1.0, -1.0, -1.0])
    predicted = sigma(inverse_units, base.value)
    diff = np.abs(shifted.value - predicted)
    index = int(np.argmax(diff))
    bound = float(shifted.stderr.flat[index] + base.stderr.max())
    return float(diff.flat[index]), bound
