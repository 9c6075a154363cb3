"""
Сфера S^4 = Sp(2)/Sp(1)xSp(1)

Метрика Фубини-Штуди в неоднородных координатах, угловая карта (omega, alpha, beta, gamma),
численная проверка эйнштейновости и радиальное уравнение Лапласа-Бельтрами
с замкнутыми решениями f0 и g_l.
"""
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import scipy.integrate
import scipy.special
from loguru import logger

from .errors import ChartBoundary, DomainError, TerminationViolated, TooCloseToPole
from .quaternion import I, K, Quaternion, mul

RICCI_STEP = 1e-4
PULLBACK_STEP = 1e-6
RATIO_FLOOR = 1e-8
POLE_MARGIN = 0.05
DEFAULT_GRID_SAMPLES = 200
EQUATOR_LIMIT = 1e-6
# theta^2 отнесен к длине дуги 2 omega (ds^2 = 4 d omega^2), в уравнении по omega это 4 theta^2
THETA_SCALE = 4.0

MetricFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class S4Chart:
    """Точка S^4 в неоднородной (y из R^4) или угловой (omega, alpha, beta, gamma) карте"""
    kind: str
    values: Tuple[float, float, float, float]

    def __post_init__(self):
        if self.kind not in ("inhomogeneous", "angular"):
            raise DomainError(f"Неизвестная карта: {self.kind}")
        if len(self.values) != 4 or not all(math.isfinite(v) for v in self.values):
            raise ChartBoundary(f"Точка {self.values} вне карты")
        if self.kind == "angular":
            omega, alpha = self.values[0], self.values[1]
            if not (0.0 < omega < math.pi and 0.0 < alpha < math.pi):
                raise ChartBoundary(f"Углы omega={omega}, alpha={alpha} на границе карты")

    @classmethod
    def inhomogeneous(cls, y: Sequence[float]) -> "S4Chart":
        return cls("inhomogeneous", tuple(float(v) for v in y))

    @classmethod
    def angular(cls, omega: float, alpha: float, beta: float, gamma: float) -> "S4Chart":
        return cls("angular", (float(omega), float(alpha), float(beta) % (2 * math.pi), float(gamma) % (2 * math.pi)))

    def to_inhomogeneous(self) -> "S4Chart":
        """
        Переход в карту y: точка единичной сферы (cos omega, sin omega u) проецируется в y = tan(omega) u

        Raises:
            ChartBoundary: на экваторе omega = pi/2, который уходит на бесконечность
        """
        if self.kind == "inhomogeneous":
            return self
        omega, alpha, beta, gamma = self.values
        if abs(math.cos(omega)) < EQUATOR_LIMIT:
            raise ChartBoundary(f"omega={omega} на экваторе, координата y не определена")
        u = unit_from_euler(alpha, beta, gamma)
        return S4Chart.inhomogeneous(math.tan(omega) * u.as_array())


# ---------------------------------------------------------------------------
# метрики

def fs_metric(y: np.ndarray) -> np.ndarray:
    """
    Метрика (1 + yy')^-1 dy (1 + y'y)^-1 dy' для строки y из R^4

    g = (I - y y' / (1 + r^2)) / (1 + r^2)
    """
    y = np.asarray(y, dtype=float)
    s = 1.0 + float(y @ y)
    return (np.eye(y.size) - np.outer(y, y) / s) / s


def homogeneous_point(y: np.ndarray) -> np.ndarray:
    """Точка x на сфере sum x_i^2 = 1, для которой y_i = x_i / x_0"""
    y = np.asarray(y, dtype=float)
    return np.concatenate([[1.0], y]) / math.sqrt(1.0 + float(y @ y))


def angular_metric(omega: float, alpha: float) -> np.ndarray:
    """
    ds^2 = 4 d omega^2 + sin^2 omega [d alpha^2 + d beta^2 + d gamma^2 + 2 cos alpha d beta d gamma]

    Raises:
        ChartBoundary: если omega или alpha вне (0, pi)
    """
    if not (0.0 < omega < math.pi and 0.0 < alpha < math.pi):
        raise ChartBoundary(f"Углы omega={omega}, alpha={alpha} на границе карты")
    s2 = math.sin(omega) ** 2
    g = np.diag([4.0, s2, s2, s2])
    g[2, 3] = g[3, 2] = s2 * math.cos(alpha)
    return g


def _exp_pure(axis: Quaternion, angle: float) -> Quaternion:
    return Quaternion(math.cos(angle)) + axis * math.sin(angle)


def unit_from_euler(alpha: float, beta: float, gamma: float) -> Quaternion:
    """u = exp(k beta/2) exp(i alpha/2) exp(k gamma/2)"""
    return mul(mul(_exp_pure(K, beta / 2), _exp_pure(I, alpha / 2)), _exp_pure(K, gamma / 2))


def angular_to_quaternion(omega: float, alpha: float, beta: float, gamma: float) -> Quaternion:
    """q = cot(omega/2) u"""
    return unit_from_euler(alpha, beta, gamma) * (1.0 / math.tan(omega / 2))


def quaternion_metric(q: np.ndarray) -> np.ndarray:
    """(1 + qq*)^-1 dq (1 + q*q)^-1 dq* = |dq|^2 / (1 + |q|^2)^2 в компонентах q"""
    q = np.asarray(q, dtype=float)
    return np.eye(4) / (1.0 + float(q @ q)) ** 2


def angular_pullback(omega: float, alpha: float, beta: float, gamma: float, step: float = PULLBACK_STEP) -> np.ndarray:
    """Обратный образ quaternion_metric при q = cot(omega/2) u, якобиан центральными разностями"""
    point = np.array([omega, alpha, beta, gamma], dtype=float)
    angular_metric(omega, alpha)
    jac = np.zeros((4, 4))
    for c in range(4):
        shift = np.zeros(4)
        shift[c] = step
        plus = angular_to_quaternion(*(point + shift)).as_array()
        minus = angular_to_quaternion(*(point - shift)).as_array()
        jac[:, c] = (plus - minus) / (2 * step)
    q = angular_to_quaternion(*point).as_array()
    return jac.T @ quaternion_metric(q) @ jac


# ---------------------------------------------------------------------------
# кривизна Риччи конечными разностями

def _metric_derivative(metric_fn: MetricFn, x: np.ndarray, step: float) -> np.ndarray:
    """dg[l, i, j] = d_l g_ij"""
    dim = x.size
    dg = np.zeros((dim, dim, dim))
    for l in range(dim):
        shift = np.zeros(dim)
        shift[l] = step
        dg[l] = (metric_fn(x + shift) - metric_fn(x - shift)) / (2 * step)
    return dg


def christoffel(metric_fn: MetricFn, x: np.ndarray, step: float = RICCI_STEP) -> np.ndarray:
    """Gamma[l, m, n] = 1/2 g^lr (d_m g_rn + d_n g_rm - d_r g_mn)"""
    x = np.asarray(x, dtype=float)
    inv = np.linalg.inv(metric_fn(x))
    dg = _metric_derivative(metric_fn, x, step)
    lowered = dg.transpose(1, 0, 2) + dg.transpose(1, 2, 0) - dg
    return 0.5 * np.einsum("lr,rmn->lmn", inv, lowered)


def ricci_tensor(metric_fn: MetricFn, x: np.ndarray, step: float = RICCI_STEP) -> np.ndarray:
    """
    R_mn = d_l G^l_mn - d_n G^l_ml + G^l_lk G^k_mn - G^l_nk G^k_ml

    Производные символов Кристоффеля берутся вложенными центральными разностями.
    """
    x = np.asarray(x, dtype=float)
    dim = x.size
    gamma = christoffel(metric_fn, x, step)
    dgamma = np.zeros((dim,) * 4)
    for l in range(dim):
        shift = np.zeros(dim)
        shift[l] = step
        dgamma[l] = (christoffel(metric_fn, x + shift, step) - christoffel(metric_fn, x - shift, step)) / (2 * step)
    ricci = (
        np.einsum("llmn->mn", dgamma)
        - np.einsum("nlml->mn", dgamma)
        + np.einsum("llk,kmn->mn", gamma, gamma)
        - np.einsum("lnk,kml->mn", gamma, gamma)
    )
    return 0.5 * (ricci + ricci.T)


@dataclass
class EinsteinReport:
    """Отношения Ric_ij / g_ij по точкам и общая константа"""
    lam: float
    spread: float
    ratios: List[np.ndarray] = field(default_factory=list)
    off_diagonal: float = 0.0

    @property
    def per_point(self) -> List[float]:
        return [float(np.mean(r)) for r in self.ratios]


def einstein_ratios(metric_fn: MetricFn, x: np.ndarray, step: float = RICCI_STEP) -> Tuple[np.ndarray, float]:
    """Ric_ij / g_ij на элементах с |g_ij| > RATIO_FLOOR и max |Ric_ij| там, где g_ij = 0"""
    g = metric_fn(np.asarray(x, dtype=float))
    ricci = ricci_tensor(metric_fn, x, step)
    mask = np.abs(g) > RATIO_FLOOR
    vanishing = float(np.abs(ricci[~mask]).max()) if (~mask).any() else 0.0
    return ricci[mask] / g[mask], vanishing


def einstein_check(points: Sequence, step: float = RICCI_STEP) -> EinsteinReport:
    """
    Проверка Ric = lambda g для fs_metric в наборе точек

    Точки: S4Chart (угловые переводятся в карту y) или массивы y из R^4.

    Raises:
        ChartBoundary: если точка не лежит во внутренности карты
    """
    ratios: List[np.ndarray] = []
    off_diagonal = 0.0
    for p in points:
        y = np.asarray(p.to_inhomogeneous().values if isinstance(p, S4Chart) else p, dtype=float)
        if y.shape != (4,) or not np.all(np.isfinite(y)):
            raise ChartBoundary(f"Точка {y} вне карты y")
        point_ratios, vanishing = einstein_ratios(fs_metric, y, step)
        ratios.append(point_ratios)
        off_diagonal = max(off_diagonal, vanishing)
    flat = np.concatenate(ratios) if ratios else np.array([0.0])
    lam = float(np.mean(flat))
    spread = float((flat.max() - flat.min()) / abs(lam)) if lam else float("inf")
    logger.debug(f"Проверка Эйнштейна: {len(ratios)} точек, lambda={lam:.6f}, разброс {spread:.2e}")
    return EinsteinReport(lam=lam, spread=spread, ratios=ratios, off_diagonal=off_diagonal)


# ---------------------------------------------------------------------------
# радиальное уравнение Лапласа-Бельтрами

@dataclass(frozen=True)
class RadialSolution:
    """
    Решение f'' + 3 cot(w) f' - [2l(2l+2)/sin^2 w] f + 4 theta^2 f = 0

    kind = "f0": статическое решение при l = 0, theta = 0.
    kind = "g_ell": sin(w)^(-2(l+1)) sum a_n sin(w)^(2n), n = 0..N.
    """
    ell: float
    N: int
    coeffs: Tuple[float, ...]
    theta_sq: float
    kind: str

    @property
    def theta(self) -> Optional[float]:
        """sqrt(theta^2), None если theta^2 < 0"""
        return math.sqrt(self.theta_sq) if self.theta_sq >= 0 else None

    def value(self, omega: float) -> float:
        return self.derivatives(omega)[0]

    def derivatives(self, omega: float) -> Tuple[float, float, float]:
        """(f, f', f'') из замкнутой формы"""
        s, c = math.sin(omega), math.cos(omega)
        if self.kind == "f0":
            f = -c / s**2 + math.log(math.tan(omega / 2))
            return f, 2.0 / s**3, -6.0 * c / s**4
        f = df = d2f = 0.0
        for n, a in enumerate(self.coeffs):
            m = 2 * n - 2 * self.ell - 2
            f += a * s**m
            df += a * m * s ** (m - 1) * c
            d2f += a * (m * (m - 1) * s ** (m - 2) * c * c - m * s**m)
        return f, df, d2f


def theta_squared(ell: float, N: int) -> float:
    """theta^2 = (l + 1 - N)(l - 1/2 - N)"""
    return (ell + 1 - N) * (ell - 0.5 - N)


def _check_ell(ell: float) -> None:
    if ell < 0 or abs(2 * ell - round(2 * ell)) > 1e-12:
        raise DomainError(f"l должно быть неотрицательным полуцелым, получено {ell}")


def check_termination(ell: float, N: int) -> None:
    """
    Raises:
        TerminationViolated: N >= l + 1 для целого l или N >= l - 1/2 для полуцелого
    """
    _check_ell(ell)
    integer = abs(ell - round(ell)) < 1e-12
    bound = ell + 1 if integer else ell - 0.5
    if N < 0 or N >= bound:
        raise TerminationViolated(f"Ряд не обрывается: l={ell}, N={N}, требуется 0 <= N < {bound}")


def _factorial_or_zero(x: float) -> float:
    """x! = Gamma(x + 1); полюс Gamma дает 0"""
    if x + 1 <= 0 and abs(x + 1 - round(x + 1)) < 1e-12:
        return 0.0
    return float(scipy.special.gamma(x + 1))


def gl_coefficients(ell: float, N: int) -> List[float]:
    """
    a_n = (2l - n)! (N - 2l - 3/2 + n)! / [n! (N - n)!], n = 0..N

    Факториалы нецелых аргументов через Gamma, знаменатель через 1/Gamma.

    Raises:
        TerminationViolated: если не выполнено условие обрыва ряда
    """
    check_termination(ell, N)
    coeffs = []
    for n in range(N + 1):
        numerator = _factorial_or_zero(2 * ell - n) * _factorial_or_zero(N - 2 * ell - 1.5 + n)
        coeffs.append(numerator * float(scipy.special.rgamma(n + 1) * scipy.special.rgamma(N - n + 1)))
    return coeffs


def f0_solution() -> RadialSolution:
    """f0 = -cot(w)/sin(w) + ln tan(w/2)"""
    return RadialSolution(ell=0.0, N=0, coeffs=(), theta_sq=0.0, kind="f0")


def gl_solution(ell: float, N: int) -> RadialSolution:
    return RadialSolution(
        ell=float(ell), N=int(N), coeffs=tuple(gl_coefficients(ell, N)),
        theta_sq=theta_squared(ell, N), kind="g_ell",
    )


def radial_solution(ell: float, N: int = 0) -> RadialSolution:
    """f0 при l = 0, иначе g_l"""
    _check_ell(ell)
    if ell == 0:
        if N != 0:
            raise TerminationViolated(f"При l=0 допустимо только N=0, получено N={N}")
        return f0_solution()
    return gl_solution(ell, N)


def _check_pole(omega: float, margin: float) -> None:
    if not (margin <= omega <= math.pi - margin):
        raise TooCloseToPole(f"omega={omega} ближе {margin} к полюсу")


def lb_radial_residual(
    f: RadialSolution, omega: float, margin: float = POLE_MARGIN, theta_scale: float = THETA_SCALE,
) -> float:
    """
    Относительная невязка радиального уравнения

    |f'' + 3 cot f' - L f / sin^2 + s theta^2 f| / max(1, сумма модулей слагаемых), L = 2l(2l+2), s = theta_scale

    Raises:
        TooCloseToPole: если omega вне [margin, pi - margin]
    """
    _check_pole(omega, margin)
    value, d1, d2 = f.derivatives(omega)
    s = math.sin(omega)
    terms = (
        d2,
        3.0 * math.cos(omega) / s * d1,
        -2.0 * f.ell * (2.0 * f.ell + 2.0) / s**2 * value,
        theta_scale * f.theta_sq * value,
    )
    return abs(math.fsum(terms)) / max(1.0, sum(abs(t) for t in terms))


def omega_grid(samples: int = DEFAULT_GRID_SAMPLES, margin: float = POLE_MARGIN) -> np.ndarray:
    """Сетка на [margin, pi - margin], содержащая экватор pi/2"""
    if samples < 3:
        raise DomainError(f"Сетка требует не менее 3 точек, получено {samples}")
    left = np.linspace(margin, math.pi / 2, samples // 2)
    right = np.linspace(math.pi / 2, math.pi - margin, samples - samples // 2 + 1)[1:]
    return np.concatenate([left, right])


def equator_jump(f: RadialSolution, eps: float = 1e-7) -> float:
    """|f(pi/2 - eps) - f(pi/2 + eps)|"""
    return abs(f.value(math.pi / 2 - eps) - f.value(math.pi / 2 + eps))


def is_integrable(f: RadialSolution) -> bool:
    """
    Сходимость интеграла |f| sin^3 w около полюсов

    f0 ~ 1/w^2, g_l ~ w^(-2l-2) при a_0 != 0, поэтому g_l интегрируемо только при l < 1.
    """
    if f.kind == "f0":
        return True
    leading = next((a for a in f.coeffs if a != 0.0), 0.0)
    if leading == 0.0:
        return True
    lowest = 2 * f.coeffs.index(leading) - 2 * f.ell - 2
    return lowest + 3 > -1


def integrability_profile(f: RadialSolution, eps_values: Sequence[float] = (1e-1, 1e-2, 1e-3)) -> List[float]:
    """Интегралы |f| sin^3 w по (eps, pi - eps) для убывающих eps"""
    def integrand(w: float) -> float:
        return abs(f.value(w)) * math.sin(w) ** 3

    values = []
    for eps in eps_values:
        total, _ = scipy.integrate.quad(integrand, eps, math.pi - eps, limit=200, points=[math.pi / 2])
        values.append(float(total))
    return values


def solution_table(f: RadialSolution, grid: Optional[np.ndarray] = None) -> List[Dict[str, float]]:
    """Строки (omega, f, residual) для вывода"""
    grid = omega_grid() if grid is None else grid
    return [
        {"omega": float(w), "value": f.value(float(w)), "residual": lb_radial_residual(f, float(w))}
        for w in grid
    ]
