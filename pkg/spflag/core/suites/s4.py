"""
Проверки метрики S^4 и радиального уравнения Лапласа-Бельтрами
"""
import math
from typing import Callable, List

import numpy as np

from .base import CheckResult, Suite, check, flag
from ..s4lb import (
    POLE_MARGIN,
    S4Chart,
    angular_metric,
    angular_pullback,
    einstein_check,
    equator_jump,
    f0_solution,
    fs_metric,
    integrability_profile,
    is_integrable,
    lb_radial_residual,
    radial_solution,
)

RESIDUAL_POINTS = 50
RADIAL_CASES = ((1.0, 0), (1.5, 0), (2.0, 0), (2.0, 1))
ROUND_LAMBDA = 3.0
EINSTEIN_POINTS = 20


def _rotation(rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((4, 4)))
    return q * np.sign(np.diag(r))


class S4Suite(Suite):
    """Sp(2)/Sp(1)^2 = S^4: метрика Эйнштейна и решения f0, g_l"""

    name = "s4"

    def checks(self) -> List[Callable[[], List[CheckResult]]]:
        return [self.radial, self.integrability, self.einstein, self.metrics]

    def _interior(self, salt: int) -> np.ndarray:
        rng = self.rng(salt)
        return np.sort(rng.uniform(POLE_MARGIN, math.pi - POLE_MARGIN, RESIDUAL_POINTS))

    def radial(self) -> List[CheckResult]:
        omegas = self._interior(1)
        f0 = f0_solution()
        results = [
            check("f0_residual", max(lb_radial_residual(f0, w) for w in omegas), self.tol.f0_residual),
            check("f0_equator_continuity", equator_jump(f0), 1e-5),
        ]
        for ell, N in RADIAL_CASES:
            f = radial_solution(ell, N)
            residual = max(lb_radial_residual(f, w) for w in omegas)
            results.append(check(
                f"g_ell_residual_{ell:g}_{N}", residual, self.tol.gl_residual,
                coeffs=list(f.coeffs), theta_sq=f.theta_sq, theta=f.theta,
            ))
        return results

    def integrability(self) -> List[CheckResult]:
        f0 = f0_solution()
        profile = integrability_profile(f0)
        bounded = all(b >= a for a, b in zip(profile, profile[1:])) and profile[-1] - profile[-2] < 1e-2
        divergent = [
            (ell, N) for ell, N in RADIAL_CASES if ell > 0.5 and is_integrable(radial_solution(ell, N))
        ]
        return [
            flag("f0_integrable", is_integrable(f0) and bounded, profile=profile),
            flag("g_ell_not_integrable", not divergent, integrable=divergent),
        ]

    def einstein(self) -> List[CheckResult]:
        rng = self.rng(2)
        charts = [S4Chart.inhomogeneous(rng.uniform(-1.0, 1.0, 4)) for _ in range(EINSTEIN_POINTS // 2)]
        charts += [
            S4Chart.angular(rng.uniform(0.3, 1.2), rng.uniform(0.3, 2.8), rng.uniform(0, 6), rng.uniform(0, 6))
            for _ in range(EINSTEIN_POINTS - EINSTEIN_POINTS // 2)
        ]
        report = einstein_check(charts)
        rotation = _rotation(rng)
        y = rng.uniform(-1.0, 1.0, 4)
        rotated = einstein_check([rotation @ y]).lam
        return [
            check("einstein_lambda", abs(report.lam - ROUND_LAMBDA) / ROUND_LAMBDA, self.tol.einstein_spread, lam=report.lam),
            check("einstein_spread", report.spread, self.tol.einstein_spread, per_point=report.per_point),
            check("einstein_off_diagonal", report.off_diagonal, self.tol.einstein_off_diagonal),
            check("einstein_rotation", abs(rotated - report.lam) / ROUND_LAMBDA, self.tol.einstein_spread),
        ]

    def metrics(self) -> List[CheckResult]:
        rng = self.rng(3)
        pullback = rotation_residual = 0.0
        for _ in range(self.config.trials):
            omega, alpha = rng.uniform(0.3, 2.8), rng.uniform(0.3, 2.8)
            beta, gamma = rng.uniform(0, 2 * math.pi, 2)
            expected = angular_metric(omega, alpha) / 16.0
            pullback = max(pullback, float(np.abs(angular_pullback(omega, alpha, beta, gamma) - expected).max()))

            r = _rotation(rng)
            y = rng.standard_normal(4)
            rotation_residual = max(rotation_residual, float(np.abs(r.T @ fs_metric(r @ y) @ r - fs_metric(y)).max()))
        return [
            check("angular_pullback", pullback, self.tol.pullback),
            check("fs_rotation", rotation_residual, self.tol.fs_rotation),
        ]
