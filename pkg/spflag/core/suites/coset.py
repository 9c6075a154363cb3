"""
Проверки дробно-линейного действия, метрики, кривизны и усреднения по Хаару
"""
from typing import Callable, List

import numpy as np

from .base import CheckResult, Suite, check, flag
from ..coset import (
    GrassmannPoint,
    cross_ratio,
    curvature_det,
    curvature_trace,
    equivariance_residual,
    flag_dimension,
    flag_sphere_dims,
    fundamental_sigma,
    inversion_check,
    lft_apply,
    lft_composition_residual,
    lft_forms_residual,
    metric_form,
    metric_form_expanded,
    metric_form_squared,
    metric_invariance_check,
    origin_identities,
    transport_identities,
)
from ..quaternion import random_unit_array
from ..quatmat import QuatMatrix, adjoint, eigvals_hyperhermitian, random_group_element, random_quatmatrix

J, K = 2, 2
CURVATURE_SHAPES = ((3, 1), (5, 2), (6, 3))
S3_DRAWS = 1_000_000


def _row0(moved: QuatMatrix) -> np.ndarray:
    return moved.data[0]


class CosetSuite(Suite):
    """Sp(j+k)/Sp(j)xSp(k) при j = k = 2 и слой Sp(1)^m"""

    name = "coset"

    def checks(self) -> List[Callable[[], List[CheckResult]]]:
        return [
            self.lft,
            self.transport,
            self.cross_ratio,
            self.metric,
            self.origin,
            self.curvature,
            self.flag_manifold,
            self.haar,
        ]

    def _point(self, rng: np.random.Generator, scale: float = 0.5) -> GrassmannPoint:
        return GrassmannPoint(random_quatmatrix(rng, J, K, scale))

    def _group(self, rng: np.random.Generator):
        return random_group_element(rng, J + K, 0.5)

    def lft(self) -> List[CheckResult]:
        rng = self.rng(1)
        triples = 25 * self.config.trials
        forms = composition = 0.0
        for _ in range(triples):
            g1, g2, X = self._group(rng), self._group(rng), self._point(rng)
            forms = max(forms, lft_forms_residual(g1, X))
            composition = max(composition, lft_composition_residual(g2, g1, X))
        return [
            check("lft_forms", forms, self.tol.lft_forms, triples=triples),
            check("lft_composition", composition, self.tol.lft_composition, triples=triples),
        ]

    def transport(self) -> List[CheckResult]:
        rng = self.rng(2)
        worst = 0.0
        for _ in range(self.config.trials):
            worst = max(worst, transport_identities(self._group(rng), self._point(rng), self._point(rng)).max())
        return [check("transport_identities", worst, self.tol.transport)]

    def cross_ratio(self) -> List[CheckResult]:
        rng = self.rng(3)
        drift = 0.0
        for _ in range(self.config.trials):
            g = self._group(rng)
            points = [self._point(rng, 1.0) for _ in range(4)]
            before = cross_ratio(*points)
            after = cross_ratio(*(lft_apply(g, p) for p in points))
            drift = max(drift, abs(after - before) / max(1.0, abs(before)))
        return [check("cross_ratio_invariance", drift, self.tol.cross_ratio)]

    def metric(self) -> List[CheckResult]:
        rng = self.rng(4)
        forms = invariance = inversion = 0.0
        for _ in range(self.config.trials):
            X = self._point(rng)
            dX = random_quatmatrix(rng, J, K)
            base = metric_form(X, dX)
            forms = max(
                forms,
                abs(base - metric_form_expanded(X, dX)) / base,
                abs(base - metric_form_squared(X, dX)) / base,
            )
            invariance = max(invariance, metric_invariance_check(self._group(rng), X, dX))
            x1 = GrassmannPoint(random_quatmatrix(rng, 1, 1) + QuatMatrix.identity(1))
            inversion = max(inversion, inversion_check(x1, random_quatmatrix(rng, 1, 1)))
        return [
            check("metric_forms", forms, self.tol.metric_forms),
            check("metric_invariance", invariance, self.tol.metric_invariance),
            check("metric_inversion", inversion, self.tol.inversion),
        ]

    def origin(self) -> List[CheckResult]:
        rng = self.rng(5)
        worst = 0.0
        for _ in range(self.config.trials):
            r = origin_identities(self._group(rng), J, random_quatmatrix(rng, J, K))
            worst = max(worst, r.second_form, r.aa, r.dd, r.connection_metric)
        return [check("origin_identities", worst, self.tol.origin)]

    def curvature(self) -> List[CheckResult]:
        rng = self.rng(6)
        results = []
        for n, k in CURVATURE_SHAPES:
            trace = det = 0.0
            for _ in range(self.config.trials):
                Q = random_quatmatrix(rng, k, n)
                lhs, rhs = curvature_trace(Q, n, k)
                trace = max(trace, abs(lhs - rhs))
                value = curvature_det(Q, n, k)
                big = QuatMatrix.identity(n) + adjoint(Q) @ Q
                expected = float(np.prod(eigvals_hyperhermitian(big))) ** (-(k + n))
                det = max(det, abs(value - expected) / expected)
            results.append(check(f"curvature_trace_{n}_{k}", trace, self.tol.curvature_trace))
            results.append(check(f"curvature_det_{n}_{k}", det, self.tol.curvature_det))
        return results

    def flag_manifold(self) -> List[CheckResult]:
        ok = all(sum(flag_sphere_dims(n)) == flag_dimension(n) for n in range(2, 7))
        return [flag("flag_dimension", ok, dims={n: flag_sphere_dims(n) for n in range(2, 7)})]

    def haar(self) -> List[CheckResult]:
        rng = self.rng(7)
        units = random_unit_array(rng, (S3_DRAWS,))
        sigma_mean = 0.5 / np.sqrt(S3_DRAWS)
        mean_score = float(np.abs(units.mean(axis=0)).max() / sigma_mean)

        x = random_group_element(rng, 2)
        xi_units = random_unit_array(rng, (2,))
        samples = 100 * self.config.trials
        diff, bound = equivariance_residual(
            _row0, fundamental_sigma, x, xi_units, samples, self.config.seed, self.config.workers,
        )
        return [
            check("s3_uniform_mean", mean_score, 4.0, draws=S3_DRAWS),
            check("haar_equivariance", diff, self.tol.haar_bound_factor * bound, samples=samples),
        ]
