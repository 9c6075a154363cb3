"""
Проверки эволюции Psi(t) = exp(t g) Psi(0), геодезических и обменных членов
"""
import math
from typing import Callable, List

import numpy as np

from .base import CheckResult, Suite, check, flag
from ..dynamics import (
    casimir_value,
    cocycle_check,
    evolve,
    geodesic_block,
    geodesic_exp_residual,
    norm_drift,
    random_state,
    time_reversal_check,
    transition_split,
)
from ..errors import NotSkewAdjoint
from ..quaternion import E, Quaternion, random_unit_array
from ..quatmat import QuatMatrix, block_diag, random_quatmatrix, random_skew

N, K = 3, 1


def _off_diagonal(rng: np.random.Generator) -> QuatMatrix:
    p = random_quatmatrix(rng, K, N - K)
    return QuatMatrix.from_blocks([
        [QuatMatrix.zeros(K, K), -p],
        [p.adjoint(), QuatMatrix.zeros(N - K, N - K)],
    ])


class DynamicsSuite(Suite):
    """Sp(3) с разбиением система 1 | окружение 2"""

    name = "dynamics"

    def checks(self) -> List[Callable[[], List[CheckResult]]]:
        return [self.conservation, self.group_law, self.geodesics, self.transitions]

    def conservation(self) -> List[CheckResult]:
        rng = self.rng(1)
        drift = partition = 0.0
        start = 0.0
        for _ in range(max(1, self.config.trials // 4)):
            gen, psi = random_skew(rng, N), random_state(rng, N, K)
            drift = max(drift, norm_drift(gen, psi))
            start = max(start, evolve(gen, psi, 0.0).components.distance(psi.components))

            diagonal = block_diag(random_skew(rng, K), random_skew(rng, N - K))
            for t in np.linspace(0.0, 10.0, 21):
                moved = evolve(diagonal, psi, float(t))
                partition = max(
                    partition,
                    abs(moved.system_norm_sq() - psi.system_norm_sq()),
                    abs(moved.surroundings_norm_sq() - psi.surroundings_norm_sq()),
                )
        return [
            check("norm_drift", drift, self.tol.norm_drift),
            check("evolve_zero_time", start, self.tol.norm_drift),
            check("block_diagonal_partition", partition, self.tol.norm_drift),
        ]

    def group_law(self) -> List[CheckResult]:
        rng = self.rng(2)
        cocycle = reversal = 0.0
        for _ in range(self.config.trials):
            gen = random_skew(rng, N)
            cocycle = max(cocycle, cocycle_check(gen, 2.7, 1.3), cocycle_check(gen, 2.7, 0.0), cocycle_check(gen, 2.7, 2.7))
            reversal = max(reversal, *(time_reversal_check(gen, t) for t in (0.1, 1.0, 10.0)))
        try:
            time_reversal_check(random_quatmatrix(rng, N, N), 1.0)
            rejected = False
        except NotSkewAdjoint:
            rejected = True
        return [
            check("cocycle", cocycle, self.tol.cocycle),
            check("time_reversal", reversal, self.tol.time_reversal),
            flag("non_skew_rejected", rejected),
        ]

    def geodesics(self) -> List[CheckResult]:
        rng = self.rng(3)
        agreement = periodicity = 0.0
        samples = 5 * self.config.trials
        for u_arr, phase in zip(random_unit_array(rng, (samples,)), rng.uniform(-10.0, 10.0, samples)):
            u = Quaternion.from_array(u_arr)
            agreement = max(agreement, geodesic_exp_residual(u, 1.0, float(phase)))
            omega = 0.7
            periodicity = max(
                periodicity,
                geodesic_block(u, omega, float(phase)).distance(geodesic_block(u, omega, float(phase) + 2 * math.pi / omega)),
            )
        quarter = geodesic_block(E, 1.0, math.pi / 2)
        expected = QuatMatrix.from_rows([[Quaternion(), E], [-E, Quaternion()]])
        identity = geodesic_block(E, 1.0, 0.0)
        return [
            check("geodesic_exp", agreement, self.tol.geodesic, samples=samples),
            check("geodesic_period", periodicity, self.tol.geodesic),
            check("geodesic_quarter_turn", quarter.distance(expected), self.tol.geodesic),
            check("geodesic_identity", identity.distance(QuatMatrix.identity(2)), self.tol.geodesic),
        ]

    def transitions(self) -> List[CheckResult]:
        rng = self.rng(4)
        reconstruct = exchange = rotation = casimir = 0.0
        for _ in range(self.config.trials):
            psi = random_state(rng, N, K)
            gen = random_skew(rng, N)
            split = transition_split(gen, psi)
            reconstruct = max(reconstruct, split.reconstruct().distance(gen @ psi.components))

            diagonal = transition_split(block_diag(random_skew(rng, K), random_skew(rng, N - K)), psi).magnitudes()
            exchange = max(exchange, diagonal["exchange_in"], diagonal["exchange_out"])
            off = transition_split(_off_diagonal(rng), psi).magnitudes()
            rotation = max(rotation, off["system_rotation"], off["surroundings_rotation"])

            blocks, trace = casimir_value(gen, K)
            casimir = max(casimir, abs(blocks - trace) / max(1.0, abs(trace)))
        return [
            check("transition_reconstruct", reconstruct, self.tol.transition),
            check("block_diagonal_exchange", exchange, self.tol.transition),
            check("off_diagonal_rotation", rotation, self.tol.transition),
            check("casimir_blocks", casimir, self.tol.transition),
        ]
