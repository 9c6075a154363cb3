"""
Проверки кватернионной арифметики и кватернионных матриц
"""
from typing import Callable, List

import numpy as np

from .base import CheckResult, Suite, check
from ..quaternion import (
    Quaternion,
    from_m2c_array,
    j_conjugate,
    qconj_array,
    qmul_array,
    to_m2c,
    to_m2c_array,
)
from ..quatmat import (
    QuatMatrix,
    adjoint,
    exp,
    group_residual,
    random_quatmatrix,
    random_skew,
    sp2nc_algebra_blocks,
    sp2nc_residuals,
    to_sp2nc,
)

PAIRS = 10_000


class QuaternionSuite(Suite):
    """m(C^2), сопряжение, норма, вложение матриц и экспонента"""

    name = "quat"

    def checks(self) -> List[Callable[[], List[CheckResult]]]:
        return [self.m2c, self.conjugation, self.embedding, self.exponential, self.sp2nc]

    def _pairs(self, salt: int):
        rng = self.rng(salt)
        return rng.standard_normal((PAIRS, 4)), rng.standard_normal((PAIRS, 4))

    def m2c(self) -> List[CheckResult]:
        a, b = self._pairs(1)
        ab = qmul_array(a, b)
        product = to_m2c_array(a) @ to_m2c_array(b)
        scale = np.linalg.norm(a, axis=1) * np.linalg.norm(b, axis=1)
        homomorphism = float((np.abs(to_m2c_array(ab) - product).max(axis=(1, 2)) / scale).max())
        round_trip = float(np.abs(from_m2c_array(to_m2c_array(a)) - a).max())

        q = Quaternion.from_array(a[0])
        conjugated = float(np.abs(j_conjugate(to_m2c(q)) - np.conj(to_m2c(q))).max())
        return [
            check("m2c_homomorphism", homomorphism, self.tol.m2c, pairs=PAIRS),
            check("m2c_round_trip", round_trip, self.tol.m2c),
            check("j_conjugate", conjugated, self.tol.m2c),
        ]

    def conjugation(self) -> List[CheckResult]:
        a, b = self._pairs(2)
        ab = qmul_array(a, b)
        scale = np.linalg.norm(a, axis=1) * np.linalg.norm(b, axis=1)
        anti = np.abs(qconj_array(ab) - qmul_array(qconj_array(b), qconj_array(a))).max(axis=1) / scale
        norms = np.sum(ab ** 2, axis=1)
        multiplicative = np.abs(norms - np.sum(a ** 2, axis=1) * np.sum(b ** 2, axis=1)) / norms
        return [
            check("conj_anti_homomorphism", float(anti.max()), self.tol.product, pairs=PAIRS),
            check("norm_multiplicative", float(multiplicative.max()), self.tol.m2c, pairs=PAIRS),
        ]

    def embedding(self) -> List[CheckResult]:
        rng = self.rng(3)
        worst = {"sum": 0.0, "product": 0.0, "adjoint": 0.0}
        for _ in range(self.config.trials):
            a = random_quatmatrix(rng, 3, 4)
            b = random_quatmatrix(rng, 3, 4)
            c = random_quatmatrix(rng, 4, 2)
            worst["sum"] = max(worst["sum"], float(np.abs((a + b).embed() - a.embed() - b.embed()).max()))
            worst["product"] = max(worst["product"], float(np.abs((a @ c).embed() - a.embed() @ c.embed()).max()))
            worst["adjoint"] = max(worst["adjoint"], float(np.abs(adjoint(a).embed() - a.embed().conj().T).max()))
        return [check(f"embed_{key}", value, 1e-11) for key, value in worst.items()]

    def exponential(self) -> List[CheckResult]:
        rng = self.rng(4)
        group = 0.0
        det = 0.0
        for _ in range(self.config.trials):
            gen = random_skew(rng, 3)
            for t in (0.1, 1.0, 10.0):
                g = exp(gen * t)
                group = max(group, group_residual(g))
                det = max(det, abs(abs(np.linalg.det(g.embed())) - 1.0))
        return [
            check("exp_group", group, self.tol.group, times=[0.1, 1.0, 10.0]),
            check("exp_det_modulus", det, 1e-9),
        ]

    def sp2nc(self) -> List[CheckResult]:
        rng = self.rng(5)
        symplectic = unitary = algebra = 0.0
        for _ in range(self.config.trials):
            gen = random_skew(rng, 3)
            big = to_sp2nc(exp(gen))
            s, u = sp2nc_residuals(big)
            symplectic, unitary = max(symplectic, s), max(unitary, u)
            algebra = max(algebra, max(sp2nc_algebra_blocks(gen).values()))
        identity = sp2nc_residuals(to_sp2nc(QuatMatrix.identity(2)))
        return [
            check("sp2nc_symplectic", symplectic, self.tol.sp2nc),
            check("sp2nc_unitary", unitary, self.tol.sp2nc),
            check("sp2nc_algebra_blocks", algebra, self.tol.sp2nc),
            check("sp2nc_identity", max(identity), self.tol.sp2nc),
        ]
