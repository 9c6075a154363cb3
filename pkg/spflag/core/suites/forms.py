"""
Проверки внешних форм: dY ^ dY*, двойственность, связность и кривизна
"""
from typing import Callable, List

import numpy as np

from .base import CheckResult, Suite, check, flag
from ..coset import GrassmannPoint, coset_element, lft_apply
from ..forms import (
    base_pairs,
    basis_one_form,
    connection_blocks,
    curvature_blocks,
    dY_wedge,
    duality_signs,
    maurer_cartan_residual,
    wedge,
)
from ..quaternion import I, J, K
from ..quatmat import QuatMatrix, block_diag, exp, random_group_element, random_quatmatrix, random_skew

ROWS, COLS = 2, 1


def _pattern(*pairs) -> np.ndarray:
    out = np.zeros(6)
    for pair, value in pairs:
        out[base_pairs(4).index(pair)] = value
    return out


class FormsSuite(Suite):
    """Формы на Sp(3)/Sp(2)xSp(1) и на кватернионной прямой"""

    name = "forms"

    def checks(self) -> List[Callable[[], List[CheckResult]]]:
        return [self.wedge_examples, self.duality, self.connection, self.maurer_cartan, self.curvature]

    def wedge_examples(self) -> List[CheckResult]:
        a, b = basis_one_form(0, I), basis_one_form(1, J)
        ab, ba = wedge(a, b), wedge(b, a)
        expected = QuatMatrix.scalar(K)
        return [
            check("wedge_i_j", ab.coefficient(0, 1).distance(expected), self.tol.curvature_forms),
            check("wedge_order", ab.coefficient(0, 1).distance(ba.coefficient(0, 1)), self.tol.curvature_forms),
            check("wedge_antisymmetric_pairs", ab.coefficient(1, 0).distance(-expected), self.tol.curvature_forms),
        ]

    def duality(self) -> List[CheckResult]:
        sd, asd = dY_wedge()
        e1_sd = np.abs(sd.component(1) - _pattern(((0, 1), -2.0), ((2, 3), -2.0))).max()
        e1_asd = np.abs(asd.component(1) - _pattern(((0, 1), 2.0), ((2, 3), -2.0))).max()
        scalar = max(np.abs(sd.component(0)).max(), np.abs(asd.component(0)).max())
        return [
            check("dY_wedge_e1", float(e1_sd), self.tol.curvature_forms),
            check("dYstar_wedge_e1", float(e1_asd), self.tol.curvature_forms),
            check("dY_wedge_scalar", float(scalar), self.tol.curvature_forms),
            flag("self_dual", duality_signs(sd) == {1: 1, 2: 1, 3: 1}, signs=duality_signs(sd)),
            flag("anti_self_dual", duality_signs(asd) == {1: -1, 2: -1, 3: -1}, signs=duality_signs(asd)),
        ]

    def connection(self) -> List[CheckResult]:
        rng = self.rng(1)
        skew = off_diagonal = isotropy = 0.0
        n = ROWS + COLS
        for _ in range(self.config.trials):
            gen, g0 = random_skew(rng, n), random_group_element(rng, n)
            blocks = connection_blocks(lambda t: exp(gen * t) @ g0, 0.3, ROWS)
            skew = max(skew, blocks.skew_residual())
            off_diagonal = max(off_diagonal, blocks.off_diagonal_residual())

            h1, h2 = random_skew(rng, ROWS), random_skew(rng, COLS)
            diagonal = connection_blocks(lambda t: g0 @ block_diag(exp(h1 * t), exp(h2 * t)), 0.3, ROWS)
            isotropy = max(isotropy, diagonal.omega12.max_abs(), diagonal.omega21.max_abs())
        return [
            check("connection_skew", skew, self.tol.connection),
            check("connection_off_diagonal", off_diagonal, self.tol.connection),
            check("connection_isotropy", isotropy, self.tol.connection),
        ]

    def maurer_cartan(self) -> List[CheckResult]:
        rng = self.rng(2)
        worst = 0.0
        for _ in range(max(1, self.config.trials // 4)):
            xi0 = random_quatmatrix(rng, ROWS, COLS, 0.5)
            d1, d2 = random_quatmatrix(rng, ROWS, COLS), random_quatmatrix(rng, ROWS, COLS)
            residual = maurer_cartan_residual(lambda s, t: coset_element(xi0 + d1 * s + d2 * t), 0.1, -0.2, ROWS)
            worst = max(worst, max(residual.values()))
        return [check("maurer_cartan", worst, self.tol.maurer_cartan)]

    def curvature(self) -> List[CheckResult]:
        rng = self.rng(3)
        antisymmetry = isotropy = magnitude = 0.0
        for _ in range(self.config.trials):
            Y = GrassmannPoint(random_quatmatrix(rng, ROWS, COLS, 0.5))
            d1, d2 = random_quatmatrix(rng, ROWS, COLS), random_quatmatrix(rng, ROWS, COLS)
            forward, backward = curvature_blocks(Y, d1, d2), curvature_blocks(Y, d2, d1)
            antisymmetry = max(
                antisymmetry,
                (forward.omega11 + backward.omega11).max_abs(),
                (forward.omega22 + backward.omega22).max_abs(),
            )

            origin = GrassmannPoint(QuatMatrix.zeros(ROWS, COLS))
            h = block_diag(random_skew(rng, ROWS), random_skew(rng, COLS))
            step = 1e-6
            d_iso = (lft_apply(exp(h * step), origin).X - lft_apply(exp(h * -step), origin).X) * (0.5 / step)
            pair = curvature_blocks(origin, d_iso, d2, strict=False)
            isotropy = max(isotropy, pair.omega11.max_abs(), pair.omega22.max_abs())

            line = GrassmannPoint(random_quatmatrix(rng, 1, 1))
            r = curvature_blocks(line, random_quatmatrix(rng, 1, 1), random_quatmatrix(rng, 1, 1))
            magnitude = max(magnitude, abs(np.sqrt(r.r11.norm_sq()) - np.sqrt(r.r22.norm_sq())))
        return [
            check("curvature_antisymmetric", antisymmetry, self.tol.curvature_forms),
            check("curvature_isotropy", isotropy, self.tol.curvature_forms),
            check("curvature_line_magnitudes", magnitude, self.tol.curvature_forms),
        ]
