"""
Проверки оператора p* на полиномиальных полях и формулы произведения кватернионов
"""
from typing import Callable, List

from .base import CheckResult, Suite, check, flag
from ..emfield import (
    QPolyField,
    apply_pstar,
    decompose,
    decomposition_residual,
    field_ring,
    parse_field_spec,
    quaternion_product_identity,
    random_field,
)
from ..quaternion import E, I, J, K, Quaternion, random_quaternion

RANDOM_FIELDS = 100


def _equal(field: QPolyField, expected: dict) -> bool:
    return (field - parse_field_spec(f"{name}={body}" for name, body in expected.items())).is_zero()


class EMSuite(Suite):
    """p* psi = (A0,0 - div A) - E + B"""

    name = "em"

    def checks(self) -> List[Callable[[], List[CheckResult]]]:
        return [self.examples, self.random_fields, self.products]

    def examples(self) -> List[CheckResult]:
        _, x = field_ring()
        rotation = decompose(parse_field_spec(["A1=-x2", "A2=x1"]))
        mixed = decompose(parse_field_spec(["A0=x0*x3"]))
        constant = decompose(parse_field_spec(["A0=3", "A2=-7"]))
        return [
            flag("zero_field", apply_pstar(QPolyField.zero()).is_zero()),
            flag("x1_i", _equal(apply_pstar(parse_field_spec(["A1=x1"])), {"A0": "-1"})),
            flag("x3_e", _equal(apply_pstar(parse_field_spec(["A0=x3"])), {"A3": "1"})),
            flag("constant_field", all(p == 0 for p in (constant.scalar,) + constant.E + constant.B)),
            flag("curl", rotation.B == (0, 0, 2) and all(e == 0 for e in rotation.E), B=[str(b) for b in rotation.B]),
            flag(
                "electric",
                mixed.E == (0, 0, -x[0]) and mixed.scalar == x[3],
                E=[str(e) for e in mixed.E], scalar=str(mixed.scalar),
            ),
        ]

    def random_fields(self) -> List[CheckResult]:
        rng = self.rng(1)
        identity = linear = True
        scalar_present = 0
        for _ in range(RANDOM_FIELDS):
            a, b = random_field(rng), random_field(rng)
            identity = identity and decomposition_residual(a, decompose(a)).is_zero()
            combined = a.scale(3) - b
            linear = linear and (apply_pstar(combined) - (apply_pstar(a).scale(3) - apply_pstar(b))).is_zero()
            scalar_present += int(decompose(a).scalar != 0)
        return [
            flag("decomposition_identity", identity, fields=RANDOM_FIELDS),
            flag("pstar_linear", linear, fields=RANDOM_FIELDS),
            flag("scalar_term_present", scalar_present > 0, nonzero=scalar_present),
        ]

    def products(self) -> List[CheckResult]:
        rng = self.rng(2)
        worst = 0.0
        for _ in range(500 * self.config.trials):
            v, w = random_quaternion(rng), random_quaternion(rng)
            worst = max(worst, quaternion_product_identity(v, w) / max(1.0, (v.norm_sq() * w.norm_sq()) ** 0.5))
        v = Quaternion(0.0, 0.3, -1.2, 0.5)
        return [
            check("ij_k", max(quaternion_product_identity(I, J), (I * J - K).norm_sq()), self.tol.product),
            check("parallel", (v * v + E * v.norm_sq()).norm_sq(), self.tol.product),
            check("product_identity", worst, self.tol.product, pairs=500 * self.config.trials),
        ]
