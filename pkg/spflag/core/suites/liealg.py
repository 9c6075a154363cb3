"""
Точные проверки таблицы коммутаторов, лестничных операторов и лапласиана
"""
from typing import Callable, List

from .base import CheckResult, Suite, flag
from ..liealg import laplace_checks, ladder_check, random_eigen_monomials, verify_commutation_table

DIMS = ((1, 2), (1, 3))
MAX_DEGREE = 3


class LieAlgebraSuite(Suite):
    """Дифференциальные операторы sp(n) на многочленах от zeta"""

    name = "liealg"

    def checks(self) -> List[Callable[[], List[CheckResult]]]:
        return [self.commutators, self.ladders, self.laplacian]

    def commutators(self) -> List[CheckResult]:
        results = []
        for k, n in DIMS:
            report = verify_commutation_table(k, n, MAX_DEGREE)
            for relation in report.relations:
                results.append(flag(
                    f"commutator_{relation.name}_{k}_{n}", relation.passed,
                    cases=relation.cases, failures=[list(f) for f in relation.failures],
                ))
            for name, ok in sorted(report.symmetry_checks.items()):
                results.append(flag(f"{name}_{k}_{n}", ok))
        return results

    def ladders(self) -> List[CheckResult]:
        results = []
        for k, n in DIMS:
            monomials = random_eigen_monomials(k, n, self.config.trials, 2, self.config.seed)
            report = ladder_check(k, n, monomials)
            results.append(flag(
                f"ladder_{k}_{n}", report.passed,
                checks=report.checks, annihilated=report.annihilated, failures=report.failures,
            ))
        return results

    def laplacian(self) -> List[CheckResult]:
        report = laplace_checks(1, 2)
        return [flag(
            "laplace_beltrami_1_2", report.passed,
            annihilates_constant=report.annihilates_constant,
            commutes_with_cartan=report.commutes_with_cartan,
            conjugation_invariant=report.conjugation_invariant,
        )]
