"""
Проверки системы корней C_n, вложений и меток частиц
"""
from typing import Callable, List

from .base import CheckResult, Suite, flag
from ..roots import (
    BAR,
    Weight,
    embed_check,
    euler_characteristic,
    generate,
    is_root,
    parse_label,
    particle_label,
    weight_multiset,
)

RANKS = range(1, 7)


class RootsSuite(Suite):
    """Корни sp(n), метки лептонов, мезонов и барионов"""

    name = "roots"

    def checks(self) -> List[Callable[[], List[CheckResult]]]:
        return [self.systems, self.embeddings, self.labels, self.characteristic]

    def systems(self) -> List[CheckResult]:
        results = []
        for n in RANKS:
            system = generate(n)
            roots = set(system.roots)
            results.append(flag(f"root_count_{n}", len(system) == 2 * n * n, count=len(system)))
            results.append(flag(
                f"root_closure_{n}",
                len(roots) == len(system) and all(tuple(-v for v in r) in roots for r in roots),
            ))
        return results

    def embeddings(self) -> List[CheckResult]:
        pairs = [(m, n) for n in RANKS for m in range(1, n)]
        return [
            flag("embeddings", all(embed_check(m, n) for m, n in pairs), pairs=[list(p) for p in pairs]),
            flag("non_root_rejected", not is_root((1, 1, 1))),
        ]

    def labels(self) -> List[CheckResult]:
        lepton = particle_label([Weight((2, 0))])
        meson = particle_label([Weight((1, 1))])
        antimeson = particle_label([Weight((-1, 1))])
        proton_weights = [Weight((1, 0), "i"), Weight((1, 0), "j"), Weight((0, 1), "k")]
        proton = particle_label(proton_weights)
        round_trip = all(
            weight_multiset(parse_label(particle_label(ws).text, 2)) == weight_multiset(ws)
            for ws in ([Weight((2, 0))], [Weight((-1, 1))], proton_weights)
        )
        return [
            flag("lepton", lepton.kind == "lepton", text=lepton.text),
            flag("meson_ud", (meson.text, meson.kind) == ("ud", "meson"), text=meson.text),
            flag("meson_ubar_d", (antimeson.text, antimeson.kind) == ("u" + BAR + "d", "meson"), text=antimeson.text),
            flag(
                "baryon_uud",
                proton.kind == "baryon" and proton.text.startswith("uud") and len(set(proton.colors)) == 3,
                text=proton.text,
            ),
            flag("label_round_trip", round_trip),
        ]

    def characteristic(self) -> List[CheckResult]:
        return [flag("euler_even_spheres", all(euler_characteristic(d) == 2 for d in (2, 4, 12)))]
