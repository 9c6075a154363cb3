"""
Генераторы алгебры sp(n) как дифференциальные операторы на многочленах от zeta

Переменные zeta[alpha, a], alpha = 1..2k, a = 1..2(n-k), образуют блоки m(C^2).
Сопряженные переменные не вводятся отдельно: J' Q J переставляет zeta внутри
блока 2x2 со знаками, поэтому zeta_bar и d_bar выражаются через те же символы.
Коэффициенты точные (гауссовы рациональные), коммутаторы сокращаются без округления.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import sympy
from loguru import logger
from sympy.polys.domains import QQ_I
from sympy.polys.rings import PolyElement, ring

from .errors import IndexOutOfRange, NotEigenvector, SecondOrderResidue

Key = Tuple[int, ...]


def sigma(x: int) -> int:
    """-1 для нечетного индекса, +1 для четного"""
    return -1 if x % 2 else 1


def partner(x: int) -> int:
    """Парный индекс внутри блока 2x2: 1 <-> 2, 3 <-> 4, ..."""
    return x + 1 if x % 2 else x - 1


def J(r: int, c: int) -> int:
    """Элемент 1 (x) j: J[x~, x] = sigma(x), J[x, x~] = -sigma(x)"""
    return sigma(c) if r == partner(c) else 0


def delta(a: int, b: int) -> int:
    return 1 if a == b else 0


class DiffOperator:
    """
    Линейный дифференциальный оператор: сумма coef * d^beta

    terms: отсортированный кортеж индексов переменных -> многочлен-коэффициент.
    Пустой кортеж соответствует умножению на многочлен.
    """

    __slots__ = ("space", "terms")

    def __init__(self, space: "ZetaSpace", terms: Optional[Dict[Key, PolyElement]] = None):
        self.space = space
        self.terms: Dict[Key, PolyElement] = {}
        for key, coef in (terms or {}).items():
            if coef:
                self.terms[tuple(sorted(key))] = coef

    @property
    def order(self) -> int:
        return max((len(key) for key in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def _combine(self, other: "DiffOperator", sign: int) -> "DiffOperator":
        terms = dict(self.terms)
        for key, coef in other.terms.items():
            terms[key] = terms.get(key, self.space.ring.zero) + coef * sign
        return DiffOperator(self.space, terms)

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        return self._combine(other, 1)

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return self._combine(other, -1)

    def __neg__(self) -> "DiffOperator":
        return self.scale(-1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def scale(self, c) -> "DiffOperator":
        if c == 0:
            return DiffOperator(self.space)
        return DiffOperator(self.space, {k: v * c for k, v in self.terms.items()})

    def lmul(self, poly: PolyElement) -> "DiffOperator":
        """Умножение оператора на многочлен слева"""
        return DiffOperator(self.space, {k: poly * v for k, v in self.terms.items()})

    def apply(self, f: PolyElement) -> PolyElement:
        return apply(self, f)

    def compose(self, other: "DiffOperator") -> "DiffOperator":
        """self o other"""
        result: Dict[Key, PolyElement] = {}
        zero = self.space.ring.zero
        for key, coef in self.terms.items():
            op = other
            for index in key:
                op = _derive(op, index)
            for k2, c2 in op.terms.items():
                result[k2] = result.get(k2, zero) + coef * c2
        return DiffOperator(self.space, result)

    def truncate(self, max_coeff_degree: int) -> "DiffOperator":
        """Отбрасывает мономы коэффициентов степени выше max_coeff_degree"""
        ring_ = self.space.ring
        terms = {}
        for key, coef in self.terms.items():
            kept = {m: c for m, c in coef.terms() if sum(m) <= max_coeff_degree}
            terms[key] = ring_.from_dict(kept) if kept else ring_.zero
        return DiffOperator(self.space, terms)

    def __repr__(self) -> str:
        return f"DiffOperator(order={self.order}, terms={len(self.terms)})"


def _derive(op: DiffOperator, index: int) -> DiffOperator:
    """d_index o op по правилу Лейбница"""
    gen = op.space.gens[index]
    zero = op.space.ring.zero
    terms: Dict[Key, PolyElement] = {}
    for key, coef in op.terms.items():
        dc = coef.diff(gen)
        if dc:
            terms[key] = terms.get(key, zero) + dc
        raised = tuple(sorted(key + (index,)))
        terms[raised] = terms.get(raised, zero) + coef
    return DiffOperator(op.space, terms)


def apply(op: DiffOperator, f: PolyElement) -> PolyElement:
    """Точное применение оператора к многочлену"""
    gens = op.space.gens
    result = op.space.ring.zero
    for key, coef in op.terms.items():
        g = f
        for index in key:
            g = g.diff(gens[index])
            if not g:
                break
        if g:
            result += coef * g
    return result


def commutator(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """
    [a, b] = a o b - b o a

    Raises:
        SecondOrderResidue: если старшие члены не сократились
    """
    result = a.compose(b) - b.compose(a)
    expected = max(a.order + b.order - 1, 0)
    if result.order > expected:
        raise SecondOrderResidue(
            f"Коммутатор операторов порядков {a.order} и {b.order} имеет порядок {result.order}"
        )
    return result


class ZetaSpace:
    """Кольцо многочленов от zeta[alpha, a] и генераторы h, H, p, p_bar для (k, n)"""

    def __init__(self, k: int, n: int):
        if k < 1 or n - k < 1:
            raise IndexOutOfRange(f"Требуется k >= 1 и n - k >= 1, получено k={k}, n={n}")
        self.k, self.n = k, n
        self.rows, self.cols = 2 * k, 2 * (n - k)
        names = [f"z_{alpha}_{a}" for alpha in range(1, self.rows + 1) for a in range(1, self.cols + 1)]
        self.ring, *gens = ring(",".join(names), QQ_I)
        self.gens: List[PolyElement] = list(gens)
        self._cache: Dict[Tuple, DiffOperator] = {}

    # индексы
    def index(self, alpha: int, a: int) -> int:
        if not (1 <= alpha <= self.rows and 1 <= a <= self.cols):
            raise IndexOutOfRange(f"Индекс ({alpha}, {a}) вне диапазона {self.rows}x{self.cols}")
        return (alpha - 1) * self.cols + (a - 1)

    def unindex(self, i: int) -> Tuple[int, int]:
        return i // self.cols + 1, i % self.cols + 1

    def row_range(self) -> range:
        return range(1, self.rows + 1)

    def col_range(self) -> range:
        return range(1, self.cols + 1)

    # переменные и производные
    def zeta(self, alpha: int, a: int) -> PolyElement:
        return self.gens[self.index(alpha, a)]

    def zeta_bar(self, alpha: int, a: int) -> PolyElement:
        """(J' Q J)[alpha, a] = sigma(alpha) sigma(a) zeta[alpha~, a~]"""
        return self.zeta(partner(alpha), partner(a)) * (sigma(alpha) * sigma(a))

    def d(self, alpha: int, a: int) -> DiffOperator:
        return DiffOperator(self, {(self.index(alpha, a),): self.ring.one})

    def d_bar(self, alpha: int, a: int) -> DiffOperator:
        return self.d(partner(alpha), partner(a)).scale(sigma(alpha) * sigma(a))

    def zero(self) -> DiffOperator:
        return DiffOperator(self)

    def multiplication(self, poly: PolyElement) -> DiffOperator:
        return DiffOperator(self, {(): poly})

    # генераторы
    def _cached(self, key: Tuple, build: Callable[[], DiffOperator]) -> DiffOperator:
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def h(self, alpha: int, beta: int) -> DiffOperator:
        """h = zeta[alpha, b] d[beta, b] - zeta_bar[beta, b] d_bar[alpha, b]"""
        def build() -> DiffOperator:
            op = self.zero()
            for b in self.col_range():
                op = op + self.d(beta, b).lmul(self.zeta(alpha, b))
                op = op - self.d_bar(alpha, b).lmul(self.zeta_bar(beta, b))
            return op
        self.index(alpha, 1), self.index(beta, 1)
        return self._cached(("h", alpha, beta), build)

    def H(self, a: int, b: int) -> DiffOperator:
        """H = zeta[mu, a] d[mu, b] - zeta_bar[mu, b] d_bar[mu, a]"""
        def build() -> DiffOperator:
            op = self.zero()
            for mu in self.row_range():
                op = op + self.d(mu, b).lmul(self.zeta(mu, a))
                op = op - self.d_bar(mu, a).lmul(self.zeta_bar(mu, b))
            return op
        self.index(1, a), self.index(1, b)
        return self._cached(("H", a, b), build)

    def p(self, alpha: int, a: int) -> DiffOperator:
        """p = d_bar[alpha, a] + zeta[alpha, b] zeta[mu, a] d[mu, b]"""
        def build() -> DiffOperator:
            op = self.d_bar(alpha, a)
            for b in self.col_range():
                for mu in self.row_range():
                    op = op + self.d(mu, b).lmul(self.zeta(alpha, b) * self.zeta(mu, a))
            return op
        return self._cached(("p", alpha, a), build)

    def p_bar(self, alpha: int, a: int) -> DiffOperator:
        """Кватернионное сопряжение p"""
        return self._cached(("pbar", alpha, a), lambda: self.conjugate(self.p(alpha, a)))

    def p_alt_rows(self, alpha: int, a: int) -> DiffOperator:
        """p = (delta + zeta[alpha, b] zeta_bar[beta, b]) d_bar[beta, a] + zeta[alpha, b] H[a, b]"""
        op = self.zero()
        for beta in self.row_range():
            coef = self.ring.one * delta(alpha, beta)
            for b in self.col_range():
                coef = coef + self.zeta(alpha, b) * self.zeta_bar(beta, b)
            op = op + self.d_bar(beta, a).lmul(coef)
        for b in self.col_range():
            op = op + self.H(a, b).lmul(self.zeta(alpha, b))
        return op

    def p_alt_cols(self, alpha: int, a: int) -> DiffOperator:
        """p = (delta + zeta[mu, a] zeta_bar[mu, b]) d_bar[alpha, b] + zeta[mu, a] h[alpha, mu]"""
        op = self.zero()
        for b in self.col_range():
            coef = self.ring.one * delta(a, b)
            for mu in self.row_range():
                coef = coef + self.zeta(mu, a) * self.zeta_bar(mu, b)
            op = op + self.d_bar(alpha, b).lmul(coef)
        for mu in self.row_range():
            op = op + self.h(alpha, mu).lmul(self.zeta(mu, a))
        return op

    # сопряжение
    def _conj_coeff(self, c):
        return QQ_I.from_sympy(sympy.conjugate(QQ_I.to_sympy(c)))

    def conjugate_poly(self, f: PolyElement) -> PolyElement:
        """zeta -> zeta_bar с сопряжением коэффициентов"""
        size = len(self.gens)
        out = {}
        for monom, coef in f.terms():
            new = [0] * size
            sign = 1
            for i, e in enumerate(monom):
                if e:
                    alpha, a = self.unindex(i)
                    new[self.index(partner(alpha), partner(a))] = e
                    if (sigma(alpha) * sigma(a)) < 0 and e % 2:
                        sign = -sign
            out[tuple(new)] = self._conj_coeff(coef) * sign
        return self.ring.from_dict(out) if out else self.ring.zero

    def conjugate(self, op: DiffOperator) -> DiffOperator:
        """Оператор-сопряжение: zeta -> zeta_bar, d -> d_bar, коэффициенты сопрягаются"""
        terms: Dict[Key, PolyElement] = {}
        for key, coef in op.terms.items():
            sign = 1
            new_key = []
            for i in key:
                alpha, a = self.unindex(i)
                sign *= sigma(alpha) * sigma(a)
                new_key.append(self.index(partner(alpha), partner(a)))
            terms[tuple(sorted(new_key))] = self.conjugate_poly(coef) * sign
        return DiffOperator(self, terms)

    # мономы
    def monomials(self, max_degree: int) -> List[PolyElement]:
        """Все мономы степени <= max_degree"""
        result = [self.ring.one]
        for degree in range(1, max_degree + 1):
            for combo in combinations_with_replacement(range(len(self.gens)), degree):
                m = self.ring.one
                for i in combo:
                    m = m * self.gens[i]
                result.append(m)
        return result


@lru_cache(maxsize=8)
def zeta_space(k: int, n: int) -> ZetaSpace:
    return ZetaSpace(k, n)


def generator(kind: str, indices: Tuple[int, int], dims: Tuple[int, int]) -> DiffOperator:
    """
    Генератор h, H, p или pbar для размерностей (k, n)

    Raises:
        IndexOutOfRange: если индексы вне диапазона
    """
    space = zeta_space(*dims)
    builders = {"h": space.h, "H": space.H, "p": space.p, "pbar": space.p_bar}
    if kind not in builders:
        raise IndexOutOfRange(f"Неизвестный генератор '{kind}'")
    return builders[kind](*indices)


# ---------------------------------------------------------------------------
# таблица коммутаторов

def _h_times_j(space: ZetaSpace, alpha: int, mu: int) -> DiffOperator:
    """(hJ)[alpha, mu]"""
    return space.h(alpha, partner(mu)).scale(J(partner(mu), mu))


def _j_times_h(space: ZetaSpace, beta: int, nu: int) -> DiffOperator:
    """(Jh)[beta, nu]"""
    return space.h(partner(beta), nu).scale(J(beta, partner(beta)))


def _H_times_j(space: ZetaSpace, a: int, c: int) -> DiffOperator:
    """(HJ)[a, c]"""
    return space.H(a, partner(c)).scale(J(partner(c), c))


def _j_times_H(space: ZetaSpace, d: int, b: int) -> DiffOperator:
    """(JH)[d, b]"""
    return space.H(partner(d), b).scale(J(d, partner(d)))


def _j_times_p(space: ZetaSpace, nu: int, a: int) -> DiffOperator:
    """(Jp)[nu, a]"""
    return space.p(partner(nu), a).scale(J(nu, partner(nu)))


def _p_times_j(space: ZetaSpace, alpha: int, c: int) -> DiffOperator:
    """(pJ)[alpha, c]"""
    return space.p(alpha, partner(c)).scale(J(partner(c), c))


@dataclass
class Relation:
    """Одно соотношение: левая пара операторов и правая часть"""
    name: str
    cases: Callable[[ZetaSpace], Iterable[Tuple]]
    lhs: Callable[[ZetaSpace, Tuple], Tuple[DiffOperator, DiffOperator]]
    rhs: Callable[[ZetaSpace, Tuple], DiffOperator]


def _rows2(s: ZetaSpace) -> Iterable[Tuple]:
    return product(s.row_range(), repeat=2)


def _rhs_hh(s: ZetaSpace, idx: Tuple) -> DiffOperator:
    alpha, beta, mu, nu = idx
    return (s.h(alpha, nu).scale(delta(beta, mu)) - s.h(mu, beta).scale(delta(alpha, nu))
            - _h_times_j(s, alpha, mu).scale(J(beta, nu)) + _j_times_h(s, beta, nu).scale(J(mu, alpha)))


def _rhs_HH(s: ZetaSpace, idx: Tuple) -> DiffOperator:
    a, b, c, d = idx
    return (s.H(a, d).scale(delta(b, c)) - s.H(c, b).scale(delta(a, d))
            - _H_times_j(s, a, c).scale(J(b, d)) + _j_times_H(s, d, b).scale(J(c, a)))


def _rhs_ph(s: ZetaSpace, idx: Tuple) -> DiffOperator:
    alpha, a, mu, nu = idx
    return -s.p(mu, a).scale(delta(alpha, nu)) - _j_times_p(s, nu, a).scale(J(alpha, mu))


def _rhs_pH(s: ZetaSpace, idx: Tuple) -> DiffOperator:
    alpha, a, b, c = idx
    return -s.p(alpha, b).scale(delta(a, c)) + _p_times_j(s, alpha, c).scale(J(a, b))


def _rhs_pp(s: ZetaSpace, idx: Tuple) -> DiffOperator:
    alpha, a, beta, b = idx
    return -_h_times_j(s, alpha, beta).scale(J(a, b)) - _H_times_j(s, a, b).scale(J(alpha, beta))


def _rhs_pbar_p(s: ZetaSpace, idx: Tuple) -> DiffOperator:
    alpha, a, beta, b = idx
    return s.H(b, a).scale(delta(alpha, beta)) + s.h(beta, alpha).scale(delta(a, b))


RELATIONS: List[Relation] = [
    Relation(
        "[h,h]",
        lambda s: product(s.row_range(), repeat=4),
        lambda s, i: (s.h(i[0], i[1]), s.h(i[2], i[3])),
        _rhs_hh,
    ),
    Relation(
        "[H,H]",
        lambda s: product(s.col_range(), repeat=4),
        lambda s, i: (s.H(i[0], i[1]), s.H(i[2], i[3])),
        _rhs_HH,
    ),
    Relation(
        "[h,H]",
        lambda s: product(s.row_range(), s.row_range(), s.col_range(), s.col_range()),
        lambda s, i: (s.h(i[0], i[1]), s.H(i[2], i[3])),
        lambda s, i: s.zero(),
    ),
    Relation(
        "[p,h]",
        lambda s: product(s.row_range(), s.col_range(), s.row_range(), s.row_range()),
        lambda s, i: (s.p(i[0], i[1]), s.h(i[2], i[3])),
        _rhs_ph,
    ),
    Relation(
        "[p,H]",
        lambda s: product(s.row_range(), s.col_range(), s.col_range(), s.col_range()),
        lambda s, i: (s.p(i[0], i[1]), s.H(i[2], i[3])),
        _rhs_pH,
    ),
    Relation(
        "[p,p]",
        lambda s: product(s.row_range(), s.col_range(), s.row_range(), s.col_range()),
        lambda s, i: (s.p(i[0], i[1]), s.p(i[2], i[3])),
        _rhs_pp,
    ),
    Relation(
        "[pbar,p]",
        lambda s: product(s.row_range(), s.col_range(), s.row_range(), s.col_range()),
        lambda s, i: (s.p_bar(i[0], i[1]), s.p(i[2], i[3])),
        _rhs_pbar_p,
    ),
]


@dataclass
class RelationResult:
    """Итог проверки одного соотношения"""
    name: str
    cases: int
    failures: List[Tuple] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class CommutationReport:
    k: int
    n: int
    max_degree: int
    relations: List[RelationResult]
    symmetry_checks: Dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.relations) and all(self.symmetry_checks.values())


def _monomial_check(a: DiffOperator, b: DiffOperator, rhs: DiffOperator, monomials: Sequence[PolyElement]) -> bool:
    """Второй порядок редукции: a(b f) - b(a f) == rhs(f) на мономах"""
    for f in monomials:
        if apply(a, apply(b, f)) - apply(b, apply(a, f)) != apply(rhs, f):
            return False
    return True


def symmetry_checks(space: ZetaSpace) -> Dict[str, bool]:
    """Антиэрмитовость h* = -h, H* = -H, симметрия Jh и JH, три формы p"""
    rows, cols = space.row_range(), space.col_range()
    checks = {
        "h_skew": all(space.conjugate(space.h(b, a)) == -space.h(a, b) for a in rows for b in rows),
        "H_skew": all(space.conjugate(space.H(b, a)) == -space.H(a, b) for a in cols for b in cols),
        "Jh_symmetric": all(_j_times_h(space, a, b) == _j_times_h(space, b, a) for a in rows for b in rows),
        "JH_symmetric": all(_j_times_H(space, a, b) == _j_times_H(space, b, a) for a in cols for b in cols),
        "p_forms": all(
            space.p(alpha, a) == space.p_alt_rows(alpha, a) and space.p(alpha, a) == space.p_alt_cols(alpha, a)
            for alpha in rows for a in cols
        ),
        "p_near_origin": all(
            space.p(alpha, a).truncate(0) == space.d_bar(alpha, a) for alpha in rows for a in cols
        ),
        "pbar_relabel": all(
            space.p_bar(alpha, a) == space.p(partner(alpha), partner(a)).scale(sigma(alpha) * sigma(a))
            for alpha in rows for a in cols
        ),
    }
    return checks


def verify_commutation_table(k: int, n: int, max_degree: int = 3, cross_check: bool = False) -> CommutationReport:
    """
    Проверяет все семь коммутационных соотношений как точные тождества

    Args:
        k, n: размерности
        max_degree: максимальная степень мономов для проверки применением
        cross_check: дополнительно сравнить a(b f) - b(a f) с правой частью на мономах
    """
    space = zeta_space(k, n)
    logger.info(f"Коммутаторы sp({n}) при k={k}: J[x~, x] = sigma(x), правые части без подстановок")
    monomials = space.monomials(max_degree)
    results = []
    for relation in RELATIONS:
        result = RelationResult(relation.name, 0)
        for idx in relation.cases(space):
            result.cases += 1
            a, b = relation.lhs(space, idx)
            rhs = relation.rhs(space, idx)
            difference = commutator(a, b) - rhs
            ok = difference.is_zero() and all(not apply(difference, f) for f in monomials)
            if ok and cross_check:
                ok = _monomial_check(a, b, rhs, monomials)
            if not ok:
                result.failures.append(idx)
        if result.failures:
            logger.warning(f"Соотношение {relation.name} нарушено при k={k}, n={n}: {len(result.failures)} случаев")
        else:
            logger.info(f"Соотношение {relation.name}: {result.cases} случаев, все выполнены")
        results.append(result)
    return CommutationReport(k, n, max_degree, results, symmetry_checks(space))


# ---------------------------------------------------------------------------
# лестничные операторы

def cartan_h(space: ZetaSpace, alpha: int) -> DiffOperator:
    return space.h(alpha, alpha)


def cartan_H(space: ZetaSpace, a: int) -> DiffOperator:
    return space.H(a, a)


def eigenvalue(op: DiffOperator, f: PolyElement):
    """
    Собственное значение op на f

    Raises:
        NotEigenvector: если op f не пропорционально f
    """
    if not f:
        raise NotEigenvector("Нулевая функция не является собственным вектором")
    image = apply(op, f)
    monom, coef = next(iter(f.terms()))
    value = image.get(monom, QQ_I.zero) / coef
    if image != f * value:
        raise NotEigenvector("Функция не является собственным вектором элемента Картана")
    return value


@dataclass
class LadderReport:
    checks: int = 0
    annihilated: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _shift_ok(cartan: DiffOperator, ladder: DiffOperator, f: PolyElement, shift: int, report: LadderReport, label: str) -> None:
    start = eigenvalue(cartan, f)
    image = apply(ladder, f)
    report.checks += 1
    if not image:
        report.annihilated += 1
        return
    if apply(cartan, image) != image * (start + shift):
        report.failures.append(label)


def ladder_check(k: int, n: int, eigen_monomials: Optional[Sequence[PolyElement]] = None, max_degree: int = 2) -> LadderReport:
    """
    Сдвиги собственных значений Картана под действием p и p_bar

    p повышает H[a, a] и h[alpha, alpha] на 1, p_bar понижает их на 1.
    Если p V = 0, случай засчитывается как аннулированный.
    """
    space = zeta_space(k, n)
    monomials = list(eigen_monomials) if eigen_monomials is not None else space.monomials(max_degree)
    report = LadderReport()
    for f in monomials:
        for alpha in space.row_range():
            for a in space.col_range():
                p, pb = space.p(alpha, a), space.p_bar(alpha, a)
                _shift_ok(cartan_H(space, a), p, f, 1, report, f"H[{a}{a}] p[{alpha}{a}]")
                _shift_ok(cartan_h(space, alpha), pb, f, -1, report, f"h[{alpha}{alpha}] pbar[{alpha}{a}]")
                _shift_ok(cartan_h(space, alpha), p, f, 1, report, f"h[{alpha}{alpha}] p[{alpha}{a}]")
                _shift_ok(cartan_H(space, a), pb, f, -1, report, f"H[{a}{a}] pbar[{alpha}{a}]")
    return report


def random_eigen_monomials(k: int, n: int, count: int, max_degree: int, seed: int) -> List[PolyElement]:
    """Случайные мономы (каждый моном собственный для всех элементов Картана)"""
    space = zeta_space(k, n)
    rng = np.random.default_rng(seed)
    result = []
    for _ in range(count):
        degree = int(rng.integers(0, max_degree + 1))
        m = space.ring.one
        for i in rng.integers(0, len(space.gens), size=degree):
            m = m * space.gens[int(i)]
        result.append(m)
    return result


# ---------------------------------------------------------------------------
# оператор Лапласа-Бельтрами

def laplace_beltrami(k: int, n: int) -> DiffOperator:
    """
    tr(h h* + p p*) + tr(H H* + p* p)

    С h* = -h и (p*)[a, alpha] = p_bar[alpha, a].
    """
    space = zeta_space(k, n)
    rows, cols = space.row_range(), space.col_range()
    op = space.zero()
    for alpha in rows:
        for beta in rows:
            op = op - space.h(alpha, beta).compose(space.h(beta, alpha))
    for a in cols:
        for b in cols:
            op = op - space.H(a, b).compose(space.H(b, a))
    for alpha in rows:
        for a in cols:
            op = op + space.p(alpha, a).compose(space.p_bar(alpha, a))
            op = op + space.p_bar(alpha, a).compose(space.p(alpha, a))
    return op


@dataclass
class LaplaceReport:
    annihilates_constant: bool
    commutes_with_cartan: Dict[str, bool]
    conjugation_invariant: bool

    @property
    def passed(self) -> bool:
        return self.annihilates_constant and all(self.commutes_with_cartan.values()) and self.conjugation_invariant


def laplace_checks(k: int, n: int, max_degree: int = 2) -> LaplaceReport:
    """Delta(1) = 0, [Delta, h[alpha, alpha]] = 0, [Delta, H[a, a]] = 0, Delta_bar = Delta"""
    space = zeta_space(k, n)
    delta_op = laplace_beltrami(k, n)
    monomials = space.monomials(max_degree)
    commutes = {}
    cartans = [(f"h{alpha}{alpha}", cartan_h(space, alpha)) for alpha in space.row_range()]
    cartans += [(f"H{a}{a}", cartan_H(space, a)) for a in space.col_range()]
    for name, cartan in cartans:
        bracket = commutator(delta_op, cartan)
        commutes[name] = bracket.is_zero() and all(not apply(bracket, f) for f in monomials)
    return LaplaceReport(
        annihilates_constant=not apply(delta_op, space.ring.one),
        commutes_with_cartan=commutes,
        conjugation_invariant=space.conjugate(delta_op) == delta_op,
    )
