"""
Система корней C_n алгебры sp(n), вложения sp(m) в sp(n) и метки частиц

Корни хранятся целыми векторами в базисе L_1..L_n.
"""
import re
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, InvalidRank, OddDimension, UnsupportedWeightCount

Root = Tuple[int, ...]

FLAVORS = ("u", "d", "s", "c")
COLORS = ("i", "j", "k")
BAR = "\u0304"
CLASSES = {1: "lepton", 2: "meson", 3: "baryon"}


@dataclass(frozen=True)
class RootSystem:
    """Корни {±L_i ± L_j : i < j} и {±2 L_i}"""
    n: int
    roots: Tuple[Root, ...]

    def __contains__(self, vector: Sequence[int]) -> bool:
        return tuple(int(v) for v in vector) in set(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    def positive(self) -> List[Root]:
        """Корни с положительной первой ненулевой координатой"""
        return [r for r in self.roots if next(v for v in r if v) > 0]


def _unit(n: int, i: int, coef: int) -> List[int]:
    v = [0] * n
    v[i] = coef
    return v


def generate(n: int) -> RootSystem:
    """
    Все 2n^2 корней sp(n) в детерминированном порядке

    Raises:
        InvalidRank: если n < 1
    """
    if n < 1:
        raise InvalidRank(f"Ранг должен быть >= 1, получено {n}")
    roots: List[Root] = []
    for i in range(n):
        for sign in (1, -1):
            roots.append(tuple(_unit(n, i, 2 * sign)))
    for i, j in combinations(range(n), 2):
        for si in (1, -1):
            for sj in (1, -1):
                v = [0] * n
                v[i], v[j] = si, sj
                roots.append(tuple(v))
    return RootSystem(n=n, roots=tuple(roots))


def is_root(vector: Sequence[int], n: Optional[int] = None) -> bool:
    """Вектор вида ±L_i ± L_j (i < j) или ±2 L_i"""
    n = len(vector) if n is None else n
    return len(vector) == n and vector in generate(n)


def embed_check(m: int, n: int) -> bool:
    """
    Каждый корень sp(m), дополненный нулями до длины n, является корнем sp(n)

    Raises:
        InvalidRank: если не 1 <= m < n
    """
    if not 1 <= m < n:
        raise InvalidRank(f"Вложение sp({m}) в sp({n}) требует 1 <= m < n")
    big = set(generate(n).roots)
    return all(tuple(r) + (0,) * (n - m) in big for r in generate(m).roots)


def projection(roots: Sequence[Root], dims: int = 2) -> np.ndarray:
    """Координаты корней в первых dims осях L_1..L_dims (для построения графиков)"""
    if dims not in (2, 3):
        raise DomainError(f"Проекция поддерживает 2 или 3 оси, получено {dims}")
    out = np.zeros((len(roots), dims))
    for row, r in enumerate(roots):
        width = min(dims, len(r))
        out[row, :width] = r[:width]
    return out


# ---------------------------------------------------------------------------
# метки частиц

@dataclass(frozen=True)
class Weight:
    """Вес: целый вектор в базисе L и необязательная кватернионная метка цвета"""
    vector: Tuple[int, ...]
    color: Optional[str] = None

    def __post_init__(self):
        if self.color is not None and self.color not in COLORS:
            raise DomainError(f"Метка цвета должна быть одной из {COLORS}, получено {self.color}")

    @property
    def constituents(self) -> int:
        return sum(abs(int(c)) for c in self.vector)


@dataclass(frozen=True)
class ParticleLabel:
    text: str
    kind: str
    colors: Tuple[Optional[str], ...]


def flavor(index: int) -> str:
    """L_1..L_4 -> u, d, s, c; далее q5, q6, ..."""
    return FLAVORS[index] if index < len(FLAVORS) else f"q{index + 1}"


def _is_lepton(weights: Sequence[Weight]) -> bool:
    if len(weights) != 1:
        return False
    nonzero = [c for c in weights[0].vector if c]
    return len(nonzero) == 1 and abs(nonzero[0]) == 2


def _weight_text(weight: Weight) -> str:
    parts = []
    for i, coef in enumerate(weight.vector):
        if not coef:
            continue
        prefix = str(abs(int(coef))) if abs(int(coef)) > 1 else ""
        parts.append(prefix + flavor(i) + (BAR if coef < 0 else ""))
    return "".join(parts)


def particle_label(weights: Sequence[Weight]) -> ParticleLabel:
    """
    Метка частицы по набору весов

    Одиночный вес ±2 L_i дает лептон ("2u"). Иначе класс определяется числом
    составляющих (сумма |коэффициентов|): 2 - мезон ("ud" для L_1 + L_2),
    3 - барион ("uud[i,j,k]" для L_1 i + L_1 j + L_2 k).
    Цвет допускается только у весов из одной составляющей.

    Raises:
        UnsupportedWeightCount: если набор не сводится к лептону, мезону или бариону
    """
    if not weights:
        raise UnsupportedWeightCount("Пустой набор весов")
    if _is_lepton(weights):
        kind = "lepton"
    else:
        kind = CLASSES.get(sum(w.constituents for w in weights))
        if kind in (None, "lepton"):
            raise UnsupportedWeightCount(
                f"Набор из {len(weights)} весов ({sum(w.constituents for w in weights)} составляющих) не поддерживается"
            )
    for w in weights:
        if w.color is not None and w.constituents != 1:
            raise DomainError(f"Цвет {w.color} задан у составного веса {w.vector}")

    colors = tuple(w.color for w in weights)
    text = "".join(_weight_text(w) for w in weights)
    if any(c is not None for c in colors):
        text += "[" + ",".join(c or "-" for c in colors) + "]"
    return ParticleLabel(text=text, kind=kind, colors=colors)


_LABEL_RE = re.compile(r"^(?P<letters>[^\[\]]+)(\[(?P<colors>[^\]]*)\])?$")
_LETTER_RE = re.compile(r"(\d*)(u|d|s|c|q\d+)(" + BAR + r"?)")


def _flavor_index(symbol: str) -> int:
    if symbol in FLAVORS:
        return FLAVORS.index(symbol)
    return int(symbol[1:]) - 1


def parse_label(text: str, n: int) -> List[Weight]:
    """
    Обратный разбор метки в набор весов для ранга n

    Метка с цветами дает по одному весу на каждую букву, метка без цветов
    дает один составной вес.

    Raises:
        DomainError: если метка не распознана
    """
    match = _LABEL_RE.match(text)
    if not match:
        raise DomainError(f"Метка не распознана: {text}")
    letters = match.group("letters")
    tokens = _LETTER_RE.findall(letters)
    if "".join(count + sym + bar for count, sym, bar in tokens) != letters:
        raise DomainError(f"Метка не распознана: {text}")
    signed = [(_flavor_index(sym), (int(count) if count else 1) * (-1 if bar else 1)) for count, sym, bar in tokens]
    if any(i >= n for i, _ in signed):
        raise DomainError(f"Метка {text} выходит за ранг {n}")

    colors_text = match.group("colors")
    if colors_text is not None:
        colors = [None if c == "-" else c for c in colors_text.split(",")]
        if len(colors) != len(signed):
            raise DomainError(f"Число цветов не совпадает с числом букв в {text}")
        return [Weight(tuple(_unit(n, i, s)), color) for (i, s), color in zip(signed, colors)]

    vector = [0] * n
    for i, s in signed:
        vector[i] += s
    return [Weight(tuple(vector))]


def weight_multiset(weights: Sequence[Weight]) -> Counter:
    return Counter((w.vector, w.color) for w in weights)


def euler_characteristic(sphere_dim: int) -> int:
    """
    chi(S^d) = 2 для четного d

    Raises:
        OddDimension: если d нечетно или меньше 2
    """
    if sphere_dim < 2 or sphere_dim % 2:
        raise OddDimension(f"Ожидалась четная размерность >= 2, получено {sphere_dim}")
    return 2


def root_table(system: RootSystem, dims: Optional[int] = None) -> List[Dict[str, object]]:
    """Строки для вывода: индекс, вектор корня и при необходимости проекция"""
    coords = projection(system.roots, dims) if dims else None
    rows = []
    for index, root in enumerate(system.roots):
        row: Dict[str, object] = {"index": index, "root": list(root)}
        if coords is not None:
            row.update({f"p{axis + 1}": float(coords[index, axis]) for axis in range(dims)})
        rows.append(row)
    return rows
