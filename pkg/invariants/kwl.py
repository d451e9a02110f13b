"""
k-WL кольорування впорядкованих k-кортежів (k ∈ {2, 3}) і діагональна проекція Δ(k-WL).

Ініціалізація: тип ізоморфізму впорядкованого індукованого підграфа, тобто матриця
k×k з 2 на рівних входженнях, 1 на ребрах і 0 інакше. Оновлення: для кожної позиції j
мультимножина кольорів кортежів, у яких j-ту вершину замінено на кожну w ∈ V.
Обидва графи уточнюються разом, палітра спільна.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from loguru import logger

from cli.config import get_settings
from invariants.errors import CapabilityError
from invariants.graph import Graph
from invariants.wl import ColorHistogram, Coloring, canonical_ids, refines

SUPPORTED_ARITIES = (2, 3)


@dataclass(frozen=True, eq=False)
class TupleColoring:
    """
    Таблиця кольорів n^k кортежів (mixed-radix індексування через numpy).

    palette_size: розмір спільної палітри пари; id щільні на об'єднанні обох графів.
    """
    k: int
    n: int
    colors: np.ndarray
    palette_size: int

    def color(self, tup: tuple[int, ...]) -> int:
        return int(self.colors[tup])

    def histogram(self) -> ColorHistogram:
        return ColorHistogram.of(self.colors.reshape(-1).tolist())

    def diagonal_ids(self) -> list[int]:
        """Кольори (v, ..., v) у спільній палітрі."""
        return [int(self.colors[(v,) * self.k]) for v in range(self.n)]

    def to_debug_json(self) -> dict[str, int]:
        return {
            ",".join(map(str, tup)): int(self.colors[tup])
            for tup in itertools.product(range(self.n), repeat=self.k)
        }


def _check_guards(g1: Graph, g2: Graph, k: int) -> None:
    if k not in SUPPORTED_ARITIES:
        raise CapabilityError(f"k-WL supports k in {SUPPORTED_ARITIES}, got k={k}")
    limit = get_settings().kwl_max_n
    if g1.n > limit or g2.n > limit:
        raise CapabilityError(f"k-WL is capped at n <= {limit}, got {g1.n} and {g2.n}")


def _atomic_type(g: Graph, tup: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(2 if a == b else (1 if g.has_edge(a, b) else 0) for b in tup)
        for a in tup
    )


def _split(ids: list[int], g1: Graph, k: int, g2: Graph, palette: int) -> tuple[TupleColoring, TupleColoring]:
    size1 = g1.n ** k
    first = np.array(ids[:size1], dtype=np.int64).reshape((g1.n,) * k)
    second = np.array(ids[size1:], dtype=np.int64).reshape((g2.n,) * k)
    return TupleColoring(k, g1.n, first, palette), TupleColoring(k, g2.n, second, palette)


def kwl_initialize(g1: Graph, g2: Graph, k: int) -> tuple[TupleColoring, TupleColoring]:
    """Кортежі обох графів ділять колір тоді й лише тоді, коли збігаються їхні атомарні типи."""
    _check_guards(g1, g2, k)
    signatures = [
        _atomic_type(g, tup)
        for g in (g1, g2)
        for tup in itertools.product(range(g.n), repeat=k)
    ]
    ids, palette = canonical_ids(signatures)
    return _split(ids, g1, k, g2, palette)


def _signatures(tc: TupleColoring) -> list[tuple]:
    n, k, colors = tc.n, tc.k, tc.colors
    # fibers[j][r]: відсортована мультимножина вздовж осі j,
    # r: плаский індекс решти k-1 координат
    fibers: list[list[tuple[int, ...]]] = []
    for j in range(k):
        moved = np.moveaxis(np.sort(colors, axis=j), j, -1)
        fibers.append([tuple(row) for row in moved.reshape(-1, n).tolist()] if n else [])

    signatures = []
    for tup in itertools.product(range(n), repeat=k):
        parts = [int(colors[tup])]
        for j in range(k):
            rest = tup[:j] + tup[j + 1:]
            flat = 0
            for x in rest:
                flat = flat * n + x
            parts.append(fibers[j][flat])
        signatures.append(tuple(parts))
    return signatures


def kwl_step(tc1: TupleColoring, tc2: TupleColoring, g1: Graph, g2: Graph) -> tuple[TupleColoring, TupleColoring]:
    ids, palette = canonical_ids(_signatures(tc1) + _signatures(tc2))
    return _split(ids, g1, tc1.k, g2, palette)


def kwl_refine_to_convergence(g1: Graph, g2: Graph, k: int) -> tuple[TupleColoring, TupleColoring]:
    """Ітерує до стабільного розбиття; палітра не спадає і обмежена n^k."""
    tc1, tc2 = kwl_initialize(g1, g2, k)
    iterations = 0
    while True:
        nxt1, nxt2 = kwl_step(tc1, tc2, g1, g2)
        if nxt1.palette_size == tc1.palette_size:
            logger.debug(f"{k}-WL converged: n=({g1.n}, {g2.n}) palette={nxt1.palette_size} iterations={iterations}")
            return nxt1, nxt2
        tc1, tc2 = nxt1, nxt2
        iterations += 1


def diagonal_coloring(tc: TupleColoring) -> Coloring:
    """Δ(k-WL)(v) = C(v, ..., v), перенумеровано щільно в межах одного графа."""
    return Coloring.from_labels(tc.diagonal_ids())


def verify_theorem2(g1: Graph, g2: Graph, k: int) -> bool:
    """Рівність діагональних гістограм ⟺ рівність повних гістограм кортежів."""
    tc1, tc2 = kwl_refine_to_convergence(g1, g2, k)
    full_equal = tc1.histogram() == tc2.histogram()
    diag_equal = ColorHistogram.of(tc1.diagonal_ids()) == ColorHistogram.of(tc2.diagonal_ids())
    return full_equal == diag_equal


def diagonal_hierarchy_holds(g1: Graph, g2: Graph) -> bool:
    """Чи уточнює Δ(3-WL) кольорування Δ(2-WL) на об'єднанні пари (емпірична перевірка)."""
    d3 = [tc.diagonal_ids() for tc in kwl_refine_to_convergence(g1, g2, 3)]
    d2 = [tc.diagonal_ids() for tc in kwl_refine_to_convergence(g1, g2, 2)]
    return refines(Coloring.from_labels(d3[0] + d3[1]), Coloring.from_labels(d2[0] + d2[1]))
