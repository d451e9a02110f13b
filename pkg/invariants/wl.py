"""
1-WL color refinement з довільним пре-кольоруванням.

Порівнюваність гістограм двох графів досягається уточненням їхнього диз'юнктного
об'єднання: нові id кольорів призначаються канонічно (лексикографічне сортування
сигнатур), тому однакові сигнатури в обох графах отримують один і той самий id.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Hashable, Sequence

from loguru import logger

from invariants.errors import GraphValidationError
from invariants.graph import Graph
from models.schemas import ColoringModel


def canonical_ids(labels: Sequence[Any]) -> tuple[list[int], int]:
    """Щільні id у порядку сортування унікальних міток. Повертає (ids, palette_size)."""
    palette = sorted(set(labels))
    index = {label: i for i, label in enumerate(palette)}
    return [index[label] for label in labels], len(palette)


# ─── Типи ────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class ColorHistogram:
    """Мультимножина кольорів: відсортовані пари (color, count)."""
    counts: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, colors: Sequence[int]) -> "ColorHistogram":
        tally: dict[int, int] = {}
        for c in colors:
            tally[c] = tally.get(c, 0) + 1
        return cls(tuple(sorted(tally.items())))

    @property
    def total(self) -> int:
        return sum(count for _, count in self.counts)

    def class_sizes(self) -> list[int]:
        return sorted(count for _, count in self.counts)

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def to_json(self) -> dict[str, int]:
        return {str(color): count for color, count in self.counts}


@dataclass(frozen=True)
class Coloring:
    """Вершина → щільний id кольору."""
    colors: tuple[int, ...]
    palette_size: int

    def __post_init__(self) -> None:
        if set(self.colors) != set(range(self.palette_size)):
            raise GraphValidationError("coloring ids must be dense in 0..palette_size-1")

    @classmethod
    def from_labels(cls, labels: Sequence[Any]) -> "Coloring":
        ids, size = canonical_ids(labels)
        return cls(tuple(ids), size)

    @classmethod
    def constant(cls, n: int) -> "Coloring":
        return cls((0,) * n, 1 if n else 0)

    @property
    def n(self) -> int:
        return len(self.colors)

    def histogram(self) -> ColorHistogram:
        return ColorHistogram.of(self.colors)

    def same_partition(self, other: "Coloring") -> bool:
        return refines(self, other) and refines(other, self)

    def to_dict(self) -> dict[str, Any]:
        return ColoringModel(colors=list(self.colors), palette_size=self.palette_size).model_dump()


class PreColoring(ABC):
    """
    Початкове кольорування Graph → Coloring.

    labels() повертає сортовані мітки вершин; joint_labels() дає мітки двох графів
    у спільному просторі (перевизначається там, де мітки залежать від пари).
    Реалізації: invariants.precoloring.
    """
    name: str = "precoloring"

    @abstractmethod
    def labels(self, g: Graph) -> list[Hashable]:
        ...

    def joint_labels(self, g1: Graph, g2: Graph) -> tuple[list[Hashable], list[Hashable]]:
        return self.labels(g1), self.labels(g2)

    def __call__(self, g: Graph) -> Coloring:
        return Coloring.from_labels(self.labels(g))


# ─── Операції ────────────────────────────────────────────────────────────────

def refine_step(g: Graph, c: Coloring) -> Coloring:
    """Новий колір = (старий колір, відсортована мультимножина кольорів сусідів)."""
    if c.n != g.n:
        raise GraphValidationError(f"coloring covers {c.n} vertices, graph has {g.n}")
    signatures = [
        (c.colors[v], tuple(sorted(c.colors[x] for x in g.adjacency[v])))
        for v in range(g.n)
    ]
    return Coloring.from_labels(signatures)


def _fixpoint(g: Graph, c: Coloring) -> tuple[Coloring, int]:
    # Сигнатура містить старий колір, тож нове розбиття уточнює старе:
    # рівна кількість класів означає те саме розбиття.
    iterations = 0
    while True:
        nxt = refine_step(g, c)
        if nxt.palette_size == c.palette_size:
            return nxt, iterations
        c = nxt
        iterations += 1


def refine_to_convergence(g: Graph, pre: PreColoring | Coloring) -> tuple[Coloring, int]:
    """
    Уточнює до нерухомої точки. iterations: кількість кроків, що змінили розбиття
    (0, якщо вхід уже стабільний); завжди < n.
    """
    start = pre if isinstance(pre, Coloring) else pre(g)
    final, iterations = _fixpoint(g, start)
    logger.debug(f"1-WL converged: n={g.n} palette={final.palette_size} iterations={iterations}")
    return final, iterations


@dataclass(frozen=True)
class JointRefinement:
    """Результат спільного уточнення пари: початкові та фінальні id у спільній палітрі."""
    initial: tuple[list[int], list[int]]
    final: tuple[list[int], list[int]]
    palette_size: int
    iterations: int

    @property
    def histograms(self) -> tuple[ColorHistogram, ColorHistogram]:
        return ColorHistogram.of(self.final[0]), ColorHistogram.of(self.final[1])

    @property
    def distinguishable(self) -> bool:
        h1, h2 = self.histograms
        return h1 != h2


def joint_refinement(g1: Graph, g2: Graph, pre: PreColoring) -> JointRefinement:
    labels1, labels2 = pre.joint_labels(g1, g2)
    start = Coloring.from_labels(list(labels1) + list(labels2))

    union = g1.disjoint_union(g2)
    final, iterations = _fixpoint(union, start)

    n1 = g1.n
    return JointRefinement(
        initial=(list(start.colors[:n1]), list(start.colors[n1:])),
        final=(list(final.colors[:n1]), list(final.colors[n1:])),
        palette_size=final.palette_size,
        iterations=iterations,
    )


def joint_refine(g1: Graph, g2: Graph, pre: PreColoring) -> tuple[ColorHistogram, ColorHistogram]:
    """Гістограми обох графів над спільною палітрою після збіжності."""
    return joint_refinement(g1, g2, pre).histograms


def distinguishable(g1: Graph, g2: Graph, pre: PreColoring) -> bool:
    return joint_refinement(g1, g2, pre).distinguishable


def refines(c_fine: Coloring, c_coarse: Coloring) -> bool:
    """Рівні fine-кольори тягнуть рівні coarse-кольори."""
    if c_fine.n != c_coarse.n:
        raise GraphValidationError(f"colorings cover {c_fine.n} and {c_coarse.n} vertices")
    image: dict[int, int] = {}
    for fine, coarse in zip(c_fine.colors, c_coarse.colors):
        if image.setdefault(fine, coarse) != coarse:
            return False
    return True
