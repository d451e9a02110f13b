"""
Граф, перестановки вершин, еталонні молекули та brute-force оракул ізоморфізму.

Вершини: щільні id 0..n-1. Граф простий і неорієнтований, незмінний після створення.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx
import numpy as np
from loguru import logger

from cli.config import get_settings
from invariants.errors import CapabilityError, GraphValidationError
from models.schemas import ReferenceName

Edge = tuple[int, int]


# ─── Graph ───────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class Graph:
    """
    Простий неорієнтований граф.

    edges зберігає пари (u, v) з u < v; adjacency виводиться з edges
    (відсортовані списки сусідів) і в порівнянні не бере участі.
    """
    n: int
    edges: frozenset[Edge]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphValidationError(f"vertex count must be non-negative, got {self.n}")
        neighbours: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            if u == v:
                raise GraphValidationError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise GraphValidationError(f"edge ({u}, {v}) is not normalized for n={self.n}")
            neighbours[u].append(v)
            neighbours[v].append(u)
        object.__setattr__(self, "adjacency", tuple(tuple(sorted(nb)) for nb in neighbours))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Нормалізує порядок кінців і прибирає дублікати; петлі відхиляє."""
        normalized: set[Edge] = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphValidationError(f"self-loop at vertex {u}")
            normalized.add((u, v) if u < v else (v, u))
        return cls(n=n, edges=frozenset(normalized))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n=n, edges=frozenset())

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        relabeled = nx.convert_node_labels_to_integers(g, ordering="sorted")
        return cls.from_edges(relabeled.number_of_nodes(), relabeled.edges())

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    @property
    def number_of_edges(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.adjacency]

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges if u < v else (v, u) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.float64)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1.0
        return a

    def non_edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if (u, v) not in self.edges]

    def is_complete(self) -> bool:
        return self.number_of_edges == self.n * (self.n - 1) // 2

    def disjoint_union(self, other: "Graph") -> "Graph":
        """Вершини other зсуваються на self.n."""
        shifted = ((u + self.n, v + self.n) for u, v in other.edges)
        return Graph(n=self.n + other.n, edges=self.edges | frozenset(shifted))


# ─── Перестановки ────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class VertexPermutation:
    """Біекція на 0..n-1: вершина v переходить у mapping[v]."""
    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise GraphValidationError("permutation mapping is not a bijection on 0..n-1")

    @classmethod
    def identity(cls, n: int) -> "VertexPermutation":
        return cls(tuple(range(n)))

    @classmethod
    def swap(cls, n: int, i: int, j: int) -> "VertexPermutation":
        mapping = list(range(n))
        mapping[i], mapping[j] = mapping[j], mapping[i]
        return cls(tuple(mapping))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "VertexPermutation":
        return cls(tuple(int(x) for x in rng.permutation(n)))

    @property
    def n(self) -> int:
        return len(self.mapping)

    def __call__(self, v: int) -> int:
        return self.mapping[v]

    def inverse(self) -> "VertexPermutation":
        inv = [0] * self.n
        for v, target in enumerate(self.mapping):
            inv[target] = v
        return VertexPermutation(tuple(inv))

    def compose(self, first: "VertexPermutation") -> "VertexPermutation":
        """self ∘ first: спочатку first, потім self."""
        if first.n != self.n:
            raise GraphValidationError(f"cannot compose permutations of sizes {self.n} and {first.n}")
        return VertexPermutation(tuple(self.mapping[first.mapping[v]] for v in range(self.n)))


def permute(g: Graph, sigma: VertexPermutation) -> Graph:
    """Переносить ребра через sigma; результат ізоморфний g за побудовою."""
    if sigma.n != g.n:
        raise GraphValidationError(f"permutation size {sigma.n} does not match graph size {g.n}")
    return Graph.from_edges(g.n, ((sigma(u), sigma(v)) for u, v in g.edges))


# ─── Brute-force ізоморфізм ──────────────────────────────────────────────────

def brute_force_isomorphic(g1: Graph, g2: Graph, max_n: int | None = None) -> bool:
    """
    Експоненційний оракул: чи існує біекція, що переводить ребра в ребра.

    Перебір з поверненням по вершинах g1; кандидатами є вершини g2 того ж степеня,
    узгодженість перевіряється з уже зіставленими вершинами.
    """
    limit = max_n if max_n is not None else get_settings().brute_force_max_n
    if g1.n > limit or g2.n > limit:
        raise CapabilityError(f"brute-force isomorphism is capped at n <= {limit}, got {g1.n} and {g2.n}")

    if g1.n != g2.n or g1.number_of_edges != g2.number_of_edges:
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False

    n = g1.n
    # Спершу вершини високого степеня: раніше відсікаємо гілки
    order = sorted(range(n), key=lambda v: -g1.degree(v))
    mapping: dict[int, int] = {}
    used = [False] * n

    def extend(depth: int) -> bool:
        if depth == n:
            return True
        v = order[depth]
        for w in range(n):
            if used[w] or g2.degree(w) != g1.degree(v):
                continue
            if any(g1.has_edge(v, x) != g2.has_edge(w, y) for x, y in mapping.items()):
                continue
            mapping[v] = w
            used[w] = True
            if extend(depth + 1):
                return True
            del mapping[v]
            used[w] = False
        return False

    return extend(0)


# ─── Еталонні графи ──────────────────────────────────────────────────────────

def _cycle_edges(cycle: Sequence[int]) -> list[Edge]:
    return [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def decalin() -> Graph:
    """Два 6-цикли зі спільним ребром {0, 1}."""
    edges = _cycle_edges((0, 2, 3, 4, 5, 1)) + _cycle_edges((0, 6, 7, 8, 9, 1))
    return Graph.from_edges(10, edges)


def bicyclopentyl() -> Graph:
    """Два 5-цикли, з'єднані мостом {0, 5}."""
    edges = _cycle_edges((0, 1, 2, 3, 4)) + _cycle_edges((5, 6, 7, 8, 9)) + [(0, 5)]
    return Graph.from_edges(10, edges)


def reference_graph(name: ReferenceName | str) -> Graph:
    """
    Канонічні графи бенчмарків.

    cospectral_a / cospectral_b: заморожена пара, знайдена перебором
    (див. invariants.bench.cospectral_fixture).
    """
    name = ReferenceName(name)
    if name is ReferenceName.DECALIN:
        return decalin()
    if name is ReferenceName.BICYCLOPENTYL:
        return bicyclopentyl()

    from invariants.bench import cospectral_fixture

    g_a, g_b = cospectral_fixture()
    logger.debug(f"Loaded cospectral fixture for {name.value}")
    return g_a if name is ReferenceName.COSPECTRAL_A else g_b
