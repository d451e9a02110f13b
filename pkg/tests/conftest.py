from __future__ import annotations

import os
from typing import Callable

import networkx as nx
import numpy as np
import pytest

from cli.config import get_settings
from invariants.graph import Graph, bicyclopentyl, decalin


@pytest.fixture(scope="session", autouse=True)
def isolated_settings(tmp_path_factory):
    """Кеш коспектральної пари в тимчасовій директорії, .env не впливає на тести."""
    os.environ["WLSPECTRA_FIXTURE_DIR"] = str(tmp_path_factory.mktemp("fixtures"))
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def decalin_graph() -> Graph:
    return decalin()


@pytest.fixture
def bicyclopentyl_graph() -> Graph:
    return bicyclopentyl()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def random_graph(rng) -> Callable[..., Graph]:
    def factory(min_n: int = 1, max_n: int = 10, p: float | None = None) -> Graph:
        n = int(rng.integers(min_n, max_n + 1))
        prob = float(rng.uniform(0.2, 0.7)) if p is None else p
        return Graph.from_networkx(nx.gnp_random_graph(n, prob, seed=int(rng.integers(2**31))))

    return factory


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def two_triangles() -> Graph:
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
