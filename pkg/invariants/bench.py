"""
Синтетичні бенчмарки розрізнюваності.

Кожен екземпляр: випадкове джерело з пари, додане або видалене одне ребро,
випадкова перенумерація вершин. Стратифікований спліт train/test 9:1.
Замість GNN базові класифікатори без гіперпараметрів зі scikit-learn:
найближчий центроїд (основний) або 1-найближчий сусід на відсортованих
спектральних ознаках.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Literal, Optional, Sequence

import networkx as nx
import numpy as np
from loguru import logger
from sklearn.base import ClassifierMixin
from sklearn.metrics import accuracy_score
from sklearn.model_selection import train_test_split
from sklearn.neighbors import KNeighborsClassifier, NearestCentroid

from cli.config import get_settings
from invariants.errors import CapabilityError, ConfigError, DatasetError, SearchExhaustedError
from invariants.graph import Edge, Graph, VertexPermutation, brute_force_isomorphic, permute
from invariants.precoloring import ConstantPreColoring
from invariants.spectral import Spectrum, graph_spectrum, vertex_features
from invariants.wl import distinguishable
from models.schemas import BaselineResult, SpectralConfig

TEST_FRACTION = 0.1
ATLAS_MAX_N = 7  # graph atlas networkx містить усі графи до 7 вершин
SEARCH_MAX_N = 9

Operation = Literal["add", "remove"]


# ─── Типи ────────────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class BenchmarkInstance:
    """Збурена копія джерела; op та edge записані в нумерації джерела."""
    graph: Graph
    label: int
    op: Operation
    edge: Edge
    permutation: VertexPermutation

    def recover_source(self) -> Graph:
        unpermuted = permute(self.graph, self.permutation.inverse())
        if self.op == "add":
            edges = unpermuted.edges - {self.edge}
        else:
            edges = unpermuted.edges | {self.edge}
        return Graph(n=unpermuted.n, edges=frozenset(edges))


@dataclass(frozen=True)
class BenchmarkDataset:
    sources: tuple[Graph, Graph]
    instances: tuple[BenchmarkInstance, ...]
    train: tuple[int, ...]
    test: tuple[int, ...]
    seed: int

    @property
    def labels(self) -> list[int]:
        return [inst.label for inst in self.instances]


# ─── Генерація ───────────────────────────────────────────────────────────────

def _can_perturb(g: Graph) -> bool:
    # remove валідний при ≥ 2 ребрах (інакше граф стане порожнім),
    # add валідний при ≥ 2 відсутніх ребрах (інакше стане повним)
    return g.number_of_edges >= 2 or len(g.non_edges()) >= 2


def _perturb(g: Graph, rng: np.random.Generator) -> tuple[Operation, Edge, Graph]:
    while True:
        op: Operation = "add" if rng.integers(2) == 0 else "remove"
        candidates = g.non_edges() if op == "add" else g.sorted_edges()
        if not candidates:
            continue
        edge = candidates[int(rng.integers(len(candidates)))]
        if op == "add":
            result = Graph(n=g.n, edges=g.edges | {edge})
            if result.is_complete():
                continue
        else:
            result = Graph(n=g.n, edges=g.edges - {edge})
            if result.number_of_edges == 0:
                continue
        return op, edge, result


def _split(labels: Sequence[int], rng: np.random.Generator) -> tuple[list[int], list[int]]:
    count = len(labels)
    n_test = max(1, int(round(count * TEST_FRACTION)))
    y = np.asarray(labels)
    counts = np.bincount(y, minlength=2)
    # Стратифікація потребує ≥ 2 екземплярів кожної мітки і ≥ 2 місць у кожному спліті
    stratify = y if counts.min() >= 2 and min(n_test, count - n_test) >= 2 else None
    if stratify is None:
        logger.warning(f"Benchmark split is not stratified: count={count} label_counts={counts.tolist()}")

    train, test = train_test_split(
        np.arange(count),
        test_size=n_test,
        stratify=stratify,
        shuffle=True,
        random_state=int(rng.integers(2**31 - 1)),
    )
    return sorted(train.tolist()), sorted(test.tolist())


def generate_benchmark(g0: Graph, g1: Graph, count: int, seed: int) -> BenchmarkDataset:
    """Детермінований за seed: порядок викликів RNG визначає датасет."""
    if count < 2:
        raise DatasetError(f"benchmark needs at least 2 instances, got {count}")
    for g in (g0, g1):
        if not _can_perturb(g):
            raise DatasetError(f"source with n={g.n}, m={g.number_of_edges} admits no valid perturbation")

    rng = np.random.default_rng(seed)
    sources = (g0, g1)
    instances = []
    for _ in range(count):
        label = int(rng.integers(2))
        op, edge, perturbed = _perturb(sources[label], rng)
        sigma = VertexPermutation.random(perturbed.n, rng)
        instances.append(BenchmarkInstance(permute(perturbed, sigma), label, op, edge, sigma))

    train, test = _split([inst.label for inst in instances], rng)
    logger.info(f"Benchmark generated: count={count} seed={seed} train={len(train)} test={len(test)}")
    return BenchmarkDataset(sources, tuple(instances), tuple(train), tuple(test), seed)


# ─── Пошук коспектральної пари ───────────────────────────────────────────────

def find_cospectral_wl_distinguishable(
    max_n: int = ATLAS_MAX_N,
    tol: float = 1e-8,
    connected_only: bool = False,
) -> tuple[Graph, Graph]:
    """
    Перша пара (i, j), i < j, у порядку graph atlas: неізоморфні графи з рівними
    спектрами лапласіана, які 1-WL розрізняє.
    """
    if max_n > SEARCH_MAX_N:
        raise CapabilityError(f"cospectral search is capped at max_n <= {SEARCH_MAX_N}, got {max_n}")
    limit = min(max_n, ATLAS_MAX_N)

    by_size: dict[int, list[Graph]] = {}
    for atlas_graph in nx.graph_atlas_g():
        size = atlas_graph.number_of_nodes()
        if not 2 <= size <= limit:
            continue
        if connected_only and not nx.is_connected(atlas_graph):
            continue
        by_size.setdefault(size, []).append(Graph.from_networkx(atlas_graph))

    constant = ConstantPreColoring()
    for size in sorted(by_size):
        graphs = by_size[size]
        spectra = np.array([graph_spectrum(g).eigenvalues for g in graphs])
        for i in range(len(graphs) - 1):
            close = np.all(np.abs(spectra[i + 1:] - spectra[i]) <= tol, axis=1)
            for j in (i + 1 + np.flatnonzero(close)).tolist():
                g_a, g_b = graphs[i], graphs[j]
                if brute_force_isomorphic(g_a, g_b):
                    continue
                if distinguishable(g_a, g_b, constant):
                    logger.info(f"Cospectral pair found: n={size} edges={g_a.number_of_edges}")
                    return g_a, g_b
        logger.debug(f"No cospectral 1-WL distinguishable pair with n={size}")

    raise SearchExhaustedError(f"no cospectral 1-WL distinguishable pair with n <= {limit}")


def cospectral_fixture(directory: Optional[str | Path] = None) -> tuple[Graph, Graph]:
    """Заморожена пара: читається з кешу або знаходиться один раз і зберігається."""
    from storage.repository import load_cospectral_fixture, save_cospectral_fixture

    root = Path(directory if directory is not None else get_settings().fixture_dir)
    cached = load_cospectral_fixture(root)
    if cached is not None:
        return cached
    pair = find_cospectral_wl_distinguishable()
    save_cospectral_fixture(root, pair)
    return pair


# ─── Базовий класифікатор ────────────────────────────────────────────────────

Classifier = Literal["centroid", "neighbor"]

_ESTIMATORS: dict[str, Callable[[], ClassifierMixin]] = {
    "centroid": NearestCentroid,
    "neighbor": lambda: KNeighborsClassifier(n_neighbors=1),
}


def instance_vector(
    g: Graph,
    cfg: Optional[SpectralConfig],
    spectrum: Optional[Spectrum] = None,
) -> np.ndarray:
    """Квантизовані відсортовані рядки ознак, сплющені; cfg=None дає константні ознаки (одиниці)."""
    if cfg is None:
        return np.ones(g.n)
    features = vertex_features(g, cfg, spectrum=spectrum)
    return features.sorted_rows(decimals=get_settings().quantize_decimals).reshape(-1)


def baseline_eval(
    ds: BenchmarkDataset,
    cfg: Optional[SpectralConfig],
    spectra: Optional[Sequence[Spectrum]] = None,
    classifier: Classifier = "centroid",
) -> float:
    """
    Навчає класифікатор на train і повертає точність на test.

    centroid: найближчий центроїд мітки, нічия на користь меншої мітки.
    neighbor: 1-найближчий сусід.
    """
    if classifier not in _ESTIMATORS:
        raise ConfigError(f"unknown baseline classifier {classifier!r}")
    if not ds.train or not ds.test:
        raise DatasetError("baseline evaluation needs non-empty train and test splits")

    vectors = [
        instance_vector(inst.graph, cfg, spectra[i] if spectra is not None else None)
        for i, inst in enumerate(ds.instances)
    ]
    width = max(len(v) for v in vectors)
    features = np.zeros((len(vectors), width))
    for i, v in enumerate(vectors):
        features[i, : len(v)] = v  # Джерела різного розміру доповнюються нулями
    labels = np.array(ds.labels)

    train, test = np.array(ds.train), np.array(ds.test)
    present = np.unique(labels[train])
    if present.size < 2:
        logger.warning(f"Train split holds label {int(present[0])} only; predicting it everywhere")
        predicted = np.full(test.size, present[0])
    else:
        model = _ESTIMATORS[classifier]().fit(features[train], labels[train])
        predicted = model.predict(features[test])
    return float(accuracy_score(labels[test], predicted))


def nearest_centroid_eval(
    ds: BenchmarkDataset,
    cfg: Optional[SpectralConfig],
    spectra: Optional[Sequence[Spectrum]] = None,
) -> float:
    return baseline_eval(ds, cfg, spectra, classifier="centroid")


def run_ablation(
    ds: BenchmarkDataset,
    configs: Iterable[SpectralConfig],
    classifier: Classifier = "centroid",
) -> list[BaselineResult]:
    """Точність базового класифікатора для кожної конфігурації; спектри рахуються один раз."""
    spectra = [graph_spectrum(inst.graph) for inst in ds.instances]
    results = []
    for cfg in configs:
        accuracy = baseline_eval(ds, cfg, spectra, classifier)
        logger.info(f"Baseline {classifier} {cfg.label()}: accuracy={accuracy:.3f}")
        results.append(BaselineResult(config=cfg.label(), classifier=classifier, accuracy=accuracy))
    return results


def mean_accuracy(
    g0: Graph,
    g1: Graph,
    cfg: Optional[SpectralConfig],
    seeds: Iterable[int],
    count: int = 1000,
    classifier: Classifier = "centroid",
) -> float:
    """Середня точність по кількох seed (повторення замість 100 запусків навчання)."""
    scores = [baseline_eval(generate_benchmark(g0, g1, count, seed), cfg, classifier=classifier) for seed in seeds]
    return float(np.mean(scores))
