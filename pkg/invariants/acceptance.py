"""
Швидкі виконувані перевірки приймання для `selftest`.

Кожна перевірка повертає (passed, detail); раннер міряє час і збирає SelftestReport.
Повні статистичні прогони (1000-екземплярні бенчмарки, 200 пар для k=3) живуть у tests/.
"""
from __future__ import annotations

import itertools
import time
from typing import Callable

import networkx as nx
import numpy as np
from loguru import logger

from invariants.graph import Graph, VertexPermutation, bicyclopentyl, brute_force_isomorphic, decalin, permute
from invariants.kwl import diagonal_hierarchy_holds, verify_theorem2
from invariants.precoloring import ConstantPreColoring, DegreePreColoring, SpectralPreColoring
from invariants.spectral import (
    approximate_heat_diag,
    cospectral,
    graph_spectrum,
    heat_kernel,
    laplacian,
    spectral_features,
)
from invariants.wl import distinguishable, joint_refine, joint_refinement, refine_to_convergence
from models.schemas import CheckResult, SelftestReport, SpectralConfig

GOLDEN_DECALIN = sorted([0.1914] * 2 + [0.2891] * 4 + [0.3078] * 4)
GOLDEN_BICYCLOPENTYL = sorted([0.1929] * 2 + [0.2910] * 4 + [0.3098] * 4)
UNIT_TIME_CFG = SpectralConfig(t_min_exp=0, t_max_exp=0, m=1)

Check = Callable[[], tuple[bool, str]]


def random_graphs(count: int, max_n: int, seed: int, min_n: int = 1) -> list[Graph]:
    rng = np.random.default_rng(seed)
    graphs = []
    for _ in range(count):
        n = int(rng.integers(min_n, max_n + 1))
        p = float(rng.uniform(0.2, 0.7))
        graphs.append(Graph.from_networkx(nx.gnp_random_graph(n, p, seed=int(rng.integers(2**31)))))
    return graphs


def check_golden_heat_diagonals() -> tuple[bool, str]:
    diag_a = sorted(np.round(spectral_features(decalin(), UNIT_TIME_CFG).values[:, 0], 4).tolist())
    diag_b = sorted(np.round(spectral_features(bicyclopentyl(), UNIT_TIME_CFG).values[:, 0], 4).tolist())
    joint = joint_refinement(decalin(), bicyclopentyl(), SpectralPreColoring(UNIT_TIME_CFG))
    disjoint = not set(joint.initial[0]) & set(joint.initial[1])
    passed = diag_a == GOLDEN_DECALIN and diag_b == GOLDEN_BICYCLOPENTYL and disjoint
    return passed, f"decalin={diag_a} bicyclopentyl={diag_b} disjoint={disjoint}"


def check_wl_blindness() -> tuple[bool, str]:
    h1, h2 = joint_refine(decalin(), bicyclopentyl(), ConstantPreColoring())
    return h1 == h2 and h1.class_sizes() == [2, 4, 4], f"class sizes {h1.class_sizes()} vs {h2.class_sizes()}"


def check_spectral_separation() -> tuple[bool, str]:
    spectral = distinguishable(decalin(), bicyclopentyl(), SpectralPreColoring(UNIT_TIME_CFG))
    constant = distinguishable(decalin(), bicyclopentyl(), ConstantPreColoring())
    return spectral and not constant, f"spectral={spectral} constant={constant}"


def check_degree_equivalence() -> tuple[bool, str]:
    graphs = random_graphs(50, 12, seed=1)
    same = sum(
        refine_to_convergence(g, DegreePreColoring())[0].same_partition(refine_to_convergence(g, ConstantPreColoring())[0])
        for g in graphs
    )
    return same == len(graphs), f"{same}/{len(graphs)} partitions equal"


def check_heat_kernel_identities() -> tuple[bool, str]:
    rng = np.random.default_rng(7)
    failures = 0
    graphs = random_graphs(20, 10, seed=2, min_n=2)
    for g in graphs:
        spec = graph_spectrum(g)
        x = rng.normal(size=g.n)
        dirichlet = sum((x[u] - x[v]) ** 2 for u, v in g.edges)
        h = heat_kernel(spec, 0.7).matrix
        ok = (
            abs(x @ laplacian(g) @ x - dirichlet) <= 1e-9 * max(1.0, dirichlet)
            and np.allclose(h.sum(axis=1), 1.0, atol=1e-8)
            and np.allclose(heat_kernel(spec, 0.0).matrix, np.eye(g.n), atol=1e-10)
            and np.allclose(heat_kernel(spec, 1.2).matrix, h @ heat_kernel(spec, 0.5).matrix, atol=1e-7)
        )
        failures += not ok
    return failures == 0, f"{failures} failing graphs of {len(graphs)}"


def check_diagonal_equivalence_n4() -> tuple[bool, str]:
    graphs = [Graph.from_networkx(x) for x in nx.graph_atlas_g() if x.number_of_nodes() == 4]
    pairs = list(itertools.combinations(graphs, 2))
    holds = sum(verify_theorem2(a, b, 2) for a, b in pairs)
    return holds == len(pairs), f"{holds}/{len(pairs)} pairs over {len(graphs)} graphs"


def check_cospectral_fixture() -> tuple[bool, str]:
    from invariants.bench import cospectral_fixture

    g_a, g_b = cospectral_fixture()
    co = cospectral(g_a, g_b)
    dist = distinguishable(g_a, g_b, ConstantPreColoring())
    iso = brute_force_isomorphic(g_a, g_b)
    return co and dist and not iso, f"n={g_a.n} cospectral={co} distinguishable={dist} isomorphic={iso}"


def check_mor_first_order() -> tuple[bool, str]:
    g = decalin()
    cfg = SpectralConfig(t_min_exp=0, t_max_exp=0, m=1, truncation=g.n)
    exact = heat_kernel(graph_spectrum(g), 1.0).diagonal()
    errors = [float(np.max(np.abs(approximate_heat_diag(g, cfg, steps=s).values[:, 0] - exact))) for s in (200, 400, 800)]
    ratios = [errors[i + 1] / errors[i] for i in range(2)]
    return all(0.4 <= r <= 0.6 for r in ratios), f"errors={errors} ratios={ratios}"


def check_mor_truncation_monotone() -> tuple[bool, str]:
    # Похибка усічення рахується відносно MOR з k = n при тій самій кількості кроків
    monotone = 0
    graphs = random_graphs(20, 10, seed=6, min_n=3)
    for g in graphs:
        spec = graph_spectrum(g)
        diags = [
            approximate_heat_diag(
                g, SpectralConfig(t_min_exp=0, t_max_exp=0, m=1, truncation=k), steps=500, spectrum=spec
            ).values[:, 0]
            for k in range(1, g.n + 1)
        ]
        errors = [float(np.sum(np.abs(d - diags[-1]))) for d in diags]
        monotone += all(errors[k + 1] <= errors[k] + 1e-12 for k in range(len(errors) - 1))
    return monotone == len(graphs), f"{monotone}/{len(graphs)} graphs monotone in truncation"


def check_permutation_soundness() -> tuple[bool, str]:
    rng = np.random.default_rng(3)
    pre = SpectralPreColoring(SpectralConfig(t_min_exp=-1, t_max_exp=1, m=3))
    graphs = random_graphs(20, 8, seed=4)
    sound = sum(
        not distinguishable(g, permute(g, VertexPermutation.random(g.n, rng)), pre) for g in graphs
    )
    return sound == len(graphs), f"{sound}/{len(graphs)} permuted copies indistinguishable"


def observe_diagonal_hierarchy() -> tuple[bool, str]:
    # Інформаційна перевірка: фіксує спостереження, не валить selftest
    graphs = random_graphs(10, 6, seed=5, min_n=3)
    holds = sum(diagonal_hierarchy_holds(a, b) for a, b in zip(graphs[::2], graphs[1::2]))
    return True, f"Δ(3-WL) refines Δ(2-WL) on {holds}/{len(graphs) // 2} pairs"


CHECKS: dict[str, Check] = {
    "golden_heat_diagonals": check_golden_heat_diagonals,
    "wl_blindness": check_wl_blindness,
    "spectral_separation": check_spectral_separation,
    "degree_equivalence": check_degree_equivalence,
    "heat_kernel_identities": check_heat_kernel_identities,
    "permutation_soundness": check_permutation_soundness,
    "diagonal_equivalence_n4": check_diagonal_equivalence_n4,
    "mor_first_order": check_mor_first_order,
    "mor_truncation_monotone": check_mor_truncation_monotone,
    "cospectral_fixture": check_cospectral_fixture,
    "diagonal_hierarchy": observe_diagonal_hierarchy,
}


def run_checks(names: list[str] | None = None) -> SelftestReport:
    results = []
    for name, check in CHECKS.items():
        if names and name not in names:
            continue
        started = time.perf_counter()
        passed, detail = check()
        elapsed = time.perf_counter() - started
        logger.info(f"Check {name}: {'ok' if passed else 'FAILED'} ({elapsed:.2f}s) {detail}")
        results.append(CheckResult(name=name, passed=passed, detail=detail, seconds=round(elapsed, 3)))
    return SelftestReport(passed=all(r.passed for r in results), checks=results)
