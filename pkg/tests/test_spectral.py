from __future__ import annotations

import math

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invariants.errors import ConfigError, GraphValidationError
from invariants.graph import Graph, VertexPermutation, permute
from invariants.precoloring import SpectralPreColoring
from invariants.spectral import (
    append_features,
    approximate_heat_diag,
    cospectral,
    graph_spectrum,
    heat_kernel,
    laplacian,
    quantize_rows,
    spectral_features,
    spectral_precoloring,
    vertex_features,
)
from invariants.wl import joint_refinement
from models.schemas import SpectralConfig
from tests.conftest import cycle
from tests.strategies import graphs, graphs_with_permutation

UNIT_TIME = SpectralConfig(t_min_exp=0, t_max_exp=0, m=1)
TIMES = st.floats(min_value=0.01, max_value=5.0)


def test_cycle_spectrum():
    np.testing.assert_allclose(graph_spectrum(cycle(4)).eigenvalues, [0.0, 2.0, 2.0, 4.0], atol=1e-10)


def test_solvers_agree(decalin_graph):
    jacobi = graph_spectrum(decalin_graph, solver="jacobi").eigenvalues
    lapack = graph_spectrum(decalin_graph, solver="lapack").eigenvalues
    np.testing.assert_allclose(jacobi, lapack, atol=1e-10)


@given(graphs(min_n=1, max_n=9))
@settings(max_examples=100, deadline=None)
def test_zero_multiplicity_counts_components(g):
    spec = graph_spectrum(g)
    assert spec.zero_multiplicity() == nx.number_connected_components(g.to_networkx())
    assert spec.eigenvalues[0] == pytest.approx(0.0, abs=1e-9)


@given(graphs(min_n=1, max_n=9), st.randoms(use_true_random=False))
@settings(max_examples=100, deadline=None)
def test_dirichlet_identity(g, random):
    x = np.array([random.uniform(-1, 1) for _ in range(g.n)])
    dirichlet = sum((x[u] - x[v]) ** 2 for u, v in g.edges)
    assert x @ laplacian(g) @ x == pytest.approx(dirichlet, abs=1e-9)


@given(graphs(min_n=1, max_n=9), TIMES, TIMES)
@settings(max_examples=100, deadline=None)
def test_heat_kernel_identities(g, s, t):
    spec = graph_spectrum(g)
    h_t = heat_kernel(spec, t).matrix
    np.testing.assert_allclose(h_t.sum(axis=1), 1.0, atol=1e-8)
    np.testing.assert_allclose(heat_kernel(spec, 0.0).matrix, np.eye(g.n), atol=1e-10)
    np.testing.assert_allclose(heat_kernel(spec, s + t).matrix, heat_kernel(spec, s).matrix @ h_t, atol=1e-7)
    assert np.trace(h_t) == pytest.approx(np.exp(-t * spec.eigenvalues).sum(), abs=1e-8)


@given(graphs(min_n=1, max_n=9), TIMES)
@settings(max_examples=100, deadline=None)
def test_heat_kernel_entries_non_negative(g, t):
    assert heat_kernel(graph_spectrum(g), t).matrix.min() >= -1e-10


@given(graphs_with_permutation(min_n=1, max_n=8), TIMES)
@settings(max_examples=100, deadline=None)
def test_heat_kernel_permutation_equivariance(case, t):
    g, sigma = case
    h = heat_kernel(graph_spectrum(g), t).matrix
    h_perm = heat_kernel(graph_spectrum(permute(g, sigma)), t).matrix
    order = np.array(sigma.mapping)
    np.testing.assert_allclose(h_perm[np.ix_(order, order)], h, atol=1e-8)


def test_negative_time_rejected(decalin_graph):
    with pytest.raises(ConfigError):
        heat_kernel(graph_spectrum(decalin_graph), -1.0)


# ─── Ознаки ──────────────────────────────────────────────────────────────────

def test_reference_diagonals_match_published_values(decalin_graph, bicyclopentyl_graph):
    diag_a = sorted(np.round(spectral_features(decalin_graph, UNIT_TIME).values[:, 0], 4).tolist())
    diag_b = sorted(np.round(spectral_features(bicyclopentyl_graph, UNIT_TIME).values[:, 0], 4).tolist())
    assert diag_a == sorted([0.1914] * 2 + [0.2891] * 4 + [0.3078] * 4)
    assert diag_b == sorted([0.1929] * 2 + [0.2910] * 4 + [0.3098] * 4)


def test_reference_precolorings_are_disjoint(decalin_graph, bicyclopentyl_graph):
    result = joint_refinement(decalin_graph, bicyclopentyl_graph, SpectralPreColoring(UNIT_TIME))
    assert not set(result.initial[0]) & set(result.initial[1])
    assert len(set(result.initial[0]) | set(result.initial[1])) == 6
    assert result.distinguishable


def test_feature_layout(decalin_graph):
    cfg = SpectralConfig.parse("(-1,1,3,MMM)")
    feats = spectral_features(decalin_graph, cfg)
    assert feats.values.shape == (10, cfg.feature_dim) == (10, 12)
    for i, t in enumerate(cfg.times()):
        h = heat_kernel(graph_spectrum(decalin_graph), float(t))
        np.testing.assert_allclose(feats.values[:, i], h.diagonal(), atol=1e-12)
        off = h.matrix[~np.eye(10, dtype=bool)].reshape(10, 9)
        np.testing.assert_allclose(feats.values[:, 3 + 3 * i], off.min(axis=1), atol=1e-12)
        np.testing.assert_allclose(feats.values[:, 5 + 3 * i], off.max(axis=1), atol=1e-12)


def test_single_vertex_quantiles_are_zero():
    feats = spectral_features(Graph.empty(1), SpectralConfig.parse("(0,0,1,max)"))
    assert feats.values.tolist() == [[1.0, 0.0]]


def test_quantize_removes_negative_zero():
    (row,) = quantize_rows(np.array([[-0.0, -1e-12, 0.1234567891]]), decimals=9)
    assert row == (0.0, 0.0, 0.123456789)
    assert all(math.copysign(1.0, x) == 1.0 for x in row[:2])


@given(graphs_with_permutation(min_n=1, max_n=8))
@settings(max_examples=50, deadline=None)
def test_spectral_precoloring_histogram_invariant(case):
    g, sigma = case
    cfg = SpectralConfig.parse("(-1,1,3,max)")
    assert spectral_precoloring(g, cfg).histogram() == spectral_precoloring(permute(g, sigma), cfg).histogram()


def test_sorted_rows_are_lexicographic(decalin_graph):
    rows = spectral_features(decalin_graph, SpectralConfig.parse("(-1,1,2,max)")).sorted_rows()
    assert [tuple(r) for r in rows.tolist()] == sorted(tuple(r) for r in rows.tolist())


def test_quantized_sorted_rows_ignore_vertex_order(decalin_graph, rng):
    cfg = SpectralConfig.parse("(-1,1,4,MMM)")
    shuffled = permute(decalin_graph, VertexPermutation.random(decalin_graph.n, rng))
    rows = spectral_features(decalin_graph, cfg).sorted_rows(decimals=6)
    np.testing.assert_array_equal(rows, spectral_features(shuffled, cfg).sorted_rows(decimals=6))
    np.testing.assert_array_equal(rows, np.round(rows, 6))


def test_append_features(decalin_graph):
    feats = spectral_features(decalin_graph, UNIT_TIME)
    combined = append_features(np.ones(10), feats)
    assert combined.shape == (10, 2)
    np.testing.assert_array_equal(combined[:, 1], feats.values[:, 0])
    with pytest.raises(GraphValidationError):
        append_features(np.ones((9, 3)), feats)


def test_cospectral_requires_equal_sizes():
    with pytest.raises(GraphValidationError):
        cospectral(cycle(3), cycle(4))


def test_graph_is_cospectral_with_its_permutation(decalin_graph, rng):
    assert cospectral(decalin_graph, permute(decalin_graph, VertexPermutation.random(10, rng)))
    assert not cospectral(cycle(6), Graph.from_edges(6, [(i, i + 1) for i in range(5)]))


# ─── Model order reduction ───────────────────────────────────────────────────

def test_mor_error_halves_with_step_count(decalin_graph):
    cfg = SpectralConfig(t_min_exp=0, t_max_exp=0, m=1, truncation=10)
    exact = heat_kernel(graph_spectrum(decalin_graph), 1.0).diagonal()
    errors = [
        np.max(np.abs(approximate_heat_diag(decalin_graph, cfg, steps=s).values[:, 0] - exact))
        for s in (200, 400, 800)
    ]
    for coarse, fine in zip(errors, errors[1:]):
        assert 0.45 <= fine / coarse <= 0.55


def test_mor_error_monotone_in_truncation(random_graph):
    for _ in range(20):
        g = random_graph(min_n=3, max_n=10)
        spec = graph_spectrum(g)

        def mor_diag(k: int) -> np.ndarray:
            cfg = SpectralConfig(t_min_exp=0, t_max_exp=0, m=1, truncation=k)
            return approximate_heat_diag(g, cfg, steps=500, spectrum=spec).values[:, 0]

        reference = mor_diag(g.n)
        errors = [float(np.sum(np.abs(mor_diag(k) - reference))) for k in range(1, g.n + 1)]
        assert errors[-1] == pytest.approx(0.0, abs=1e-12)
        for k in range(len(errors) - 1):
            assert errors[k + 1] <= errors[k] + 1e-12


def test_full_truncation_close_to_exact(decalin_graph):
    cfg = SpectralConfig.parse("(-1,1,3,none)", truncation=10)
    approx = vertex_features(decalin_graph, cfg)
    exact = spectral_features(decalin_graph, cfg.model_copy(update={"truncation": None}))
    np.testing.assert_allclose(approx.values, exact.values, atol=1e-3)


def test_mor_requires_valid_truncation(decalin_graph):
    with pytest.raises(ConfigError):
        approximate_heat_diag(decalin_graph, UNIT_TIME)
    with pytest.raises(ConfigError):
        approximate_heat_diag(decalin_graph, SpectralConfig(t_min_exp=0, t_max_exp=0, m=1, truncation=11))
    with pytest.raises(ConfigError):
        approximate_heat_diag(decalin_graph, SpectralConfig(t_min_exp=0, t_max_exp=0, m=1, truncation=2), steps=0)
