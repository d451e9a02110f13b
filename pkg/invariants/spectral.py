"""
Спектральні інваріанти: комбінаторний лапласіан L = D - A, його розклад,
heat kernel H_t = Φ e^{-tΛ} Φᵀ, спектральні ознаки вершин і пре-кольорування.

Усі експортовані величини залежать лише від спектральних проекторів, тому
не чутливі до вибору базису у вироджених власних підпросторах.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from loguru import logger

from cli.config import get_settings
from invariants.eigen import jacobi_eigh
from invariants.errors import ConfigError, GraphValidationError
from invariants.graph import Graph
from invariants.wl import Coloring
from models.schemas import SpectralConfig

LaplacianMatrix = np.ndarray


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Власні значення за зростанням і ортонормовані власні вектори (стовпці)."""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def zero_multiplicity(self, tol: float = 1e-8) -> int:
        """Кількість компонент зв'язності."""
        return int(np.sum(np.abs(self.eigenvalues) <= tol))

    def truncated(self, k: int) -> "Spectrum":
        return Spectrum(self.eigenvalues[:k].copy(), self.eigenvectors[:, :k].copy())


@dataclass(frozen=True, eq=False)
class HeatKernel:
    t: float
    matrix: np.ndarray

    def diagonal(self) -> np.ndarray:
        return np.diag(self.matrix).copy()


@dataclass(frozen=True, eq=False)
class SpectralFeatures:
    """
    Рядок на вершину: спершу m діагональних значень H_t(u,u),
    потім для кожного t_i r квантилів рядка без діагоналі.
    """
    values: np.ndarray
    times: np.ndarray
    config: str

    @property
    def dim(self) -> int:
        return self.values.shape[1]

    def sorted_rows(self, decimals: int | None = None) -> np.ndarray:
        """
        Рядки в лексикографічному порядку: перестановочно-інваріантне представлення графа.

        З decimals рядки квантизуються до сортування, тож ізоморфні графи дають
        однаковий результат навіть при рівних перших стовпцях.
        """
        rows = self.values if decimals is None else np.round(self.values, decimals) + 0.0
        if rows.shape[0] == 0:
            return rows
        return rows[np.lexsort(rows.T[::-1])]


# ─── Лапласіан і розклад ─────────────────────────────────────────────────────

def laplacian(g: Graph) -> LaplacianMatrix:
    a = g.adjacency_matrix()
    return np.diag(a.sum(axis=1)) - a


def decompose(L: LaplacianMatrix, solver: str | None = None) -> Spectrum:
    """Повний розклад. solver: 'jacobi' (за замовчуванням) або 'lapack'."""
    solver = solver or get_settings().solver
    if solver == "lapack":
        values, vectors = np.linalg.eigh(L)
    else:
        values, vectors = jacobi_eigh(L)
    return Spectrum(values, vectors)


def graph_spectrum(g: Graph, solver: str | None = None) -> Spectrum:
    return decompose(laplacian(g), solver=solver)


def heat_kernel(spec: Spectrum, t: float) -> HeatKernel:
    if t < 0:
        raise ConfigError(f"heat kernel time must be non-negative, got {t}")
    phi = spec.eigenvectors
    matrix = (phi * np.exp(-spec.eigenvalues * t)) @ phi.T
    return HeatKernel(float(t), matrix)


# ─── Спектральні ознаки ──────────────────────────────────────────────────────

def _row_quantiles(h: np.ndarray, levels: list[float]) -> np.ndarray:
    """Квантилі рядків без діагонального елемента; лінійна інтерполяція порядкових статистик."""
    n = h.shape[0]
    if not levels:
        return np.zeros((n, 0))
    if n < 2:
        # Рядок без діагоналі порожній
        return np.zeros((n, len(levels)))
    off = h[~np.eye(n, dtype=bool)].reshape(n, n - 1)
    return np.quantile(off, levels, axis=1, method="linear").T


def spectral_features(g: Graph, cfg: SpectralConfig, spectrum: Spectrum | None = None) -> SpectralFeatures:
    spec = spectrum if spectrum is not None else graph_spectrum(g)
    times = cfg.times()
    levels = [q.level for q in cfg.quantiles]

    diagonals = []
    quantile_blocks = []
    for t in times:
        h = heat_kernel(spec, float(t)).matrix
        diagonals.append(np.diag(h))
        quantile_blocks.append(_row_quantiles(h, levels))

    diag_block = np.column_stack(diagonals) if g.n else np.zeros((0, cfg.m))
    values = np.hstack([diag_block] + quantile_blocks)
    return SpectralFeatures(values, times, cfg.label())


def quantize_rows(values: np.ndarray, decimals: int | None = None) -> list[tuple[float, ...]]:
    """Округлення до decimals знаків; +0.0 прибирає від'ємний нуль."""
    decimals = get_settings().quantize_decimals if decimals is None else decimals
    rounded = np.round(values, decimals) + 0.0
    return [tuple(row) for row in rounded.tolist()]


def spectral_precoloring(g: Graph, cfg: SpectralConfig) -> Coloring:
    """Spectral WL пре-кольорування: рівні квантизовані вектори ознак → рівні кольори."""
    return Coloring.from_labels(quantize_rows(spectral_features(g, cfg).values))


def append_features(existing: np.ndarray, features: SpectralFeatures) -> np.ndarray:
    """Дописує спектральні ознаки до наявних ознак вершин."""
    existing = np.asarray(existing, dtype=np.float64)
    if existing.ndim == 1:
        existing = existing[:, None]
    if existing.shape[0] != features.values.shape[0]:
        raise GraphValidationError(
            f"feature matrix has {existing.shape[0]} rows, graph has {features.values.shape[0]} vertices"
        )
    return np.hstack([existing, features.values])


def cospectral(g1: Graph, g2: Graph, tol: float = 1e-8) -> bool:
    if g1.n != g2.n:
        raise GraphValidationError(f"cospectrality needs equal sizes, got {g1.n} and {g2.n}")
    return bool(np.all(np.abs(graph_spectrum(g1).eigenvalues - graph_spectrum(g2).eigenvalues) <= tol))


# ─── Model order reduction ───────────────────────────────────────────────────

def approximate_heat_diag(
    g: Graph,
    cfg: SpectralConfig,
    steps: int | None = None,
    spectrum: Spectrum | None = None,
) -> SpectralFeatures:
    """
    Діагональ H̃_t з усіченої динаміки ẇ_k + Λ_k w_k = 0 (неявний Ейлер).

    Для кожної вершини u початкова умова w_k(0) = Φ_kᵀ e_u; після інтегрування
    до t читається H̃_t(u,u) = Φ_k[u,:] · w_k(t).
    """
    k = cfg.truncation
    if k is None:
        raise ConfigError("approximate_heat_diag requires cfg.truncation")
    if not 1 <= k <= g.n:
        raise ConfigError(f"truncation must be in 1..{g.n}, got {k}")
    steps = get_settings().euler_steps if steps is None else steps
    if steps < 1:
        raise ConfigError(f"Euler step count must be positive, got {steps}")

    reduced = (spectrum if spectrum is not None else graph_spectrum(g)).truncated(k)
    phi_k, lam_k = reduced.eigenvectors, reduced.eigenvalues

    times = cfg.times()
    columns = []
    for t in times:
        h = float(t) / steps
        damping = 1.0 + h * lam_k
        w = phi_k.T.copy()  # стовпець u: проекція одиничного імпульсу в u
        for _ in range(steps):
            w /= damping[:, None]
        columns.append(np.einsum("uj,ju->u", phi_k, w))

    logger.debug(f"MOR heat diagonal: n={g.n} k={k} steps={steps} samples={len(times)}")
    return SpectralFeatures(np.column_stack(columns), times, cfg.label())


def vertex_features(
    g: Graph,
    cfg: SpectralConfig,
    steps: int | None = None,
    spectrum: Spectrum | None = None,
) -> SpectralFeatures:
    """Точні ознаки або, якщо задано cfg.truncation, MOR-наближення діагоналі."""
    if cfg.truncation is not None:
        return approximate_heat_diag(g, cfg, steps=steps, spectrum=spectrum)
    return spectral_features(g, cfg, spectrum=spectrum)
