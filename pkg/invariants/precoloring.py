"""
Реалізації PreColoring для 1-WL.

constant   : C⁰ = CONST
degree     : D(u) = |N(u)|
spectral   : квантизовані heat-kernel ознаки (Spectral WL)
diag-kwl   : Δ(k-WL), рахується спільно для пари, щоб id були порівнювані
channels   : довільні перестановочно-еквіваріантні канали ознак користувача
"""
from __future__ import annotations

from typing import Callable, Hashable, Optional

import numpy as np

from invariants.errors import ConfigError
from invariants.graph import Graph
from invariants.kwl import kwl_refine_to_convergence
from invariants.spectral import quantize_rows, spectral_features
from invariants.wl import PreColoring
from models.schemas import PreColoringKind, SpectralConfig


class ConstantPreColoring(PreColoring):
    name = PreColoringKind.CONSTANT.value

    def labels(self, g: Graph) -> list[Hashable]:
        return [0] * g.n


class DegreePreColoring(PreColoring):
    name = PreColoringKind.DEGREE.value

    def labels(self, g: Graph) -> list[Hashable]:
        return g.degrees()


class SpectralPreColoring(PreColoring):
    name = PreColoringKind.SPECTRAL.value

    def __init__(self, cfg: SpectralConfig, decimals: Optional[int] = None):
        self.cfg = cfg
        self.decimals = decimals

    def labels(self, g: Graph) -> list[Hashable]:
        return quantize_rows(spectral_features(g, self.cfg).values, self.decimals)


class DiagonalKWLPreColoring(PreColoring):
    """1-Δ(k-WL)WL: на одному графі id з його власного k-WL, для пари зі спільного."""
    name = PreColoringKind.DIAG_KWL.value

    def __init__(self, k: int = 2):
        self.k = k

    def labels(self, g: Graph) -> list[Hashable]:
        tc, _ = kwl_refine_to_convergence(g, Graph.empty(0), self.k)
        return tc.diagonal_ids()

    def joint_labels(self, g1: Graph, g2: Graph) -> tuple[list[Hashable], list[Hashable]]:
        tc1, tc2 = kwl_refine_to_convergence(g1, g2, self.k)
        return tc1.diagonal_ids(), tc2.diagonal_ids()


FeatureFn = Callable[[Graph], np.ndarray]


class FeatureChannelPreColoring(PreColoring):
    """
    Канали ознак (n×d) → квантизовані кортежі.

    Кожна функція-канал повинна бути еквіваріантною: залежати лише від
    ізоморфно-інваріантних властивостей вершини.
    """
    name = "channels"

    def __init__(self, *channels: FeatureFn, decimals: Optional[int] = None):
        if not channels:
            raise ConfigError("at least one feature channel is required")
        self.channels = channels
        self.decimals = decimals

    def labels(self, g: Graph) -> list[Hashable]:
        blocks = []
        for channel in self.channels:
            block = np.asarray(channel(g), dtype=np.float64)
            blocks.append(block[:, None] if block.ndim == 1 else block.reshape(g.n, -1))
        values = np.hstack(blocks) if g.n else np.zeros((0, len(blocks)))
        return quantize_rows(values, self.decimals)

    def extended(self, *extra: FeatureFn) -> "FeatureChannelPreColoring":
        """R2 = (R1, додаткові канали)."""
        return FeatureChannelPreColoring(*self.channels, *extra, decimals=self.decimals)


def make_precoloring(
    kind: PreColoringKind | str,
    cfg: Optional[SpectralConfig] = None,
    k: int = 2,
) -> PreColoring:
    """Фабрика для CLI."""
    kind = PreColoringKind(kind)
    if kind is PreColoringKind.CONSTANT:
        return ConstantPreColoring()
    if kind is PreColoringKind.DEGREE:
        return DegreePreColoring()
    if kind is PreColoringKind.SPECTRAL:
        if cfg is None:
            raise ConfigError("spectral pre-coloring requires a spectral config")
        return SpectralPreColoring(cfg)
    return DiagonalKWLPreColoring(k)
