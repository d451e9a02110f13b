"""
Pydantic v2 моделі: спектральна конфігурація, її граматика та JSON-звіти CLI.

Компактна граматика конфігурації для скриптів абляції:
"(start_exp,end_exp,samples,quantiles)", де quantiles ∈ {none, max, MMM}
або явний список через "+" (наприклад "min+max").
"""
from __future__ import annotations

import re
from enum import Enum
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from invariants.errors import ConfigError


class Quantile(str, Enum):
    MIN = "min"
    MEDIAN = "median"
    MAX = "max"

    @property
    def level(self) -> float:
        return QUANTILE_LEVELS[self]


QUANTILE_LEVELS: dict[Quantile, float] = {
    Quantile.MIN: 0.0,
    Quantile.MEDIAN: 0.5,
    Quantile.MAX: 1.0,
}

# Скорочені назви наборів квантилів
QUANTILE_ALIASES: dict[str, tuple[Quantile, ...]] = {
    "none": (),
    "max": (Quantile.MAX,),
    "mmm": (Quantile.MIN, Quantile.MEDIAN, Quantile.MAX),
}


class ReferenceName(str, Enum):
    DECALIN = "decalin"
    BICYCLOPENTYL = "bicyclopentyl"
    COSPECTRAL_A = "cospectral_a"
    COSPECTRAL_B = "cospectral_b"


class PreColoringKind(str, Enum):
    CONSTANT = "constant"
    DEGREE = "degree"
    SPECTRAL = "spectral"
    DIAG_KWL = "diag-kwl"


# ─── SpectralConfig ──────────────────────────────────────────────────────────

_CFG_RE = re.compile(
    r"^\(\s*([+-]?\d+(?:\.\d+)?)\s*,\s*([+-]?\d+(?:\.\d+)?)\s*,\s*(\d+)\s*,\s*([A-Za-z+]+)\s*\)$"
)


class SpectralConfig(BaseModel):
    """Параметри спектрального пре-кольорування: діапазон часу, кількість семплів, квантилі."""
    model_config = ConfigDict(frozen=True)

    t_min_exp: float = Field(description="Початок діапазону семплювання, степінь 10")
    t_max_exp: float = Field(description="Кінець діапазону семплювання, степінь 10")
    m: int = Field(ge=1, description="Кількість точок у часі")
    quantiles: tuple[Quantile, ...] = ()
    truncation: Optional[int] = Field(None, ge=1, description="Кількість найменших власних пар для MOR")

    @field_validator("quantiles")
    @classmethod
    def _ascending(cls, value: tuple[Quantile, ...]) -> tuple[Quantile, ...]:
        return tuple(sorted(set(value), key=lambda q: q.level))

    @model_validator(mode="after")
    def _check_range(self) -> "SpectralConfig":
        if self.t_min_exp > self.t_max_exp:
            raise ValueError("t_min_exp must not exceed t_max_exp")
        return self

    @property
    def r(self) -> int:
        return len(self.quantiles)

    @property
    def feature_dim(self) -> int:
        return self.m * (1 + self.r)

    def times(self) -> np.ndarray:
        """Логарифмічно рівномірні моменти часу; при m=1 єдиний семпл 10^t_min_exp."""
        if self.m == 1:
            return np.array([10.0 ** self.t_min_exp])
        return np.logspace(self.t_min_exp, self.t_max_exp, self.m)

    def label(self) -> str:
        if not self.quantiles:
            q = "none"
        elif self.quantiles == QUANTILE_ALIASES["mmm"]:
            q = "MMM"
        else:
            q = "+".join(x.value for x in self.quantiles)
        return f"({_fmt_exp(self.t_min_exp)},{_fmt_exp(self.t_max_exp)},{self.m},{q})"

    @classmethod
    def parse(cls, text: str, truncation: Optional[int] = None) -> "SpectralConfig":
        """'(-1,1,10,none)' → SpectralConfig. Помилки граматики → ConfigError."""
        match = _CFG_RE.match(text.strip())
        if not match:
            raise ConfigError(f"spectral config must look like '(a,b,m,q)', got {text!r}")
        start, end, samples, q_raw = match.groups()

        q_key = q_raw.lower()
        if q_key in QUANTILE_ALIASES:
            quantiles = QUANTILE_ALIASES[q_key]
        else:
            try:
                quantiles = tuple(Quantile(part) for part in q_key.split("+"))
            except ValueError as exc:
                raise ConfigError(f"unknown quantile set {q_raw!r}") from exc

        try:
            return cls(
                t_min_exp=float(start),
                t_max_exp=float(end),
                m=int(samples),
                quantiles=quantiles,
                truncation=truncation,
            )
        except ValidationError as exc:
            raise ConfigError(f"invalid spectral config {text!r}: {exc.errors()[0]['msg']}") from exc


def _fmt_exp(value: float) -> str:
    return str(int(value)) if value == int(value) else str(value)


# Конфігурації за замовчуванням для bench
BENCH_DEFAULT_CONFIGS: tuple[str, ...] = ("(-1,1,10,none)", "(-1,1,5,max)")


# ─── Звіти CLI ────────────────────────────────────────────────────────────────

class ColoringModel(BaseModel):
    colors: list[int]
    palette_size: int


class WLReport(BaseModel):
    """Вердикт команди wl."""
    distinguishable: bool
    iterations: int
    pre: PreColoringKind
    histograms: list[dict[str, int]]
    colorings: list[ColoringModel]  # Початкові пре-кольорування обох графів (для рендерингу)


class SpectrumReport(BaseModel):
    n: int
    eigenvalues: list[float]
    eigenvectors: Optional[list[list[float]]] = None


class FeaturesReport(BaseModel):
    output: str
    format: Literal["csv", "json"]
    graphs: int
    rows: int
    columns: int
    config: str
    truncated: bool


class BaselineResult(BaseModel):
    config: str
    classifier: str = "centroid"
    accuracy: float = Field(ge=0.0, le=1.0)


class BenchReport(BaseModel):
    sources: str
    count: int
    seed: int
    output: Optional[str] = None
    manifest_sha256: Optional[str] = None
    results: list[BaselineResult]
    constant_accuracy: float


class InstanceRecord(BaseModel):
    """Одна збурена копія джерела: операція в нумерації джерела + перестановка."""
    index: int
    label: int = Field(ge=0, le=1)
    op: Literal["add", "remove"]
    edge: tuple[int, int]
    permutation: list[int]


class BenchmarkManifest(BaseModel):
    seed: int
    count: int
    sources: list[str]  # edge-list тексти двох джерел
    train: list[int]
    test: list[int]
    instances: list[InstanceRecord]


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


class SelftestReport(BaseModel):
    passed: bool
    checks: list[CheckResult]
