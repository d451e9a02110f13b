"""
Centralized configuration via Pydantic Settings v2.
Читає значення з .env файлу або змінних середовища з префіксом WLSPECTRA_.

ВАЖЛИВО: НЕ ініціалізуємо settings на рівні модуля, тільки через get_settings().
Бібліотека імпортується без .env файлу (тести, перевірка синтаксису).
"""
from functools import lru_cache
from typing import Literal

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="WLSPECTRA_",
        extra="ignore",  # Ігнорувати невідомі змінні
    )

    # App
    log_level: str = "INFO"
    environment: str = "development"
    seed: int = 0  # WLSPECTRA_SEED: fallback для --seed

    # Guards
    brute_force_max_n: int = Field(10, ge=1)
    kwl_max_n: int = Field(8, ge=1)

    # Спектральна частина
    solver: Literal["jacobi", "lapack"] = "jacobi"
    jacobi_tol: float = Field(1e-12, gt=0)
    jacobi_max_sweeps: int = Field(100, ge=1)
    quantize_decimals: int = Field(9, ge=0)
    euler_steps: int = Field(1000, ge=1)

    # Кеш знайденої коспектральної пари
    fixture_dir: str = ".wlspectra"


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Lazy singleton: читає .env тільки при першому виклику.
    Кешується на весь час роботи процесу.
    """
    return Settings()
