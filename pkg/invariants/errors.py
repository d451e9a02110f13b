"""
Ієрархія помилок бібліотеки.

CLI перехоплює WLSpectraError у глобальному хендлері і перетворює на exit code 2.
"""
from __future__ import annotations


class WLSpectraError(Exception):
    """Базова помилка всіх операцій бібліотеки."""


class ParseError(WLSpectraError):
    """Некоректний рядок у вхідному файлі."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class GraphValidationError(WLSpectraError):
    """Порушено інваріант простого неорієнтованого графа або розміри не збігаються."""


class FormatError(WLSpectraError):
    """Файли датасету суперечать очікуваному формату (TU, директорія бенчмарку)."""


class CapabilityError(WLSpectraError):
    """Вхід перевищує guard (brute-force, k-WL)."""


class NumericalError(WLSpectraError):
    """Солвер не зійшовся в межах бюджету."""


class ConfigError(WLSpectraError):
    """Некоректна конфігурація або прапорці CLI."""


class SearchExhaustedError(WLSpectraError):
    """Перебір завершився без результату."""


class DatasetError(WLSpectraError):
    """Некоректний стан датасету (наприклад, порожній спліт)."""
