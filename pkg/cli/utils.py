"""Спільні хелпери команд: завантаження графів, seed, JSON у stdout."""
from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel

from cli.config import get_settings
from invariants.graph import Graph, reference_graph
from invariants.ingest import load_tu_directory, read_edge_list
from models.schemas import ReferenceName

REFERENCE_NAMES = {name.value for name in ReferenceName}


def load_graph(value: str) -> Graph:
    """
    Шлях до edge list або ім'я еталонного графа (decalin, bicyclopentyl, ...).
    Існуючий файл має пріоритет над іменем.
    """
    if not Path(value).exists() and value in REFERENCE_NAMES:
        return reference_graph(value)
    return read_edge_list(value)


def load_graphs(value: str) -> list[Graph]:
    """Директорія → TU dataset, інакше один граф."""
    if Path(value).is_dir():
        return load_tu_directory(value)
    return [load_graph(value)]


def resolve_seed(seed: Optional[int]) -> int:
    return get_settings().seed if seed is None else seed


def emit(payload: BaseModel | dict[str, Any]) -> None:
    """Єдиний канал stdout: валідний JSON з новим рядком в кінці."""
    if isinstance(payload, BaseModel):
        text = payload.model_dump_json(indent=2, exclude_none=True)
    else:
        text = json.dumps(payload, indent=2, sort_keys=True)
    sys.stdout.write(text + "\n")
    sys.stdout.flush()
