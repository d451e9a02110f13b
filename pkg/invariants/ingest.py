"""
Завантаження графів з тексту.

Підтримувані формати:
  1. Edge list  : UTF-8, коментарі з '#', необов'язковий заголовок "n=<count>",
                  далі по одній парі "u v" на рядок
  2. TU dataset : DS_A.txt ("u, v", глобальні 1-індексовані ребра)
                  + DS_graph_indicator.txt (id графа для кожної вершини)
"""
from __future__ import annotations

import io
import re
from pathlib import Path

import pandas as pd
from loguru import logger

from invariants.errors import FormatError, GraphValidationError, ParseError
from invariants.graph import Graph

_HEADER_RE = re.compile(r"^n\s*=\s*(\d+)$")
_PAIR_RE = re.compile(r"^(\d+)\s+(\d+)$")


# ─── Edge list ───────────────────────────────────────────────────────────────

def parse_edge_list(text: str) -> Graph:
    """
    Парсить edge list у Graph.

    Без заголовка n = 1 + максимальний id. Дублікати та розвернуті пари зливаються.
    """
    n: int | None = None
    pairs: list[tuple[int, int]] = []
    seen_content = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        header = _HEADER_RE.match(line)
        if header:
            if seen_content:
                raise ParseError("'n=' header must be the first non-comment line", line_no)
            n = int(header.group(1))
            seen_content = True
            continue
        seen_content = True

        pair = _PAIR_RE.match(line)
        if not pair:
            raise ParseError(f"expected 'u v', got {line!r}", line_no)
        u, v = int(pair.group(1)), int(pair.group(2))
        if u == v:
            raise GraphValidationError(f"line {line_no}: self-loop at vertex {u}")
        pairs.append((u, v))

    max_id = max((max(p) for p in pairs), default=-1)
    if n is None:
        n = max_id + 1
    elif max_id >= n:
        raise GraphValidationError(f"vertex id {max_id} out of range for n={n}")

    return Graph.from_edges(n, pairs)


def serialize_edge_list(g: Graph) -> str:
    """Канонічний текст: заголовок n=... і відсортовані ребра."""
    lines = [f"n={g.n}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


# ─── TU dataset ──────────────────────────────────────────────────────────────

def parse_tu_dataset(adjacency_text: str, indicator_text: str) -> list[Graph]:
    """
    Розбиває глобальний список ребер на графи за індикатором.

    Вершини кожного графа переіндексовуються 0..n_i-1 у порядку індикатора.
    Ребро між вершинами різних графів, пропущені id графів → FormatError.
    """
    indicator = [line.strip() for line in indicator_text.splitlines() if line.strip()]
    try:
        graph_of = [int(x) for x in indicator]
    except ValueError as exc:
        raise FormatError(f"graph indicator must contain integers: {exc}") from exc

    graph_ids = sorted(set(graph_of))
    if graph_ids and graph_ids != list(range(1, graph_ids[-1] + 1)):
        missing = sorted(set(range(1, graph_ids[-1] + 1)) - set(graph_ids))
        raise FormatError(f"graph indicator has gaps: missing graph ids {missing}")

    # Глобальна вершина (1-індексована) → локальний id у своєму графі
    local_id: list[int] = []
    sizes: dict[int, int] = {gid: 0 for gid in graph_ids}
    for gid in graph_of:
        local_id.append(sizes[gid])
        sizes[gid] += 1

    edges: dict[int, list[tuple[int, int]]] = {gid: [] for gid in graph_ids}
    for u, v in _read_tu_edges(adjacency_text):
        for x in (u, v):
            if not 1 <= x <= len(graph_of):
                raise FormatError(f"edge ({u}, {v}) references unknown vertex {x}")
        gu, gv = graph_of[u - 1], graph_of[v - 1]
        if gu != gv:
            raise FormatError(f"edge ({u}, {v}) spans graphs {gu} and {gv}")
        edges[gu].append((local_id[u - 1], local_id[v - 1]))

    graphs = [Graph.from_edges(sizes[gid], edges[gid]) for gid in graph_ids]
    logger.debug(f"TU dataset parsed: {len(graphs)} graphs, {len(graph_of)} vertices")
    return graphs


def _read_tu_edges(adjacency_text: str) -> list[tuple[int, int]]:
    if not adjacency_text.strip():
        return []
    try:
        frame = pd.read_csv(
            io.StringIO(adjacency_text),
            header=None,
            names=["u", "v"],
            skipinitialspace=True,
            dtype="int64",
        )
    except (ValueError, pd.errors.ParserError) as exc:
        raise FormatError(f"adjacency file must contain 'u, v' integer pairs: {exc}") from exc
    return list(zip(frame["u"].tolist(), frame["v"].tolist()))


def load_tu_directory(directory: str | Path) -> list[Graph]:
    """Шукає *_A.txt та *_graph_indicator.txt у директорії (публічний TU layout)."""
    root = Path(directory)
    adjacency = sorted(root.glob("*_A.txt"))
    indicator = sorted(root.glob("*_graph_indicator.txt"))
    if len(adjacency) != 1 or len(indicator) != 1:
        raise FormatError(f"{root} must contain exactly one *_A.txt and one *_graph_indicator.txt")
    return parse_tu_dataset(
        adjacency[0].read_text(encoding="utf-8"),
        indicator[0].read_text(encoding="utf-8"),
    )
