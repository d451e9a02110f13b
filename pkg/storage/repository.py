"""
Збереження та читання артефактів на диску.

Директорія датасету:
  manifest.json   seed, джерела, спліт, записи екземплярів
  instances/      edge list на кожен екземпляр (00000.txt, ...)
  labels.csv      instance, label, split, op, u, v

Всі записи детерміновані: однаковий вхід дає байт-в-байт однакові файли.
"""
from __future__ import annotations

import hashlib
import json
import shutil
from pathlib import Path
from typing import Sequence

import pandas as pd
from loguru import logger

from invariants.bench import BenchmarkDataset, BenchmarkInstance
from invariants.errors import FormatError
from invariants.graph import Graph, VertexPermutation
from invariants.ingest import parse_edge_list, serialize_edge_list
from invariants.spectral import SpectralFeatures, Spectrum
from models.schemas import BenchmarkManifest, InstanceRecord, SpectrumReport

MANIFEST = "manifest.json"
LABELS = "labels.csv"
INSTANCES = "instances"
COSPECTRAL_FIXTURE = "cospectral_pair.json"
FLOAT_FORMAT = "%.17g"


# ─── Датасет бенчмарку ───────────────────────────────────────────────────────

def _instance_file(index: int) -> str:
    return f"{index:05d}.txt"


def write_dataset(ds: BenchmarkDataset, directory: str | Path) -> str:
    """Пише датасет і повертає sha256 маніфесту. Попередній вміст instances/ видаляється."""
    root = Path(directory)
    instances_dir = root / INSTANCES
    if instances_dir.exists():
        stale = len(list(instances_dir.glob("*.txt")))
        shutil.rmtree(instances_dir)
        logger.debug(f"Cleared {stale} instance files in {instances_dir}")
    instances_dir.mkdir(parents=True)

    records = [
        InstanceRecord(
            index=i,
            label=inst.label,
            op=inst.op,
            edge=inst.edge,
            permutation=list(inst.permutation.mapping),
        )
        for i, inst in enumerate(ds.instances)
    ]
    manifest = BenchmarkManifest(
        seed=ds.seed,
        count=len(ds.instances),
        sources=[serialize_edge_list(g) for g in ds.sources],
        train=list(ds.train),
        test=list(ds.test),
        instances=records,
    )
    payload = manifest.model_dump_json(indent=2) + "\n"
    (root / MANIFEST).write_text(payload, encoding="utf-8")

    for i, inst in enumerate(ds.instances):
        (root / INSTANCES / _instance_file(i)).write_text(serialize_edge_list(inst.graph), encoding="utf-8")

    test = set(ds.test)
    frame = pd.DataFrame(
        {
            "instance": range(len(ds.instances)),
            "label": [inst.label for inst in ds.instances],
            "split": ["test" if i in test else "train" for i in range(len(ds.instances))],
            "op": [inst.op for inst in ds.instances],
            "u": [inst.edge[0] for inst in ds.instances],
            "v": [inst.edge[1] for inst in ds.instances],
        }
    )
    frame.to_csv(root / LABELS, index=False, lineterminator="\n")

    digest = hashlib.sha256(payload.encode("utf-8")).hexdigest()
    logger.info(f"Dataset written to {root} | instances={len(ds.instances)} sha256={digest[:12]}")
    return digest


def read_dataset(directory: str | Path) -> BenchmarkDataset:
    root = Path(directory)
    try:
        manifest = BenchmarkManifest.model_validate_json((root / MANIFEST).read_text(encoding="utf-8"))
    except ValueError as exc:
        raise FormatError(f"{root / MANIFEST} is not a valid benchmark manifest: {exc}") from exc
    if len(manifest.sources) != 2:
        raise FormatError(f"manifest must list two sources, got {len(manifest.sources)}")

    instances = []
    for record in manifest.instances:
        graph = parse_edge_list((root / INSTANCES / _instance_file(record.index)).read_text(encoding="utf-8"))
        instances.append(
            BenchmarkInstance(
                graph=graph,
                label=record.label,
                op=record.op,
                edge=tuple(record.edge),
                permutation=VertexPermutation(tuple(record.permutation)),
            )
        )
    g0, g1 = (parse_edge_list(text) for text in manifest.sources)
    return BenchmarkDataset((g0, g1), tuple(instances), tuple(manifest.train), tuple(manifest.test), manifest.seed)


# ─── Ознаки та спектри ───────────────────────────────────────────────────────

def features_frame(features: Sequence[SpectralFeatures]) -> pd.DataFrame:
    """Рядок на вершину: graph_id, vertex_id, f_1..f_d."""
    dim = max((f.dim for f in features), default=0)
    rows = []
    for graph_id, feats in enumerate(features):
        for vertex_id, values in enumerate(feats.values.tolist()):
            rows.append([graph_id, vertex_id] + values + [0.0] * (dim - len(values)))
    columns = ["graph_id", "vertex_id"] + [f"f_{i + 1}" for i in range(dim)]
    return pd.DataFrame(rows, columns=columns)


def write_features_csv(features: Sequence[SpectralFeatures], path: str | Path) -> pd.DataFrame:
    frame = features_frame(features)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return frame


def features_json(features: Sequence[SpectralFeatures]) -> dict:
    return {
        "config": features[0].config if features else None,
        "graphs": [
            {"graph_id": graph_id, "features": feats.values.tolist()}
            for graph_id, feats in enumerate(features)
        ],
    }


def write_features_json(features: Sequence[SpectralFeatures], path: str | Path) -> dict:
    payload = features_json(features)
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    return payload


# ─── Заморожена коспектральна пара ───────────────────────────────────────────

def load_cospectral_fixture(directory: str | Path) -> tuple[Graph, Graph] | None:
    path = Path(directory) / COSPECTRAL_FIXTURE
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        return parse_edge_list(data["a"]), parse_edge_list(data["b"])
    except (KeyError, ValueError) as exc:
        raise FormatError(f"{path} is not a valid cospectral fixture: {exc}") from exc


def save_cospectral_fixture(directory: str | Path, pair: tuple[Graph, Graph]) -> Path:
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    path = root / COSPECTRAL_FIXTURE
    payload = {"a": serialize_edge_list(pair[0]), "b": serialize_edge_list(pair[1])}
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")
    logger.info(f"Cospectral fixture frozen at {path}")
    return path


# ─── Спектр ──────────────────────────────────────────────────────────────────

def spectrum_payload(spec: Spectrum, eigenvectors: bool = False) -> SpectrumReport:
    return SpectrumReport(
        n=spec.n,
        eigenvalues=spec.eigenvalues.tolist(),
        eigenvectors=spec.eigenvectors.tolist() if eigenvectors else None,
    )


def write_spectrum_json(spec: Spectrum, path: str | Path, eigenvectors: bool = False) -> SpectrumReport:
    report = spectrum_payload(spec, eigenvectors)
    Path(path).write_text(report.model_dump_json(indent=2, exclude_none=True) + "\n", encoding="utf-8")
    return report
