"""features: експорт спектральних ознак вершин у CSV або JSON."""
from __future__ import annotations

import argparse

from loguru import logger

from cli.utils import emit, load_graphs
from invariants.errors import ConfigError
from invariants.spectral import vertex_features
from models.schemas import FeaturesReport, SpectralConfig
from storage.repository import features_json, write_features_csv, write_features_json


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("features", help="спектральні ознаки вершин")
    parser.add_argument("input", help="edge list, ім'я еталонного графа або TU директорія")
    parser.add_argument("--spectral-cfg", default="(-1,1,10,none)")
    parser.add_argument("--truncation", type=int, default=None, help="k найменших власних пар (MOR)")
    parser.add_argument("--steps", type=int, default=None, help="кроки неявного Ейлера для MOR")
    parser.add_argument("--out", choices=["csv", "json"], default="json")
    parser.add_argument("--output", default=None, help="файл результату (обов'язковий для csv)")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    cfg = SpectralConfig.parse(args.spectral_cfg, truncation=args.truncation)
    if args.out == "csv" and args.output is None:
        raise ConfigError("--out csv requires --output")

    graphs = load_graphs(args.input)
    features = [vertex_features(g, cfg, steps=args.steps) for g in graphs]
    logger.info(f"Features computed: graphs={len(graphs)} config={cfg.label()} truncation={cfg.truncation}")

    if args.output is None:
        emit(features_json(features))
        return 0

    if args.out == "csv":
        write_features_csv(features, args.output)
    else:
        write_features_json(features, args.output)
    rows = sum(f.values.shape[0] for f in features)
    columns = max((f.dim for f in features), default=0)
    emit(
        FeaturesReport(
            output=str(args.output),
            format=args.out,
            graphs=len(graphs),
            rows=rows,
            columns=columns,
            config=cfg.label(),
            truncated=cfg.truncation is not None,
        )
    )
    return 0
