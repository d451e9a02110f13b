"""bench: синтетичний датасет розрізнюваності і точність базового класифікатора."""
from __future__ import annotations

import argparse

from loguru import logger

from cli.utils import emit, resolve_seed
from invariants.bench import cospectral_fixture, generate_benchmark, nearest_centroid_eval, run_ablation
from invariants.graph import bicyclopentyl, decalin
from models.schemas import BENCH_DEFAULT_CONFIGS, BenchReport, SpectralConfig
from storage.repository import write_dataset


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("bench", help="генерація бенчмарку та baseline")
    parser.add_argument("--sources", choices=["molecules", "cospectral"], default="molecules")
    parser.add_argument("--count", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=None, help="за замовчуванням WLSPECTRA_SEED")
    parser.add_argument("--out", default=None, help="директорія датасету")
    parser.add_argument("--classifier", choices=["centroid", "neighbor"], default="centroid")
    parser.add_argument(
        "--config",
        action="append",
        default=None,
        help="спектральна конфігурація '(a,b,m,q)'; можна повторювати",
    )
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    configs = [SpectralConfig.parse(text) for text in (args.config or BENCH_DEFAULT_CONFIGS)]
    seed = resolve_seed(args.seed)

    if args.sources == "molecules":
        g0, g1 = decalin(), bicyclopentyl()
    else:
        g0, g1 = cospectral_fixture()

    ds = generate_benchmark(g0, g1, args.count, seed)
    digest = write_dataset(ds, args.out) if args.out else None

    results = run_ablation(ds, configs, classifier=args.classifier)
    constant = nearest_centroid_eval(ds, None)
    logger.info(f"Bench {args.sources}: constant baseline accuracy={constant:.3f}")

    emit(
        BenchReport(
            sources=args.sources,
            count=args.count,
            seed=seed,
            output=args.out,
            manifest_sha256=digest,
            results=results,
            constant_accuracy=constant,
        )
    )
    return 0
