"""wl: чи розрізняє 1-WL з обраним пре-кольоруванням два графи."""
from __future__ import annotations

import argparse

from loguru import logger

from cli.utils import emit, load_graph
from invariants.precoloring import make_precoloring
from invariants.wl import ColorHistogram, joint_refinement
from models.schemas import ColoringModel, PreColoringKind, SpectralConfig, WLReport

EXIT_INDISTINGUISHABLE = 0
EXIT_DISTINGUISHABLE = 1


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("wl", help="1-WL тест для пари графів")
    parser.add_argument("g1", help="edge list або ім'я еталонного графа")
    parser.add_argument("g2", help="edge list або ім'я еталонного графа")
    parser.add_argument(
        "--pre",
        choices=[kind.value for kind in PreColoringKind],
        default=PreColoringKind.CONSTANT.value,
    )
    parser.add_argument("--spectral-cfg", default="(0,0,1,none)", help="'(a,b,m,q)' для --pre spectral")
    parser.add_argument("--k", type=int, default=2, help="арність для --pre diag-kwl")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    kind = PreColoringKind(args.pre)
    cfg = SpectralConfig.parse(args.spectral_cfg) if kind is PreColoringKind.SPECTRAL else None
    pre = make_precoloring(kind, cfg=cfg, k=args.k)

    g1, g2 = load_graph(args.g1), load_graph(args.g2)
    result = joint_refinement(g1, g2, pre)

    initial_palette = len(set(result.initial[0]) | set(result.initial[1]))
    report = WLReport(
        distinguishable=result.distinguishable,
        iterations=result.iterations,
        pre=kind,
        histograms=[h.to_json() for h in result.histograms],
        colorings=[ColoringModel(colors=ids, palette_size=initial_palette) for ids in result.initial],
    )
    logger.info(
        f"wl {kind.value}: distinguishable={report.distinguishable} iterations={report.iterations} "
        f"sizes={ColorHistogram.of(result.final[0]).class_sizes()}"
    )
    emit(report)
    return EXIT_DISTINGUISHABLE if report.distinguishable else EXIT_INDISTINGUISHABLE
