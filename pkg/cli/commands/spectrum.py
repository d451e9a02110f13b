"""spectrum: власні значення (і вектори) лапласіана."""
from __future__ import annotations

import argparse

from cli.utils import emit, load_graph
from invariants.spectral import graph_spectrum
from storage.repository import spectrum_payload, write_spectrum_json


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("spectrum", help="спектр лапласіана графа")
    parser.add_argument("input", help="edge list або ім'я еталонного графа")
    parser.add_argument("--eigenvectors", action="store_true")
    parser.add_argument("--solver", choices=["jacobi", "lapack"], default=None)
    parser.add_argument("--output", default=None)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    spec = graph_spectrum(load_graph(args.input), solver=args.solver)
    if args.output:
        report = write_spectrum_json(spec, args.output, eigenvectors=args.eigenvectors)
    else:
        report = spectrum_payload(spec, eigenvectors=args.eigenvectors)
    emit(report)
    return 0
