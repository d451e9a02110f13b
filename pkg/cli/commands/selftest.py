"""selftest: швидкі перевірки приймання в процесі."""
from __future__ import annotations

import argparse

from loguru import logger

from cli.utils import emit
from invariants.acceptance import CHECKS, run_checks


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("selftest", help="запуск перевірок приймання")
    parser.add_argument("--check", action="append", choices=sorted(CHECKS), default=None)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    report = run_checks(args.check)
    failed = [c.name for c in report.checks if not c.passed]
    if failed:
        logger.warning(f"Selftest failed checks: {failed}")
    emit(report)
    return 0 if report.passed else 1
