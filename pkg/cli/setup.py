"""
Збирання CLI: argparse-парсер з підкомандами та налаштування логування.

Кожен модуль у cli.commands експортує register(subparsers) і handle(args) -> int.
"""
from __future__ import annotations

import argparse
import sys

from loguru import logger

from cli.commands import bench, features, selftest, spectrum, wl
from cli.config import get_settings

COMMANDS = (wl, features, bench, spectrum, selftest)


def configure_logging() -> None:
    """stdout зарезервовано під JSON, тому єдиний sink: stderr."""
    logger.remove()
    logger.add(sys.stderr, level=get_settings().log_level.upper())


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wlspectra",
        description="WL, k-WL та спектральні інваріанти графів; синтетичні бенчмарки розрізнюваності.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")
    for module in COMMANDS:
        module.register(subparsers)
    return parser
