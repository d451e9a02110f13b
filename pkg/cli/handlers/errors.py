from __future__ import annotations

import argparse
from typing import Callable

from loguru import logger

from invariants.errors import WLSpectraError

EXIT_ERROR = 2

Handler = Callable[[argparse.Namespace], int]


def run_guarded(handler: Handler, args: argparse.Namespace) -> int:
    """Глобальний хендлер: будь-яка помилка команди → exit code 2 і повідомлення в stderr."""
    try:
        return handler(args)
    except (WLSpectraError, OSError) as exc:
        logger.error(f"{args.command} failed | {type(exc).__name__}: {exc}")
        return EXIT_ERROR
    except Exception as exc:
        logger.exception("Unhandled error | command={} error={}", args.command, exc)
        return EXIT_ERROR
