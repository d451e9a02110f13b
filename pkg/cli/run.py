"""
Точка входу CLI.
Запуск: python -m cli.run <command> [flags]

Exit codes: 0 успіх (або "нерозрізнювані" для wl), 1 "розрізнювані" / провалений selftest, 2 помилка.
"""
from __future__ import annotations

import sys
from typing import Optional, Sequence

from loguru import logger

from cli.config import get_settings
from cli.handlers.errors import run_guarded
from cli.setup import configure_logging, create_parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    configure_logging()
    args = create_parser().parse_args(argv)
    logger.debug(f"Starting {args.command} | env={get_settings().environment}")
    code = run_guarded(args.handler, args)
    logger.debug(f"Finished {args.command} | exit={code}")
    return code


if __name__ == "__main__":
    sys.exit(main())
