"""
Logging utilities.

Computations log through `get_prefect_or_default_logger`, so the same code writes
to the Prefect run log when it executes inside a flow and to a standard logger
everywhere else.
"""

from __future__ import annotations

import logging
import sys

from prefect.logging import get_run_logger

_VERBOSITY_LEVELS = {0: logging.WARNING, 1: logging.INFO}


def get_prefect_or_default_logger(
    __default: logging.Logger | str | None = None,
) -> logging.Logger | logging.LoggerAdapter:
    """Gets the Prefect run logger if a flow or task run context is set. Returns the
    `__default` logger, the logger named `__default`, or the root logger if not.
    """
    if not isinstance(__default, (logging.Logger, str, type(None))):
        raise TypeError(
            f"Expected `__default` to be a `logging.Logger`, `str`, or `None`, "
            f"got `{type(__default).__name__}`."
        )
    try:
        return get_run_logger()
    except RuntimeError:
        if isinstance(__default, str):
            return logging.getLogger(__default)
        return __default or logging.getLogger()


def configure_logging(verbosity: int = 0, level: str | None = None) -> logging.Logger:
    """Route the package logger to standard error.

    Standard output is reserved for reports, so the CLI calls this once before
    running a subcommand.

    Args:
        verbosity (int): Count of `-v` flags. 0 is WARNING, 1 is INFO, 2+ is DEBUG.
        level (str, optional): Explicit level name; used when `verbosity` is 0.

    Returns:
        The `pointedposets` logger.
    """
    if verbosity < 0:
        raise ValueError(f"Expected a non-negative verbosity, got {verbosity}.")
    if verbosity == 0 and level is not None:
        resolved = logging.getLevelName(level.upper())
        if not isinstance(resolved, int):
            raise ValueError(f"Unknown log level {level!r}.")
    else:
        resolved = _VERBOSITY_LEVELS.get(verbosity, logging.DEBUG)

    logger = logging.getLogger("pointedposets")
    logger.setLevel(resolved)
    if not any(getattr(h, "_pointedposets", False) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(
            logging.Formatter("%(asctime)s | %(levelname)-7s | %(name)s - %(message)s")
        )
        handler._pointedposets = True
        logger.addHandler(handler)
    return logger
