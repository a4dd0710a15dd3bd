"""Logging setup for the command line and the HTTP service.

Every handler writes to stderr so that the CLI keeps stdout for JSON results. Library loggers
live under ``ridgelab``; numpy and scipy warnings are routed through ``py.warnings``.
"""

from __future__ import annotations

import logging
from logging.config import dictConfig
from typing import Any

DEFAULT_FORMAT = "%(asctime)s | %(levelprefix)s | %(name)s | %(message)s"
ACCESS_FORMAT = "%(levelprefix)s %(client_addr)s - \"%(request_line)s\" %(status_code)s"
SERVER_LOGGERS = ("uvicorn", "uvicorn.error")


def _handler(formatter: str) -> dict[str, Any]:
    return {"class": "logging.StreamHandler", "formatter": formatter, "stream": "ext://sys.stderr"}


def logging_config(level: str | int = "INFO", *, server: bool = False) -> dict[str, Any]:
    """Build a ``dictConfig`` mapping; ``server`` adds the uvicorn and access-log loggers."""

    if isinstance(level, str):
        level = level.upper()
    quiet = {"handlers": ["default"], "level": level, "propagate": False}
    formatters: dict[str, Any] = {
        "default": {"()": "uvicorn.logging.DefaultFormatter", "fmt": DEFAULT_FORMAT},
    }
    handlers = {"default": _handler("default")}
    loggers: dict[str, Any] = {"ridgelab": dict(quiet), "py.warnings": dict(quiet)}
    if server:
        formatters["access"] = {"()": "uvicorn.logging.AccessFormatter", "fmt": ACCESS_FORMAT}
        handlers["uvicorn.access"] = _handler("access")
        loggers.update({name: dict(quiet) for name in SERVER_LOGGERS})
        loggers["uvicorn.access"] = {
            "handlers": ["uvicorn.access"],
            "level": level,
            "propagate": False,
        }
    return {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": formatters,
        "handlers": handlers,
        "loggers": loggers,
        # third-party chatter stays at WARNING whatever the requested level
        "root": {"handlers": ["default"], "level": "WARNING"},
    }


def configure_logging(level: str | int = "INFO", *, server: bool = False) -> None:
    logging.captureWarnings(True)
    dictConfig(logging_config(level, server=server))
    logging.getLogger(__name__).debug("Logging configured with level %s", level)
