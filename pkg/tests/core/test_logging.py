from __future__ import annotations

import logging

from ridgelab.core.logging import configure_logging, logging_config


def test_cli_config_has_no_server_loggers() -> None:
    config = logging_config("debug")

    assert set(config["loggers"]) == {"ridgelab", "py.warnings"}
    assert config["loggers"]["ridgelab"]["level"] == "DEBUG"
    assert "access" not in config["formatters"]
    assert config["root"]["level"] == "WARNING"
    assert all(h["stream"] == "ext://sys.stderr" for h in config["handlers"].values())


def test_server_config_follows_requested_level() -> None:
    config = logging_config("warning", server=True)

    for name in ("uvicorn", "uvicorn.error", "uvicorn.access", "ridgelab"):
        assert config["loggers"][name]["level"] == "WARNING"
    assert config["loggers"]["uvicorn.access"]["handlers"] == ["uvicorn.access"]


def test_configure_logging_sets_library_level() -> None:
    configure_logging("ERROR")

    assert logging.getLogger("ridgelab").level == logging.ERROR
    assert logging.getLogger("ridgelab").propagate is False
    configure_logging("INFO")


__all__ = [
    "test_cli_config_has_no_server_loggers",
    "test_configure_logging_sets_library_level",
    "test_server_config_follows_requested_level",
]
