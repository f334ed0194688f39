"""
Tests for the logging module.
"""

from __future__ import annotations

import logging

import pytest
from prefect import flow

from pointedposets.logging import configure_logging, get_prefect_or_default_logger


def test_get_prefect_or_default_logger():
    """Tests `get_prefect_or_default_logger`."""
    assert get_prefect_or_default_logger().__class__ == logging.RootLogger
    assert get_prefect_or_default_logger("pointedposets.partitions").name == "pointedposets.partitions"
    assert (
        get_prefect_or_default_logger(logging.Logger("not root")).__class__
        == logging.Logger
    )
    with pytest.raises(TypeError, match="got `int`"):
        get_prefect_or_default_logger(3)


def test_get_prefect_logger_inside_flow(harness):
    """Inside a flow run the Prefect run logger is returned."""

    @flow
    def which_logger() -> str:
        return type(get_prefect_or_default_logger("ignored")).__name__

    assert which_logger() != "Logger"


class TestConfigureLogging:
    """Tests for `configure_logging`."""

    @pytest.mark.parametrize(
        "verbosity,level",
        [(0, logging.WARNING), (1, logging.INFO), (2, logging.DEBUG), (5, logging.DEBUG)],
    )
    def test_levels(self, verbosity: int, level: int):
        assert configure_logging(verbosity).level == level

    def test_explicit_level(self):
        assert configure_logging(0, "info").level == logging.INFO

    def test_single_handler(self):
        configure_logging(1)
        logger = configure_logging(2)
        marked = [h for h in logger.handlers if getattr(h, "_pointedposets", False)]
        assert len(marked) == 1

    def test_bad_values(self):
        with pytest.raises(ValueError):
            configure_logging(-1)
        with pytest.raises(ValueError, match="Unknown log level"):
            configure_logging(0, "LOUD")
