"""Tests for logging configuration."""

import json
import logging

import pytest

from core.logging import bind_run_context, clear_run_context, configure_logging, get_logger


@pytest.fixture
def reset_logging():
    yield
    clear_run_context()
    logging.getLogger().handlers.clear()


class TestConfigureLogging:
    """Test cases for configure_logging."""

    def test_json_lines_on_stderr(self, capsys, reset_logging):
        """JSON output goes to stderr and carries bound context."""
        configure_logging(log_level="INFO", json_output=True, service_name="cardiodyn-test")
        bind_run_context(command="featurize", seed=None)
        get_logger("tests.logging.json").info("record_featurized", record_id="r001")

        captured = capsys.readouterr()
        assert captured.out == ""
        line = [entry for entry in captured.err.splitlines() if "record_featurized" in entry][-1]
        payload = json.loads(line)
        assert payload["event"] == "record_featurized"
        assert payload["record_id"] == "r001"
        assert payload["command"] == "featurize"
        assert payload["service"] == "cardiodyn-test"
        assert "seed" not in payload

    def test_level_filters(self, capsys, reset_logging):
        """Messages below the configured level are dropped."""
        configure_logging(log_level="ERROR", json_output=True)
        get_logger("tests.logging.level").info("quiet_event")
        assert "quiet_event" not in capsys.readouterr().err

    def test_clear_run_context(self, capsys, reset_logging):
        """Cleared context no longer appears."""
        configure_logging(log_level="INFO", json_output=True)
        bind_run_context(command="evaluate")
        clear_run_context()
        get_logger("tests.logging.clear").info("after_clear")
        line = [entry for entry in capsys.readouterr().err.splitlines() if "after_clear" in entry][-1]
        assert "command" not in json.loads(line)
