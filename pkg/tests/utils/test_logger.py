import json
import logging
import sys
from fractions import Fraction

import pytest

from scripts.utils.logger import LoggerManager


@pytest.fixture
def fresh_loggers(monkeypatch, tmp_path):
    """Route log files to tmp_path and forget loggers created by earlier tests."""
    monkeypatch.setenv("OAC_LOG_DIR", str(tmp_path))
    monkeypatch.delenv("OAC_LOG_LEVEL", raising=False)
    monkeypatch.setattr(LoggerManager, "_loggers", {})
    yield
    LoggerManager.reset()


def _flush(logger):
    for handler in logger.handlers:
        handler.flush()


def test_same_name_same_logger(fresh_loggers):
    assert LoggerManager.get_logger("t_same") is LoggerManager.get_logger("t_same")
    assert LoggerManager.get_logger("t_same", run_id="a") is not LoggerManager.get_logger("t_same")


def test_handlers_and_default_file(fresh_loggers, tmp_path):
    logger = LoggerManager.get_logger("t_handlers")
    assert len(logger.handlers) == 2
    assert any(isinstance(h, logging.StreamHandler) and h.stream == sys.stdout for h in logger.handlers)
    files = [h.baseFilename for h in logger.handlers if isinstance(h, logging.FileHandler)]
    assert files == [str(tmp_path / "t_handlers.log")]
    assert logger.propagate is False


def test_level_from_environment(fresh_loggers, monkeypatch):
    monkeypatch.setenv("OAC_LOG_LEVEL", "warning")
    assert LoggerManager.get_logger("t_quiet").level == logging.WARNING
    assert LoggerManager.get_logger("t_chatty", level="debug").level == logging.DEBUG


def test_json_records_carry_extra_data(fresh_loggers, tmp_path):
    path = tmp_path / "run.jsonl"
    logger = LoggerManager.get_logger("t_json", log_file=str(path), use_json=True)
    logger.info("chunk done", extra={"extra_data": {"trials": 1000, "gamma": Fraction(1, 3)}})
    _flush(logger)

    entry = json.loads(path.read_text(encoding="utf-8").splitlines()[0])
    assert entry["message"] == "chunk done"
    assert entry["logger"] == "t_json"
    assert entry["level"] == "INFO"
    assert entry["trials"] == 1000
    assert entry["gamma"] == "1/3"


def test_console_without_colorlog(fresh_loggers, monkeypatch, tmp_path):
    monkeypatch.setattr("scripts.utils.logger.COLORLOG_AVAILABLE", False)
    logger = LoggerManager.get_logger("t_plain", use_color=True)
    logger.warning("no colors here")
    _flush(logger)

    console = next(h for h in logger.handlers if not isinstance(h, logging.FileHandler))
    assert type(console.formatter) is logging.Formatter
    assert "no colors here" in (tmp_path / "t_plain.log").read_text(encoding="utf-8")


def test_run_id_gets_its_own_file(fresh_loggers, tmp_path):
    logger = LoggerManager.get_logger("t_run", run_id="seed7")
    assert logger.name == "t_run-seed7"
    files = [h.baseFilename for h in logger.handlers if isinstance(h, logging.FileHandler)]
    assert files == [str(tmp_path / "t_run_seed7.log")]


def test_unknown_level_falls_back_to_info(fresh_loggers, monkeypatch):
    monkeypatch.setenv("OAC_LOG_LEVEL", "chatty")
    assert LoggerManager.resolve_level() == "INFO"
    assert LoggerManager.resolve_level("error") == "ERROR"


def test_reset_closes_handlers(fresh_loggers):
    logger = LoggerManager.get_logger("t_reset")
    LoggerManager.reset()
    assert logger.handlers == []
    assert LoggerManager.get_logger("t_reset") is logger
    assert len(logger.handlers) == 2
