"""
Logging for the library and the CLI.

Each package asks `LoggerManager` for one named logger ("codec", "sim",
"cli"). A logger writes plain or colored lines to stdout and plain text or
JSON to a file under $OAC_LOG_DIR. Structured fields travel as
`extra={"extra_data": {...}}` and land as top-level keys of JSON records.
"""
import json
import logging
import os
import sys
from typing import Optional

try:
    from colorlog import ColoredFormatter
    COLORLOG_AVAILABLE = True
except ImportError:
    COLORLOG_AVAILABLE = False

LOG_DIR_ENV = "OAC_LOG_DIR"
LOG_LEVEL_ENV = "OAC_LOG_LEVEL"
DEFAULT_LOG_DIR = "logs"
DEFAULT_LEVEL = "INFO"

LINE_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
LEVEL_COLORS = {
    "DEBUG": "cyan",
    "INFO": "green",
    "WARNING": "yellow",
    "ERROR": "red",
    "CRITICAL": "bold_red",
}


class LoggerManager:
    """
    Hands out one configured logger per name (and optional run_id).

    Loggers do not propagate, so a record is written once by the two
    handlers attached here.
    """
    _loggers: dict[str, logging.Logger] = {}

    @classmethod
    def get_logger(cls,
                   name: str,
                   log_file: Optional[str] = None,
                   level: Optional[str] = None,
                   use_json: bool = False,
                   use_color: bool = True,
                   run_id: Optional[str] = None) -> logging.Logger:
        """
        Args:
            name: package-level logger name.
            log_file: explicit file path; defaults to <log dir>/<name>[_<run_id>].log.
            level: threshold; falls back to $OAC_LOG_LEVEL, then INFO.
            use_json: JSON records in the file handler.
            use_color: colored console lines when colorlog is installed.
            run_id: separate logger and file per run.
        """
        key = f"{name}-{run_id}" if run_id else name
        if key in cls._loggers:
            return cls._loggers[key]

        level = cls.resolve_level(level)
        if not log_file:
            directory = cls.log_dir()
            log_file = os.path.join(directory, f"{name}_{run_id}.log" if run_id else f"{name}.log")
        directory = os.path.dirname(log_file)
        if directory:
            os.makedirs(directory, exist_ok=True)

        logger = logging.getLogger(key)
        logger.setLevel(level)
        logger.propagate = False
        logger.addHandler(_file_handler(log_file, level, use_json))
        logger.addHandler(_console_handler(level, use_color))

        cls._loggers[key] = logger
        return logger

    @staticmethod
    def log_dir() -> str:
        return os.environ.get(LOG_DIR_ENV) or DEFAULT_LOG_DIR

    @staticmethod
    def resolve_level(level: Optional[str] = None) -> str:
        name = (level or os.environ.get(LOG_LEVEL_ENV) or DEFAULT_LEVEL).upper()
        if not isinstance(logging.getLevelName(name), int):
            return DEFAULT_LEVEL
        return name

    @classmethod
    def reset(cls) -> None:
        """Close every handler and forget the cached loggers."""
        for logger in cls._loggers.values():
            for handler in logger.handlers[:]:
                handler.close()
                logger.removeHandler(handler)
        cls._loggers.clear()


def _file_handler(path: str, level: str, use_json: bool) -> logging.Handler:
    handler = logging.FileHandler(path, encoding="utf-8")
    handler.setLevel(level)
    handler.setFormatter(JsonLogFormatter() if use_json else logging.Formatter(LINE_FORMAT, DATE_FORMAT))
    return handler


def _console_handler(level: str, use_color: bool) -> logging.Handler:
    handler = logging.StreamHandler(sys.stdout)
    handler.setLevel(level)
    if use_color and COLORLOG_AVAILABLE:
        formatter = ColoredFormatter(
            fmt="%(log_color)s" + LINE_FORMAT, datefmt=DATE_FORMAT, log_colors=LEVEL_COLORS
        )
    else:
        formatter = logging.Formatter(LINE_FORMAT, DATE_FORMAT)
    handler.setFormatter(formatter)
    return handler


class JsonLogFormatter(logging.Formatter):
    """
    One JSON object per line, e.g.

        {"timestamp": "2026-05-07 13:12:01", "level": "INFO", "logger": "sim",
         "message": "100000 trials ...", "trials": 100000, "workers": 4}

    Values json cannot encode (Fractions, numpy scalars) are written with str().
    """
    def format(self, record: logging.LogRecord) -> str:
        entry = {
            "timestamp": self.formatTime(record, DATE_FORMAT),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        entry.update(getattr(record, "extra_data", None) or {})
        return json.dumps(entry, default=str)
