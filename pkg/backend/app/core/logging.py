"""
Logging configuration for the k-symplectic Lie-system toolkit
"""

import logging
import sys
from pathlib import Path
from typing import Optional

from app.core.config import settings


def setup_logging(
    log_level: Optional[str] = None,
    log_file: Optional[str] = None
) -> None:
    """Setup toolkit logging

    Reports go to stdout, so log records use stderr. A file handler is added
    only when a log file is configured.
    """

    level = getattr(logging, (log_level or settings.LOG_LEVEL).upper(), logging.WARNING)

    # Configure root logger
    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    # Remove existing handlers
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    formatter = logging.Formatter(settings.LOG_FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    log_file_path = log_file or settings.LOG_FILE
    if log_file_path:
        Path(log_file_path).parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file_path, encoding="utf-8")
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        root_logger.addHandler(file_handler)

    # Set specific log levels for noisy libraries
    logging.getLogger("asyncio").setLevel(logging.WARNING)
    logging.getLogger("numpy").setLevel(logging.WARNING)


def get_logger(name: str) -> logging.Logger:
    """Get a logger under the toolkit namespace"""
    return logging.getLogger(f"ksymplectic.{name}")


class LoggerMixin:
    """Mixin class to add logging capability"""

    @property
    def logger(self) -> logging.Logger:
        return get_logger(self.__class__.__name__.lower())
