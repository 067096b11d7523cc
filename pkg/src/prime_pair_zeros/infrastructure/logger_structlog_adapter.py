"""structlog adapter for logging."""

import logging
import os
import sys
from typing import Any, Optional

import structlog

from ..interfaces.logger_port import LoggerPort

DEFAULT_LOG_LEVEL = "WARNING"


class LoggerStructlogAdapter(LoggerPort):
    """JSON lines on stderr; stdout is reserved for results."""

    def __init__(self, log_level: Optional[str] = None, logger: Any = None):
        """Configure structlog at log_level (PPZ_LOG_LEVEL, default WARNING)."""
        if logger is not None:
            self._logger = logger
            return
        log_level = log_level or os.getenv("PPZ_LOG_LEVEL", DEFAULT_LOG_LEVEL)
        level = getattr(logging, log_level.upper(), logging.WARNING)

        structlog.configure(
            processors=[
                structlog.contextvars.merge_contextvars,
                structlog.processors.add_log_level,
                structlog.processors.TimeStamper(fmt="iso"),
                structlog.processors.StackInfoRenderer(),
                structlog.processors.format_exc_info,
                structlog.processors.JSONRenderer(),
            ],
            wrapper_class=structlog.make_filtering_bound_logger(level),
            context_class=dict,
            logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
            cache_logger_on_first_use=False,
        )

        self._logger = structlog.get_logger()

    def debug(self, event: str, **fields: Any) -> None:
        self._logger.debug(event, **fields)

    def info(self, event: str, **fields: Any) -> None:
        self._logger.info(event, **fields)

    def warning(self, event: str, **fields: Any) -> None:
        self._logger.warning(event, **fields)

    def error(self, event: str, **fields: Any) -> None:
        self._logger.error(event, **fields)

    def bind(self, **fields: Any) -> "LoggerPort":
        return LoggerStructlogAdapter(logger=self._logger.bind(**fields))
