"""Port for diagnostic logging; results never go through it."""

from abc import ABC, abstractmethod
from typing import Any


class LoggerPort(ABC):
    """Port for structured key-value logging to the diagnostic stream."""

    @abstractmethod
    def debug(self, event: str, **fields: Any) -> None:
        """Per-block progress, cache lookups."""
        pass

    @abstractmethod
    def info(self, event: str, **fields: Any) -> None:
        """Start and finish of an operation."""
        pass

    @abstractmethod
    def warning(self, event: str, **fields: Any) -> None:
        """Capped truncations, probes outside their valid range."""
        pass

    @abstractmethod
    def error(self, event: str, **fields: Any) -> None:
        """Failed operation."""
        pass

    @abstractmethod
    def bind(self, **fields: Any) -> "LoggerPort":
        """New logger carrying fields on every event."""
        pass
