"""Port for verification expectations."""

from abc import ABC, abstractmethod
from typing import Any, Dict, List, Optional


class ExpectationsPort(ABC):
    """Port for the published values the verify suites compare against."""

    @abstractmethod
    def suites(self) -> List[str]:
        """Names of the suites with expectations."""
        pass

    @abstractmethod
    def load_suite(self, name: str) -> Optional[Dict[str, Any]]:
        """Expectations of one suite, or None."""
        pass
