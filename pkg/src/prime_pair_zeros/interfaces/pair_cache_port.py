"""Port for the prime-pair count cache."""

from abc import ABC, abstractmethod
from typing import Dict, Iterable

from ..domain.entities import PairCountRecord


class PairCachePort(ABC):
    """Port for cached pi_2r(x) values keyed by (limit, two_r)."""

    @abstractmethod
    def load(self, limit: int, two_r: int) -> Dict[int, int]:
        """Cached counts {x: count} for one difference (empty when absent)."""
        pass

    @abstractmethod
    def store(self, limit: int, two_r: int, records: Iterable[PairCountRecord]) -> None:
        """Merge records into the cache file (atomic operation)."""
        pass
