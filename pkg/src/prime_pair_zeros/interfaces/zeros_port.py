"""Port for zeta-zero ordinate tables."""

from abc import ABC, abstractmethod
from typing import Optional

from ..engine.zetazeros import ZeroSet


class ZerosPort(ABC):
    """Port for loading validated ordinate tables."""

    @abstractmethod
    def load(self, path: str, count: Optional[int] = None) -> ZeroSet:
        """Load a table, keeping the first `count` ordinates when given.

        Raises:
            ZerosFileError: unreadable, malformed or non-monotone table
            CapacityError: fewer than `count` ordinates in the table
        """
        pass
