"""Domain-specific exceptions."""

from typing import Optional


class PrimePairsError(Exception):
    """Base exception for all library errors."""

    pass


class DomainError(PrimePairsError):
    """Argument outside the mathematical domain of an operation."""

    pass


class CapacityError(PrimePairsError):
    """Requested range exceeds a table, a zero set or a supported limit."""

    pass


class NearPoleError(PrimePairsError):
    """Evaluation point too close to a pole."""

    def __init__(self, message: str, pole: complex, pole_index: Optional[int] = None):
        super().__init__(message)
        self.pole = pole
        self.pole_index = pole_index


class ZeroProximityError(PrimePairsError):
    """Evaluation point too close to a zeta zero."""

    def __init__(self, message: str, nearest_ordinate: float):
        super().__init__(message)
        self.nearest_ordinate = nearest_ordinate


class BranchCutError(PrimePairsError):
    """Argument too close to the branch cut of log Gamma."""

    pass


class ZerosFileError(PrimePairsError):
    """Exception for zeros table parsing and validation."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        super().__init__(message)
        self.line_number = line_number


class KernelError(PrimePairsError):
    """Sieving kernel fails its admissibility checks."""

    pass


class CacheError(PrimePairsError):
    """Exception for pair-count cache operations."""

    pass


class ConfigurationError(PrimePairsError):
    """Missing or inconsistent run configuration."""

    pass
