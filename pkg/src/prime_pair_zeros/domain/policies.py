"""Domain policies for truncation, probes and exit codes."""

import math
from typing import Optional, Sequence, Tuple

from .entities import ProbeRow, TruncationPlan
from .errors import CacheError, CapacityError, DomainError, PrimePairsError


class TruncationPolicy:
    """Analytic tail bounds for truncated Dirichlet series."""

    # psi(x) <= 1.04 x for every x >= 1 (Chebyshev-type bound)
    PSI_CONSTANT = 1.04
    ADAPTIVE_START = 2**16

    @classmethod
    def chebyshev_tail(
        cls, n_terms: int, sigma: float, shift: int = 0, multiplicity: float = 1.0
    ) -> float:
        """Bound on sum_{n > N} Lambda(n) log(n + h) n^(-2 sigma).

        Partial summation against psi(t) <= 1.04 t gives
        1.04 * 2 sigma * N^(1 - 2 sigma) * [(log N + log(1 + h/N)) / (2 sigma - 1)
        + 1 / (2 sigma - 1)^2]. Banded sums pass their band multiplicity.
        """
        if not sigma > 0.5:
            raise DomainError(f"tail bound needs sigma > 1/2, got {sigma}")
        if n_terms < 1:
            raise DomainError(f"n_terms must be >= 1, got {n_terms}")
        a = 2.0 * sigma - 1.0
        log_n = math.log(n_terms) + math.log1p(shift / n_terms)
        scale = math.exp(-a * math.log(n_terms))
        bracket = log_n / a + 1.0 / (a * a)
        return multiplicity * cls.PSI_CONSTANT * 2.0 * sigma * scale * bracket

    @classmethod
    def plan(
        cls, n_terms: int, sigma: float, shift: int = 0, multiplicity: float = 1.0
    ) -> TruncationPlan:
        """Plan for N terms at real part sigma."""
        return TruncationPlan(
            n_terms=n_terms,
            tail_bound=cls.chebyshev_tail(n_terms, sigma, shift, multiplicity),
            sigma=sigma,
            shift=shift,
        )

    @classmethod
    def adaptive(
        cls,
        sigma: float,
        tolerance: float,
        max_terms: int,
        shift: int = 0,
        strict: bool = False,
    ) -> Tuple[TruncationPlan, bool]:
        """Double N from 2^16 until the bound is below tolerance.

        Returns (plan, capped). Reaching max_terms first caps the plan at
        max_terms, or raises CapacityError when strict.
        """
        n = min(cls.ADAPTIVE_START, max_terms)
        while cls.chebyshev_tail(n, sigma, shift) >= tolerance:
            if n >= max_terms:
                if strict:
                    raise CapacityError(
                        f"tail bound {tolerance:g} at sigma={sigma} needs more than "
                        f"{max_terms} terms"
                    )
                return cls.plan(max_terms, sigma, shift), True
            n = min(2 * n, max_terms)
        return cls.plan(n, sigma, shift), False

    @classmethod
    def pnt_tail(cls, n_terms: int, sigma: float) -> float:
        """int_N^inf log t * t^(-2 sigma) dt, the prime number theorem model of the D_0 tail."""
        a = 2.0 * sigma - 1.0
        return math.exp(-a * math.log(n_terms)) * (math.log(n_terms) / a + 1.0 / (a * a))


class ProbePolicy:
    """Extrapolation and trend rules for exploratory probes."""

    @staticmethod
    def _pick(row: ProbeRow, use_corrected: bool) -> float:
        if use_corrected and row.corrected is not None:
            return row.corrected
        return row.scaled

    @classmethod
    def richardson(cls, rows: Sequence[ProbeRow], use_corrected: bool = False) -> Optional[float]:
        """Two-point linear extrapolation to delta = 0 from the two smallest deltas."""
        if not rows:
            return None
        ordered = sorted(rows, key=lambda row: row.delta)
        if len(ordered) == 1:
            return cls._pick(ordered[0], use_corrected)
        (d1, f1), (d2, f2) = [(row.delta, cls._pick(row, use_corrected)) for row in ordered[:2]]
        return (d2 * f1 - d1 * f2) / (d2 - d1)

    @classmethod
    def trend_toward(
        cls, rows: Sequence[ProbeRow], target: Optional[float], use_corrected: bool = False
    ) -> Optional[bool]:
        """Whether the smallest delta lies closer to target than the largest."""
        if target is None or len(rows) < 2:
            return None
        ordered = sorted(rows, key=lambda row: row.delta)
        nearest = cls._pick(ordered[0], use_corrected)
        farthest = cls._pick(ordered[-1], use_corrected)
        return abs(nearest - target) <= abs(farthest - target)


class ExitCodePolicy:
    """Process exit status for CLI outcomes."""

    SUCCESS = 0
    VERIFICATION_FAILED = 1
    USAGE_ERROR = 2
    CAPACITY_ERROR = 3

    @classmethod
    def for_error(cls, error: PrimePairsError) -> int:
        """Capacity and cache failures are resource errors; everything else is usage."""
        if isinstance(error, (CapacityError, CacheError)):
            return cls.CAPACITY_ERROR
        return cls.USAGE_ERROR
