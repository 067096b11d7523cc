"""Prime tables shared by the use cases of one run."""

from typing import Optional

from ..engine.sieve import DEFAULT_SEGMENT_SIZE, PrimeTable, build_prime_table
from ..interfaces.logger_port import LoggerPort
from ..interfaces.metrics_port import MetricsPort


class PrimeTableProvider:
    """Sieves on demand and keeps the largest table built so far."""

    def __init__(
        self,
        metrics_port: MetricsPort,
        logger: LoggerPort,
        segment_size: int = DEFAULT_SEGMENT_SIZE,
        threads: int = 1,
    ):
        self.metrics = metrics_port
        self.logger = logger
        self.segment_size = segment_size
        self.threads = threads
        self._table: Optional[PrimeTable] = None

    def get(self, limit: int) -> PrimeTable:
        """A table covering [2, limit]; a larger cached table is reused."""
        limit = max(int(limit), 2)
        if self._table is not None and self._table.limit >= limit:
            return self._table
        self.logger.info("Sieving", limit=limit, segment_size=self.segment_size)
        table = build_prime_table(limit, self.segment_size, self.threads)
        primes = table.prime_count(limit)
        self.metrics.increment("sieve.segments", table.segments)
        self.metrics.increment("sieve.primes", primes)
        self.logger.info("Sieve completed", limit=limit, segments=table.segments, primes=primes)
        self._table = table
        return table
