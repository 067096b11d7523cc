"""Use case: count prime pairs with the CSV cache in front of the sieve."""

from typing import Dict, List, Optional, Sequence

from ..domain.entities import PairCountRecord
from ..domain.errors import DomainError
from ..engine.sieve import check_difference, count_prime_pair_grid
from ..interfaces.logger_port import LoggerPort
from ..interfaces.metrics_port import MetricsPort
from ..interfaces.pair_cache_port import PairCachePort
from .prime_tables import PrimeTableProvider


class CountPairsUseCase:
    """pi_2r(x) over a (two_r, x) grid, cached per (max_x, two_r)."""

    def __init__(
        self,
        tables: PrimeTableProvider,
        cache_port: PairCachePort,
        metrics_port: MetricsPort,
        logger: LoggerPort,
    ):
        self.tables = tables
        self.cache = cache_port
        self.metrics = metrics_port
        self.logger = logger

    def execute(
        self,
        two_rs: Sequence[int],
        checkpoints: Sequence[int],
        max_x: Optional[int] = None,
    ) -> List[PairCountRecord]:
        """Records grouped by two_r in the given order, checkpoints ascending.

        Sieving happens only when some cell is missing from the cache.
        """
        if not two_rs:
            raise DomainError("at least one two_r is required")
        for two_r in two_rs:
            check_difference(two_r)
        cps = sorted({int(x) for x in checkpoints})
        if not cps:
            raise DomainError("at least one checkpoint is required")
        if cps[0] < 0:
            raise DomainError(f"checkpoints must be non-negative: {cps}")
        max_x = cps[-1] if max_x is None else int(max_x)
        if cps[-1] > max_x:
            raise DomainError(f"checkpoint {cps[-1]} exceeds --max-x {max_x}")

        self.logger.info("Counting prime pairs", two_rs=list(two_rs), checkpoints=cps, max_x=max_x)
        counts: Dict[int, Dict[int, int]] = {}
        missing: List[int] = []
        for two_r in two_rs:
            cached = self.cache.load(max_x, two_r)
            counts[two_r] = cached
            if all(x in cached for x in cps):
                self.metrics.increment("cache.hit")
            else:
                self.metrics.increment("cache.miss")
                missing.append(two_r)

        if missing:
            table = self.tables.get(cps[-1] + max(missing))
            fresh = count_prime_pair_grid(table, missing, cps)
            for two_r in missing:
                records = [r for r in fresh if r.two_r == two_r]
                self.cache.store(max_x, two_r, records)
                self.metrics.increment("cache.write")
                counts[two_r].update({r.x: r.count for r in records})
            self.logger.debug("Cache updated", two_rs=missing, max_x=max_x)

        return [
            PairCountRecord(two_r=two_r, x=x, count=counts[two_r][x])
            for two_r in two_rs
            for x in cps
        ]

    @staticmethod
    def to_csv(records: Sequence[PairCountRecord]) -> str:
        """Table layout: one row per two_r, one column per checkpoint."""
        two_rs: List[int] = []
        xs: List[int] = []
        cells: Dict[int, Dict[int, int]] = {}
        for record in records:
            if record.two_r not in cells:
                two_rs.append(record.two_r)
                cells[record.two_r] = {}
            if record.x not in xs:
                xs.append(record.x)
            cells[record.two_r][record.x] = record.count
        xs.sort()
        lines = [",".join(["two_r"] + [str(x) for x in xs])]
        for two_r in two_rs:
            row = [str(cells[two_r].get(x, "")) for x in xs]
            lines.append(",".join([str(two_r)] + row))
        return "\n".join(lines) + "\n"
