"""CSV filesystem adapter for the prime-pair count cache."""

import csv
from pathlib import Path
from typing import Dict, Iterable

from pydantic import ValidationError

from ..domain.entities import PairCountRecord
from ..domain.errors import CacheError
from ..interfaces.pair_cache_port import PairCachePort

HEADER = ["two_r", "x", "count"]


class PairCacheCsvAdapter(PairCachePort):
    """One CSV per (limit, two_r) under cache_dir/pairs/<limit>/<two_r>.csv."""

    def __init__(self, cache_dir: str):
        self.cache_dir = Path(cache_dir)

    def path_for(self, limit: int, two_r: int) -> Path:
        return self.cache_dir / "pairs" / str(limit) / f"{two_r}.csv"

    def load(self, limit: int, two_r: int) -> Dict[int, int]:
        path = self.path_for(limit, two_r)
        if not path.exists():
            return {}
        try:
            with open(path, "r", encoding="utf-8", newline="") as f:
                reader = csv.reader(f)
                header = next(reader, None)
                if header != HEADER:
                    raise CacheError(f"Unexpected header in {path}: {header}")
                counts = {}
                for row in reader:
                    record = PairCountRecord(two_r=int(row[0]), x=int(row[1]), count=int(row[2]))
                    if record.two_r != two_r:
                        raise CacheError(f"{path} holds two_r={record.two_r}, expected {two_r}")
                    counts[record.x] = record.count
                return counts
        except (ValueError, IndexError, ValidationError) as exc:
            raise CacheError(f"Corrupt cache file {path}: {exc}") from exc
        except OSError as exc:
            raise CacheError(f"Error reading cache file {path}: {exc}") from exc

    def store(self, limit: int, two_r: int, records: Iterable[PairCountRecord]) -> None:
        """Merge into the existing file and rewrite it atomically, rows sorted by x."""
        counts = self.load(limit, two_r)
        for record in records:
            if record.two_r != two_r:
                raise CacheError(f"Record for two_r={record.two_r} stored under {two_r}")
            previous = counts.get(record.x)
            if previous is not None and previous != record.count:
                raise CacheError(
                    f"Cache conflict at two_r={two_r}, x={record.x}: {previous} != {record.count}"
                )
            counts[record.x] = record.count

        path = self.path_for(limit, two_r)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            temp_path = path.with_suffix(".tmp")
            with open(temp_path, "w", encoding="utf-8", newline="") as f:
                writer = csv.writer(f, lineterminator="\n")
                writer.writerow(HEADER)
                for x in sorted(counts):
                    writer.writerow([two_r, x, counts[x]])
            temp_path.replace(path)
        except OSError as exc:
            raise CacheError(f"Error writing cache file {path}: {exc}") from exc
