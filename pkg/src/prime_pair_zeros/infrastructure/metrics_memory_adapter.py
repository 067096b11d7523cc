"""In-memory adapter for run counters."""

from collections import defaultdict
from threading import Lock
from typing import Dict

from ..interfaces.metrics_port import MetricsPort


class MetricsMemoryAdapter(MetricsPort):
    """Lock-guarded counters shared by worker threads of one run."""

    def __init__(self):
        self._counters: Dict[str, int] = defaultdict(int)
        self._lock = Lock()

    def increment(self, name: str, value: int = 1) -> None:
        with self._lock:
            self._counters[name] += value

    def get_count(self, name: str) -> int:
        with self._lock:
            return self._counters.get(name, 0)

    def get_all(self) -> Dict[str, int]:
        """Counters sorted by name, so embedded snapshots serialize deterministically."""
        with self._lock:
            return {name: self._counters[name] for name in sorted(self._counters)}
