"""Pytest configuration and fixtures."""

import tempfile
from pathlib import Path
from unittest.mock import Mock

import pytest

from prime_pair_zeros.engine.sieve import build_prime_table
from prime_pair_zeros.infrastructure.logger_structlog_adapter import LoggerStructlogAdapter
from prime_pair_zeros.infrastructure.metrics_memory_adapter import MetricsMemoryAdapter
from prime_pair_zeros.infrastructure.pair_cache_csv_adapter import PairCacheCsvAdapter
from prime_pair_zeros.infrastructure.zeros_text_adapter import ZerosTextAdapter, load_zeros

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def temp_dir():
    """Create temporary directory for tests."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture(scope="session")
def small_table():
    """Prime table up to 2 * 10^5, shared across tests."""
    return build_prime_table(200_000, segment_size=2**12)


@pytest.fixture(scope="session")
def zeros_file():
    """Path of the bundled table with the first 30 ordinates."""
    return str(DATA_DIR / "zeros_head.txt")


@pytest.fixture(scope="session")
def zeros_head(zeros_file):
    """The first 30 zeta-zero ordinates."""
    return load_zeros(zeros_file)


@pytest.fixture
def write_zeros(temp_dir):
    """Write a zeros file from text and return its path."""

    def _write(text: str, name: str = "zeros.txt") -> str:
        path = temp_dir / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write


@pytest.fixture
def cache_adapter(temp_dir):
    """Create pair-count cache adapter."""
    return PairCacheCsvAdapter(str(temp_dir / "cache"))


@pytest.fixture
def zeros_adapter():
    """Create zeros adapter."""
    return ZerosTextAdapter()


@pytest.fixture
def logger_adapter():
    """Create logger adapter."""
    return LoggerStructlogAdapter()


@pytest.fixture
def mock_logger():
    """Logger double whose bind returns itself."""
    logger = Mock()
    logger.bind.return_value = logger
    return logger


@pytest.fixture
def metrics_adapter():
    """Create metrics adapter."""
    return MetricsMemoryAdapter()
