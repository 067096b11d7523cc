"""Environment-backed settings."""

import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from ..domain.errors import ConfigurationError
from ..engine.sieve import DEFAULT_SEGMENT_SIZE, MIN_SEGMENT_SIZE


class Settings(BaseModel):
    """Defaults for every run; command-line flags override them."""

    cache_dir: str = Field(".ppz-cache", description="Root of the pair-count cache")
    log_level: str = Field("WARNING", description="Diagnostic log level on stderr")
    threads: int = Field(1, ge=1, description="Worker threads for sieving and sums")
    zeros_file: Optional[str] = Field(None, description="Default zeros table")
    segment_size: int = Field(DEFAULT_SEGMENT_SIZE, ge=MIN_SEGMENT_SIZE)
    expectations_file: Optional[str] = Field(None, description="Override for expectations.yml")

    @classmethod
    def from_env(cls, dotenv: bool = True) -> "Settings":
        """Read PPZ_* variables, after loading a .env file when present."""
        if dotenv:
            load_dotenv()
        raw = {
            "cache_dir": os.getenv("PPZ_CACHE_DIR"),
            "log_level": os.getenv("PPZ_LOG_LEVEL"),
            "threads": os.getenv("PPZ_THREADS"),
            "zeros_file": os.getenv("PPZ_ZEROS_FILE"),
            "segment_size": os.getenv("PPZ_SEGMENT_SIZE"),
            "expectations_file": os.getenv("PPZ_EXPECTATIONS_FILE"),
        }
        try:
            return cls(**{key: value for key, value in raw.items() if value})
        except ValidationError as exc:
            raise ConfigurationError(f"Invalid PPZ_* environment: {exc}") from exc
