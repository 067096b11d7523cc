"""Hashing utilities."""

import hashlib
import json
from typing import Any


def canonical_json(data: Any) -> str:
    """Sorted-key compact JSON, the form configs are hashed in."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"), default=str)


def sha256_config(data: Any) -> str:
    """SHA-256 of the canonical JSON of a run configuration."""
    return hashlib.sha256(canonical_json(data).encode("utf-8")).hexdigest()


def sha256_file(file_path: str) -> str:
    """SHA-256 of a file, used to pin the zeros table of a run."""
    sha256_hash = hashlib.sha256()
    with open(file_path, "rb") as f:
        for byte_block in iter(lambda: f.read(65536), b""):
            sha256_hash.update(byte_block)
    return sha256_hash.hexdigest()
