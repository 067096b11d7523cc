"""Text-file adapter for zeta-zero ordinate tables."""

from pathlib import Path
from typing import Optional

from ..domain.errors import ZerosFileError
from ..engine.zetazeros import ZeroSet, parse_zeros
from ..interfaces.zeros_port import ZerosPort


def load_zeros(path: str, require_anchors: bool = True) -> ZeroSet:
    """Read and validate a zeros file (one ordinate per line, '#' comments)."""
    zeros_path = Path(path)
    try:
        with open(zeros_path, "r", encoding="utf-8") as f:
            return parse_zeros(f, source=str(zeros_path), require_anchors=require_anchors)
    except FileNotFoundError as exc:
        raise ZerosFileError(f"Zeros file not found: {zeros_path}") from exc
    except (OSError, UnicodeDecodeError) as exc:
        raise ZerosFileError(f"Error reading zeros file {zeros_path}: {exc}") from exc


class ZerosTextAdapter(ZerosPort):
    """Loads ordinate tables, remembering the last one read."""

    def __init__(self, require_anchors: bool = True):
        self.require_anchors = require_anchors
        self._cache: dict = {}

    def load(self, path: str, count: Optional[int] = None) -> ZeroSet:
        key = str(Path(path).resolve())
        if key not in self._cache:
            self._cache = {key: load_zeros(path, self.require_anchors)}
        zeros = self._cache[key]
        if count is not None:
            zeros = zeros.truncate(count)
        return zeros
