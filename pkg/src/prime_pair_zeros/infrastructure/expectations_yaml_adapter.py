"""YAML adapter for verification expectations."""

from pathlib import Path
from typing import Any, Dict, List, Optional

import yaml

from ..domain.errors import ConfigurationError
from ..interfaces.expectations_port import ExpectationsPort


def default_expectations_path() -> Path:
    """contracts/expectations.yml relative to the project root."""
    project_root = Path(__file__).parent.parent.parent.parent
    return project_root / "contracts" / "expectations.yml"


class ExpectationsYamlAdapter(ExpectationsPort):
    """Loads contracts/expectations.yml once and serves it per suite."""

    def __init__(self, expectations_path: Optional[str] = None):
        self.expectations_path = Path(expectations_path or default_expectations_path())
        if not self.expectations_path.exists():
            raise ConfigurationError(f"Expectations file not found: {self.expectations_path}")
        self._data: Optional[Dict[str, Any]] = None

    def _load(self) -> Dict[str, Any]:
        if self._data is None:
            try:
                with open(self.expectations_path, "r", encoding="utf-8") as f:
                    data = yaml.safe_load(f)
            except yaml.YAMLError as exc:
                raise ConfigurationError(f"Error parsing YAML: {exc}") from exc
            except OSError as exc:
                raise ConfigurationError(f"Error loading expectations: {exc}") from exc
            if not isinstance(data, dict):
                raise ConfigurationError(f"Expected a mapping in {self.expectations_path}")
            self._data = data
        return self._data

    def suites(self) -> List[str]:
        return list(self._load())

    def load_suite(self, name: str) -> Optional[Dict[str, Any]]:
        return self._load().get(name)
