"""Tests for expectations loading."""

import pytest

from prime_pair_zeros.domain.errors import ConfigurationError
from prime_pair_zeros.infrastructure.expectations_yaml_adapter import ExpectationsYamlAdapter
from prime_pair_zeros.usecases.verify import SUITES


def test_load_bundled_expectations():
    """Test every suite has an entry in contracts/expectations.yml."""
    adapter = ExpectationsYamlAdapter()
    assert sorted(adapter.suites()) == sorted(SUITES)


def test_load_suite():
    """Test loading one suite."""
    table1 = ExpectationsYamlAdapter().load_suite("table1")
    assert table1["rows"][2]["counts"][:2] == [35, 205]
    assert table1["rows"][210]["ratio"] == "16/5"
    assert len(table1["l2_row"]) == len(table1["checkpoints"]) + len(table1["full_checkpoints"])


def test_load_suite_not_found():
    """Test loading a suite without expectations."""
    assert ExpectationsYamlAdapter().load_suite("nonexistent") is None


def test_missing_expectations_file(temp_dir):
    """Test a missing file is a configuration error."""
    with pytest.raises(ConfigurationError):
        ExpectationsYamlAdapter(str(temp_dir / "absent.yml"))


def test_load_invalid_yaml(temp_dir):
    """Test loading invalid YAML."""
    invalid_path = temp_dir / "invalid.yml"
    invalid_path.write_text("invalid: yaml: [")

    with pytest.raises(ConfigurationError):
        ExpectationsYamlAdapter(str(invalid_path)).suites()


def test_load_non_mapping(temp_dir):
    """Test a YAML list is refused."""
    path = temp_dir / "list.yml"
    path.write_text("- a\n- b\n")

    with pytest.raises(ConfigurationError):
        ExpectationsYamlAdapter(str(path)).load_suite("a")
