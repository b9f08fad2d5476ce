"""Unit tests for contract validation and artifact exports."""

import json
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from tick_leadlag.contracts import (
    ContractValidationError,
    errors_for,
    find_repo_root,
    load_json,
    load_schema,
    validate_file,
    validate_instrument_json,
    validate_manifest_json,
    validate_settings_json,
)
from tick_leadlag.exports import (
    frame_to_csv_bytes,
    json_to_bytes,
    sha256_bytes,
    sha256_file,
    to_jsonable,
    write_artifact,
)
from tick_leadlag.settings import default_analysis_settings
from tick_leadlag.validate import main as validate_main

FIXTURES_DIR = Path(__file__).parent / "fixtures"
META_PATH = FIXTURES_DIR / "hand_instance" / "X" / "meta.json"


def _manifest():
    return {
        "tool": "tick-leadlag",
        "version": "0.1.0",
        "command": "xcorr",
        "args": {"leader": "X", "lagger": "Y"},
        "settings": default_analysis_settings(),
        "inputs": [{"path": "X/meta.json", "sha256": "1" * 64}],
        "artifacts": [{"path": "xcorr_report.json", "sha256": "0" * 64}],
        "messages": [
            {"level": "warning", "code": "EMPTY_DAY", "message": "no trades", "ric": "X",
             "day": "2010-03-01"}
        ],
    }


class TestInstrumentValidation:
    """Test instrument metadata validation."""

    def test_fixture_is_valid(self):
        validate_instrument_json(load_json(META_PATH))

    def test_non_positive_tick_rejected(self):
        obj = load_json(META_PATH)
        obj["tick_size"] = 0

        with pytest.raises(ContractValidationError) as exc_info:
            validate_instrument_json(obj)

        assert exc_info.value.kind == "instrument"
        assert any(err["path"] == "/tick_size" for err in exc_info.value.errors)

    def test_missing_required_field(self):
        obj = load_json(META_PATH)
        del obj["session_close_ms"]

        with pytest.raises(ContractValidationError) as exc_info:
            validate_instrument_json(obj)

        assert any("session_close_ms" in err["message"] for err in exc_info.value.errors)


class TestSettingsValidation:
    """Test settings validation."""

    def test_defaults_are_valid(self):
        validate_settings_json(default_analysis_settings())

    def test_unknown_section_rejected(self):
        obj = default_analysis_settings()
        obj["plots"] = {}

        with pytest.raises(ContractValidationError):
            validate_settings_json(obj)


class TestManifestValidation:
    """Test run manifest validation."""

    def test_valid_manifest(self):
        validate_manifest_json(_manifest())

    def test_bad_digest_rejected(self):
        obj = _manifest()
        obj["artifacts"][0]["sha256"] = "XYZ"

        with pytest.raises(ContractValidationError) as exc_info:
            validate_manifest_json(obj)

        assert exc_info.value.errors[0]["path"].startswith("/artifacts/0")

    def test_unknown_command_rejected(self):
        obj = _manifest()
        obj["command"] = "plot"

        with pytest.raises(ContractValidationError):
            validate_manifest_json(obj)


class TestSchemaLoading:
    """Test schema discovery and caching."""

    def test_repo_root_has_contracts(self):
        assert (find_repo_root() / "contracts" / "manifest.json").exists()

    def test_schema_cached(self):
        assert load_schema("manifest") is load_schema("manifest")

    def test_invalid_kind(self):
        with pytest.raises(ValueError):
            load_schema("results")

    def test_errors_for_lists_all_violations(self):
        obj = load_json(META_PATH)
        obj["tick_size"] = -1
        del obj["ric"]
        errors = errors_for("instrument", obj)
        assert len(errors) == 2
        assert errors_for("instrument", load_json(META_PATH)) == []

    def test_validate_file_missing(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            validate_file("instrument", tmp_path / "nope.json")


class TestValidateCLI:
    """Test the contract validation entry point."""

    def test_ok(self, capsys):
        assert validate_main(["instrument", str(META_PATH)]) == 0
        assert "OK" in capsys.readouterr().out

    def test_invalid_file(self, tmp_path):
        path = tmp_path / "meta.json"
        path.write_text(json.dumps({"ric": "X"}))
        assert validate_main(["instrument", str(path)]) == 1

    def test_one_bad_file_fails_the_batch(self, tmp_path, capsys):
        missing = tmp_path / "missing.json"
        assert validate_main(["instrument", str(META_PATH), str(missing)]) == 1
        captured = capsys.readouterr()
        assert "OK" in captured.out
        assert "FAIL" in captured.err


class TestExports:
    """Test deterministic serialization helpers."""

    def test_non_finite_becomes_null(self):
        out = to_jsonable({"a": np.nan, "b": [np.inf, 1.0], "c": np.int64(3)})
        assert out == {"a": None, "b": [None, 1.0], "c": 3}

    def test_twelve_significant_digits(self):
        assert to_jsonable(1 / 3) == 0.333333333333
        assert to_jsonable(np.float32(0.5)) == 0.5

    def test_json_bytes_sorted(self):
        assert json_to_bytes({"b": 1, "a": 2}) == json_to_bytes({"a": 2, "b": 1})
        assert json_to_bytes({"b": 1, "a": 2}).decode().index('"a"') < 10

    def test_csv_bytes(self):
        data = frame_to_csv_bytes(pd.DataFrame({"x": [1 / 3], "n": [2]}))
        assert data == b"x,n\n0.333333333333,2\n"

    def test_write_artifact_digest(self, tmp_path):
        entry = write_artifact(tmp_path / "sub" / "a.bin", b"abc")
        assert entry["sha256"] == sha256_bytes(b"abc")
        assert sha256_file(tmp_path / "sub" / "a.bin") == entry["sha256"]
