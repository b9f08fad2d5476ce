"""JSON Schema contracts for the documents tick-leadlag reads and writes.

Schemas live in the repository-root ``contracts/`` directory, one file per kind:

    instrument       meta.json of every instrument directory in a dataset
    settings         analysis settings (defaults, user files, manifests)
    manifest         manifest.json written next to every command's artifacts
    xcorr_report     xcorr_report.json of the ``xcorr`` command
    backtest_report  backtest_report.json of the ``backtest`` command
"""

import json
from functools import lru_cache
from pathlib import Path
from typing import Any

from jsonschema import Draft202012Validator, ValidationError

SCHEMA_FILES = {
    "instrument": "instrument.json",
    "settings": "settings.json",
    "manifest": "manifest.json",
    "xcorr_report": "xcorr_report.json",
    "backtest_report": "backtest_report.json",
}


class ContractValidationError(Exception):
    """A document does not satisfy its contract.

    Attributes:
        kind: Contract kind, a key of SCHEMA_FILES.
        errors: One dict per violation with ``path`` (JSON Pointer) and ``message``,
            plus ``validator`` and ``schema_path`` when jsonschema reports them.
    """

    def __init__(self, kind: str, errors: list[dict[str, Any]]):
        self.kind = kind
        self.errors = errors
        detail = "; ".join(f"{e.get('path', '/')}: {e.get('message', '?')}" for e in errors)
        super().__init__(f"{kind} contract violated ({len(errors)} error(s)): {detail}")


def _check_kind(kind: str) -> None:
    if kind not in SCHEMA_FILES:
        raise ValueError(f"Unknown contract kind {kind!r}; expected one of {sorted(SCHEMA_FILES)}")


def find_repo_root(start: Path | None = None) -> Path:
    """Walk up from `start` (default: this package) to the directory holding contracts/.

    Raises:
        FileNotFoundError: No ancestor has a contracts/ directory.
    """
    here = (start or Path(__file__).parent).resolve()
    for candidate in (here, *here.parents):
        if (candidate / "contracts").is_dir():
            return candidate
    raise FileNotFoundError(f"No contracts/ directory above {here}")


@lru_cache(maxsize=None)
def load_schema(kind: str) -> Draft202012Validator:
    """Compiled validator for a contract kind; cached per process."""
    _check_kind(kind)
    schema_path = find_repo_root() / "contracts" / SCHEMA_FILES[kind]
    if not schema_path.is_file():
        raise FileNotFoundError(f"Schema file not found: {schema_path}")
    schema = json.loads(schema_path.read_text(encoding="utf-8"))
    Draft202012Validator.check_schema(schema)
    return Draft202012Validator(schema)


def _describe(err: ValidationError) -> dict[str, Any]:
    entry: dict[str, Any] = {
        "path": "/" + "/".join(str(p) for p in err.absolute_path),
        "message": err.message,
    }
    if err.validator:
        entry["validator"] = err.validator
    if err.schema_path:
        entry["schema_path"] = "/".join(str(p) for p in err.schema_path)
    return entry


def errors_for(kind: str, obj: Any) -> list[dict[str, Any]]:
    """All violations of `obj` against the `kind` contract, ordered by location."""
    found = sorted(load_schema(kind).iter_errors(obj), key=lambda e: list(map(str, e.path)))
    return [_describe(err) for err in found]


def validate_json(kind: str, obj: Any) -> None:
    """Raise ContractValidationError unless `obj` satisfies the `kind` contract."""
    errors = errors_for(kind, obj)
    if errors:
        raise ContractValidationError(kind, errors)


def validate_instrument_json(obj: dict[str, Any]) -> None:
    validate_json("instrument", obj)


def validate_settings_json(obj: dict[str, Any]) -> None:
    validate_json("settings", obj)


def validate_manifest_json(obj: dict[str, Any]) -> None:
    validate_json("manifest", obj)


def validate_xcorr_report_json(obj: dict[str, Any]) -> None:
    validate_json("xcorr_report", obj)


def validate_backtest_report_json(obj: dict[str, Any]) -> None:
    validate_json("backtest_report", obj)


def load_json(path: str | Path) -> Any:
    """Parse a UTF-8 JSON file."""
    return json.loads(Path(path).read_text(encoding="utf-8"))


def validate_file(kind: str, path: str | Path) -> None:
    """Load a JSON file and validate it against the `kind` contract.

    Raises:
        ValueError: Unknown kind.
        FileNotFoundError: Missing file.
        json.JSONDecodeError: File is not JSON.
        ContractValidationError: Contract violated.
    """
    _check_kind(kind)
    validate_json(kind, load_json(path))
