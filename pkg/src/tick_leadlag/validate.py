"""Validate tick-leadlag JSON documents against their contracts.

Usage:
    python -m tick_leadlag.validate instrument data/FCE/meta.json data/TOTF.PA/meta.json
    python -m tick_leadlag.validate manifest out/xcorr/manifest.json
"""

import argparse
import json
import sys
from pathlib import Path

from tick_leadlag.contracts import SCHEMA_FILES, ContractValidationError, validate_file


def _check(kind: str, path: Path) -> bool:
    try:
        validate_file(kind, path)
    except (FileNotFoundError, json.JSONDecodeError) as e:
        print(f"FAIL: {kind} {path}\n  {e}", file=sys.stderr)
        return False
    except ContractValidationError as e:
        print(f"FAIL: {kind} {path}", file=sys.stderr)
        for err in e.errors:
            print(f"  {err['path']}: {err['message']}", file=sys.stderr)
        return False
    print(f"OK: {kind} {path}")
    return True


def main(argv: list[str] | None = None) -> int:
    """Validate every given file; exit 0 only when all of them pass."""
    parser = argparse.ArgumentParser(description="Validate tick-leadlag JSON contracts")
    parser.add_argument("kind", choices=sorted(SCHEMA_FILES), help="Contract kind")
    parser.add_argument("paths", nargs="+", type=Path, help="JSON files to validate")
    args = parser.parse_args(argv)

    results = [_check(args.kind, path) for path in args.paths]
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
