"""Export utilities for tick-leadlag.

Every artifact goes through these helpers so that reruns with the same inputs and
seeds produce byte-identical files: floats carry 12 significant digits, JSON keys
are sorted and non-finite numbers become null.
"""

import hashlib
import json
import math
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

FLOAT_FORMAT = "%.12g"


def _round_sig(value: float) -> float | None:
    if not math.isfinite(value):
        return None
    return float(FLOAT_FORMAT % value)


def to_jsonable(obj: Any) -> Any:
    """Convert numpy/pandas containers and scalars into plain JSON values.

    Floats are rounded to 12 significant digits; NaN and infinities become None.
    """
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _round_sig(float(obj))
    if isinstance(obj, Path):
        return obj.as_posix()
    return obj


def frame_to_csv_bytes(df: pd.DataFrame) -> bytes:
    """Convert a DataFrame to CSV bytes (UTF-8, no index, 12 significant digits)."""
    return df.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n").encode(
        "utf-8"
    )


def json_to_bytes(obj: dict[str, Any]) -> bytes:
    """Convert a dictionary to pretty-printed, key-sorted JSON bytes (UTF-8)."""
    return (json.dumps(to_jsonable(obj), indent=2, sort_keys=True) + "\n").encode("utf-8")


def sha256_bytes(data: bytes) -> str:
    """Lowercase hexadecimal SHA256 of bytes."""
    return hashlib.sha256(data).hexdigest()


def sha256_file(path: str | Path) -> str:
    """Lowercase hexadecimal SHA256 of a file's contents."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_artifact(path: str | Path, data: bytes) -> dict[str, str]:
    """Write bytes to path (creating parents) and return its manifest entry.

    Returns:
        Dict with the POSIX path and the sha256 of the written bytes.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)
    return {"path": path.as_posix(), "sha256": sha256_bytes(data)}
