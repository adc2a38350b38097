"""Flat-file writers: versioned CSV tables, JSON reports and run manifests."""
from __future__ import annotations

import csv
import hashlib
import json
import logging
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Optional, Sequence

import numpy as np

logger = logging.getLogger(__name__)

VERSION = "0.1.0"
FLOAT_FORMAT = ".17g"


def format_value(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), FLOAT_FORMAT)
    return str(value)


def write_csv(path: Path, columns: Sequence[str], rows: Iterable[Sequence[Any]],
              units: Optional[Mapping[str, str]] = None) -> Path:
    """Write *rows* under a one-line '#' comment carrying version and units."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    units = units or {}
    comment = "# xychain {} | {}".format(
        VERSION, ", ".join(f"{c} [{units.get(c, '1')}]" for c in columns))
    count = 0
    with path.open("w", newline="") as handle:
        handle.write(comment + "\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(v) for v in row])
            count += 1
    logger.info("wrote %d rows to %s", count, path)
    return path


def read_csv(path: Path) -> list[dict[str, str]]:
    """Read a table written by write_csv (comment line skipped)."""
    with Path(path).open(newline="") as handle:
        lines = [line for line in handle if not line.startswith("#")]
    return list(csv.DictReader(lines))


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_jsonable(v) for v in value.tolist()]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    if hasattr(value, "label"):
        return value.label
    return value


def write_json(path: Path, payload: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n")
    logger.info("wrote %s", path)
    return path


def file_digest(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


# -----------------------------------------------------------------------------
# Run manifest
# -----------------------------------------------------------------------------

@dataclass
class RunManifest:
    """Provenance of one command invocation."""

    command: str
    parameters: Dict[str, Any]
    version: str = VERSION
    wall_time: float = 0.0
    outputs: Dict[str, str] = field(default_factory=dict)
    report: Dict[str, Any] = field(default_factory=dict)

    def record(self, path: Path) -> None:
        self.outputs[str(path)] = file_digest(path)

    def to_dict(self) -> Dict[str, Any]:
        return _jsonable(asdict(self))


def manifest_path(output: Path) -> Path:
    output = Path(output)
    return output.with_name(output.name + ".manifest.json")


def write_manifest(output: Path, manifest: RunManifest) -> Path:
    """Write *manifest* next to the primary *output* file."""
    return write_json(manifest_path(output), manifest.to_dict())


__all__ = [
    "VERSION",
    "FLOAT_FORMAT",
    "format_value",
    "write_csv",
    "read_csv",
    "write_json",
    "file_digest",
    "RunManifest",
    "manifest_path",
    "write_manifest",
]
