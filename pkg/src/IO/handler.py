"""
Output Handler - writes CSV and JSON-lines artifacts into a run directory.

This module is responsible for:
- Prefixing every artifact with a '#' header block (tool, version, subcommand,
  config hash) that every reader in this package skips
- Formatting values deterministically (repr floats, empty cells for None)
- Keeping the list of written artifacts for the run manifest

External Libraries Used:
- csv (Python Standard Library) - CSV writing
- json (Python Standard Library) - JSON-lines and sidecar metadata
"""
import csv
import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence

from core.version import TOOL_NAME, TOOL_VERSION

logger = logging.getLogger(__name__)


def cell(value: Any) -> str:
    """CSV cell text: '' for None, repr for floats, lowercase booleans."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_default(value: Any):
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (set, frozenset, tuple)):
        return sorted(value) if isinstance(value, (set, frozenset)) else list(value)
    if hasattr(value, "item"):
        return value.item()
    raise TypeError(f"not JSON serializable: {type(value).__name__}")


def json_line(record: Dict[str, Any]) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"), default=_json_default)


class OutputHandler:
    """Writes artifacts for one subcommand run."""

    def __init__(self, directory, subcommand: str, config_hash: str):
        self.directory = Path(directory)
        self.subcommand = subcommand
        self.config_hash = config_hash
        self._written: List[str] = []

    @property
    def written(self) -> List[str]:
        return list(self._written)

    def header_fields(self) -> Dict[str, str]:
        return {"tool": TOOL_NAME, "version": TOOL_VERSION, "subcommand": self.subcommand,
                "config_hash": self.config_hash}

    def header_lines(self) -> List[str]:
        return [f"{key}: {value}" for key, value in self.header_fields().items()]

    def path(self, name: str) -> Path:
        """Register an artifact written by another writer and return its path."""
        target = self.directory / name
        target.parent.mkdir(parents=True, exist_ok=True)
        if name not in self._written:
            self._written.append(name)
        return target

    def _write_header(self, f) -> None:
        for line in self.header_lines():
            f.write(f"# {line}\n")

    def write_csv(self, name: str, columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
        path = self.path(name)
        count = 0
        with open(path, "w", newline="", encoding="utf-8") as f:
            self._write_header(f)
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                if len(row) != len(columns):
                    raise ValueError(f"{name}: row has {len(row)} cells, expected {len(columns)}")
                writer.writerow([cell(v) for v in row])
                count += 1
        logger.info(f"[SAVE] {name}: {count} rows")
        return path

    def write_jsonl(self, name: str, records: Iterable[Dict[str, Any]]) -> Path:
        path = self.path(name)
        count = 0
        with open(path, "w", encoding="utf-8") as f:
            self._write_header(f)
            for record in records:
                f.write(json_line(record) + "\n")
                count += 1
        logger.info(f"[SAVE] {name}: {count} records")
        return path

    def write_json(self, name: str, payload: Dict[str, Any]) -> Path:
        """JSON document (no comment syntax): the header fields go in as keys."""
        path = self.path(name)
        document = {**self.header_fields(), **payload}
        text = json.dumps(document, sort_keys=True, indent=2, default=_json_default)
        path.write_text(text + "\n", encoding="utf-8")
        logger.info(f"[SAVE] {name}")
        return path


def read_jsonl(path) -> List[Dict[str, Any]]:
    """Records of a JSON-lines artifact, header block skipped."""
    records = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            if line.startswith("#") or not line.strip():
                continue
            records.append(json.loads(line))
    return records
