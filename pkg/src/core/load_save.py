"""
Run State Module - content-addressed run directories.

ARCHITECTURE:
- RunStateManager: owns one run directory <out>/<subcommand>-<key12>/
- The key is the SHA-256 over config hash, subcommand, parameters and input
  file digests, so identical runs land in the same directory with identical
  bytes, and different inputs never overwrite each other
- run_config.toml: every exported config value
- manifest.json: tool version, subcommand, config hash, input digests,
  artifact list. No wall-clock timestamps.

External Libraries:
- hashlib, json, pathlib (standard library)
"""
import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from IO.handler import OutputHandler
from core.configuration import RunConfig
from core.errors import IngestError
from core.version import TOOL_NAME, TOOL_VERSION

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
CONFIG_NAME = "run_config.toml"


def file_digest(path) -> str:
    """
    Raises:
        IngestError: file missing or unreadable
    """
    digest = hashlib.sha256()
    try:
        with open(path, "rb") as f:
            for block in iter(lambda: f.read(1 << 16), b""):
                digest.update(block)
    except OSError as e:
        raise IngestError(f"cannot read input {path}: {e}")
    return digest.hexdigest()


class RunStateManager:
    """
    Run directory bookkeeping for one subcommand invocation.
    """

    VERSION = "1"

    def __init__(self, out_dir, subcommand: str, config: RunConfig,
                 inputs: Optional[Dict[str, str]] = None, params: Optional[Dict[str, str]] = None):
        self.subcommand = subcommand
        self.config = config
        self.config_hash = config.config_hash()
        self.inputs = {role: {"path": Path(p).name, "sha256": file_digest(p)}
                       for role, p in sorted((inputs or {}).items())}
        self.params = dict(sorted((params or {}).items()))
        key_source = json.dumps({"config": self.config_hash, "subcommand": subcommand,
                                 "inputs": self.inputs, "params": self.params},
                                sort_keys=True, separators=(",", ":"))
        self.run_key = hashlib.sha256(key_source.encode("utf-8")).hexdigest()
        self.run_dir = Path(out_dir) / f"{subcommand}-{self.run_key[:12]}"
        self.output = OutputHandler(self.run_dir, subcommand, self.config_hash)

    def open(self) -> Path:
        """
        Create the run directory, dropping the manifest and config of an
        earlier run with the same key. The directory counts as finished only
        once finish() has written both again.
        """
        self.run_dir.mkdir(parents=True, exist_ok=True)
        for name in (MANIFEST_NAME, CONFIG_NAME):
            (self.run_dir / name).unlink(missing_ok=True)
        logger.info(f"[RUN] {self.subcommand} -> {self.run_dir}")
        return self.run_dir

    def manifest(self) -> Dict[str, Any]:
        return {
            "manifest_version": self.VERSION,
            "tool": TOOL_NAME,
            "version": TOOL_VERSION,
            "subcommand": self.subcommand,
            "config_hash": self.config_hash,
            "inputs": self.inputs,
            "params": self.params,
            "artifacts": sorted(self.output.written),
        }

    def finish(self) -> bool:
        """
        Write run_config.toml, then manifest.json.

        Returns: True if success, False if failure
        """
        try:
            (self.run_dir / CONFIG_NAME).write_text(self.config.to_toml(), encoding="utf-8")
            path = self.run_dir / MANIFEST_NAME
            path.write_text(json.dumps(self.manifest(), sort_keys=True, indent=2) + "\n", encoding="utf-8")
            logger.info(f"[SAVE] manifest with {len(self.output.written)} artifacts")
            return True
        except OSError as e:
            logger.error(f"[SAVE] Failed to write manifest: {e}")
            return False


def load_manifest(run_dir) -> Optional[Dict[str, Any]]:
    """Manifest of a finished run, None if absent or unreadable."""
    path = Path(run_dir) / MANIFEST_NAME
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
        logger.error(f"[LOAD] Failed to read {path}: {e}")
        return None
    logger.info(f"[LOAD] manifest of {data.get('subcommand')} run")
    return data
