"""
Central Configuration Module.

This module provides:
- The `run` section (seed, output directory, plotting)
- RunConfig: one section object per analysis plus `run`
- TOML loading, `--set section.key=value` overrides and exhaustive validation
- The config hash that keys run directories and is stamped into every artifact

Each analysis package owns its section class in its own config.py; only the
names listed in a section's importExportVariableList are loaded, overridden,
hashed and saved.

External Libraries Used:
- tomllib (Python Standard Library, 3.11+) - TOML parsing
- hashlib, json (Python Standard Library) - Canonical config hash
"""
import hashlib
import json
import logging
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional

from analyses.ais.config import configuration as aisConfig
from analyses.anomaly.config import configuration as anomalyConfig
from analyses.density.config import configuration as densityConfig
from analyses.evidential.config import configuration as evidentialConfig
from analyses.netrisk.config import configuration as netriskConfig
from analyses.prediction.config import configuration as predictionConfig
from analyses.sar.config import configuration as sarConfig
from analyses.uci.config import configuration as uciConfig
from core.errors import ConfigValidationError, IngestError

logger = logging.getLogger(__name__)


class configuration:
    """Constructor: create configuration object with default parameters"""

    def __init__(self):
        # drives every stochastic component
        self.seed: int = 0
        self.out_dir: str = "runs"
        self.plot: bool = False

        self.importExportVariableList = ["seed", "out_dir", "plot"]

    def validate(self) -> List[str]:
        problems = []
        if self.seed < 0:
            problems.append("run.seed must be >= 0")
        if not self.out_dir:
            problems.append("run.out_dir must not be empty")
        return problems


SECTIONS = {
    "run": configuration,
    "ais": aisConfig,
    "uci": uciConfig,
    "density": densityConfig,
    "sar": sarConfig,
    "prediction": predictionConfig,
    "anomaly": anomalyConfig,
    "evidential": evidentialConfig,
    "netrisk": netriskConfig,
}


def _coerce(current: Any, value: Any) -> Any:
    """Convert value to the type of the default, as section attributes are typed by their defaults."""
    target = type(current)
    if target is bool:
        if isinstance(value, bool):
            return value
        raise ValueError(f"expected true/false, got {value!r}")
    if target is int:
        if isinstance(value, bool):
            raise ValueError(f"expected an integer, got {value!r}")
        if isinstance(value, float) and not value.is_integer():
            raise ValueError(f"expected an integer, got {value!r}")
        return int(value)
    if target is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"expected a number, got {value!r}")
        return float(value)
    if target is str:
        if not isinstance(value, str):
            raise ValueError(f"expected a string, got {value!r}")
        return value
    return value


def _parse_override_value(raw: str) -> Any:
    """TOML scalar when the text is one (3, 2.5, true, "x"), the bare text otherwise."""
    try:
        return tomllib.loads(f"v = {raw}")["v"]
    except tomllib.TOMLDecodeError:
        return raw


def _toml_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value) if value == value and abs(value) != float("inf") else str(value)
    if isinstance(value, int):
        return str(value)
    return json.dumps(str(value))


class RunConfig:
    """
    All settings of one run.

    Sections are attributes named after SECTIONS (config.uci.d_max_km, ...).
    """

    def __init__(self):
        for name, section_class in SECTIONS.items():
            setattr(self, name, section_class())

    def section(self, name: str):
        return getattr(self, name)

    # ========================================================================
    # EXPORT
    # ========================================================================

    def to_dict(self) -> Dict[str, Dict[str, Any]]:
        out = {}
        for name in SECTIONS:
            section = self.section(name)
            out[name] = {key: getattr(section, key) for key in section.importExportVariableList}
        return out

    def run_values(self) -> Dict[str, Dict[str, Any]]:
        """Exported values that shape a run's artifacts; run.out_dir only says where runs go."""
        values = self.to_dict()
        values["run"] = {k: v for k, v in values["run"].items() if k != "out_dir"}
        return values

    def config_hash(self) -> str:
        canonical = json.dumps(self.run_values(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def to_toml(self) -> str:
        lines = []
        for name, values in self.run_values().items():
            lines.append(f"[{name}]")
            lines.extend(f"{key} = {_toml_value(value)}" for key, value in values.items())
            lines.append("")
        return "\n".join(lines)

    # ========================================================================
    # IMPORT
    # ========================================================================

    def _set(self, section_name: str, key: str, value: Any, origin: str) -> Optional[str]:
        if section_name not in SECTIONS:
            return f"{origin}: unknown section [{section_name}]"
        section = self.section(section_name)
        if key not in section.importExportVariableList:
            return f"{origin}: unknown key {section_name}.{key}"
        try:
            setattr(section, key, _coerce(getattr(section, key), value))
        except (TypeError, ValueError) as e:
            return f"{origin}: {section_name}.{key}: {e}"
        logger.debug(f"  [CONFIG] {section_name}.{key} = {value!r} ({origin})")
        return None

    def apply(self, data: Dict[str, Any], origin: str) -> List[str]:
        """Apply a {section: {key: value}} mapping; returns problems instead of stopping at the first."""
        problems = []
        for section_name, values in data.items():
            if not isinstance(values, dict):
                problems.append(f"{origin}: '{section_name}' must be a table")
                continue
            for key, value in values.items():
                problem = self._set(section_name, key, value, origin)
                if problem:
                    problems.append(problem)
        return problems

    def apply_overrides(self, assignments: Iterable[str]) -> List[str]:
        problems = []
        for assignment in assignments:
            target, sep, raw = assignment.partition("=")
            section_name, dot, key = target.strip().partition(".")
            if not sep or not dot:
                problems.append(f"--set {assignment!r}: expected section.key=value")
                continue
            problem = self._set(section_name, key, _parse_override_value(raw.strip()), "--set")
            if problem:
                problems.append(problem)
        return problems

    def validate(self) -> List[str]:
        problems = []
        for name in SECTIONS:
            problems.extend(self.section(name).validate())
        return problems

    @classmethod
    def build(cls, path=None, overrides: Iterable[str] = (), seed: Optional[int] = None) -> "RunConfig":
        """
        Defaults <- config file <- --set overrides <- --seed, then validation.

        Raises:
            IngestError: config file missing or not TOML
            ConfigValidationError: every problem found, all at once
        """
        config = cls()
        problems: List[str] = []
        if path is not None:
            path = Path(path)
            try:
                with open(path, "rb") as f:
                    data = tomllib.load(f)
            except OSError as e:
                raise IngestError(f"cannot read config file {path}: {e}")
            except tomllib.TOMLDecodeError as e:
                raise IngestError(f"config file {path} is not valid TOML: {e}")
            problems += config.apply(data, path.name)
            logger.info(f"[LOAD] config {path.name}")
        problems += config.apply_overrides(overrides)
        if seed is not None:
            problem = config._set("run", "seed", seed, "--seed")
            if problem:
                problems.append(problem)
        problems += config.validate()
        if problems:
            raise ConfigValidationError(problems)
        return config
