"""Every package imports on its own in a fresh interpreter, in any order."""
import subprocess
import sys
from pathlib import Path

import pytest

SRC = Path(__file__).resolve().parent.parent / "src"

MODULES = [
    "main",
    "core.errors",
    "core.configuration",
    "core.load_save",
    "IO.handler",
    "IO.aisReader",
    "IO.geoReader",
    "IO.graphReader",
    "IO.eventStore",
    "IO.modelStore",
    "IO.plotExport",
    "geo",
    "analyses.ais",
    "analyses.ais.model",
    "analyses.ais.kinematics",
    "analyses.uci",
    "analyses.density",
    "analyses.sar",
    "analyses.prediction",
    "analyses.anomaly",
    "analyses.evidential",
    "analyses.netrisk",
    "commands",
    "scenarios",
]


def fresh_import(module: str) -> subprocess.CompletedProcess:
    return subprocess.run([sys.executable, "-c", f"import {module}"], cwd=SRC,
                          capture_output=True, text=True, timeout=120)


@pytest.mark.parametrize("module", MODULES)
def test_module_imports_alone(module):
    result = fresh_import(module)
    assert result.returncode == 0, result.stderr


def test_help_runs():
    result = subprocess.run([sys.executable, "main.py", "--help"], cwd=SRC,
                            capture_output=True, text=True, timeout=120)
    assert result.returncode == 0, result.stderr
    assert "anomalies" in result.stdout
