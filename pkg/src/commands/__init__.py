"""
Subcommands of the uci-monitor command line, in the order `--help` lists them.
"""
from .anomalies import AnomaliesCommand
from .assess import AssessCommand
from .associate import AssociateCommand
from .density import DensityCommand
from .filter import FilterCommand
from .ingest import IngestCommand
from .netrisk import NetriskCommand
from .predict import PredictCommand
from .scenario import ScenarioCommand

COMMANDS = [
    IngestCommand,
    DensityCommand,
    FilterCommand,
    AssociateCommand,
    PredictCommand,
    AnomaliesCommand,
    AssessCommand,
    NetriskCommand,
    ScenarioCommand,
]

__all__ = ["COMMANDS"]
