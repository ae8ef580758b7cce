"""
Prediction Configuration - OU fitting and gap bridging.
"""
from typing import List

VELOCITY_SOURCES = ("reported", "fixes")


class configuration:
    """Constructor: create configuration object with default parameters"""

    def __init__(self):
        # history before the anchor used for the fit
        self.fit_window_s: float = 86400.0
        self.velocity_source: str = "reported"
        # gaps at least this long are bridged by the predict command
        self.bridge_gap_s: float = 21600.0

        self.importExportVariableList = ["fit_window_s", "velocity_source", "bridge_gap_s"]

    def validate(self) -> List[str]:
        problems = []
        if self.fit_window_s <= 0:
            problems.append("prediction.fit_window_s must be > 0")
        if self.velocity_source not in VELOCITY_SOURCES:
            problems.append(f"prediction.velocity_source must be one of {list(VELOCITY_SOURCES)}")
        if self.bridge_gap_s <= 0:
            problems.append("prediction.bridge_gap_s must be > 0")
        return problems
