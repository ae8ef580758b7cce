"""
AIS Configuration - ingest and kinematics parameters.

Contains:
- De-duplication window
- Interpolation gap limit and SAR interpolation window
- Drift / anchored speed thresholds
- Turn threshold behind the manoeuvre rate
"""
from typing import List


class configuration:
    """Constructor: create configuration object with default parameters"""

    def __init__(self):
        """Ingest settings"""
        self.dedup_window_s: float = 0.0

        """Kinematics settings"""
        # gaps up to 6 h are bridged by interpolation
        self.max_gap_s: float = 21600.0
        # +/- window around an image time for plot-ready trajectories
        self.window_s: float = 600.0
        self.drift_kn: float = 3.0
        self.anchored_kn: float = 0.5
        self.turn_deg: float = 30.0

        self.importExportVariableList = [
            "dedup_window_s", "max_gap_s", "window_s",
            "drift_kn", "anchored_kn", "turn_deg",
        ]

    def validate(self) -> List[str]:
        problems = []
        if self.dedup_window_s < 0:
            problems.append("ais.dedup_window_s must be >= 0")
        if self.max_gap_s <= 0:
            problems.append("ais.max_gap_s must be > 0")
        if self.window_s <= 0:
            problems.append("ais.window_s must be > 0")
        if self.drift_kn <= 0:
            problems.append("ais.drift_kn must be > 0")
        if not 0 <= self.anchored_kn <= self.drift_kn:
            problems.append("ais.anchored_kn must lie in [0, drift_kn]")
        if not 0 < self.turn_deg <= 180:
            problems.append("ais.turn_deg must lie in (0, 180]")
        return problems
