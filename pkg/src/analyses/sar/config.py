"""
SAR Association Configuration.

Contains:
- Association gate (3 km)
- Opt-in association against OU predictions
- Review settings for unassociated detections
"""
from typing import List


class configuration:
    """Constructor: create configuration object with default parameters"""

    def __init__(self):
        self.gate_km: float = 3.0
        self.use_prediction: bool = False

        """Review of unassociated detections"""
        self.review_gap_s: float = 3600.0
        self.review_radius_km: float = 20.0

        self.importExportVariableList = ["gate_km", "use_prediction", "review_gap_s", "review_radius_km"]

    def validate(self) -> List[str]:
        problems = []
        if self.gate_km <= 0:
            problems.append("sar.gate_km must be > 0")
        if self.review_gap_s <= 0:
            problems.append("sar.review_gap_s must be > 0")
        if self.review_radius_km <= 0:
            problems.append("sar.review_radius_km must be > 0")
        return problems
