"""
Anomaly Configuration - detector thresholds and severity heuristics.

Contains:
- AIS gap threshold and corridor boost
- Loiter normalcy gate
- Search-pattern cycle counts
- Zone-entry base severity and per-kind weights
- Route-deviation normalcy threshold and durations
- Report floor
"""
from typing import Dict, List


class configuration:
    """Constructor: create configuration object with default parameters"""

    def __init__(self):
        self.min_gap_s: float = 3600.0
        self.full_gap_s: float = 86400.0
        self.corridor_boost: float = 1.5

        self.loiter_normalcy_max: float = 0.2

        """Search pattern"""
        self.min_cycles: int = 3
        self.full_cycles: int = 5
        self.range_tolerance_m: float = 10.0
        self.min_span_s: float = 7200.0

        """Zone entry (weights per corridor or area kind)"""
        self.zone_base_severity: float = 0.5
        self.weight_pipeline: float = 1.0
        self.weight_power_cable: float = 1.0
        self.weight_comm_cable: float = 1.0
        self.weight_protected_area: float = 1.0

        """Route deviation"""
        self.deviation_normalcy_max: float = 0.05
        self.deviation_min_s: float = 1800.0
        self.deviation_full_s: float = 7200.0

        self.unassociated_sar_severity: float = 0.6
        self.report_floor: float = 0.1

        self.importExportVariableList = [
            "min_gap_s", "full_gap_s", "corridor_boost", "loiter_normalcy_max",
            "min_cycles", "full_cycles", "range_tolerance_m", "min_span_s",
            "zone_base_severity", "weight_pipeline", "weight_power_cable",
            "weight_comm_cable", "weight_protected_area",
            "deviation_normalcy_max", "deviation_min_s", "deviation_full_s",
            "unassociated_sar_severity", "report_floor",
        ]

    def kind_weights(self) -> Dict[str, float]:
        return {
            "pipeline": self.weight_pipeline,
            "power_cable": self.weight_power_cable,
            "comm_cable": self.weight_comm_cable,
            "protected_area": self.weight_protected_area,
        }

    def validate(self) -> List[str]:
        problems = []
        for name in ("min_gap_s", "full_gap_s", "min_span_s", "deviation_min_s", "deviation_full_s"):
            if getattr(self, name) <= 0:
                problems.append(f"anomaly.{name} must be > 0")
        if self.corridor_boost < 1.0:
            problems.append("anomaly.corridor_boost must be >= 1")
        for name in ("loiter_normalcy_max", "deviation_normalcy_max"):
            if not 0.0 < getattr(self, name) <= 1.0:
                problems.append(f"anomaly.{name} must lie in (0, 1]")
        if self.min_cycles < 1:
            problems.append("anomaly.min_cycles must be >= 1")
        if self.full_cycles < self.min_cycles:
            problems.append("anomaly.full_cycles must be >= anomaly.min_cycles")
        if self.range_tolerance_m < 0:
            problems.append("anomaly.range_tolerance_m must be >= 0")
        for name in ("zone_base_severity", "unassociated_sar_severity", "report_floor"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                problems.append(f"anomaly.{name} must lie in [0, 1]")
        for kind, weight in self.kind_weights().items():
            if weight < 0:
                problems.append(f"anomaly.weight_{kind} must be >= 0")
        return problems
