"""
Anomaly event model.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict


class AnomalyKind(str, Enum):
    AIS_GAP = "ais_gap"
    LOITER_NEAR_UCI = "loiter_near_uci"
    ZONE_ENTRY = "zone_entry"
    ROUTE_DEVIATION = "route_deviation"
    SEARCH_PATTERN = "search_pattern"
    UNASSOCIATED_SAR = "unassociated_sar"
    STATUS_INCONSISTENCY = "status_inconsistency"


@dataclass(frozen=True)
class AnomalyEvent:
    """
    One indicator raised by a detector.

    evidence holds a one-line summary under "summary" plus the structured
    fields the detector measured (durations, distances, counts).
    """
    mmsi: int
    kind: AnomalyKind
    t_start: float
    t_end: float
    severity: float
    evidence: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.t_end < self.t_start:
            raise ValueError("anomaly event ends before it starts")
        if not 0.0 <= self.severity <= 1.0:
            raise ValueError(f"severity {self.severity} outside [0, 1]")
        if not self.evidence.get("summary"):
            raise ValueError("anomaly evidence needs a summary")


def sort_events(events):
    return sorted(events, key=lambda e: (e.t_start, e.t_end, e.mmsi, e.kind.value))
