"""
Anomaly package - rule-based per-vessel indicators.
"""
from .model import AnomalyEvent, AnomalyKind, sort_events
from .detectors import (
    apply_floor,
    detect_ais_gap,
    detect_loiter,
    detect_route_deviation,
    detect_search_pattern,
    detect_zone_entry,
    label_runs,
    status_inconsistency_events,
    unassociated_sar_events,
)

__all__ = [
    'AnomalyEvent', 'AnomalyKind', 'sort_events',
    'apply_floor', 'detect_ais_gap', 'detect_loiter', 'detect_route_deviation',
    'detect_search_pattern', 'detect_zone_entry', 'label_runs',
    'status_inconsistency_events', 'unassociated_sar_events',
]
