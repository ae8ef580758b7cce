"""
UCI package - infrastructure geometry and candidate-of-interest selection.
"""
from .model import CandidateReport, DepthGrid, FilterCriteria, ProtectedArea, UciGeometry, UciKind
from .filter import (
    area_intervals,
    corridor_intervals,
    dwell_time,
    evaluate_track,
    membership_intervals,
    select_candidates,
)

__all__ = [
    'CandidateReport', 'DepthGrid', 'FilterCriteria', 'ProtectedArea', 'UciGeometry',
    'UciKind', 'area_intervals', 'corridor_intervals', 'dwell_time', 'evaluate_track',
    'membership_intervals', 'select_candidates',
]
