"""
AIS analysis package - report model, track assembly and kinematics.
"""
from .model import AisPoint, NavStatus, OwnershipRisk, RecordError, ShipType, Track, VesselInfo
from .ingest import build_tracks
from .kinematics import (
    Gap,
    KinematicStats,
    MotionClass,
    compute_stats,
    find_gaps,
    interpolate_position,
)

__all__ = [
    'AisPoint', 'NavStatus', 'OwnershipRisk', 'RecordError', 'ShipType', 'Track',
    'VesselInfo', 'build_tracks', 'Gap', 'KinematicStats', 'MotionClass',
    'compute_stats', 'find_gaps', 'interpolate_position',
]
