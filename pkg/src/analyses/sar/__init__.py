"""
SAR package - association of SAR ship detections with AIS tracks.
"""
from .model import FLAG_GAP_BRACKETING, FLAG_NO_AIS, Association, SarDetection, SceneRecord
from .association import associate, association_report, gated_assignment

__all__ = [
    'FLAG_GAP_BRACKETING', 'FLAG_NO_AIS', 'Association', 'SarDetection', 'SceneRecord',
    'associate', 'association_report', 'gated_assignment',
]
