"""
SAR association data model.

Contains:
- SarDetection: one ship detected in a SAR image
- Association: detection paired with a track, or left unassociated (mmsi None)
- SceneRecord: per-detection row of the annotated scene
"""
from dataclasses import dataclass
from typing import Optional

from geo import GeoPoint

FLAG_GAP_BRACKETING = "gap_bracketing"
FLAG_NO_AIS = "no_ais"


@dataclass(frozen=True)
class SarDetection:
    id: str
    t_acq: int
    pos: GeoPoint
    image_id: str


@dataclass(frozen=True)
class Association:
    detection_id: str
    mmsi: Optional[int]
    distance_m: Optional[float]
    used_prediction: bool = False
    track_pos: Optional[GeoPoint] = None

    def __post_init__(self):
        if (self.mmsi is None) != (self.distance_m is None):
            raise ValueError("distance_m is present iff the detection is associated")

    @property
    def associated(self) -> bool:
        return self.mmsi is not None


@dataclass(frozen=True)
class SceneRecord:
    detection_id: str
    image_id: str
    t_acq: int
    detection_pos: GeoPoint
    mmsi: Optional[int]
    vessel_name: Optional[str]
    track_pos: Optional[GeoPoint]
    distance_m: Optional[float]
    offset_east_m: Optional[float]
    offset_north_m: Optional[float]
    used_prediction: bool
    flag: str
    candidate_mmsi: Optional[int] = None
    candidate_gap_s: Optional[int] = None
    candidate_distance_m: Optional[float] = None
