"""
UCI data model - infrastructure geometries, selection criteria, candidate reports
and the bathymetry grid.

External Libraries Used:
- numpy - Depth lattice storage
- scipy.interpolate - Bilinear depth lookup (RegularGridInterpolator)
- shapely - Polygon protected areas
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Optional

import numpy as np
from scipy.interpolate import RegularGridInterpolator
from shapely.geometry import Point, Polygon

from analyses.ais.kinematics import KinematicStats
from geo import GeoPoint, Polyline


class UciKind(str, Enum):
    PIPELINE = "pipeline"
    POWER_CABLE = "power_cable"
    COMM_CABLE = "comm_cable"


@dataclass(frozen=True)
class UciGeometry:
    """A named pipeline or cable with its protection corridor half-width."""
    name: str
    kind: UciKind
    route: Polyline
    corridor_km: float

    def __post_init__(self):
        if not self.corridor_km > 0:
            raise ValueError(f"UCI {self.name}: corridor_km must be positive")


@dataclass(frozen=True)
class ProtectedArea:
    """Polygon zone (environmental or military) given in lon/lat order."""
    name: str
    polygon: Polygon
    kind: str = "protected_area"

    def __post_init__(self):
        if self.polygon.is_empty or not self.polygon.is_valid:
            raise ValueError(f"protected area {self.name}: invalid polygon")

    def contains(self, p: GeoPoint) -> bool:
        return self.polygon.covers(Point(p.lon, p.lat))


@dataclass(frozen=True)
class FilterCriteria:
    d_max_km: float
    t_min_s: float
    s_max_kn: float
    manoeuvre_rate_min: Optional[float] = None
    min_length_m: Optional[float] = None
    depth_gate_m: Optional[float] = None

    def __post_init__(self):
        if not self.d_max_km > 0:
            raise ValueError("d_max_km must be positive")
        if not self.t_min_s > 0:
            raise ValueError("t_min_s must be positive")
        if self.s_max_kn < 0:
            raise ValueError("s_max_kn must be >= 0")
        if self.manoeuvre_rate_min is not None and self.manoeuvre_rate_min < 0:
            raise ValueError("manoeuvre_rate_min must be >= 0")


@dataclass(frozen=True)
class CandidateReport:
    mmsi: int
    dwell_s: float
    stats: KinematicStats
    matched_criteria: FrozenSet[str]
    nearest_approach_m: float
    nearest_pos: GeoPoint = field(compare=False)
    t_first_in: float = 0.0
    t_last_out: float = 0.0


class DepthGrid:
    """
    Regular lat/lon lattice of depths in metres (positive down).

    Lookup is bilinear inside the lattice; outside it the depth is unknown (None).
    """

    def __init__(self, lats: np.ndarray, lons: np.ndarray, depth_m: np.ndarray):
        lats = np.asarray(lats, dtype=float)
        lons = np.asarray(lons, dtype=float)
        depth_m = np.asarray(depth_m, dtype=float)
        if lats.ndim != 1 or lons.ndim != 1 or len(lats) < 2 or len(lons) < 2:
            raise ValueError("depth lattice needs at least 2 latitudes and 2 longitudes")
        if depth_m.shape != (len(lats), len(lons)):
            raise ValueError(f"depth array shape {depth_m.shape} does not match lattice "
                             f"({len(lats)}, {len(lons)})")
        if np.any(np.diff(lats) <= 0) or np.any(np.diff(lons) <= 0):
            raise ValueError("lattice coordinates must be strictly increasing")
        self.lats = lats
        self.lons = lons
        self.depth_m = depth_m
        self._interp = RegularGridInterpolator((lats, lons), depth_m, method="linear",
                                               bounds_error=False, fill_value=np.nan)

    def depth_at(self, p: GeoPoint) -> Optional[float]:
        value = float(self._interp([[p.lat, p.lon]])[0])
        return None if np.isnan(value) else value
