"""
Geodesic primitives on a spherical earth.

Provides:
- GeoPoint / Polyline value types (longitude normalized to [-180, 180))
- Great-circle distance, bearing, destination and interpolation
- Point-to-polyline distance through a local azimuthal-equidistant plane
- Lat/lon bounding boxes and regular grid indexing

External Libraries Used:
- math (Python Standard Library) - Trigonometry on scalars
- numpy (BSD License) - Unit-vector averaging for centroids
"""
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

EARTH_RADIUS_M = 6_371_000.0


def normalize_lon(lon: float) -> float:
    """Wrap a longitude into [-180, 180)."""
    return ((float(lon) + 180.0) % 360.0) - 180.0


@dataclass(frozen=True)
class GeoPoint:
    """WGS-84 position in degrees. lon=180 is stored as -180."""
    lat: float
    lon: float

    def __post_init__(self):
        lat = float(self.lat)
        lon = float(self.lon)
        if not (math.isfinite(lat) and math.isfinite(lon)):
            raise ValueError(f"non-finite coordinate ({lat}, {lon})")
        if not -90.0 <= lat <= 90.0:
            raise ValueError(f"latitude {lat} outside [-90, 90]")
        if not -180.0 <= lon <= 180.0:
            raise ValueError(f"longitude {lon} outside [-180, 180]")
        object.__setattr__(self, "lat", lat)
        object.__setattr__(self, "lon", normalize_lon(lon) if lon == 180.0 else lon)


@dataclass(frozen=True)
class Polyline:
    """Ordered vertex list, at least two vertices, no consecutive repeats."""
    vertices: Tuple[GeoPoint, ...]

    def __post_init__(self):
        vertices = tuple(self.vertices)
        if len(vertices) < 2:
            raise ValueError("a polyline needs at least two vertices")
        for first, second in zip(vertices, vertices[1:]):
            if first == second:
                raise ValueError(f"consecutive identical vertices at {first}")
        object.__setattr__(self, "vertices", vertices)

    @classmethod
    def from_lonlat(cls, coordinates: Iterable[Sequence[float]]) -> "Polyline":
        """Build from GeoJSON-ordered (lon, lat) pairs."""
        return cls(tuple(GeoPoint(lat=c[1], lon=c[0]) for c in coordinates))


# ============================================================================
# GREAT-CIRCLE FUNCTIONS
# ============================================================================

def geodesic_distance(a: GeoPoint, b: GeoPoint) -> float:
    """Haversine great-circle distance in meters."""
    # canonical argument order makes the result bit-for-bit symmetric
    if (a.lat, a.lon) > (b.lat, b.lon):
        a, b = b, a
    phi1 = math.radians(a.lat)
    phi2 = math.radians(b.lat)
    dphi = phi2 - phi1
    dlmb = math.radians(b.lon - a.lon)
    h = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlmb / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_M * math.asin(math.sqrt(min(1.0, h)))


def initial_bearing(a: GeoPoint, b: GeoPoint) -> float:
    """Initial great-circle bearing from a to b, radians clockwise from north."""
    phi1 = math.radians(a.lat)
    phi2 = math.radians(b.lat)
    dlmb = math.radians(b.lon - a.lon)
    y = math.sin(dlmb) * math.cos(phi2)
    x = math.cos(phi1) * math.sin(phi2) - math.sin(phi1) * math.cos(phi2) * math.cos(dlmb)
    return math.atan2(y, x)


def destination_point(origin: GeoPoint, bearing: float, distance_m: float) -> GeoPoint:
    """Point reached after travelling distance_m along bearing (radians)."""
    delta = distance_m / EARTH_RADIUS_M
    phi1 = math.radians(origin.lat)
    lmb1 = math.radians(origin.lon)
    sin_phi2 = math.sin(phi1) * math.cos(delta) + math.cos(phi1) * math.sin(delta) * math.cos(bearing)
    phi2 = math.asin(max(-1.0, min(1.0, sin_phi2)))
    lmb2 = lmb1 + math.atan2(math.sin(bearing) * math.sin(delta) * math.cos(phi1),
                             math.cos(delta) - math.sin(phi1) * sin_phi2)
    return GeoPoint(lat=math.degrees(phi2), lon=normalize_lon(math.degrees(lmb2)))


def _unit_vector(p: GeoPoint) -> np.ndarray:
    phi = math.radians(p.lat)
    lmb = math.radians(p.lon)
    return np.array([math.cos(phi) * math.cos(lmb), math.cos(phi) * math.sin(lmb), math.sin(phi)])


def _from_vector(v: np.ndarray) -> GeoPoint:
    x, y, z = (float(c) for c in v)
    lat = math.degrees(math.atan2(z, math.hypot(x, y)))
    lon = math.degrees(math.atan2(y, x))
    return GeoPoint(lat=lat, lon=normalize_lon(lon))


def interpolate_great_circle(a: GeoPoint, b: GeoPoint, fraction: float) -> GeoPoint:
    """Spherical linear interpolation; fraction 0 gives a, 1 gives b."""
    if fraction <= 0.0:
        return a
    if fraction >= 1.0:
        return b
    delta = geodesic_distance(a, b) / EARTH_RADIUS_M
    if delta < 1e-12:
        return a
    va = _unit_vector(a)
    vb = _unit_vector(b)
    sin_delta = math.sin(delta)
    v = (math.sin((1.0 - fraction) * delta) * va + math.sin(fraction * delta) * vb) / sin_delta
    return _from_vector(v)


def spherical_centroid(points: Sequence[GeoPoint]) -> GeoPoint:
    """Normalized mean of unit vectors. Raises on an empty sequence."""
    if not points:
        raise ValueError("centroid of an empty point set")
    total = np.sum([_unit_vector(p) for p in points], axis=0)
    if np.linalg.norm(total) < 1e-12:
        return points[0]
    return _from_vector(total)


# ============================================================================
# LOCAL PLANE
# ============================================================================

class LocalPlane:
    """
    Azimuthal-equidistant tangent plane centred on an origin.

    x is east, y is north, both in meters. Distances and bearings from the origin
    are exact; other distances degrade slowly with range (fine below ~100 km).
    """

    def __init__(self, origin: GeoPoint):
        self.origin = origin

    def to_xy(self, p: GeoPoint) -> Tuple[float, float]:
        d = geodesic_distance(self.origin, p)
        if d == 0.0:
            return 0.0, 0.0
        theta = initial_bearing(self.origin, p)
        return d * math.sin(theta), d * math.cos(theta)

    def from_xy(self, x: float, y: float) -> GeoPoint:
        d = math.hypot(x, y)
        if d == 0.0:
            return self.origin
        return destination_point(self.origin, math.atan2(x, y), d)


# ============================================================================
# POLYLINE DISTANCE
# ============================================================================

def split_at_antimeridian(line: Polyline) -> List[Polyline]:
    """Split a polyline wherever a segment crosses the +/-180 meridian."""
    parts: List[List[GeoPoint]] = [[line.vertices[0]]]
    for a, b in zip(line.vertices, line.vertices[1:]):
        dlon = b.lon - a.lon
        if abs(dlon) > 180.0:
            # unwrap b next to a, then find the latitude at the crossing
            b_lon = b.lon + (360.0 if dlon < 0 else -360.0)
            edge = 180.0 if b_lon > a.lon else -180.0
            f = (edge - a.lon) / (b_lon - a.lon)
            lat_c = a.lat + f * (b.lat - a.lat)
            end_here = GeoPoint(lat=lat_c, lon=edge)
            start_next = GeoPoint(lat=lat_c, lon=-edge)
            if parts[-1][-1] != end_here:
                parts[-1].append(end_here)
            parts.append([start_next] if start_next != b else [])
        parts[-1].append(b)
    return [Polyline(tuple(vs)) for vs in parts if len(vs) >= 2]


def _segment_distance(a_xy: Tuple[float, float], b_xy: Tuple[float, float],
                      d_a: float, d_b: float) -> float:
    """Distance from the plane origin to segment AB; endpoint distances are exact."""
    ax, ay = a_xy
    vx = b_xy[0] - ax
    vy = b_xy[1] - ay
    length2 = vx * vx + vy * vy
    if length2 == 0.0:
        return min(d_a, d_b)
    t = -(ax * vx + ay * vy) / length2
    if t <= 0.0:
        return d_a
    if t >= 1.0:
        return d_b
    return min(math.hypot(ax + t * vx, ay + t * vy), d_a, d_b)


def distance_to_polyline(p: GeoPoint, line: Polyline) -> float:
    """Minimum distance in meters from p to any segment of line."""
    plane = LocalPlane(p)
    best = math.inf
    for part in split_at_antimeridian(line):
        xy = [plane.to_xy(v) for v in part.vertices]
        dist = [geodesic_distance(p, v) for v in part.vertices]
        for i in range(len(xy) - 1):
            best = min(best, _segment_distance(xy[i], xy[i + 1], dist[i], dist[i + 1]))
    return best


# ============================================================================
# GRIDS
# ============================================================================

@dataclass(frozen=True)
class BBox:
    """Lat/lon rectangle. Does not wrap across the antimeridian."""
    lat_min: float
    lat_max: float
    lon_min: float
    lon_max: float

    def __post_init__(self):
        if not (self.lat_min < self.lat_max and self.lon_min < self.lon_max):
            raise ValueError(f"empty bounding box {self}")

    def contains(self, p: GeoPoint) -> bool:
        return self.lat_min <= p.lat <= self.lat_max and self.lon_min <= p.lon <= self.lon_max


@dataclass(frozen=True)
class GridSpec:
    bbox: BBox
    cell_deg: float

    def __post_init__(self):
        if not self.cell_deg > 0:
            raise ValueError("cell_deg must be positive")

    @property
    def shape(self) -> Tuple[int, int]:
        rows = math.ceil((self.bbox.lat_max - self.bbox.lat_min) / self.cell_deg - 1e-9)
        cols = math.ceil((self.bbox.lon_max - self.bbox.lon_min) / self.cell_deg - 1e-9)
        return max(rows, 1), max(cols, 1)

    def cell_index(self, lat: float, lon: float) -> Optional[Tuple[int, int]]:
        """Row/column of the cell holding (lat, lon); None outside the box."""
        if not (self.bbox.lat_min <= lat <= self.bbox.lat_max
                and self.bbox.lon_min <= lon <= self.bbox.lon_max):
            return None
        rows, cols = self.shape
        row = min(int((lat - self.bbox.lat_min) // self.cell_deg), rows - 1)
        col = min(int((lon - self.bbox.lon_min) // self.cell_deg), cols - 1)
        return row, col

    def cell_center(self, row: int, col: int) -> GeoPoint:
        return GeoPoint(lat=self.bbox.lat_min + (row + 0.5) * self.cell_deg,
                        lon=self.bbox.lon_min + (col + 0.5) * self.cell_deg)
