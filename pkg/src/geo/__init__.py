"""
Geo package - spherical-earth primitives shared by every analysis.
"""
from .geodesy import (
    EARTH_RADIUS_M,
    BBox,
    GeoPoint,
    GridSpec,
    LocalPlane,
    Polyline,
    destination_point,
    distance_to_polyline,
    geodesic_distance,
    initial_bearing,
    interpolate_great_circle,
    normalize_lon,
    spherical_centroid,
    split_at_antimeridian,
)

__all__ = [
    'EARTH_RADIUS_M', 'BBox', 'GeoPoint', 'GridSpec', 'LocalPlane', 'Polyline',
    'destination_point', 'distance_to_polyline', 'geodesic_distance',
    'initial_bearing', 'interpolate_great_circle', 'normalize_lon',
    'spherical_centroid', 'split_at_antimeridian',
]
