import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geo import (
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
    spherical_centroid,
    split_at_antimeridian,
)

lats = st.floats(min_value=-89.0, max_value=89.0, allow_nan=False)
lons = st.floats(min_value=-180.0, max_value=179.999, allow_nan=False)
points = st.builds(GeoPoint, lat=lats, lon=lons)


def haversine(lat1, lon1, lat2, lon2):
    p1, p2 = math.radians(lat1), math.radians(lat2)
    dp = p2 - p1
    dl = math.radians(lon2 - lon1)
    h = math.sin(dp / 2) ** 2 + math.cos(p1) * math.cos(p2) * math.sin(dl / 2) ** 2
    return 2 * 6371000.0 * math.asin(math.sqrt(h))


# ============================================================================
# POINTS AND DISTANCES
# ============================================================================

def test_geopoint_rejects_out_of_range():
    with pytest.raises(ValueError):
        GeoPoint(lat=91.0, lon=0.0)
    with pytest.raises(ValueError):
        GeoPoint(lat=0.0, lon=181.0)
    with pytest.raises(ValueError):
        GeoPoint(lat=float("nan"), lon=0.0)


def test_lon_180_is_stored_as_minus_180():
    assert GeoPoint(lat=10.0, lon=180.0).lon == -180.0


def test_polyline_needs_two_distinct_vertices():
    with pytest.raises(ValueError):
        Polyline((GeoPoint(0, 0),))
    with pytest.raises(ValueError):
        Polyline((GeoPoint(0, 0), GeoPoint(0, 0)))


def test_distance_identity_and_antipode():
    origin = GeoPoint(0.0, 0.0)
    assert geodesic_distance(origin, origin) == 0.0
    assert geodesic_distance(origin, GeoPoint(0.0, -180.0)) == pytest.approx(math.pi * EARTH_RADIUS_M, rel=1e-12)


def test_distance_matches_independent_haversine():
    d = geodesic_distance(GeoPoint(55.5, 15.5), GeoPoint(55.5, 15.6))
    assert abs(d - haversine(55.5, 15.5, 55.5, 15.6)) < 0.1


@given(points, points)
def test_distance_is_exactly_symmetric(a, b):
    assert geodesic_distance(a, b) == geodesic_distance(b, a)
    assert geodesic_distance(a, b) >= 0.0


@given(points, points, points)
def test_triangle_inequality(a, b, c):
    ab = geodesic_distance(a, b)
    bc = geodesic_distance(b, c)
    ac = geodesic_distance(a, c)
    assert ac <= (ab + bc) * (1 + 1e-6) + 1e-6


@given(st.builds(GeoPoint, lat=st.floats(min_value=-80.0, max_value=80.0), lon=lons),
       st.floats(min_value=0, max_value=2 * math.pi), st.floats(min_value=1.0, max_value=200_000.0))
def test_destination_distance_roundtrip(origin, bearing, distance):
    target = destination_point(origin, bearing, distance)
    assert geodesic_distance(origin, target) == pytest.approx(distance, rel=1e-6, abs=1e-3)


def test_bearing_due_east_on_equator():
    assert initial_bearing(GeoPoint(0, 0), GeoPoint(0, 1)) == pytest.approx(math.pi / 2)


def test_interpolate_endpoints_and_midpoint():
    a = GeoPoint(10.0, 20.0)
    b = GeoPoint(11.0, 20.0)
    assert interpolate_great_circle(a, b, 0.0) == a
    assert interpolate_great_circle(a, b, 1.0) == b
    mid = interpolate_great_circle(a, b, 0.5)
    assert mid.lat == pytest.approx(10.5, abs=1e-9)
    assert mid.lon == pytest.approx(20.0, abs=1e-9)


def test_centroid_of_symmetric_points():
    c = spherical_centroid([GeoPoint(1, 0), GeoPoint(-1, 0), GeoPoint(0, 1), GeoPoint(0, -1)])
    assert c.lat == pytest.approx(0.0, abs=1e-9)
    assert c.lon == pytest.approx(0.0, abs=1e-9)
    with pytest.raises(ValueError):
        spherical_centroid([])


@given(st.floats(min_value=-50_000, max_value=50_000), st.floats(min_value=-50_000, max_value=50_000))
def test_local_plane_roundtrip(x, y):
    plane = LocalPlane(GeoPoint(55.0, 15.0))
    back = plane.to_xy(plane.from_xy(x, y))
    assert back[0] == pytest.approx(x, abs=1e-3)
    assert back[1] == pytest.approx(y, abs=1e-3)


# ============================================================================
# POLYLINE DISTANCE
# ============================================================================

def test_point_on_vertex_is_zero():
    line = Polyline((GeoPoint(55.0, 15.0), GeoPoint(55.1, 15.2), GeoPoint(55.3, 15.2)))
    assert distance_to_polyline(GeoPoint(55.1, 15.2), line) == pytest.approx(0.0, abs=1e-6)


def test_equidistant_offset_from_equatorial_segment():
    line = Polyline((GeoPoint(0.0, 0.0), GeoPoint(0.0, 1.0)))
    p = GeoPoint(0.1, 0.5)
    # dense sampling of the segment
    brute = min(geodesic_distance(p, GeoPoint(0.0, i / 10_000)) for i in range(10_001))
    assert distance_to_polyline(p, line) == pytest.approx(brute, rel=5e-3)
    assert distance_to_polyline(p, line) == pytest.approx(11_119.0, rel=5e-3)


def test_beyond_endpoint_clamps_to_endpoint():
    line = Polyline((GeoPoint(0.0, 0.0), GeoPoint(0.0, 1.0)))
    p = GeoPoint(0.0, 1.2)
    assert distance_to_polyline(p, line) == pytest.approx(geodesic_distance(p, GeoPoint(0.0, 1.0)))


@settings(max_examples=50)
@given(points, st.lists(points, min_size=2, max_size=5, unique=True))
def test_polyline_distance_bounded_by_vertices(p, vertices):
    line = Polyline(tuple(vertices))
    d = distance_to_polyline(p, line)
    assert all(d <= geodesic_distance(p, v) + 1e-6 for v in vertices)


def test_split_at_antimeridian():
    line = Polyline((GeoPoint(0.0, 179.0), GeoPoint(0.0, -179.0)))
    parts = split_at_antimeridian(line)
    assert len(parts) == 2
    assert parts[0].vertices[-1].lon == -180.0
    d = distance_to_polyline(GeoPoint(0.5, 180.0), line)
    assert d == pytest.approx(geodesic_distance(GeoPoint(0.5, 180.0), GeoPoint(0.0, 180.0)), rel=1e-3)


# ============================================================================
# GRIDS
# ============================================================================

def test_grid_indexing():
    spec = GridSpec(BBox(55.0, 56.0, 15.0, 16.0), 0.25)
    assert spec.shape == (4, 4)
    assert spec.cell_index(55.0, 15.0) == (0, 0)
    assert spec.cell_index(56.0, 16.0) == (3, 3)
    assert spec.cell_index(55.3, 15.6) == (1, 2)
    assert spec.cell_index(54.9, 15.5) is None
    centre = spec.cell_center(1, 2)
    assert centre.lat == pytest.approx(55.375)
    assert centre.lon == pytest.approx(15.625)


def test_empty_bbox_rejected():
    with pytest.raises(ValueError):
        BBox(1.0, 1.0, 0.0, 1.0)
