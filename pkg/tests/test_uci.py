import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from shapely.geometry import box

from analyses.ais.model import VesselInfo
from analyses.uci.filter import area_intervals, corridor_intervals, dwell_time, select_candidates
from analyses.uci.model import DepthGrid, FilterCriteria, ProtectedArea, UciGeometry, UciKind
from conftest import T0, make_point, make_track
from core.timeutil import HOUR
from geo import GeoPoint, Polyline, distance_to_polyline, interpolate_great_circle

PIPELINE = UciGeometry(name="test-pipe", kind=UciKind.PIPELINE,
                       route=Polyline.from_lonlat([(15.0, 55.5), (16.0, 55.5)]), corridor_km=5.0)
CRIT = FilterCriteria(d_max_km=5.0, t_min_s=3600.0, s_max_kn=3.0)


def loiterer(mmsi=211234560, hours=4, sog=1.5, lat=55.51, info=None, cog_fn=None):
    lon_step = 0.000736 * sog / 1.5
    points = [make_point(T0 + 60 * i, lat, 15.4 + lon_step * i, sog=sog,
                         cog=cog_fn(i) if cog_fn else 90.0, mmsi=mmsi)
              for i in range(hours * 60)]
    return make_track(points, info)


def crossing(mmsi=211234561, lon=15.5):
    return make_track([make_point(T0, 55.3, lon, sog=14.0, cog=0.0, mmsi=mmsi),
                       make_point(T0 + HOUR, 55.7, lon, sog=14.0, cog=0.0, mmsi=mmsi)])


def dense_dwell(track, route, d_max_km, step=1):
    inside = 0
    for a, b in zip(track.points, track.points[1:]):
        for t in range(a.t, b.t, step):
            p = interpolate_great_circle(a.pos, b.pos, (t - a.t) / (b.t - a.t))
            if distance_to_polyline(p, route) <= d_max_km * 1000:
                inside += step
    return inside


# ============================================================================
# DWELL
# ============================================================================

def test_far_track_has_no_dwell():
    track = make_track([make_point(T0, 57.0, 15.0), make_point(T0 + HOUR, 57.0, 15.2)])
    assert dwell_time(track, PIPELINE, 5.0) == 0.0


def test_both_points_inside():
    track = make_track([make_point(T0, 55.51, 15.4), make_point(T0 + HOUR, 55.51, 15.41)])
    assert dwell_time(track, PIPELINE, 5.0) == pytest.approx(3600.0)


def test_crossing_dwell_matches_dense_sampling():
    track = crossing()
    assert dwell_time(track, PIPELINE, 5.0) == pytest.approx(dense_dwell(track, PIPELINE.route, 5.0), abs=30)


def test_pass_between_two_outside_reports_is_found():
    intervals = corridor_intervals(crossing(), PIPELINE.route, 5.0)
    assert len(intervals) == 1
    t_in, t_out = intervals[0]
    assert T0 < t_in < t_out < T0 + HOUR


@settings(max_examples=20, deadline=None)
@given(st.floats(min_value=0.5, max_value=20.0), st.floats(min_value=0.5, max_value=20.0))
def test_dwell_monotone_in_distance(d1, d2):
    track = crossing()
    lo, hi = sorted((d1, d2))
    assert dwell_time(track, PIPELINE, lo) <= dwell_time(track, PIPELINE, hi) + 1e-6


def test_area_intervals():
    area = ProtectedArea(name="mpa", polygon=box(15.45, 55.4, 15.55, 55.6))
    intervals = area_intervals(crossing(), area)
    assert len(intervals) == 1
    assert intervals[0][1] - intervals[0][0] == pytest.approx(HOUR * 0.2 / 0.4, rel=0.01)


# ============================================================================
# SELECTION
# ============================================================================

def test_loiterer_selected_and_transit_excluded():
    reports = select_candidates([crossing(), loiterer()], PIPELINE, CRIT)
    assert [r.mmsi for r in reports] == [211234560]
    r = reports[0]
    assert {"dwell", "low_speed"} <= r.matched_criteria
    assert r.dwell_s >= CRIT.t_min_s
    # route bulges ~113 m north of 55.5 at mid-span
    assert r.nearest_approach_m == pytest.approx(999.0, abs=15.0)


def test_fast_searcher_needs_manoeuvre_gate():
    zigzag = loiterer(sog=10.0, hours=2, cog_fn=lambda i: 60.0 if i % 2 else 120.0)
    assert select_candidates([zigzag], PIPELINE, CRIT) == []
    crit = FilterCriteria(d_max_km=5.0, t_min_s=3600.0, s_max_kn=3.0, manoeuvre_rate_min=0.5)
    report = select_candidates([zigzag], PIPELINE, crit)[0]
    assert report.matched_criteria == frozenset({"dwell", "manoeuvre_rate"})


def test_small_vessel_over_deep_water_excluded():
    info = VesselInfo(211234560, length_m=12.0)
    track = loiterer(info=info)
    grid = DepthGrid(np.array([55.0, 56.0]), np.array([15.0, 16.0]), np.full((2, 2), 400.0))
    crit = FilterCriteria(d_max_km=5.0, t_min_s=3600.0, s_max_kn=3.0, min_length_m=30.0, depth_gate_m=200.0)
    assert select_candidates([track], PIPELINE, crit, grid) == []
    assert len(select_candidates([track], PIPELINE, crit)) == 1
    shallow = DepthGrid(np.array([55.0, 56.0]), np.array([15.0, 16.0]), np.full((2, 2), 60.0))
    assert len(select_candidates([track], PIPELINE, crit, shallow)) == 1


def test_selection_has_no_cross_track_coupling():
    tracks = [loiterer(), crossing(), loiterer(mmsi=211234562, hours=2, lat=55.52), loiterer(mmsi=211234563, sog=5.0)]
    together = select_candidates(tracks, PIPELINE, CRIT)
    singles = [r for t in tracks for r in select_candidates([t], PIPELINE, CRIT)]
    assert sorted(r.mmsi for r in together) == sorted(r.mmsi for r in singles)
    assert [r.dwell_s for r in together] == sorted((r.dwell_s for r in together), reverse=True)


@pytest.mark.parametrize("s_lo, s_hi", [(1.0, 3.0), (3.0, 6.0), (0.0, 20.0)])
def test_raising_speed_limit_never_shrinks_set(s_lo, s_hi):
    tracks = [loiterer(sog=s, mmsi=211234560 + k) for k, s in enumerate([0.5, 2.0, 4.0, 8.0])]
    low = {r.mmsi for r in select_candidates(tracks, PIPELINE, FilterCriteria(5.0, 3600.0, s_lo))}
    high = {r.mmsi for r in select_candidates(tracks, PIPELINE, FilterCriteria(5.0, 3600.0, s_hi))}
    assert low <= high


def test_depth_grid_bilinear():
    grid = DepthGrid(np.array([0.0, 1.0]), np.array([0.0, 1.0]), np.array([[0.0, 100.0], [100.0, 200.0]]))
    assert grid.depth_at(GeoPoint(0.5, 0.5)) == pytest.approx(100.0)
    assert grid.depth_at(GeoPoint(2.0, 0.5)) is None


def test_criteria_validation():
    with pytest.raises(ValueError):
        FilterCriteria(d_max_km=0.0, t_min_s=1.0, s_max_kn=1.0)
    with pytest.raises(ValueError):
        UciGeometry(name="x", kind=UciKind.PIPELINE, route=PIPELINE.route, corridor_km=0.0)
