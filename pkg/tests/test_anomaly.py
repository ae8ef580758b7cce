import pytest
from shapely.geometry import box

from analyses.ais.model import NavStatus
from analyses.anomaly import (
    AnomalyEvent,
    AnomalyKind,
    apply_floor,
    detect_ais_gap,
    detect_loiter,
    detect_route_deviation,
    detect_search_pattern,
    detect_zone_entry,
    status_inconsistency_events,
    unassociated_sar_events,
)
from analyses.density.grid import DensityMode, build_density
from analyses.sar.model import FLAG_GAP_BRACKETING, FLAG_NO_AIS, SceneRecord
from analyses.uci.filter import corridor_intervals
from analyses.uci.model import FilterCriteria, ProtectedArea, UciGeometry, UciKind
from conftest import T0, make_point, make_track
from core.timeutil import HOUR, MINUTE
from geo import BBox, GeoPoint, Polyline, distance_to_polyline, interpolate_great_circle

PIPELINE = UciGeometry(name="test-pipe", kind=UciKind.PIPELINE,
                       route=Polyline.from_lonlat([(15.0, 55.5), (16.0, 55.5)]), corridor_km=5.0)
CRIT = FilterCriteria(d_max_km=5.0, t_min_s=3600.0, s_max_kn=3.0)
BOX = BBox(55.0, 56.0, 15.0, 16.0)
WEIGHTS = {"pipeline": 1.0, "protected_area": 1.0}


def loiterer(hours=4, sog=1.5):
    step = 0.000736 * sog / 1.5
    return make_track([make_point(T0 + 60 * i, 55.51, 15.4 + step * i, sog=sog) for i in range(hours * 60)])


def legs_track(legs, lat=55.58, lon=15.5, step_s=5 * MINUTE, steps=6):
    """Track from (sog, dlat per step) legs; each point's sog describes the segment it starts."""
    points = []
    t = T0
    for sog, dlat in legs:
        for _ in range(steps):
            points.append(make_point(t, lat, lon, sog=sog))
            lat += dlat
            t += step_s
    points.append(make_point(t, lat, lon, sog=legs[-1][0]))
    return make_track(points)


APPROACH = (8.0, -0.003)
DRIFT = (1.0, 0.002)


# ============================================================================
# AIS GAP
# ============================================================================

def test_no_gap_no_event():
    assert detect_ais_gap(loiterer(), HOUR, [PIPELINE]) == []
    with pytest.raises(ValueError):
        detect_ais_gap(loiterer(), 0)


def test_long_gap_next_to_corridor_is_boosted_to_one():
    track = make_track([make_point(T0, 55.51, 15.5), make_point(T0 + 21 * HOUR, 55.52, 15.55)])
    events = detect_ais_gap(track, HOUR, [PIPELINE])
    assert len(events) == 1
    assert events[0].severity == 1.0
    assert events[0].evidence["near_uci"] == ["test-pipe"]
    assert events[0].evidence["gap_s"] == 21 * HOUR


def test_gap_far_from_any_uci():
    track = make_track([make_point(T0, 57.0, 15.5), make_point(T0 + 12 * HOUR, 57.1, 15.5)])
    events = detect_ais_gap(track, HOUR, PIPELINE)
    assert events[0].severity == pytest.approx(0.5)
    assert events[0].evidence["near_uci"] == []


# ============================================================================
# LOITER
# ============================================================================

def test_loiter_in_empty_cell_is_full_severity():
    grid = build_density([], BOX, 1.0, (T0, T0 + HOUR), DensityMode.STATIONARY)
    events = detect_loiter(loiterer(), PIPELINE, CRIT, grid)
    assert len(events) == 1
    assert events[0].kind is AnomalyKind.LOITER_NEAR_UCI
    assert events[0].severity == pytest.approx(1.0)
    assert events[0].evidence["normalcy"] == 0.0


def test_loiter_in_known_stationary_area_is_silent():
    track = loiterer()
    grid = build_density([track], BOX, 1.0, (T0, T0 + 4 * HOUR), DensityMode.STATIONARY)
    assert detect_loiter(track, PIPELINE, CRIT, grid) == []


def test_fast_transit_is_not_a_loiter():
    grid = build_density([], BOX, 1.0, (T0, T0 + HOUR))
    transit = make_track([make_point(T0, 55.3, 15.5, sog=14.0), make_point(T0 + HOUR, 55.7, 15.5, sog=14.0)])
    assert detect_loiter(transit, PIPELINE, CRIT, grid) == []


# ============================================================================
# SEARCH PATTERN
# ============================================================================

def test_three_cycles_give_severity_point_six():
    track = legs_track([APPROACH, DRIFT, APPROACH, DRIFT, APPROACH])
    events = detect_search_pattern(track, PIPELINE)
    assert len(events) == 1
    assert events[0].evidence["cycles"] == 3
    assert events[0].severity == pytest.approx(0.6)
    assert len(events[0].evidence["approach_starts"]) == 3
    assert len(events[0].evidence["drift_starts"]) == 2


def test_two_cycles_are_not_enough():
    track = legs_track([APPROACH, DRIFT, APPROACH, DRIFT, DRIFT, DRIFT])
    assert detect_search_pattern(track, PIPELINE) == []


def test_steady_transit_and_plain_loiter_are_not_searches():
    transit = make_track([make_point(T0 + 600 * i, 55.3 + 0.02 * i, 15.5, sog=14.0, cog=0.0) for i in range(20)])
    assert detect_search_pattern(transit, PIPELINE) == []
    assert detect_search_pattern(loiterer(), PIPELINE) == []


def test_monotone_range_never_fires():
    track = legs_track([DRIFT, (8.0, 0.003), DRIFT, (8.0, 0.003), DRIFT, (8.0, 0.003)])
    assert detect_search_pattern(track, PIPELINE) == []


def test_short_window_is_skipped():
    track = legs_track([APPROACH, DRIFT, APPROACH, DRIFT, APPROACH], step_s=2 * MINUTE)
    assert detect_search_pattern(track, PIPELINE) == []


# ============================================================================
# ZONE ENTRY
# ============================================================================

def weaving_track(n_legs=4):
    lats = [55.4 if i % 2 == 0 else 55.6 for i in range(n_legs + 1)]
    return make_track([make_point(T0 + 1800 * i, lat, 15.2 + 0.1 * i) for i, lat in enumerate(lats)])


def dense_runs(track, route, d_max_km):
    runs, inside = 0, False
    for a, b in zip(track.points, track.points[1:]):
        for t in range(a.t, b.t):
            p = interpolate_great_circle(a.pos, b.pos, (t - a.t) / (b.t - a.t))
            now = distance_to_polyline(p, route) <= d_max_km * 1000.0
            runs += now and not inside
            inside = now
    return runs


def test_never_entering_gives_nothing():
    far = make_track([make_point(T0, 57.0, 15.0), make_point(T0 + HOUR, 57.0, 15.3)])
    assert detect_zone_entry(far, [PIPELINE], WEIGHTS) == []
    with pytest.raises(ValueError):
        detect_zone_entry(far, [], WEIGHTS)


def test_single_crossing_bounds_match_corridor_crossings():
    crossing = make_track([make_point(T0, 55.3, 15.5), make_point(T0 + HOUR, 55.7, 15.5)])
    events = detect_zone_entry(crossing, [PIPELINE], {"pipeline": 1.5})
    assert len(events) == 1
    (t_in, t_out), = corridor_intervals(crossing, PIPELINE.route, PIPELINE.corridor_km)
    assert (events[0].t_start, events[0].t_end) == (t_in, t_out)
    assert events[0].severity == pytest.approx(0.75)


@pytest.mark.slow
def test_multiple_entries_match_dense_sampling():
    track = weaving_track()
    events = detect_zone_entry(track, [PIPELINE], WEIGHTS)
    assert len(events) == dense_runs(track, PIPELINE.route, PIPELINE.corridor_km) == 4
    assert [e.t_start for e in events] == sorted(e.t_start for e in events)


def test_protected_area_entry():
    area = ProtectedArea(name="reef", polygon=box(15.45, 55.4, 15.55, 55.6))
    crossing = make_track([make_point(T0, 55.3, 15.5), make_point(T0 + HOUR, 55.7, 15.5)])
    events = detect_zone_entry(crossing, [PIPELINE, area], WEIGHTS)
    assert sorted(e.evidence["zone"] for e in events) == ["reef", "test-pipe"]
    assert all(e.severity == 0.5 for e in events)


# ============================================================================
# ROUTE DEVIATION
# ============================================================================

def lane(mmsi=211234560, lat=55.15):
    return make_track([make_point(T0 + 600 * i, lat, 15.0 + 0.01 * i, mmsi=mmsi) for i in range(100)])


def test_leaving_the_lane_is_a_deviation():
    traffic = build_density([lane()], BOX, 0.1, (T0, T0 + 20 * HOUR))
    assert detect_route_deviation(lane(), traffic) == []
    off = make_track([make_point(T0 + 600 * i, 55.75, 15.2 + 0.01 * i) for i in range(13)])
    events = detect_route_deviation(off, traffic)
    assert len(events) == 1
    assert events[0].t_end - events[0].t_start == 2 * HOUR
    assert events[0].severity == pytest.approx(1.0)


def test_short_deviation_below_minimum():
    traffic = build_density([lane()], BOX, 0.1, (T0, T0 + 20 * HOUR))
    off = make_track([make_point(T0 + 600 * i, 55.75, 15.2 + 0.01 * i) for i in range(3)])
    assert detect_route_deviation(off, traffic) == []


def test_no_traffic_means_no_deviation():
    empty = build_density([], BOX, 0.1, (T0, T0 + 20 * HOUR))
    assert detect_route_deviation(lane(), empty) == []


# ============================================================================
# DERIVED EVENTS AND FLOOR
# ============================================================================

def scene_record(flag, candidate=None):
    return SceneRecord(detection_id="D1", image_id="IMG", t_acq=T0, detection_pos=GeoPoint(55.5, 15.5),
                       mmsi=None, vessel_name=None, track_pos=None, distance_m=None, offset_east_m=None,
                       offset_north_m=None, used_prediction=False, flag=flag, candidate_mmsi=candidate,
                       candidate_gap_s=8 * HOUR if candidate else None,
                       candidate_distance_m=900.0 if candidate else None)


def test_unassociated_sar_goes_to_gap_candidate():
    events = unassociated_sar_events([scene_record(FLAG_GAP_BRACKETING, 211234561), scene_record(FLAG_NO_AIS)])
    assert [(e.mmsi, e.kind, e.severity) for e in events] == [(211234561, AnomalyKind.UNASSOCIATED_SAR, 0.6)]


def test_status_inconsistency_event():
    anchored_but_moving = make_track([make_point(T0 + 60 * i, 55.0, 15.0 + 0.003 * i, sog=12.0,
                                                 nav_status=NavStatus.AT_ANCHOR) for i in range(30)])
    events = status_inconsistency_events(anchored_but_moving)
    assert events[0].severity == pytest.approx(0.9)
    still = make_track([make_point(T0 + 60 * i, 55.0, 15.0, sog=0.1, nav_status=NavStatus.AT_ANCHOR)
                        for i in range(30)])
    assert status_inconsistency_events(still) == []


def test_floor_drops_weak_events():
    weak = AnomalyEvent(211234560, AnomalyKind.LOITER_NEAR_UCI, T0, T0 + HOUR, 0.05, {"summary": "weak"})
    strong = AnomalyEvent(211234560, AnomalyKind.AIS_GAP, T0, T0 + HOUR, 0.5, {"summary": "strong"})
    assert apply_floor([weak, strong], 0.1) == [strong]


@pytest.mark.parametrize("t_end, severity, evidence", [
    (T0 - 1, 0.5, {"summary": "x"}),
    (T0, 1.2, {"summary": "x"}),
    (T0, 0.5, {}),
])
def test_event_invariants(t_end, severity, evidence):
    with pytest.raises(ValueError):
        AnomalyEvent(211234560, AnomalyKind.AIS_GAP, T0, t_end, severity, evidence)
