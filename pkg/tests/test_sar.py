import itertools
import math
import time

import numpy as np
import pytest

from analyses.ais.model import VesselInfo
from analyses.prediction.ou import Prediction
from analyses.sar.association import associate, association_report, gated_assignment
from analyses.sar.model import FLAG_GAP_BRACKETING, FLAG_NO_AIS, SarDetection
from conftest import T0, make_point, make_track
from core.timeutil import HOUR, MINUTE
from geo import GeoPoint, destination_point, geodesic_distance

GATE_KM = 3.0
MAX_GAP = 6 * HOUR
EAST = math.pi / 2


def northbound(mmsi=211234560, lon=15.0, span=HOUR, info=None):
    return make_track([make_point(T0, 55.0, lon, mmsi=mmsi, cog=0.0),
                       make_point(T0 + span, 55.1, lon, mmsi=mmsi, cog=0.0)], info)


def detection(det_id, pos, t=T0 + HOUR // 2, image="IMG"):
    return SarDetection(id=det_id, t_acq=t, pos=pos, image_id=image)


def oracle(cost):
    """Exhaustive search: most finite pairs, then least total cost."""
    n, m = cost.shape
    best = (0, 0.0)
    if n <= m:
        choices = (list(zip(range(n), cols)) for cols in itertools.permutations(range(m), n))
    else:
        choices = (list(zip(rows, range(m))) for rows in itertools.permutations(range(n), m))
    for pairs in choices:
        finite = [cost[r, c] for r, c in pairs if np.isfinite(cost[r, c])]
        key = (len(finite), sum(finite))
        if key[0] > best[0] or (key[0] == best[0] and key[1] < best[1]):
            best = key
    return best


# ============================================================================
# ASSIGNMENT
# ============================================================================

def test_gated_assignment_matches_exhaustive_search():
    rng = np.random.default_rng(11)
    for _ in range(500):
        n, m = int(rng.integers(1, 8)), int(rng.integers(1, 8))
        cost = rng.uniform(0.0, 3000.0, size=(n, m))
        cost[rng.random((n, m)) < 0.4] = np.inf
        pairs = gated_assignment(cost)
        got = (len(pairs), sum(cost[r, c] for r, c in pairs))
        expected = oracle(cost)
        assert got[0] == expected[0]
        assert got[1] == pytest.approx(expected[1], abs=1e-6)
        assert len({r for r, _ in pairs}) == len(pairs) == len({c for _, c in pairs})


def random_scene(rng, n_detections, n_tracks):
    t = T0 + HOUR // 2
    tracks = [northbound(mmsi=211000000 + k, lon=15.0 + 0.02 * k) for k in range(n_tracks)]
    detections = [detection(f"D{i:02d}", GeoPoint(lat=55.05 + rng.uniform(-0.02, 0.02),
                                                  lon=15.0 + rng.uniform(-0.02, 0.02 * n_tracks)), t)
                  for i in range(n_detections)]
    return detections, tracks


def test_five_hundred_scenes_associate_within_five_seconds():
    rng = np.random.default_rng(5)
    scenes = [random_scene(rng, int(rng.integers(1, 8)), int(rng.integers(1, 8))) for _ in range(500)]
    started = time.perf_counter()
    for detections, tracks in scenes:
        assert len(associate(detections, tracks, GATE_KM, MAX_GAP)) == len(detections)
    assert time.perf_counter() - started < 5.0


def test_equal_costs_go_to_lowest_id_pairs():
    assert gated_assignment(np.ones((2, 2))) == [(0, 0), (1, 1)]
    assert gated_assignment(np.array([[2.0, 1.0, 1.0], [1.0, 2.0, 2.0]])) == [(0, 1), (1, 0)]
    assert gated_assignment(np.array([[1.0], [1.0]])) == [(0, 0)]


def test_symmetric_scene_pairs_by_detection_id_then_mmsi():
    west, east = northbound(mmsi=211000001, lon=15.0), northbound(mmsi=211000002, lon=15.02)
    north = detection("S-A", GeoPoint(lat=55.06, lon=15.01))
    south = detection("S-B", GeoPoint(lat=55.04, lon=15.01))
    for tracks in ([west, east], [east, west]):
        for detections in ([north, south], [south, north]):
            assocs = associate(detections, tracks, GATE_KM, MAX_GAP)
            assert [(a.detection_id, a.mmsi) for a in assocs] == [("S-A", 211000001), ("S-B", 211000002)]


def test_gated_assignment_prefers_more_pairs_over_lower_cost():
    cost = np.array([[1.0, 10.0], [2.0, np.inf]])
    assert sorted(gated_assignment(cost)) == [(0, 1), (1, 0)]
    assert gated_assignment(np.full((2, 2), np.inf)) == []
    assert gated_assignment(np.zeros((0, 3))) == []


# ============================================================================
# GATE AND GAP THRESHOLDS
# ============================================================================

@pytest.mark.parametrize("offset_m, associated", [(2900.0, True), (3100.0, False)])
def test_three_km_gate(offset_m, associated):
    track = northbound()
    mid = GeoPoint(55.05, 15.0)
    det = detection("D1", destination_point(mid, EAST, offset_m))
    result = associate([det], [track], GATE_KM, MAX_GAP)
    assert result[0].associated is associated
    if associated:
        assert result[0].distance_m == pytest.approx(offset_m, rel=1e-3)


@pytest.mark.parametrize("span, associated", [(6 * HOUR - MINUTE, True), (6 * HOUR + MINUTE, False)])
def test_six_hour_interpolation_limit(span, associated):
    track = northbound(span=span)
    t_acq = T0 + span // 2
    det = detection("D1", GeoPoint(55.05, 15.0), t=t_acq)
    assert associate([det], [track], GATE_KM, MAX_GAP)[0].associated is associated


def test_each_detection_to_its_nearest_track():
    tracks = [northbound(211234560, 15.0), northbound(211234561, 15.02)]
    dets = [detection("B", GeoPoint(55.05, 15.021)), detection("A", GeoPoint(55.05, 15.001))]
    result = associate(dets, tracks[::-1], GATE_KM, MAX_GAP)
    assert [(a.detection_id, a.mmsi) for a in result] == [("A", 211234560), ("B", 211234561)]


def test_more_detections_than_tracks():
    dets = [detection("D1", GeoPoint(55.05, 15.001)), detection("D2", GeoPoint(55.05, 15.003))]
    result = associate(dets, [northbound()], GATE_KM, MAX_GAP)
    assert [a.mmsi for a in result] == [211234560, None]


def test_scene_validation():
    with pytest.raises(ValueError):
        associate([detection("D", GeoPoint(55, 15)), detection("D", GeoPoint(55, 15.1))], [], GATE_KM, MAX_GAP)
    with pytest.raises(ValueError):
        associate([detection("D1", GeoPoint(55, 15)), detection("D2", GeoPoint(55, 15), t=T0)], [], GATE_KM, MAX_GAP)
    with pytest.raises(ValueError):
        associate([], [], 0.0, MAX_GAP)
    assert associate([], [northbound()], GATE_KM, MAX_GAP) == []


def test_prediction_used_inside_a_gap_with_wider_gate():
    track = northbound(span=10 * HOUR)
    t_acq = T0 + 5 * HOUR
    predicted = GeoPoint(55.05, 15.0)
    prediction = Prediction(t=t_acq, mean_pos=predicted, cov=np.diag([1.0e6, 1.0e6]), radius_3sigma_m=6000.0)
    det = detection("D1", destination_point(predicted, EAST, 4500.0), t=t_acq)
    assert not associate([det], [track], GATE_KM, MAX_GAP)[0].associated
    result = associate([det], [track], GATE_KM, MAX_GAP, predictions={211234560: prediction})[0]
    assert result.associated and result.used_prediction
    assert result.distance_m == pytest.approx(4500.0, rel=1e-3)


def test_association_is_input_order_independent():
    rng = np.random.default_rng(2)
    tracks = [northbound(211234560 + k, 15.0 + 0.01 * k) for k in range(6)]
    dets = [detection(f"D{k}", GeoPoint(55.05 + rng.normal(0, 0.005), 15.0 + rng.uniform(0, 0.06)))
            for k in range(6)]
    first = associate(dets, tracks, GATE_KM, MAX_GAP)
    again = associate(dets[::-1], tracks[::-1], GATE_KM, MAX_GAP)
    assert [(a.detection_id, a.mmsi) for a in first] == [(a.detection_id, a.mmsi) for a in again]


# ============================================================================
# SCENE REPORT
# ============================================================================

def test_report_offsets_and_review_flags():
    loiter = northbound(info=VesselInfo(211234560, name="NORTHERN STAR"))
    dark = make_track([make_point(T0 - HOUR, 55.3, 15.3, mmsi=211234561),
                       make_point(T0 + 3 * HOUR, 55.3, 15.4, mmsi=211234561)])
    dets = [
        detection("D1", destination_point(GeoPoint(55.05, 15.0), EAST, 800.0)),
        detection("D2", GeoPoint(55.3, 15.35)),
        detection("D3", GeoPoint(56.5, 17.0)),
    ]
    assocs = associate(dets, [loiter, dark], GATE_KM, 2 * HOUR)
    records = {r.detection_id: r for r in association_report(assocs, dets, [loiter, dark], HOUR, 20_000.0)}

    d1 = records["D1"]
    assert d1.mmsi == 211234560 and d1.vessel_name == "NORTHERN STAR" and d1.flag == ""
    assert d1.offset_east_m == pytest.approx(800.0, rel=1e-3)
    assert d1.offset_north_m == pytest.approx(0.0, abs=5.0)

    d2 = records["D2"]
    assert d2.flag == FLAG_GAP_BRACKETING
    assert d2.candidate_mmsi == 211234561
    assert d2.candidate_gap_s == 4 * HOUR
    assert d2.candidate_distance_m < 1000.0

    assert records["D3"].flag == FLAG_NO_AIS
    assert records["D3"].candidate_mmsi is None


def test_offset_vector_matches_distance():
    det = detection("D1", destination_point(GeoPoint(55.05, 15.0), 0.6, 1500.0))
    assoc = associate([det], [northbound()], GATE_KM, MAX_GAP)
    record = association_report(assoc, [det], [northbound()])[0]
    assert math.hypot(record.offset_east_m, record.offset_north_m) == pytest.approx(record.distance_m, rel=1e-6)
    assert geodesic_distance(record.track_pos, det.pos) == pytest.approx(record.distance_m)
