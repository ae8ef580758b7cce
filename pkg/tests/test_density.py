import numpy as np
import pytest

from analyses.density.clustering import cluster_stationary, low_speed_points, scan_order
from analyses.density.grid import (
    DensityMode,
    bbox_around,
    build_density,
    merge_grids,
    normalcy_score,
    subtract_grid,
)
from conftest import T0, make_point, make_track
from core.timeutil import HOUR
from geo import EARTH_RADIUS_M, BBox, GeoPoint

BOX = BBox(54.0, 57.0, 14.0, 17.0)


def random_fleet(rng, n_tracks=6):
    tracks = []
    for k in range(n_tracks):
        t = T0 + int(rng.integers(0, 3600))
        lat, lon = rng.uniform(54.5, 56.5), rng.uniform(14.5, 16.5)
        points = []
        for _ in range(int(rng.integers(2, 40))):
            sog = float(rng.choice([0.5, 2.0, 8.0, 14.0]))
            points.append(make_point(t, lat, lon, sog=sog, mmsi=211234560 + k))
            t += int(rng.integers(30, 900))
            lat = float(np.clip(lat + rng.normal(0, 0.01), 54.1, 56.9))
            lon = float(np.clip(lon + rng.normal(0, 0.01), 14.1, 16.9))
        tracks.append(make_track(points))
    return tracks


def in_interval_hours(tracks, t0, t1, drift=None):
    total = 0.0
    for track in tracks:
        for a, b in zip(track.points, track.points[1:]):
            if drift is not None and a.sog >= drift:
                continue
            total += max(0, min(b.t, t1) - max(a.t, t0)) / 3600.0
    return total


# ============================================================================
# GRIDS
# ============================================================================

@pytest.mark.parametrize("seed", range(50))
def test_mass_conservation_and_stationary_bound(seed):
    rng = np.random.default_rng(seed)
    tracks = random_fleet(rng)
    interval = (T0 + 600, T0 + 6 * HOUR)
    traffic = build_density(tracks, BOX, 0.05, interval)
    stationary = build_density(tracks, BOX, 0.05, interval, DensityMode.STATIONARY, drift_threshold=3.0)
    expected = in_interval_hours(tracks, *interval)
    assert traffic.total == pytest.approx(expected, rel=0.01, abs=1e-9)
    assert stationary.total == pytest.approx(in_interval_hours(tracks, *interval, drift=3.0), rel=0.01, abs=1e-9)
    assert np.all(stationary.counts <= traffic.counts + 1e-12)


def test_dwell_outside_box_is_not_deposited():
    track = make_track([make_point(T0, 53.0, 15.0), make_point(T0 + HOUR, 53.0, 15.1)])
    assert build_density([track], BOX, 0.1, (T0, T0 + HOUR)).total == 0.0


def test_stationary_vessel_fills_one_cell():
    track = make_track([make_point(T0, 55.02, 15.02, sog=0.0), make_point(T0 + 2 * HOUR, 55.02, 15.02, sog=0.0)])
    grid = build_density([track], BOX, 0.05, (T0, T0 + 2 * HOUR))
    assert grid.value_at(GeoPoint(55.02, 15.02)) == pytest.approx(2.0)
    assert len(grid.nonzero_cells()) == 1


def test_long_gap_segments_skipped():
    track = make_track([make_point(T0, 55.0, 15.0), make_point(T0 + 8 * HOUR, 55.0, 15.2)])
    assert build_density([track], BOX, 0.05, (T0, T0 + 8 * HOUR), max_gap=6 * HOUR).total == 0.0


def test_empty_interval_rejected():
    with pytest.raises(ValueError):
        build_density([], BOX, 0.05, (T0, T0))


def test_merge_grids_sums_partials():
    rng = np.random.default_rng(7)
    tracks = random_fleet(rng, 8)
    interval = (T0, T0 + 8 * HOUR)
    whole = build_density(tracks, BOX, 0.05, interval)
    merged = merge_grids([build_density(tracks[:3], BOX, 0.05, interval),
                          build_density(tracks[3:], BOX, 0.05, interval)])
    np.testing.assert_allclose(merged.counts, whole.counts, atol=1e-12)
    with pytest.raises(ValueError):
        merge_grids([whole, build_density(tracks, BOX, 0.1, interval)])


def test_subtract_grid_removes_one_part():
    rng = np.random.default_rng(8)
    tracks = random_fleet(rng, 8)
    interval = (T0, T0 + 8 * HOUR)
    whole = build_density(tracks, BOX, 0.05, interval)
    rest = subtract_grid(whole, build_density(tracks[:1], BOX, 0.05, interval))
    expected = build_density(tracks[1:], BOX, 0.05, interval).counts
    np.testing.assert_allclose(rest.counts, expected, atol=1e-9)
    assert np.all(rest.counts[expected == 0.0] == 0.0)
    assert subtract_grid(whole, whole).total == 0.0


def test_normalcy_score():
    quiet = make_track([make_point(T0, 55.02, 15.02, sog=0.0), make_point(T0 + HOUR, 55.02, 15.02, sog=0.0)])
    busy = make_track([make_point(T0, 55.52, 15.52, sog=0.0, mmsi=211234561),
                       make_point(T0 + 3 * HOUR, 55.52, 15.52, sog=0.0, mmsi=211234561)])
    grid = build_density([quiet, busy], BOX, 0.05, (T0, T0 + 3 * HOUR))
    assert normalcy_score(grid, GeoPoint(55.52, 15.52)) == 1.0
    assert normalcy_score(grid, GeoPoint(55.02, 15.02)) == 0.5
    assert normalcy_score(grid, GeoPoint(56.5, 16.5)) == 0.0


def test_bbox_around():
    track = make_track([make_point(T0, 55.0, 15.0), make_point(T0 + 60, 55.5, 15.5)])
    box = bbox_around([track], 0.1)
    assert (box.lat_min, box.lat_max, box.lon_min, box.lon_max) == pytest.approx((54.9, 55.6, 14.9, 15.6))
    with pytest.raises(ValueError):
        bbox_around([], 0.1)


# ============================================================================
# CLUSTERING
# ============================================================================

def reference_dbscan(points, eps_m, min_pts):
    """Quadratic DBSCAN in scan order; returns the partition as a set of frozensets."""
    order = scan_order(points)
    lat = np.radians([points[i].pos.lat for i in order])
    lon = np.radians([points[i].pos.lon for i in order])
    dlat = lat[:, None] - lat[None, :]
    dlon = lon[:, None] - lon[None, :]
    h = np.sin(dlat / 2) ** 2 + np.cos(lat)[:, None] * np.cos(lat)[None, :] * np.sin(dlon / 2) ** 2
    dist = 2 * EARTH_RADIUS_M * np.arcsin(np.sqrt(np.minimum(1.0, h)))
    neighbours = [np.flatnonzero(row <= eps_m) for row in dist]
    core = [len(nb) >= min_pts for nb in neighbours]
    labels = [-1] * len(order)
    cluster = 0
    for i in range(len(order)):
        if labels[i] != -1 or not core[i]:
            continue
        labels[i] = cluster
        stack = [i]
        while stack:
            j = stack.pop()
            if not core[j]:
                continue
            for k in neighbours[j]:
                if labels[k] == -1:
                    labels[k] = cluster
                    stack.append(k)
        cluster += 1
    groups = {}
    for pos, label in enumerate(labels):
        if label >= 0:
            groups.setdefault(label, set()).add(order[pos])
    return {frozenset(g) for g in groups.values()}


@pytest.mark.parametrize("seed", range(100))
def test_dbscan_matches_quadratic_reference(seed):
    rng = np.random.default_rng(1000 + seed)
    n = int(rng.integers(1, 200))
    centres = rng.uniform([55.0, 15.0], [55.3, 15.5], size=(int(rng.integers(1, 6)), 2))
    points = []
    for i in range(n):
        c = centres[int(rng.integers(len(centres)))]
        lat, lon = c + rng.normal(0, 0.01, size=2)
        points.append(make_point(T0 + int(rng.integers(0, 5000)), float(lat), float(lon), sog=0.5,
                                 mmsi=211234560 + int(rng.integers(0, 5))))
    eps_m = float(rng.uniform(300, 2000))
    min_pts = int(rng.integers(1, 8))
    areas = cluster_stationary(points, eps_m, min_pts)
    assert {frozenset(a.member_points) for a in areas} == reference_dbscan(points, eps_m, min_pts)
    assert [a.id for a in areas] == list(range(len(areas)))


def test_clustering_independent_of_input_order():
    rng = np.random.default_rng(5)
    points = [make_point(T0 + i, 55.0 + rng.normal(0, 0.002), 15.0 + rng.normal(0, 0.002), sog=0.1)
              for i in range(60)]
    areas = cluster_stationary(points, 500.0, 4)
    reversed_points = points[::-1]
    areas_rev = cluster_stationary(reversed_points, 500.0, 4)
    as_points = [{points[i] for i in a.member_points} for a in areas]
    as_points_rev = [{reversed_points[i] for i in a.member_points} for a in areas_rev]
    assert as_points == as_points_rev


def test_low_speed_points_and_weights():
    track = make_track([make_point(T0, 55.0, 15.0, sog=1.0), make_point(T0 + HOUR, 55.0, 15.0, sog=9.0),
                        make_point(T0 + 2 * HOUR, 55.0, 15.1, sog=0.5)])
    points, weights = low_speed_points([track], 3.0)
    assert [p.t for p in points] == [T0, T0 + 2 * HOUR]
    assert weights == pytest.approx([1.0, 1.0 / 60.0])
    areas = cluster_stationary(points, 100.0, 1, weights)
    assert sorted(a.dwell_weight for a in areas) == pytest.approx([1.0 / 60.0, 1.0])


def test_cluster_parameter_validation():
    with pytest.raises(ValueError):
        cluster_stationary([], 0.0, 3)
    with pytest.raises(ValueError):
        cluster_stationary([], 10.0, 0)
    assert cluster_stationary([], 10.0, 3) == []
