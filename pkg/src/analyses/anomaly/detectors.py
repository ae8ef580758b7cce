"""
Rule-based anomaly detectors.

Each detector looks at one track (plus read-only context: UCI geometry,
density grids, SAR scene records) and returns time-ordered AnomalyEvents.
Detectors do not depend on each other.

Severity formulas are heuristics; calibrated judgement happens in the
evidential layer that consumes these events.

Contains:
- detect_ais_gap: AIS silence, boosted when it starts or ends near a UCI
- detect_loiter: UCI candidate criteria met where stationary traffic is rare
- detect_search_pattern: alternating powered approaches and drifting away
- detect_zone_entry: contiguous stays inside UCI corridors or protected areas
- detect_route_deviation: sustained presence in rarely travelled cells
- unassociated_sar_events / status_inconsistency_events: events derived from
  the SAR scene report and the status-consistency check
"""
import logging
from typing import List, Mapping, Optional, Sequence, Tuple, Union

from analyses.ais.kinematics import Gap, points_in_window
from analyses.ais.model import Track
from analyses.anomaly.model import AnomalyEvent, AnomalyKind, sort_events
from analyses.density.grid import DensityGrid, normalcy_score
from analyses.evidential.status import check_status_consistency
from analyses.sar.model import FLAG_GAP_BRACKETING, SceneRecord
from analyses.uci.filter import area_intervals, corridor_intervals, evaluate_track
from analyses.uci.model import DepthGrid, FilterCriteria, ProtectedArea, UciGeometry
from core.timeutil import HOUR, format_utc
from geo import GeoPoint, distance_to_polyline, spherical_centroid

logger = logging.getLogger(__name__)

Zone = Union[UciGeometry, ProtectedArea]


def _hours(seconds: float) -> str:
    return f"{seconds / HOUR:.1f} h"


# ============================================================================
# AIS GAP
# ============================================================================

def detect_ais_gap(track: Track, min_gap: float, ucis: Sequence[UciGeometry] = (),
                   full_gap_s: float = 24 * HOUR, corridor_boost: float = 1.5) -> List[AnomalyEvent]:
    """
    One event per report gap of at least min_gap seconds.

    severity = min(1, duration / full_gap_s), multiplied by corridor_boost
    (capped at 1) when either end of the gap lies inside a UCI corridor.
    """
    if not min_gap > 0:
        raise ValueError("min_gap must be positive")
    if isinstance(ucis, UciGeometry):
        ucis = [ucis]
    events = []
    for a, b in zip(track.points, track.points[1:]):
        if b.t - a.t < min_gap:
            continue
        gap = Gap(mmsi=track.mmsi, t_start=a.t, t_end=b.t, start_pos=a.pos, end_pos=b.pos)
        near = [u.name for u in ucis
                if min(distance_to_polyline(gap.start_pos, u.route),
                       distance_to_polyline(gap.end_pos, u.route)) <= u.corridor_km * 1000.0]
        severity = min(1.0, gap.duration / full_gap_s)
        if near:
            severity = min(1.0, severity * corridor_boost)
        summary = f"AIS silent for {_hours(gap.duration)}"
        if near:
            summary += f" next to {', '.join(near)}"
        events.append(AnomalyEvent(
            mmsi=track.mmsi, kind=AnomalyKind.AIS_GAP, t_start=gap.t_start, t_end=gap.t_end,
            severity=severity,
            evidence={"summary": summary, "gap_s": gap.duration, "near_uci": near,
                      "start_lat": gap.start_pos.lat, "start_lon": gap.start_pos.lon,
                      "end_lat": gap.end_pos.lat, "end_lon": gap.end_pos.lon}))
    return events


# ============================================================================
# LOITER
# ============================================================================

def _grid_normalcy(grid: DensityGrid, p: GeoPoint) -> float:
    if grid.spec.cell_index(p.lat, p.lon) is None:
        return 0.0
    return normalcy_score(grid, p)


def detect_loiter(track: Track, uci: UciGeometry, crit: FilterCriteria, grid: DensityGrid,
                  normalcy_max: float = 0.2, drift_kn: float = 3.0, turn_deg: float = 30.0,
                  bathymetry: Optional[DepthGrid] = None) -> List[AnomalyEvent]:
    """
    loiter_near_uci when the candidate criteria fire and the loiter centroid
    lies in a cell the stationary grid rarely sees (normalcy below normalcy_max).

    severity = (1 - normalcy) * min(1, dwell / t_min)
    """
    report = evaluate_track(track, uci, crit, bathymetry, drift_kn, turn_deg)
    if report is None:
        return []
    inside = points_in_window(track, report.t_first_in, report.t_last_out)
    centroid = spherical_centroid([p.pos for p in inside]) if inside else report.nearest_pos
    normalcy = _grid_normalcy(grid, centroid)
    if normalcy >= normalcy_max:
        logger.debug(f"mmsi {track.mmsi}: loiter in a usual stationary area (normalcy {normalcy:.2f})")
        return []
    severity = (1.0 - normalcy) * min(1.0, report.dwell_s / crit.t_min_s)
    return [AnomalyEvent(
        mmsi=track.mmsi, kind=AnomalyKind.LOITER_NEAR_UCI,
        t_start=report.t_first_in, t_end=report.t_last_out, severity=severity,
        evidence={"summary": f"{_hours(report.dwell_s)} within {crit.d_max_km} km of {uci.name} "
                             f"at {report.stats.mean_sog:.1f} kn mean",
                  "uci": uci.name, "dwell_s": report.dwell_s, "mean_sog_kn": report.stats.mean_sog,
                  "manoeuvre_rate": report.stats.manoeuvre_rate, "normalcy": normalcy,
                  "nearest_approach_m": report.nearest_approach_m,
                  "centroid_lat": centroid.lat, "centroid_lon": centroid.lon,
                  "criteria": sorted(report.matched_criteria)})]


# ============================================================================
# SEARCH PATTERN
# ============================================================================

APPROACH = "A"
DRIFT = "D"


def label_runs(track: Track, uci: UciGeometry, window: Tuple[float, float], drift_kn: float,
               range_tolerance_m: float) -> List[Tuple[str, float, float]]:
    """
    Merged (label, t_start, t_end) runs of powered approaches (A) and drifting
    away (D). Segments that are neither are dropped before merging.
    """
    points = points_in_window(track, window[0], window[1])
    ranges = [distance_to_polyline(p.pos, uci.route) for p in points]
    runs: List[Tuple[str, float, float]] = []
    for (a, r_a), (b, r_b) in zip(zip(points, ranges), zip(points[1:], ranges[1:])):
        if a.sog >= drift_kn and r_b < r_a - range_tolerance_m:
            label = APPROACH
        elif a.sog < drift_kn and r_b > r_a + range_tolerance_m:
            label = DRIFT
        else:
            continue
        if runs and runs[-1][0] == label:
            runs[-1] = (label, runs[-1][1], b.t)
        else:
            runs.append((label, a.t, b.t))
    return runs


def detect_search_pattern(track: Track, uci: UciGeometry, window: Optional[Tuple[float, float]] = None,
                          drift_kn: float = 3.0, min_cycles: int = 3, full_cycles: int = 5,
                          range_tolerance_m: float = 10.0,
                          min_span_s: float = 2 * HOUR) -> List[AnomalyEvent]:
    """
    search_pattern when approach/drift alternations reach min_cycles.

    cycles = min(#approach runs, #drift runs + 1); severity = min(1, cycles / full_cycles)
    """
    window = window or (track.t_start, track.t_end)
    points = points_in_window(track, window[0], window[1])
    if len(points) < 2 or points[-1].t - points[0].t < min_span_s:
        logger.debug(f"mmsi {track.mmsi}: less than {_hours(min_span_s)} of data for search pattern")
        return []
    runs = label_runs(track, uci, window, drift_kn, range_tolerance_m)
    approaches = [r for r in runs if r[0] == APPROACH]
    drifts = [r for r in runs if r[0] == DRIFT]
    cycles = min(len(approaches), len(drifts) + 1)
    if cycles < min_cycles:
        return []
    return [AnomalyEvent(
        mmsi=track.mmsi, kind=AnomalyKind.SEARCH_PATTERN,
        t_start=runs[0][1], t_end=runs[-1][2], severity=min(1.0, cycles / full_cycles),
        evidence={"summary": f"{cycles} approach/drift cycles towards {uci.name}",
                  "uci": uci.name, "cycles": cycles,
                  "approach_starts": [format_utc(r[1]) for r in approaches],
                  "drift_starts": [format_utc(r[1]) for r in drifts]})]


# ============================================================================
# ZONE ENTRY
# ============================================================================

def detect_zone_entry(track: Track, zones: Sequence[Zone], kind_weights: Mapping[str, float],
                      base_severity: float = 0.5) -> List[AnomalyEvent]:
    """One event per maximal contiguous stay inside a corridor or protected area."""
    if not zones:
        raise ValueError("zone entry detection needs at least one zone")
    events = []
    for zone in zones:
        if isinstance(zone, UciGeometry):
            intervals = corridor_intervals(track, zone.route, zone.corridor_km)
            kind = zone.kind.value
        else:
            intervals = area_intervals(track, zone)
            kind = zone.kind
        severity = min(1.0, base_severity * kind_weights.get(kind, 1.0))
        for t0, t1 in intervals:
            events.append(AnomalyEvent(
                mmsi=track.mmsi, kind=AnomalyKind.ZONE_ENTRY, t_start=t0, t_end=t1, severity=severity,
                evidence={"summary": f"inside {zone.name} ({kind}) for {_hours(t1 - t0)}",
                          "zone": zone.name, "zone_kind": kind, "duration_s": t1 - t0}))
    return sort_events(events)


# ============================================================================
# ROUTE DEVIATION
# ============================================================================

def detect_route_deviation(track: Track, traffic: DensityGrid, normalcy_max: float = 0.05,
                           min_duration_s: float = 1800.0,
                           full_duration_s: float = 2 * HOUR) -> List[AnomalyEvent]:
    """
    route_deviation for every run of held reports whose cell normalcy in the
    traffic grid stays below normalcy_max for at least min_duration_s.
    Reports outside the grid break a run.

    severity = (1 - mean normalcy / normalcy_max) * min(1, duration / full_duration_s)

    An empty traffic grid describes no routes, so nothing deviates from it.
    """
    if traffic.total <= 0.0:
        return []
    events = []
    run: List[Tuple[float, float, float]] = []  # (t_start, t_end, normalcy)

    def close_run():
        if not run:
            return
        t0, t1 = run[0][0], run[-1][1]
        duration = t1 - t0
        if duration >= min_duration_s:
            mean = sum(n * (b - a) for a, b, n in run) / duration
            severity = (1.0 - mean / normalcy_max) * min(1.0, duration / full_duration_s)
            events.append(AnomalyEvent(
                mmsi=track.mmsi, kind=AnomalyKind.ROUTE_DEVIATION, t_start=t0, t_end=t1,
                severity=max(0.0, min(1.0, severity)),
                evidence={"summary": f"{_hours(duration)} in rarely travelled cells",
                          "duration_s": duration, "mean_normalcy": mean}))
        run.clear()

    for a, b in zip(track.points, track.points[1:]):
        if traffic.spec.cell_index(a.pos.lat, a.pos.lon) is None:
            close_run()
            continue
        normalcy = normalcy_score(traffic, a.pos)
        if normalcy < normalcy_max:
            run.append((float(a.t), float(b.t), normalcy))
        else:
            close_run()
    close_run()
    return events


# ============================================================================
# DERIVED EVENTS
# ============================================================================

def unassociated_sar_events(records: Sequence[SceneRecord], severity: float = 0.6) -> List[AnomalyEvent]:
    """An event for the candidate vessel of every gap-bracketing unassociated detection."""
    events = []
    for r in records:
        if r.flag != FLAG_GAP_BRACKETING or r.candidate_mmsi is None:
            continue
        events.append(AnomalyEvent(
            mmsi=r.candidate_mmsi, kind=AnomalyKind.UNASSOCIATED_SAR, t_start=r.t_acq, t_end=r.t_acq,
            severity=severity,
            evidence={"summary": f"SAR detection {r.detection_id} unmatched during a "
                                 f"{_hours(r.candidate_gap_s)} AIS gap",
                      "detection_id": r.detection_id, "image_id": r.image_id,
                      "gap_s": r.candidate_gap_s, "distance_m": r.candidate_distance_m}))
    return sort_events(events)


def status_inconsistency_events(track: Track, drift_kn: float = 3.0, anchored_kn: float = 0.5,
                                cap: float = 0.9) -> List[AnomalyEvent]:
    """An event carrying m(inconsistent) when the reported status contradicts the motion."""
    m = check_status_consistency(track, None, drift_kn, anchored_kn, cap)
    inconsistent = m["inconsistent"]
    if inconsistent <= 0.0:
        return []
    return [AnomalyEvent(
        mmsi=track.mmsi, kind=AnomalyKind.STATUS_INCONSISTENCY, t_start=track.t_start,
        t_end=track.t_end, severity=inconsistent,
        evidence={"summary": f"navigational status contradicts motion "
                             f"(m(inconsistent)={inconsistent:.2f})",
                  "mass": m.to_dict()})]


def apply_floor(events: Sequence[AnomalyEvent], floor: float) -> List[AnomalyEvent]:
    """Drop events below the report floor."""
    return [e for e in events if e.severity >= floor]
