"""
Candidate selection near underwater infrastructure.

Contains:
- membership_intervals: maximal time intervals a track spends inside a region
- corridor_intervals: the same for the band within a distance of a route
- dwell_time: total time inside the corridor
- select_candidates: kinematic (dwell, low speed / manoeuvre rate) and
  non-kinematic (size vs. depth) gates

Corridor membership is tested on the great-circle path between consecutive
reports. Boundary crossings are located by bisection on the path fraction.

External Libraries Used:
- logging (Python Standard Library) - Per-track decisions at debug level
"""
import logging
from typing import Callable, Iterable, List, Optional, Tuple

from analyses.ais.kinematics import compute_stats
from analyses.ais.model import AisPoint, Track
from analyses.uci.model import CandidateReport, DepthGrid, FilterCriteria, ProtectedArea, UciGeometry
from geo import GeoPoint, Polyline, distance_to_polyline, geodesic_distance, interpolate_great_circle

logger = logging.getLogger(__name__)

# Interior probes per segment; catches passes where both reports lie outside.
_PROBES = 16
_BISECTION_STEPS = 40

Interval = Tuple[float, float]
Inside = Callable[[GeoPoint], bool]


def _bisect_crossing(a: AisPoint, b: AisPoint, inside_at: Inside,
                     f_lo: float, f_hi: float, inside_lo: bool) -> float:
    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (f_lo + f_hi)
        inside = inside_at(interpolate_great_circle(a.pos, b.pos, mid))
        if inside == inside_lo:
            f_lo = mid
        else:
            f_hi = mid
    return 0.5 * (f_lo + f_hi)


def _segment_spans(a: AisPoint, b: AisPoint, inside_at: Inside) -> List[Interval]:
    """Sub-intervals of [0, 1] (path fraction) inside the region."""
    fractions = [i / _PROBES for i in range(_PROBES + 1)]
    flags = [inside_at(a.pos)]
    for f in fractions[1:-1]:
        flags.append(inside_at(interpolate_great_circle(a.pos, b.pos, f)))
    flags.append(inside_at(b.pos))

    spans: List[Interval] = []
    start: Optional[float] = 0.0 if flags[0] else None
    for i in range(1, len(fractions)):
        if flags[i] == flags[i - 1]:
            continue
        edge = _bisect_crossing(a, b, inside_at, fractions[i - 1], fractions[i], flags[i - 1])
        if flags[i]:
            start = edge
        else:
            spans.append((start, edge))
            start = None
    if start is not None:
        spans.append((start, 1.0))
    return spans


def membership_intervals(track: Track, inside_at: Inside,
                         may_enter: Optional[Callable[[AisPoint, AisPoint], bool]] = None) -> List[Interval]:
    """
    Maximal (t_in, t_out) intervals during which the interpolated track is
    inside a region. Touching intervals are merged.

    Args:
        track: the vessel track
        inside_at: region membership of a position
        may_enter: optional cheap test; segments it rejects are skipped
    """
    intervals: List[Interval] = []
    for a, b in zip(track.points, track.points[1:]):
        if may_enter is not None and not may_enter(a, b):
            continue
        duration = b.t - a.t
        for f0, f1 in _segment_spans(a, b, inside_at):
            t0 = a.t + f0 * duration
            t1 = a.t + f1 * duration
            if intervals and t0 <= intervals[-1][1]:
                intervals[-1] = (intervals[-1][0], max(t1, intervals[-1][1]))
            else:
                intervals.append((t0, t1))
    return [iv for iv in intervals if iv[1] > iv[0]]


def corridor_intervals(track: Track, route: Polyline, d_max_km: float) -> List[Interval]:
    """Maximal time intervals the track spends within d_max_km of the route."""
    if not d_max_km > 0:
        raise ValueError("d_max_km must be positive")
    limit_m = d_max_km * 1000.0

    def inside_at(p: GeoPoint) -> bool:
        return distance_to_polyline(p, route) <= limit_m

    def may_enter(a: AisPoint, b: AisPoint) -> bool:
        # every path point lies within half the segment length of an endpoint
        reach = 0.5 * geodesic_distance(a.pos, b.pos)
        return min(distance_to_polyline(a.pos, route), distance_to_polyline(b.pos, route)) - reach <= limit_m

    return membership_intervals(track, inside_at, may_enter)


def area_intervals(track: Track, area: ProtectedArea) -> List[Interval]:
    """Maximal time intervals the track spends inside a polygon zone."""
    return membership_intervals(track, area.contains)


def dwell_time(track: Track, uci: UciGeometry, d_max_km: float) -> float:
    """Seconds the track spends within d_max_km of the UCI route."""
    return float(sum(t1 - t0 for t0, t1 in corridor_intervals(track, uci.route, d_max_km)))


def _stats_window(track: Track, t_in: float, t_out: float) -> Interval:
    """Widen [t_in, t_out] to the reports bracketing it."""
    lo = max((t for t in track.times if t <= t_in), default=track.t_start)
    hi = min((t for t in track.times if t >= t_out), default=track.t_end)
    return float(lo), float(hi)


def _nearest_approach(track: Track, route: Polyline, intervals: List[Interval]) -> Tuple[float, GeoPoint]:
    probes = [p.pos for p in track.points]
    for t0, t1 in intervals:
        mid = 0.5 * (t0 + t1)
        for a, b in zip(track.points, track.points[1:]):
            if a.t <= mid <= b.t:
                probes.append(interpolate_great_circle(a.pos, b.pos, (mid - a.t) / (b.t - a.t)))
                break
    best = min(probes, key=lambda p: distance_to_polyline(p, route))
    return distance_to_polyline(best, route), best


def evaluate_track(track: Track, uci: UciGeometry, crit: FilterCriteria,
                   bathymetry: Optional[DepthGrid] = None,
                   drift_kn: float = 3.0, turn_deg: float = 30.0) -> Optional[CandidateReport]:
    """Apply every gate to one track; None when it is not a candidate."""
    intervals = corridor_intervals(track, uci.route, crit.d_max_km)
    dwell = float(sum(t1 - t0 for t0, t1 in intervals))
    if dwell < crit.t_min_s:
        logger.debug(f"mmsi {track.mmsi}: dwell {dwell:.0f} s below t_min")
        return None

    window = _stats_window(track, intervals[0][0], intervals[-1][1])
    stats = compute_stats(track, window, drift_kn, turn_deg)

    matched = {"dwell"}
    if stats.mean_sog <= crit.s_max_kn:
        matched.add("low_speed")
    if crit.manoeuvre_rate_min is not None and stats.manoeuvre_rate >= crit.manoeuvre_rate_min:
        matched.add("manoeuvre_rate")
    if matched == {"dwell"}:
        logger.debug(f"mmsi {track.mmsi}: kinematic gates not met")
        return None

    nearest_m, nearest_pos = _nearest_approach(track, uci.route, intervals)

    length = track.info.length_m
    if (crit.min_length_m is not None and crit.depth_gate_m is not None
            and bathymetry is not None and length is not None and length < crit.min_length_m):
        depth = bathymetry.depth_at(nearest_pos)
        if depth is not None and depth > crit.depth_gate_m:
            logger.debug(f"mmsi {track.mmsi}: {length} m vessel over {depth:.0f} m depth, excluded")
            return None

    return CandidateReport(mmsi=track.mmsi, dwell_s=dwell, stats=stats,
                           matched_criteria=frozenset(matched), nearest_approach_m=nearest_m,
                           nearest_pos=nearest_pos, t_first_in=intervals[0][0],
                           t_last_out=intervals[-1][1])


def select_candidates(tracks: Iterable[Track], uci: UciGeometry, crit: FilterCriteria,
                      bathymetry: Optional[DepthGrid] = None,
                      drift_kn: float = 3.0, turn_deg: float = 30.0) -> List[CandidateReport]:
    """
    Tracks that dwell near the UCI and behave like loiterers or searchers,
    ordered by descending dwell then MMSI.
    """
    reports = []
    for track in tracks:
        report = evaluate_track(track, uci, crit, bathymetry, drift_kn, turn_deg)
        if report is not None:
            reports.append(report)
    reports.sort(key=lambda r: (-r.dwell_s, r.mmsi))
    logger.info(f"{uci.name}: {len(reports)} candidates")
    return reports
