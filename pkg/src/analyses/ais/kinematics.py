"""
Track kinematics - interpolation, gaps, time-weighted speed/turn statistics and
motion classification.

All statistics are time-weighted with sample-and-hold semantics: a report's
value applies until the next report of the same track.

External Libraries Used:
- bisect (Python Standard Library) - Time lookup in sorted tracks
- math (Python Standard Library) - Velocity components
"""
import math
from bisect import bisect_left
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, List, Optional, Tuple

from analyses.ais.model import KNOT_MS, AisPoint, NavStatus, Track
from core.errors import InsufficientDataError
from geo import GeoPoint, interpolate_great_circle


class MotionClass(str, Enum):
    UNDERWAY = "underway"
    DRIFTING = "drifting"
    ANCHORED = "anchored"


@dataclass(frozen=True)
class Gap:
    mmsi: int
    t_start: int
    t_end: int
    start_pos: GeoPoint
    end_pos: GeoPoint

    def __post_init__(self):
        if self.t_end <= self.t_start:
            raise ValueError("gap must have t_end > t_start")

    @property
    def duration(self) -> int:
        return self.t_end - self.t_start


@dataclass(frozen=True)
class KinematicStats:
    mean_sog: float
    manoeuvre_rate: float  # course-change events per minute
    drift_fraction: float


def circular_difference(a: float, b: float) -> float:
    """Smallest angle between two courses, in [0, 180]."""
    d = abs(a - b) % 360.0
    return min(d, 360.0 - d)


def reported_velocity(p: AisPoint) -> Tuple[float, float]:
    """East/north velocity in m/s from SOG and COG."""
    speed = p.sog * KNOT_MS
    course = math.radians(p.cog)
    return speed * math.sin(course), speed * math.cos(course)


def classify_speed(sog: float, drift_threshold: float, anchored_threshold: float) -> MotionClass:
    if sog < anchored_threshold:
        return MotionClass.ANCHORED
    if sog < drift_threshold:
        return MotionClass.DRIFTING
    return MotionClass.UNDERWAY


# ============================================================================
# INTERPOLATION AND GAPS
# ============================================================================

def interpolate_position(track: Track, t: float, max_gap: float) -> Optional[GeoPoint]:
    """
    Great-circle position at time t, linear in time between the bracketing reports.

    Returns None (unavailable) outside the track span or inside a gap longer
    than max_gap seconds.
    """
    if max_gap <= 0:
        raise ValueError("max_gap must be positive")
    if not track.points:
        raise ValueError(f"track {track.mmsi} is empty")
    times = track.times
    i = bisect_left(times, t)
    if i < len(times) and times[i] == t:
        return track.points[i].pos
    if i == 0 or i == len(times):
        return None
    a = track.points[i - 1]
    b = track.points[i]
    if b.t - a.t > max_gap:
        return None
    return interpolate_great_circle(a.pos, b.pos, (t - a.t) / (b.t - a.t))


def bracketing_points(track: Track, t: float) -> Optional[Tuple[AisPoint, AisPoint]]:
    """The two consecutive reports strictly around t, if any."""
    i = bisect_left(track.times, t)
    if i == 0 or i >= len(track.times) or track.times[i] == t:
        return None
    return track.points[i - 1], track.points[i]


def find_gaps(track: Track, min_duration: float) -> List[Gap]:
    """Every consecutive-report spacing longer than min_duration seconds, in time order."""
    if min_duration <= 0:
        raise ValueError("min_duration must be positive")
    return [Gap(mmsi=track.mmsi, t_start=a.t, t_end=b.t, start_pos=a.pos, end_pos=b.pos)
            for a, b in zip(track.points, track.points[1:])
            if b.t - a.t > min_duration]


# ============================================================================
# TIME-WEIGHTED STATISTICS
# ============================================================================

def held_segments(track: Track, t0: float, t1: float) -> Iterator[Tuple[float, AisPoint]]:
    """(duration, holding report) pairs covering [t0, t1] intersected with the track span."""
    for a, b in zip(track.points, track.points[1:]):
        lo = max(a.t, t0)
        hi = min(b.t, t1)
        if hi > lo:
            yield hi - lo, a


def points_in_window(track: Track, t0: float, t1: float) -> List[AisPoint]:
    lo = bisect_left(track.times, t0)
    hi = bisect_left(track.times, t1)
    if hi < len(track.times) and track.times[hi] == t1:
        hi += 1
    return list(track.points[lo:hi])


def compute_stats(track: Track, window: Tuple[float, float],
                  drift_threshold: float, turn_threshold: float) -> KinematicStats:
    """
    Time-weighted mean SOG, manoeuvre rate and drift fraction over a window.

    Args:
        track: the vessel track
        window: (t0, t1) UTC seconds
        drift_threshold: knots; time below it counts as drifting
        turn_threshold: degrees; a larger course change between consecutive reports is a manoeuvre

    Raises:
        InsufficientDataError: no report falls inside the window
    """
    t0, t1 = window
    if t1 < t0:
        raise ValueError("window end before window start")
    if drift_threshold <= 0 or turn_threshold <= 0:
        raise ValueError("thresholds must be positive")
    inside = points_in_window(track, t0, t1)
    if not inside:
        raise InsufficientDataError(f"track {track.mmsi}: no points in window [{t0}, {t1}]")

    lo = max(t0, track.t_start)
    hi = min(t1, track.t_end)
    total = float(hi - lo)
    if total <= 0.0:
        sog = inside[0].sog
        return KinematicStats(mean_sog=sog, manoeuvre_rate=0.0,
                              drift_fraction=1.0 if sog < drift_threshold else 0.0)

    weighted_sog = 0.0
    drift_time = 0.0
    for dt, p in held_segments(track, lo, hi):
        weighted_sog += dt * p.sog
        if p.sog < drift_threshold:
            drift_time += dt

    events = sum(1 for a, b in zip(inside, inside[1:])
                 if circular_difference(a.cog, b.cog) > turn_threshold)

    return KinematicStats(mean_sog=weighted_sog / total,
                          manoeuvre_rate=events / (total / 60.0),
                          drift_fraction=min(1.0, drift_time / total))


def motion_segments(track: Track, drift_threshold: float,
                    anchored_threshold: float) -> List[Tuple[float, MotionClass, Optional[NavStatus]]]:
    """(duration, kinematic class, reported status) for every held segment of the track."""
    return [(float(dt), classify_speed(p.sog, drift_threshold, anchored_threshold), p.nav_status)
            for dt, p in held_segments(track, track.t_start, track.t_end)]
