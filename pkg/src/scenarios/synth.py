"""
Building blocks for synthetic case studies.

Contains:
- Scenario: everything one case study writes to disk
- Leg / sail: dead-reckoned tracks from (duration, speed, course) legs
- ou_drift: a vessel whose velocity follows an OU process, with hidden stretches
- lane_traffic / anchorage: background traffic for the normalcy baselines

All generators take a numpy Generator so a seed fixes every output.
"""
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from analyses.ais.model import KNOT_MS, AisPoint, NavStatus, VesselInfo
from analyses.netrisk.graph import InfraGraph
from analyses.prediction.ou import simulate_ou
from analyses.sar.model import SarDetection
from analyses.uci.model import ProtectedArea, UciGeometry
from geo import GeoPoint, LocalPlane, destination_point, geodesic_distance, initial_bearing


@dataclass
class Scenario:
    name: str
    points: List[AisPoint]
    vessels: List[VesselInfo]
    history: List[AisPoint]
    ucis: List[UciGeometry]
    areas: List[ProtectedArea] = field(default_factory=list)
    detections: List[SarDetection] = field(default_factory=list)
    graph: Optional[InfraGraph] = None
    truth: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Leg:
    duration_s: int
    sog_kn: float
    cog_deg: float
    nav_status: Optional[NavStatus] = None


def course(deg: float) -> float:
    """Degrees folded into [0, 360)."""
    c = deg % 360.0
    return 0.0 if c >= 360.0 else c


def bearing_deg(a: GeoPoint, b: GeoPoint) -> float:
    return course(math.degrees(initial_bearing(a, b)))


def sail(mmsi: int, start: GeoPoint, t0: int, legs: Sequence[Leg], report_s: int,
         rng: np.random.Generator, sog_sd: float = 0.1, cog_sd: float = 1.0) -> Tuple[List[AisPoint], GeoPoint, int]:
    """
    Reports every report_s seconds along the legs.

    Returns:
        (reports, position after the last leg, time after the last leg)
    """
    points = []
    pos, t = start, t0
    for leg in legs:
        for _ in range(max(1, int(round(leg.duration_s / report_s)))):
            sog = max(0.0, leg.sog_kn + rng.normal(0.0, sog_sd))
            cog = course(leg.cog_deg + rng.normal(0.0, cog_sd))
            points.append(AisPoint(mmsi=mmsi, t=t, pos=pos, sog=sog, cog=cog,
                                   heading=float(round(cog) % 360), nav_status=leg.nav_status))
            pos = destination_point(pos, math.radians(cog), sog * KNOT_MS * report_s)
            t += report_s
    return points, pos, t


@dataclass(frozen=True)
class OuPath:
    """Simulated positions and velocities at t0 + k * step_s, k = 0..n_steps."""
    t0: int
    step_s: int
    positions: List[GeoPoint]
    velocities: np.ndarray

    def time(self, k: int) -> int:
        return self.t0 + k * self.step_s


def ou_drift(origin: GeoPoint, t0: int, step_s: int, n_steps: int, mu, gamma, sigma,
             rng: np.random.Generator) -> OuPath:
    """One OU velocity path integrated from origin."""
    xy, v = simulate_ou(mu, gamma, sigma, mu, step_s, n_steps, rng)
    plane = LocalPlane(origin)
    positions = [plane.from_xy(float(x), float(y)) for x, y in xy[0]]
    return OuPath(t0=t0, step_s=step_s, positions=positions, velocities=v[0])


def path_reports(mmsi: int, path: OuPath, indices: Sequence[int],
                 nav_status: Optional[NavStatus] = None) -> List[AisPoint]:
    """AIS reports at the given path steps, SOG/COG taken from the simulated velocity."""
    points = []
    for k in indices:
        ve, vn = path.velocities[k]
        sog = math.hypot(ve, vn) / KNOT_MS
        cog = course(math.degrees(math.atan2(ve, vn)))
        points.append(AisPoint(mmsi=mmsi, t=path.time(k), pos=path.positions[k], sog=sog,
                               cog=cog, nav_status=nav_status))
    return points


def lane_traffic(rng: np.random.Generator, a: GeoPoint, b: GeoPoint, n_vessels: int, t0: int,
                 span_s: int, mmsi_base: int, report_s: int = 600,
                 sog_range: Tuple[float, float] = (10.0, 16.0),
                 lateral_m: float = 2000.0) -> List[AisPoint]:
    """Vessels transiting a lane between a and b (either direction) at random times."""
    points = []
    length = geodesic_distance(a, b)
    for i in range(n_vessels):
        src, dst = (a, b) if rng.random() < 0.5 else (b, a)
        heading = bearing_deg(src, dst)
        offset = rng.uniform(-lateral_m, lateral_m)
        start = destination_point(src, math.radians(heading + 90.0), offset)
        sog = rng.uniform(*sog_range)
        duration = int(length / (sog * KNOT_MS))
        t_start = t0 + int(rng.integers(0, max(1, span_s - duration)))
        legs = [Leg(duration, sog, heading, NavStatus.UNDER_WAY_USING_ENGINE)]
        track, _, _ = sail(mmsi_base + i, start, t_start, legs, report_s, rng)
        points.extend(track)
    return points


def anchorage(rng: np.random.Generator, center: GeoPoint, n_vessels: int, t0: int, span_s: int,
              mmsi_base: int, report_s: int = 900, radius_m: float = 1500.0) -> List[AisPoint]:
    """Vessels lying at anchor around center for the whole span."""
    points = []
    for i in range(n_vessels):
        spot = destination_point(center, rng.uniform(0.0, 2.0 * math.pi), rng.uniform(0.0, radius_m))
        for k in range(span_s // report_s):
            pos = destination_point(spot, rng.uniform(0.0, 2.0 * math.pi), rng.uniform(0.0, 60.0))
            points.append(AisPoint(mmsi=mmsi_base + i, t=t0 + k * report_s, pos=pos,
                                   sog=float(rng.uniform(0.0, 0.3)), cog=course(float(rng.uniform(0.0, 360.0))),
                                   nav_status=NavStatus.AT_ANCHOR))
    return points


def jitter(p: GeoPoint, rng: np.random.Generator, sd_m: float) -> GeoPoint:
    """Position error of a SAR detection."""
    return LocalPlane(p).from_xy(float(rng.normal(0.0, sd_m)), float(rng.normal(0.0, sd_m)))


def report_at(points: Sequence[AisPoint], mmsi: int, t: int) -> AisPoint:
    """The report of mmsi at exactly t."""
    for p in points:
        if p.mmsi == mmsi and p.t == t:
            return p
    raise ValueError(f"no report of {mmsi} at {t}")
