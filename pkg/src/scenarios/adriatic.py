"""
Adriatic-like case: a vessel loiters over a communication cable in the strait,
switches AIS off for 21 hours and reappears. A SAR image taken 3 hours after
its last report sees it; the planted true position is kept in the truth record.

The dark vessel's velocity is an OU process sampled every 3 minutes; its
reports carry the simulated velocity as SOG/COG. The cable is laid through
the last reported position so the gap opens inside the corridor.
"""
import math
from typing import List

import numpy as np

from analyses.ais.model import NavStatus, OwnershipRisk, ShipType, VesselInfo
from analyses.sar.model import SarDetection
from analyses.uci.model import UciGeometry, UciKind
from core.timeutil import HOUR, format_utc
from geo import GeoPoint, Polyline, destination_point
from scenarios.synth import Leg, OuPath, Scenario, anchorage, jitter, lane_traffic, ou_drift, path_reports, sail

T0 = 1677628800  # 2023-03-01T00:00:00Z
STEP_S = 180
HISTORY_STEPS = 240          # 12 h of reports before the gap
GAP_STEPS = 420              # 21 h dark
AFTER_STEPS = 60             # 3 h after reacquisition
SAR_STEPS_AFTER_FIX = 60     # image 3 h after the last fix

DARK_MMSI = 247000123
ORIGIN = GeoPoint(lat=40.20, lon=18.95)

# drifting with a weak set to the south-east
OU_MU = (0.12, -0.08)
OU_GAMMA = (1.0 / 1800.0, 1.0 / 1800.0)
OU_SIGMA = (0.012, 0.012)


def last_fix_index() -> int:
    return HISTORY_STEPS - 1


def reacquire_index() -> int:
    return last_fix_index() + GAP_STEPS


def sar_index() -> int:
    return last_fix_index() + SAR_STEPS_AFTER_FIX


def dark_vessel_path(rng: np.random.Generator) -> OuPath:
    """Full simulated path of the dark vessel, reported or not."""
    n_steps = HISTORY_STEPS + GAP_STEPS + AFTER_STEPS
    return ou_drift(ORIGIN, T0, STEP_S, n_steps, OU_MU, OU_GAMMA, OU_SIGMA, rng)


def dark_vessel_reports(path: OuPath):
    shown = list(range(0, HISTORY_STEPS)) + list(range(reacquire_index(), len(path.positions)))
    return path_reports(DARK_MMSI, path, shown, NavStatus.UNDER_WAY_USING_ENGINE)


def cable_through(p: GeoPoint) -> UciGeometry:
    south_west = destination_point(p, math.radians(225.0), 40000.0)
    north_east = destination_point(p, math.radians(45.0), 40000.0)
    return UciGeometry(name="otranto-comm-1", kind=UciKind.COMM_CABLE,
                       route=Polyline((south_west, p, north_east)), corridor_km=5.0)


def generate(seed: int = 0) -> Scenario:
    rng = np.random.default_rng(seed)
    path = dark_vessel_path(rng)
    points = dark_vessel_reports(path)
    cable = cable_through(path.positions[last_fix_index()])

    vessels: List[VesselInfo] = [
        VesselInfo(mmsi=DARK_MMSI, name="MARLIN", ship_type=ShipType.CARGO, length_m=92.0,
                   ownership_risk=OwnershipRisk.UNKNOWN),
    ]
    # northbound through the strait while the target is dark
    transit_t = path.time(last_fix_index()) - 2 * HOUR
    for i, (lon, sog) in enumerate([(18.80, 13.0), (19.05, 11.5), (19.20, 14.0)]):
        mmsi = 247100001 + i
        track, _, _ = sail(mmsi, GeoPoint(lat=39.60, lon=lon), transit_t + i * 1800,
                           [Leg(10 * HOUR, sog, 350.0, NavStatus.UNDER_WAY_USING_ENGINE)], 300, rng)
        points.extend(track)
        vessels.append(VesselInfo(mmsi=mmsi, name=f"TRANSIT {i + 1}", ship_type=ShipType.CARGO,
                                  length_m=150.0 + 20 * i, ownership_risk=OwnershipRisk.LOW))

    sar_k = sar_index()
    t_sar = path.time(sar_k)
    truth_pos = path.positions[sar_k]
    detections = [SarDetection(id="S1-001", t_acq=t_sar, pos=jitter(truth_pos, rng, 30.0), image_id="S1-OTRANTO")]
    # the first transit vessel is in the same image
    transit_points = sorted((p for p in points if p.mmsi == 247100001), key=lambda p: abs(p.t - t_sar))
    if transit_points and abs(transit_points[0].t - t_sar) <= 300:
        detections.append(SarDetection(id="S1-002", t_acq=t_sar, pos=jitter(transit_points[0].pos, rng, 30.0),
                                       image_id="S1-OTRANTO"))

    history = lane_traffic(rng, GeoPoint(lat=39.40, lon=19.00), GeoPoint(lat=41.00, lon=18.70),
                           n_vessels=40, t0=T0 - 7 * 24 * HOUR, span_s=7 * 24 * HOUR,
                           mmsi_base=247200000)
    history += anchorage(rng, GeoPoint(lat=40.64, lon=17.98), n_vessels=4,
                         t0=T0 - 3 * 24 * HOUR, span_s=3 * 24 * HOUR, mmsi_base=247300000)

    truth = {
        "dark_mmsi": DARK_MMSI,
        "last_fix": format_utc(path.time(last_fix_index())),
        "reacquired": format_utc(path.time(reacquire_index())),
        "gap_s": GAP_STEPS * STEP_S,
        "sar_time": format_utc(t_sar),
        "sar_true_lat": truth_pos.lat,
        "sar_true_lon": truth_pos.lon,
        "ou_mu": list(OU_MU), "ou_gamma": list(OU_GAMMA), "ou_sigma": list(OU_SIGMA),
        "detections": {d.id: (DARK_MMSI if d.id == "S1-001" else 247100001) for d in detections},
    }
    return Scenario(name="adriatic", points=points, vessels=vessels, history=history, ucis=[cable],
                    detections=detections, truth=truth)
