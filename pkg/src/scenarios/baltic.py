"""
Baltic-like case: a vessel reporting itself at anchor works a search path over
a gas pipeline (powered approaches, then drifting away, repeated) while a
second vessel goes dark nearby. One SAR image covers the area mid-operation:
it sees the loiterer, a transiting ship, the dark vessel inside its gap and
one target with no AIS at all.
"""
from typing import List

import numpy as np

from analyses.ais.model import NavStatus, OwnershipRisk, ShipType, VesselInfo
from analyses.sar.model import SarDetection
from analyses.uci.model import UciGeometry, UciKind
from core.timeutil import HOUR, format_utc
from geo import GeoPoint, Polyline
from scenarios.synth import Leg, Scenario, anchorage, jitter, lane_traffic, report_at, sail

T0 = 1664150400  # 2022-09-26T00:00:00Z

LOITER_MMSI = 636017777
DARK_MMSI = 538009001
TRANSIT_MMSI = 219005001
SEARCH_CYCLES = 4

PIPELINE = UciGeometry(
    name="baltic-gas-1", kind=UciKind.PIPELINE,
    route=Polyline.from_lonlat([(14.90, 55.40), (15.40, 55.55), (15.90, 55.55), (16.40, 55.70)]),
    corridor_km=5.0)


def loiter_legs() -> List[Leg]:
    underway = NavStatus.UNDER_WAY_USING_ENGINE
    anchored = NavStatus.AT_ANCHOR
    legs = [Leg(5400, 11.0, 180.0, underway)]
    for _ in range(SEARCH_CYCLES):
        legs.append(Leg(900, 6.0, 180.0, anchored))
        legs.append(Leg(4500, 1.2, 0.0, anchored))
    legs.append(Leg(900, 6.0, 180.0, anchored))
    legs.append(Leg(3 * HOUR, 11.0, 0.0, underway))
    return legs


def generate(seed: int = 0) -> Scenario:
    rng = np.random.default_rng(seed)
    t_sar = T0 + int(4.5 * HOUR)

    points, _, _ = sail(LOITER_MMSI, GeoPoint(lat=55.85, lon=15.65), T0, loiter_legs(), 120, rng, cog_sd=1.5)

    dark_full, _, _ = sail(DARK_MMSI, GeoPoint(lat=55.45, lon=14.90), T0,
                           [Leg(10 * HOUR, 10.0, 90.0, NavStatus.UNDER_WAY_USING_ENGINE)], 300, rng)
    dark_at_sar = report_at(dark_full, DARK_MMSI, t_sar).pos
    # dark for 7 h, longer than the default ais.max_gap_s
    points += [p for p in dark_full if not T0 + HOUR <= p.t < T0 + 8 * HOUR]

    transit, _, _ = sail(TRANSIT_MMSI, GeoPoint(lat=55.35, lon=16.60), T0 + HOUR,
                         [Leg(8 * HOUR, 14.0, 270.0, NavStatus.UNDER_WAY_USING_ENGINE)], 300, rng)
    points += transit

    detections = [
        SarDetection(id="S1-B01", t_acq=t_sar, pos=jitter(report_at(points, LOITER_MMSI, t_sar).pos, rng, 40.0),
                     image_id="S1-BORNHOLM"),
        SarDetection(id="S1-B02", t_acq=t_sar, pos=jitter(report_at(points, TRANSIT_MMSI, t_sar).pos, rng, 40.0),
                     image_id="S1-BORNHOLM"),
        SarDetection(id="S1-B03", t_acq=t_sar, pos=jitter(dark_at_sar, rng, 40.0), image_id="S1-BORNHOLM"),
        SarDetection(id="S1-B04", t_acq=t_sar, pos=GeoPoint(lat=55.75, lon=15.20), image_id="S1-BORNHOLM"),
    ]

    vessels = [
        VesselInfo(mmsi=LOITER_MMSI, name="NORTHERN STAR", ship_type=ShipType.CARGO, length_m=84.0,
                   ownership_risk=OwnershipRisk.HIGH),
        VesselInfo(mmsi=DARK_MMSI, name="NORDFISK", ship_type=ShipType.FISHING, length_m=38.0),
        VesselInfo(mmsi=TRANSIT_MMSI, name="DANA MAERSK", ship_type=ShipType.CARGO, length_m=210.0,
                   ownership_risk=OwnershipRisk.LOW),
    ]

    history = lane_traffic(rng, GeoPoint(lat=55.20, lon=14.60), GeoPoint(lat=55.30, lon=16.60),
                           n_vessels=40, t0=T0 - 7 * 24 * HOUR, span_s=7 * 24 * HOUR,
                           mmsi_base=219100000)
    history += anchorage(rng, GeoPoint(lat=55.08, lon=14.62), n_vessels=5,
                         t0=T0 - 3 * 24 * HOUR, span_s=3 * 24 * HOUR, mmsi_base=219200000)

    truth = {
        "loiter_mmsi": LOITER_MMSI,
        "search_cycles": SEARCH_CYCLES + 1,
        "dark_mmsi": DARK_MMSI,
        "sar_time": format_utc(t_sar),
        "detections": {"S1-B01": LOITER_MMSI, "S1-B02": TRANSIT_MMSI, "S1-B03": DARK_MMSI, "S1-B04": None},
        "expected_flags": {"S1-B03": "gap_bracketing", "S1-B04": "no_ais"},
    }
    return Scenario(name="baltic", points=points, vessels=vessels, history=history, ucis=[PIPELINE],
                    detections=detections, truth=truth)
