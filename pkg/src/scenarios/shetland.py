"""
Shetland-like case: trawlers working across a communication cable and inside
a marine protected area, ferries crossing a power cable, and the regional
landing-station network for the robustness analysis.
"""
import numpy as np
from shapely.geometry import box

from analyses.ais.model import NavStatus, OwnershipRisk, ShipType, VesselInfo
from analyses.netrisk.graph import InfraGraph
from analyses.uci.model import ProtectedArea, UciGeometry, UciKind
from core.timeutil import HOUR
from geo import GeoPoint, Polyline
from scenarios.synth import Leg, Scenario, anchorage, lane_traffic, sail

T0 = 1666224000  # 2022-10-20T00:00:00Z

CROSSING_TRAWLER = 232004001
MPA_TRAWLER = 232004002
FERRY = 232004003
CROSSING_LEGS = 6

COMM_CABLE = UciGeometry(
    name="shefa-south", kind=UciKind.COMM_CABLE,
    route=Polyline.from_lonlat([(-1.10, 60.15), (-1.60, 59.85), (-2.30, 59.40)]), corridor_km=1.0)
POWER_CABLE = UciGeometry(
    name="isles-link", kind=UciKind.POWER_CABLE,
    route=Polyline.from_lonlat([(-0.90, 60.30), (-2.40, 60.30)]), corridor_km=1.0)
PROTECTED = ProtectedArea(name="fetlar-mpa", polygon=box(-1.60, 60.45, -1.20, 60.60))

STATIONS = {
    "LER": (60.155, -1.145), "SAN": (59.99, -1.25), "SUL": (60.45, -1.28), "KWL": (58.98, -2.96),
    "THU": (58.59, -3.52), "ABD": (57.15, -2.09), "PHD": (57.50, -1.78), "TOR": (62.01, -6.77),
    "BER": (60.39, 5.32),
}

LINKS = [
    ("LER", "SAN", "comm_cable"), ("SAN", "KWL", "comm_cable"), ("SAN", "KWL", "comm_cable"),
    ("KWL", "THU", "comm_cable"), ("KWL", "THU", "power_cable"), ("LER", "ABD", "comm_cable"),
    ("LER", "TOR", "comm_cable"), ("TOR", "THU", "comm_cable"), ("SUL", "LER", "power_cable"),
    ("SAN", "SUL", "power_cable"), ("ABD", "THU", "power_cable"), ("PHD", "ABD", "power_cable"),
    ("SUL", "BER", "pipeline"), ("SUL", "PHD", "pipeline"),
]


def landing_network() -> InfraGraph:
    g = InfraGraph()
    for name, (lat, lon) in STATIONS.items():
        g.add_node(name, pos=GeoPoint(lat=lat, lon=lon))
    for src, dst, kind in LINKS:
        edge_id = f"{src}-{dst}"
        n = 1
        while g.has_edge(edge_id):
            edge_id = f"{src}-{dst}#{n}"
            n += 1
        g.add_edge(edge_id, src, dst, kind)
    return g


def generate(seed: int = 0) -> Scenario:
    rng = np.random.default_rng(seed)
    fishing = NavStatus.ENGAGED_IN_FISHING

    sweep = [Leg(7200, 3.5, 90.0 if i % 2 == 0 else 270.0, fishing) for i in range(CROSSING_LEGS)]
    points, _, _ = sail(CROSSING_TRAWLER, GeoPoint(lat=59.83, lon=-1.80), T0, sweep, 180, rng)

    tows = [Leg(3600, 3.0, 0.0 if i % 2 == 0 else 180.0, fishing) for i in range(8)]
    mpa, _, _ = sail(MPA_TRAWLER, GeoPoint(lat=60.47, lon=-1.40), T0 + 2 * HOUR, tows, 180, rng)
    points += mpa

    ferry, _, _ = sail(FERRY, GeoPoint(lat=60.60, lon=-1.70), T0 + 4 * HOUR,
                       [Leg(4 * HOUR, 15.0, 180.0, NavStatus.UNDER_WAY_USING_ENGINE)], 300, rng)
    points += ferry

    vessels = [
        VesselInfo(mmsi=CROSSING_TRAWLER, name="ATLANTIC HARVEST", ship_type=ShipType.FISHING, length_m=28.0,
                   ownership_risk=OwnershipRisk.LOW),
        VesselInfo(mmsi=MPA_TRAWLER, name="SEA SPRAY", ship_type=ShipType.FISHING, length_m=24.0),
        VesselInfo(mmsi=FERRY, name="NORTHLINK", ship_type=ShipType.PASSENGER, length_m=125.0,
                   ownership_risk=OwnershipRisk.LOW),
    ]

    history = lane_traffic(rng, GeoPoint(lat=60.70, lon=-0.80), GeoPoint(lat=59.20, lon=-1.90),
                           n_vessels=30, t0=T0 - 7 * 24 * HOUR, span_s=7 * 24 * HOUR,
                           mmsi_base=232100000)
    history += anchorage(rng, GeoPoint(lat=60.14, lon=-1.12), n_vessels=4,
                         t0=T0 - 3 * 24 * HOUR, span_s=3 * 24 * HOUR, mmsi_base=232200000)

    truth = {
        "crossing_mmsi": CROSSING_TRAWLER,
        "expected_crossings": CROSSING_LEGS,
        "mpa_mmsi": MPA_TRAWLER,
        "ferry_mmsi": FERRY,
    }
    return Scenario(name="shetland", points=points, vessels=vessels, history=history,
                    ucis=[COMM_CABLE, POWER_CABLE], areas=[PROTECTED], graph=landing_network(), truth=truth)
