"""Shared fixtures. Puts src/ on sys.path the same way src/main.py does."""
import sys
from pathlib import Path

import pytest

SRC = Path(__file__).resolve().parent.parent / "src"
if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

from analyses.ais.model import AisPoint, NavStatus, Track, VesselInfo  # noqa: E402
from geo import GeoPoint  # noqa: E402

T0 = 1663668000  # 2022-09-20T10:00:00Z
MMSI = 211234560


def make_point(t: int, lat: float, lon: float, sog: float = 10.0, cog: float = 90.0,
               mmsi: int = MMSI, heading=None, nav_status=None) -> AisPoint:
    return AisPoint(mmsi=mmsi, t=t, pos=GeoPoint(lat=lat, lon=lon), sog=sog, cog=cog,
                    heading=heading, nav_status=nav_status)


def make_track(points, info=None) -> Track:
    points = sorted(points, key=lambda p: p.t)
    return Track(mmsi=points[0].mmsi, points=tuple(points), info=info or VesselInfo.unknown(points[0].mmsi))


@pytest.fixture
def t0() -> int:
    return T0
