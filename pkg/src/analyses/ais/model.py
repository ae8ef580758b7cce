"""
AIS data model - position reports, vessel context and per-vessel tracks.

Contains:
- NavStatus, ShipType, OwnershipRisk enumerations
- AisPoint: one decoded position report
- VesselInfo: static / contextual vessel attributes
- Track: time-ordered reports of one MMSI
- RecordError: structured description of a rejected input record

External Libraries Used:
- dataclasses, enum (Python Standard Library) - Immutable value types
"""
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Optional, Tuple

from geo import GeoPoint

SOG_CEILING_KN = 102.2
KNOT_MS = 1852.0 / 3600.0


class NavStatus(IntEnum):
    """ITU-R M.1371 navigational status codes."""
    UNDER_WAY_USING_ENGINE = 0
    AT_ANCHOR = 1
    NOT_UNDER_COMMAND = 2
    RESTRICTED_MANOEUVRABILITY = 3
    CONSTRAINED_BY_DRAUGHT = 4
    MOORED = 5
    AGROUND = 6
    ENGAGED_IN_FISHING = 7
    UNDER_WAY_SAILING = 8
    RESERVED_HSC = 9
    RESERVED_WIG = 10
    TOWING_ASTERN = 11
    PUSHING_AHEAD_OR_TOWING_ALONGSIDE = 12
    RESERVED = 13
    AIS_SART = 14
    UNDEFINED = 15


class ShipType(str, Enum):
    FISHING = "fishing"
    TUG = "tug"
    PASSENGER = "passenger"
    CARGO = "cargo"
    TANKER = "tanker"
    PLEASURE = "pleasure"
    MILITARY = "military"
    RESEARCH = "research"
    OTHER = "other"


class OwnershipRisk(str, Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"
    UNKNOWN = "unknown"


def is_valid_mmsi(mmsi: int) -> bool:
    return 100_000_000 <= mmsi <= 999_999_999


@dataclass(frozen=True)
class AisPoint:
    """A single AIS position report. t is UTC epoch seconds."""
    mmsi: int
    t: int
    pos: GeoPoint
    sog: float
    cog: float
    heading: Optional[float] = None
    nav_status: Optional[NavStatus] = None

    def __post_init__(self):
        if not is_valid_mmsi(self.mmsi):
            raise ValueError(f"mmsi {self.mmsi} is not a 9-digit identifier")
        if not 0.0 <= self.sog < SOG_CEILING_KN:
            raise ValueError(f"sog {self.sog} outside [0, {SOG_CEILING_KN})")
        if not 0.0 <= self.cog < 360.0:
            raise ValueError(f"cog {self.cog} outside [0, 360)")
        if self.heading is not None and not 0.0 <= self.heading < 360.0:
            raise ValueError(f"heading {self.heading} outside [0, 360)")


@dataclass(frozen=True)
class VesselInfo:
    mmsi: int
    name: Optional[str] = None
    ship_type: Optional[ShipType] = None
    length_m: Optional[float] = None
    ownership_risk: OwnershipRisk = OwnershipRisk.UNKNOWN

    @classmethod
    def unknown(cls, mmsi: int) -> "VesselInfo":
        return cls(mmsi=mmsi)


@dataclass(frozen=True)
class Track:
    """Reports of one vessel with strictly increasing timestamps."""
    mmsi: int
    points: Tuple[AisPoint, ...]
    info: VesselInfo
    times: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        points = tuple(self.points)
        if not points:
            raise ValueError(f"track {self.mmsi} has no points")
        for p in points:
            if p.mmsi != self.mmsi:
                raise ValueError(f"point of mmsi {p.mmsi} in track {self.mmsi}")
        for a, b in zip(points, points[1:]):
            if b.t <= a.t:
                raise ValueError(f"track {self.mmsi}: timestamps not strictly increasing at {b.t}")
        if self.info.mmsi != self.mmsi:
            raise ValueError(f"vessel info {self.info.mmsi} attached to track {self.mmsi}")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "times", tuple(p.t for p in points))

    def __len__(self) -> int:
        return len(self.points)

    @property
    def t_start(self) -> int:
        return self.times[0]

    @property
    def t_end(self) -> int:
        return self.times[-1]

    def with_info(self, info: VesselInfo) -> "Track":
        return Track(mmsi=self.mmsi, points=self.points, info=info)


@dataclass(frozen=True)
class RecordError:
    """
    A rejected input record.

    kind is one of: parse, range, missing, duplicate.
    line is the 1-based file line (header is line 1), None for in-memory records.
    """
    line: Optional[int]
    kind: str
    field: Optional[str]
    message: str
