"""
AIS file IO - decoded AIS position CSV and vessel-info CSV.

AIS header (exact):    mmsi,timestamp,lat,lon,sog,cog,heading,nav_status
Vessel header (exact): mmsi,name,ship_type,length_m,ownership_risk

Malformed rows never abort a read: each becomes a RecordError with its file line.
Lines starting with '#' (artifact header blocks) are skipped.

External Libraries Used:
- csv (Python Standard Library) - Row parsing and writing
- pathlib (Python Standard Library) - File path handling
"""
import csv
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

from analyses.ais.model import (
    SOG_CEILING_KN,
    AisPoint,
    NavStatus,
    OwnershipRisk,
    RecordError,
    ShipType,
    Track,
    VesselInfo,
    is_valid_mmsi,
)
from IO.csvRows import FieldError, check_range, data_rows, decoded, format_float, number
from core.timeutil import format_utc, parse_utc
from geo import GeoPoint

logger = logging.getLogger(__name__)

AIS_HEADER = ["mmsi", "timestamp", "lat", "lon", "sog", "cog", "heading", "nav_status"]
VESSEL_HEADER = ["mmsi", "name", "ship_type", "length_m", "ownership_risk"]
HEADING_NOT_AVAILABLE = 511.0


# ============================================================================
# AIS POSITIONS
# ============================================================================

def _parse_ais_row(row: List[str]) -> AisPoint:
    if len(row) != len(AIS_HEADER):
        raise FieldError("parse", None, f"expected {len(AIS_HEADER)} fields, got {len(row)}")
    mmsi = number(row[0], "mmsi", int)
    if not is_valid_mmsi(mmsi):
        raise FieldError("range", "mmsi", f"mmsi={mmsi} is not 9 digits")
    if row[1].strip() == "":
        raise FieldError("missing", "timestamp", "timestamp is empty")
    try:
        t = parse_utc(row[1])
    except ValueError:
        raise FieldError("parse", "timestamp", f"timestamp={row[1]!r} is not ISO-8601")
    lat = number(row[2], "lat")
    check_range(lat, -90.0, 90.0, "lat")
    lon = number(row[3], "lon")
    check_range(lon, -180.0, 180.0, "lon")
    sog = number(row[4], "sog")
    check_range(sog, 0.0, SOG_CEILING_KN, "sog", hi_inclusive=False)
    cog = number(row[5], "cog")
    check_range(cog, 0.0, 360.0, "cog", hi_inclusive=False)

    heading: Optional[float] = None
    if row[6].strip() != "":
        heading = number(row[6], "heading")
        if heading == HEADING_NOT_AVAILABLE:
            heading = None
        else:
            check_range(heading, 0.0, 360.0, "heading", hi_inclusive=False)

    nav_status: Optional[NavStatus] = None
    if row[7].strip() != "":
        code = number(row[7], "nav_status", int)
        check_range(code, 0, 15, "nav_status")
        nav_status = NavStatus(code)

    return AisPoint(mmsi=mmsi, t=t, pos=GeoPoint(lat=lat, lon=lon), sog=sog, cog=cog,
                    heading=heading, nav_status=nav_status)


def parse_ais_csv(path) -> Tuple[List[AisPoint], List[RecordError]]:
    """
    Parse a decoded AIS CSV file.

    Returns:
        (points, errors); len(points) + len(errors) equals the data row count

    Raises:
        IngestError: file missing or header not the documented one
    """
    path = Path(path)
    points: List[AisPoint] = []
    errors: List[RecordError] = []
    for line, row in data_rows(path, AIS_HEADER):
        try:
            row = decoded(row)
            points.append(_parse_ais_row(row))
        except FieldError as e:
            errors.append(RecordError(line=line, kind=e.kind, field=e.field, message=str(e)))
    logger.info(f"[LOAD] {path.name}: {len(points)} points, {len(errors)} rejected rows")
    return points, errors



def write_ais_csv(tracks: Iterable[Track], path, header_lines: Optional[List[str]] = None) -> None:
    """Write tracks in the AIS CSV schema; parse_ais_csv reads it back unchanged."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        for line in header_lines or []:
            f.write(f"# {line}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(AIS_HEADER)
        for track in tracks:
            for p in track.points:
                writer.writerow([
                    p.mmsi, format_utc(p.t), format_float(p.pos.lat), format_float(p.pos.lon),
                    format_float(p.sog), format_float(p.cog),
                    "" if p.heading is None else format_float(p.heading),
                    "" if p.nav_status is None else int(p.nav_status),
                ])


# ============================================================================
# VESSEL INFO
# ============================================================================

def _parse_vessel_row(row: List[str]) -> VesselInfo:
    if len(row) != len(VESSEL_HEADER):
        raise FieldError("parse", None, f"expected {len(VESSEL_HEADER)} fields, got {len(row)}")
    mmsi = number(row[0], "mmsi", int)
    if not is_valid_mmsi(mmsi):
        raise FieldError("range", "mmsi", f"mmsi={mmsi} is not 9 digits")
    name = row[1].strip() or None
    ship_type = None
    if row[2].strip():
        try:
            ship_type = ShipType(row[2].strip().lower())
        except ValueError:
            raise FieldError("range", "ship_type", f"unknown ship_type {row[2]!r}")
    length_m = None
    if row[3].strip():
        length_m = number(row[3], "length_m")
        check_range(length_m, 0.0, 600.0, "length_m")
    risk = OwnershipRisk.UNKNOWN
    if row[4].strip():
        try:
            risk = OwnershipRisk(row[4].strip().lower())
        except ValueError:
            raise FieldError("range", "ownership_risk", f"unknown ownership_risk {row[4]!r}")
    return VesselInfo(mmsi=mmsi, name=name, ship_type=ship_type, length_m=length_m, ownership_risk=risk)


def parse_vessel_csv(path) -> Tuple[Dict[int, VesselInfo], List[RecordError]]:
    """Parse the vessel-info CSV. A repeated MMSI keeps its first row."""
    path = Path(path)
    infos: Dict[int, VesselInfo] = {}
    errors: List[RecordError] = []
    for line, row in data_rows(path, VESSEL_HEADER):
        try:
            row = decoded(row)
            info = _parse_vessel_row(row)
        except FieldError as e:
            errors.append(RecordError(line=line, kind=e.kind, field=e.field, message=str(e)))
            continue
        if info.mmsi in infos:
            errors.append(RecordError(line=line, kind="duplicate", field="mmsi",
                                      message=f"mmsi {info.mmsi} listed twice"))
            continue
        infos[info.mmsi] = info
    logger.info(f"[LOAD] {path.name}: {len(infos)} vessels, {len(errors)} rejected rows")
    return infos, errors


def write_vessel_csv(infos: Iterable[VesselInfo], path, header_lines: Optional[List[str]] = None) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        for line in header_lines or []:
            f.write(f"# {line}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(VESSEL_HEADER)
        for info in infos:
            writer.writerow([
                info.mmsi, info.name or "",
                info.ship_type.value if info.ship_type else "",
                "" if info.length_m is None else format_float(info.length_m),
                info.ownership_risk.value,
            ])
