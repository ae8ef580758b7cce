"""
Geospatial inputs - UCI GeoJSON, bathymetry lattice CSV and SAR detection CSV.

UCI file:        GeoJSON FeatureCollection. LineString / MultiLineString features
                 are corridors (properties name, kind, corridor_km); Polygon /
                 MultiPolygon features are protected areas (properties name, kind).
Bathymetry CSV:  lat,lon,depth_m on a complete regular lattice.
Detections CSV:  id,image_id,timestamp,lat,lon

External Libraries Used:
- shapely - GeoJSON geometry parsing and validation
- numpy - Depth lattice assembly
- json (Python Standard Library) - GeoJSON document parsing
"""
import csv
import json
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from shapely.geometry import LineString, MultiLineString, MultiPolygon, Polygon, mapping, shape

from analyses.ais.model import RecordError
from analyses.sar.model import SarDetection
from analyses.uci.model import DepthGrid, ProtectedArea, UciGeometry, UciKind
from IO.csvRows import FieldError, check_range, data_rows, decoded, format_float, number
from core.errors import IngestError
from core.timeutil import format_utc, parse_utc
from geo import GeoPoint, Polyline

logger = logging.getLogger(__name__)

BATHYMETRY_HEADER = ["lat", "lon", "depth_m"]
DETECTION_HEADER = ["id", "image_id", "timestamp", "lat", "lon"]

Zone = Union[UciGeometry, ProtectedArea]


# ============================================================================
# UCI GEOJSON
# ============================================================================

def _feature_name(props: Dict, index: int) -> str:
    return str(props.get("name") or f"feature-{index}")


def _corridors(name: str, geom, props: Dict, default_corridor_km: float) -> List[UciGeometry]:
    kind_raw = props.get("kind")
    try:
        kind = UciKind(kind_raw)
    except ValueError:
        raise IngestError(f"UCI {name}: unknown kind {kind_raw!r}, expected one of "
                          f"{[k.value for k in UciKind]}")
    corridor_km = float(props.get("corridor_km", default_corridor_km))
    lines = [geom] if isinstance(geom, LineString) else list(geom.geoms)
    out = []
    for part, line in enumerate(lines):
        part_name = name if len(lines) == 1 else f"{name}/{part}"
        out.append(UciGeometry(name=part_name, kind=kind,
                               route=Polyline.from_lonlat(line.coords), corridor_km=corridor_km))
    return out


def _areas(name: str, geom, props: Dict) -> List[ProtectedArea]:
    kind = str(props.get("kind") or "protected_area")
    polygons = [geom] if isinstance(geom, Polygon) else list(geom.geoms)
    return [ProtectedArea(name=name if len(polygons) == 1 else f"{name}/{i}", polygon=p, kind=kind)
            for i, p in enumerate(polygons)]


def load_uci_geojson(path, default_corridor_km: float = 5.0) -> Tuple[List[UciGeometry], List[ProtectedArea]]:
    """
    Read corridors and protected areas from a GeoJSON FeatureCollection.

    Raises:
        IngestError: unreadable file, unsupported geometry, invalid feature
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
        raise IngestError(f"cannot read UCI file {path}: {e}")
    if doc.get("type") != "FeatureCollection":
        raise IngestError(f"{path}: expected a GeoJSON FeatureCollection")

    ucis: List[UciGeometry] = []
    areas: List[ProtectedArea] = []
    for i, feature in enumerate(doc.get("features", [])):
        props = feature.get("properties") or {}
        name = _feature_name(props, i)
        try:
            geom = shape(feature["geometry"])
            if isinstance(geom, (LineString, MultiLineString)):
                ucis.extend(_corridors(name, geom, props, default_corridor_km))
            elif isinstance(geom, (Polygon, MultiPolygon)):
                areas.extend(_areas(name, geom, props))
            else:
                raise IngestError(f"unsupported geometry {geom.geom_type}")
        except IngestError as e:
            raise IngestError(f"{path}: feature {name}: {e}")
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise IngestError(f"{path}: feature {name}: {e}")
    logger.info(f"[LOAD] {path.name}: {len(ucis)} corridors, {len(areas)} protected areas")
    return ucis, areas


def write_uci_geojson(zones: Iterable[Zone], path, metadata: Optional[Dict[str, str]] = None) -> None:
    """FeatureCollection; metadata goes in as top-level members next to the features."""
    features = []
    for z in zones:
        if isinstance(z, UciGeometry):
            geom = LineString([(v.lon, v.lat) for v in z.route.vertices])
            props = {"name": z.name, "kind": z.kind.value, "corridor_km": z.corridor_km}
        else:
            geom = z.polygon
            props = {"name": z.name, "kind": z.kind}
        features.append({"type": "Feature", "properties": props, "geometry": mapping(geom)})
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    doc = {**(metadata or {}), "type": "FeatureCollection", "features": features}
    path.write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")


# ============================================================================
# BATHYMETRY
# ============================================================================

def load_bathymetry_csv(path) -> DepthGrid:
    """
    Raises:
        IngestError: malformed row or incomplete lattice
    """
    path = Path(path)
    samples: Dict[Tuple[float, float], float] = {}
    for line, row in data_rows(path, BATHYMETRY_HEADER):
        try:
            row = decoded(row)
            if len(row) != 3:
                raise FieldError("parse", None, f"expected 3 fields, got {len(row)}")
            lat, lon, depth = (number(v, f) for v, f in zip(row, BATHYMETRY_HEADER))
        except FieldError as e:
            raise IngestError(f"{path}:{line}: {e}")
        samples[(lat, lon)] = depth
    lats = np.unique([k[0] for k in samples])
    lons = np.unique([k[1] for k in samples])
    if len(samples) != len(lats) * len(lons):
        raise IngestError(f"{path}: {len(samples)} samples do not fill a {len(lats)}x{len(lons)} lattice")
    depth = np.empty((len(lats), len(lons)))
    for (lat, lon), d in samples.items():
        depth[np.searchsorted(lats, lat), np.searchsorted(lons, lon)] = d
    try:
        grid = DepthGrid(lats, lons, depth)
    except ValueError as e:
        raise IngestError(f"{path}: {e}")
    logger.info(f"[LOAD] {path.name}: {len(lats)}x{len(lons)} depth lattice")
    return grid


# ============================================================================
# SAR DETECTIONS
# ============================================================================

def _parse_detection_row(row: List[str]) -> SarDetection:
    if len(row) != len(DETECTION_HEADER):
        raise FieldError("parse", None, f"expected {len(DETECTION_HEADER)} fields, got {len(row)}")
    det_id, image_id = row[0].strip(), row[1].strip()
    if not det_id:
        raise FieldError("missing", "id", "id is empty")
    if not image_id:
        raise FieldError("missing", "image_id", "image_id is empty")
    try:
        t = parse_utc(row[2])
    except ValueError:
        raise FieldError("parse", "timestamp", f"timestamp={row[2]!r} is not ISO-8601")
    lat = number(row[3], "lat")
    check_range(lat, -90.0, 90.0, "lat")
    lon = number(row[4], "lon")
    check_range(lon, -180.0, 180.0, "lon")
    return SarDetection(id=det_id, t_acq=t, pos=GeoPoint(lat=lat, lon=lon), image_id=image_id)


def parse_detections_csv(path) -> Tuple[List[SarDetection], List[RecordError]]:
    path = Path(path)
    detections: List[SarDetection] = []
    errors: List[RecordError] = []
    for line, row in data_rows(path, DETECTION_HEADER):
        try:
            row = decoded(row)
            detections.append(_parse_detection_row(row))
        except FieldError as e:
            errors.append(RecordError(line=line, kind=e.kind, field=e.field, message=str(e)))
    logger.info(f"[LOAD] {path.name}: {len(detections)} detections, {len(errors)} rejected rows")
    return detections, errors


def write_detections_csv(detections: Sequence[SarDetection], path,
                         header_lines: Optional[List[str]] = None) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        for line in header_lines or []:
            f.write(f"# {line}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(DETECTION_HEADER)
        for d in detections:
            writer.writerow([d.id, d.image_id, format_utc(d.t_acq), format_float(d.pos.lat),
                             format_float(d.pos.lon)])
