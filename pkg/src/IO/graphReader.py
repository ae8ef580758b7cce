"""
Infrastructure graph files.

Edge list CSV:  src,dst,kind,capacity   (capacity may be empty)
Node CSV:       id,lat,lon              (optional; without it nodes are implied by edges)

Edge ids are "<src>-<dst>", with "#<n>" appended for the n-th parallel link.
"""
import csv
import logging
from pathlib import Path
from typing import List, Optional

from analyses.netrisk.graph import DEFAULT_EDGE_KIND, InfraGraph
from IO.csvRows import FieldError, check_range, data_rows, decoded, format_float, number
from core.errors import IngestError
from geo import GeoPoint

logger = logging.getLogger(__name__)

EDGE_HEADER = ["src", "dst", "kind", "capacity"]
NODE_HEADER = ["id", "lat", "lon"]


def _write_header(f, header_lines: Optional[List[str]]) -> None:
    for line in header_lines or []:
        f.write(f"# {line}\n")


def _edge_id(g: InfraGraph, src: str, dst: str) -> str:
    base = f"{src}-{dst}"
    if not g.has_edge(base):
        return base
    n = 1
    while g.has_edge(f"{base}#{n}"):
        n += 1
    return f"{base}#{n}"


def load_graph(edge_path, node_path: Optional[str] = None) -> InfraGraph:
    """
    Unlike the AIS readers, any bad row aborts: a partial graph would give
    misleading robustness figures.

    Raises:
        IngestError: unreadable file, malformed row, unknown endpoint, self-loop
    """
    g = InfraGraph()
    if node_path:
        node_path = Path(node_path)
        for line, row in data_rows(node_path, NODE_HEADER):
            try:
                row = decoded(row)
                if len(row) != 3:
                    raise FieldError("parse", None, f"expected 3 fields, got {len(row)}")
                lat = number(row[1], "lat")
                check_range(lat, -90.0, 90.0, "lat")
                lon = number(row[2], "lon")
                check_range(lon, -180.0, 180.0, "lon")
                g.add_node(row[0].strip(), pos=GeoPoint(lat=lat, lon=lon))
            except (FieldError, ValueError) as e:
                raise IngestError(f"{node_path}:{line}: {e}")

    edge_path = Path(edge_path)
    for line, row in data_rows(edge_path, EDGE_HEADER):
        try:
            row = decoded(row)
            if len(row) != 4:
                raise FieldError("parse", None, f"expected 4 fields, got {len(row)}")
            src, dst = row[0].strip(), row[1].strip()
            if not src or not dst:
                raise FieldError("missing", "src/dst", "edge endpoint is empty")
            capacity = number(row[3], "capacity") if row[3].strip() else None
            if node_path is None:
                for end in (src, dst):
                    if not g.has_node(end):
                        g.add_node(end)
            g.add_edge(_edge_id(g, src, dst), src, dst, row[2].strip() or DEFAULT_EDGE_KIND, capacity)
        except (FieldError, ValueError) as e:
            raise IngestError(f"{edge_path}:{line}: {e}")
    if g.number_of_nodes() == 0:
        raise IngestError(f"{edge_path}: graph has no nodes")
    logger.info(f"[LOAD] {edge_path.name}: {g.number_of_nodes()} nodes, {g.number_of_edges()} edges")
    return g


def write_graph(g: InfraGraph, edge_path, node_path=None, header_lines: Optional[List[str]] = None) -> None:
    edge_path = Path(edge_path)
    edge_path.parent.mkdir(parents=True, exist_ok=True)
    with open(edge_path, "w", newline="", encoding="utf-8") as f:
        _write_header(f, header_lines)
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(EDGE_HEADER)
        for _, u, v, kind, cap in g.iter_edges():
            writer.writerow([u, v, kind, "" if cap is None else format_float(cap)])
    if node_path is None:
        return
    with open(node_path, "w", newline="", encoding="utf-8") as f:
        _write_header(f, header_lines)
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(NODE_HEADER)
        for n in g.node_ids():
            pos = g.node_pos(n)
            if pos is None:
                raise ValueError(f"node {n!r} has no position for the node file")
            writer.writerow([n, format_float(pos.lat), format_float(pos.lon)])
