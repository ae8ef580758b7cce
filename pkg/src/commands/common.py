"""
Loaders shared by the subcommands.

Contains:
- add_ais_arguments / load_tracks: AIS + vessel-info files to validated tracks
- input_files: the {role: path} mapping keyed into the run directory
- analysis_interval / parse_time_arg: optional --start/--end handling
- reject_rows: RecordErrors of several files as rows of rejects.csv
"""
import argparse
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from analyses.ais.ingest import build_tracks
from analyses.ais.model import RecordError, Track, VesselInfo
from IO.aisReader import parse_ais_csv, parse_vessel_csv
from core.configuration import RunConfig
from core.errors import InputError
from core.timeutil import format_utc, parse_utc

logger = logging.getLogger(__name__)

REJECT_COLUMNS = ["source", "line", "kind", "field", "message"]


def input_files(**paths: Optional[str]) -> Dict[str, str]:
    """Roles with a path given; absent optional files are left out."""
    return {role: path for role, path in paths.items() if path}


def add_ais_arguments(parser: argparse.ArgumentParser, vessels: bool = True) -> None:
    parser.add_argument("--ais", required=True, help="decoded AIS CSV (or tracks.csv of an ingest run)")
    if vessels:
        parser.add_argument("--vessels", help="vessel-info CSV")


def add_interval_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--start", help="analysis interval start, ISO-8601 UTC (default: first report)")
    parser.add_argument("--end", help="analysis interval end, ISO-8601 UTC (default: last report)")


def parse_time_arg(text: str, option: str) -> int:
    try:
        return parse_utc(text)
    except ValueError:
        raise InputError(f"{option} {text!r} is not an ISO-8601 timestamp")


def load_vessels(path: Optional[str]) -> Tuple[Dict[int, VesselInfo], List[RecordError]]:
    if not path:
        return {}, []
    return parse_vessel_csv(path)


def load_tracks(config: RunConfig, ais_path: str, vessels_path: Optional[str] = None,
                rejects: Optional[Dict[str, List[RecordError]]] = None) -> List[Track]:
    """
    Parse, validate and assemble tracks.

    Args:
        rejects: optional dict receiving the RecordErrors of every file by role

    Raises:
        IngestError: unreadable file or wrong header
    """
    points, point_errors = parse_ais_csv(ais_path)
    infos, vessel_errors = load_vessels(vessels_path)
    duplicates: List[RecordError] = []
    tracks = build_tracks(points, config.ais.dedup_window_s, infos, duplicates)
    if rejects is not None:
        rejects["ais"] = point_errors + duplicates
        rejects["vessels"] = vessel_errors
    logger.info(f"{len(tracks)} tracks from {len(points)} reports")
    return tracks


def analysis_interval(args: argparse.Namespace, tracks: Sequence[Track]) -> Tuple[int, int]:
    """--start/--end when given, the span of the tracks otherwise."""
    if not tracks and not (args.start and args.end):
        raise InputError("no tracks to derive the analysis interval from; give --start and --end")
    t0 = parse_time_arg(args.start, "--start") if args.start else min(t.t_start for t in tracks)
    t1 = parse_time_arg(args.end, "--end") if args.end else max(t.t_end for t in tracks)
    if not t1 > t0:
        raise InputError(f"empty analysis interval {format_utc(t0)} .. {format_utc(t1)}")
    return t0, t1


def interval_params(args: argparse.Namespace) -> Dict[str, str]:
    return {k: v for k, v in (("start", args.start), ("end", args.end)) if v}


def reject_rows(rejects: Dict[str, List[RecordError]]) -> List[list]:
    rows = []
    for source in sorted(rejects):
        for e in rejects[source]:
            rows.append([source, e.line, e.kind, e.field, e.message])
    return rows
