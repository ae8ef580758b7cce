"""
ingest - validate a decoded AIS CSV into a per-vessel track store.

Artifacts:
- tracks.csv: accepted reports in the AIS schema, one track after another
- rejects.csv: every rejected row with file, line, error kind, field and message
- track_summary.csv: one row per track (span, report count, long gaps, kinematics)
"""
import argparse
from typing import Dict, List

from analyses.ais.kinematics import compute_stats, find_gaps
from analyses.ais.model import RecordError
from IO.aisReader import write_ais_csv
from commands.common import REJECT_COLUMNS, add_ais_arguments, input_files, load_tracks, reject_rows
from core.interface import CommandInterface
from core.timeutil import format_utc

SUMMARY_COLUMNS = ["mmsi", "name", "ship_type", "points", "t_start", "t_end", "duration_s",
                   "long_gaps", "longest_gap_s", "mean_sog_kn", "drift_fraction"]


class IngestCommand(CommandInterface):
    name = "ingest"
    help = "validate AIS reports into per-vessel tracks"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_ais_arguments(parser)

    def inputs(self, args: argparse.Namespace) -> Dict[str, str]:
        return input_files(ais=args.ais, vessels=args.vessels)

    def run(self, args, config, state) -> None:
        rejects: Dict[str, List[RecordError]] = {}
        tracks = load_tracks(config, args.ais, args.vessels, rejects)
        out = state.output

        write_ais_csv(tracks, out.path("tracks.csv"), out.header_lines())
        out.write_csv("rejects.csv", REJECT_COLUMNS, reject_rows(rejects))

        rows = []
        for track in tracks:
            gaps = find_gaps(track, config.ais.max_gap_s)
            stats = compute_stats(track, (track.t_start, track.t_end),
                                  config.ais.drift_kn, config.ais.turn_deg)
            info = track.info
            rows.append([
                track.mmsi, info.name, info.ship_type, len(track),
                format_utc(track.t_start), format_utc(track.t_end), track.t_end - track.t_start,
                len(gaps), max((g.duration for g in gaps), default=0),
                stats.mean_sog, stats.drift_fraction,
            ])
        out.write_csv("track_summary.csv", SUMMARY_COLUMNS, rows)
