"""
filter - vessels of interest near each UCI corridor.

Artifacts:
- candidates.csv: one row per (UCI, candidate vessel), UCIs in file order,
  candidates by descending dwell
"""
import argparse
from typing import Dict

from IO.geoReader import load_bathymetry_csv, load_uci_geojson
from analyses.uci.filter import select_candidates
from commands.common import add_ais_arguments, input_files, load_tracks
from core.errors import InputError
from core.interface import CommandInterface
from core.timeutil import format_utc

CANDIDATE_COLUMNS = ["uci", "mmsi", "name", "dwell_s", "mean_sog_kn", "manoeuvre_rate",
                     "drift_fraction", "criteria", "nearest_approach_m", "nearest_lat",
                     "nearest_lon", "first_in", "last_out"]


class FilterCommand(CommandInterface):
    name = "filter"
    help = "select vessels that dwell slowly or manoeuvre near a UCI"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_ais_arguments(parser)
        parser.add_argument("--uci", required=True, help="UCI GeoJSON (corridors)")
        parser.add_argument("--bathymetry", help="depth lattice CSV lat,lon,depth_m for the depth gate")

    def inputs(self, args: argparse.Namespace) -> Dict[str, str]:
        return input_files(ais=args.ais, vessels=args.vessels, uci=args.uci, bathymetry=args.bathymetry)

    def run(self, args, config, state) -> None:
        tracks = load_tracks(config, args.ais, args.vessels)
        ucis, _ = load_uci_geojson(args.uci, config.uci.d_max_km)
        if not ucis:
            raise InputError(f"{args.uci} holds no UCI corridors")
        bathymetry = load_bathymetry_csv(args.bathymetry) if args.bathymetry else None
        crit = config.uci.criteria()
        names = {t.mmsi: t.info.name for t in tracks}

        rows = []
        for uci in ucis:
            for r in select_candidates(tracks, uci, crit, bathymetry, config.ais.drift_kn, config.ais.turn_deg):
                rows.append([
                    uci.name, r.mmsi, names.get(r.mmsi), r.dwell_s, r.stats.mean_sog,
                    r.stats.manoeuvre_rate, r.stats.drift_fraction, ";".join(sorted(r.matched_criteria)),
                    r.nearest_approach_m, r.nearest_pos.lat, r.nearest_pos.lon,
                    format_utc(r.t_first_in), format_utc(r.t_last_out),
                ])
        state.output.write_csv("candidates.csv", CANDIDATE_COLUMNS, rows)
