"""
scenario - write the synthetic case studies to disk.

Each scenario goes to <run dir>/<name>/ with the input files the other
subcommands read (ais.csv, history.csv, vessels.csv, uci.geojson,
detections.csv, graph_edges.csv / graph_nodes.csv where the scenario has
them) and truth.json with the planted ground truth. run.seed drives every
random draw.
"""
import argparse
import logging
from typing import Dict

from IO.aisReader import write_ais_csv, write_vessel_csv
from IO.geoReader import write_detections_csv, write_uci_geojson
from IO.graphReader import write_graph
from analyses.ais.ingest import build_tracks
from core.interface import CommandInterface
from scenarios import SCENARIOS

logger = logging.getLogger(__name__)

ALL = "all"


class ScenarioCommand(CommandInterface):
    name = "scenario"
    help = "generate the synthetic Baltic, Shetland and Adriatic case studies"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--name", required=True, choices=sorted(SCENARIOS) + [ALL],
                            help="scenario to generate")

    def inputs(self, args: argparse.Namespace) -> Dict[str, str]:
        return {}

    def params(self, args: argparse.Namespace) -> Dict[str, str]:
        return {"name": args.name}

    def run(self, args, config, state) -> None:
        names = sorted(SCENARIOS) if args.name == ALL else [args.name]
        out = state.output
        header = out.header_lines()
        for name in names:
            s = SCENARIOS[name](config.run.seed)
            write_ais_csv(build_tracks(s.points), out.path(f"{name}/ais.csv"), header)
            if s.history:
                write_ais_csv(build_tracks(s.history), out.path(f"{name}/history.csv"), header)
            write_vessel_csv(s.vessels, out.path(f"{name}/vessels.csv"), header)
            write_uci_geojson(list(s.ucis) + list(s.areas), out.path(f"{name}/uci.geojson"),
                              out.header_fields())
            if s.detections:
                write_detections_csv(s.detections, out.path(f"{name}/detections.csv"), header)
            if s.graph is not None:
                write_graph(s.graph, out.path(f"{name}/graph_edges.csv"),
                            out.path(f"{name}/graph_nodes.csv"), header)
            out.write_json(f"{name}/truth.json", {"scenario": name, "seed": config.run.seed, "truth": s.truth})
            logger.info(f"[SAVE] scenario {name}: {len(s.points)} reports, {len(s.detections)} detections")
