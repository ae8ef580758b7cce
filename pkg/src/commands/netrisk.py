"""
netrisk - robustness and cascade analysis of a UCI network.

Scenarios: random failures (netrisk.random_replays seeds derived from
run.seed), degree-targeted attack on netrisk.target, and a coordinated
attack on all links of each interdependency kind.

Cascades: from netrisk.initial_edges plus every link of netrisk.initial_kind
when either is set; otherwise one cascade per single-link failure.

Artifacts:
- robustness.csv / curve_summary.csv: curves and their areas
- cascade.csv / cascade_timeline.csv: cascade outcomes and the links lost per round
- choke_points.csv: top netrisk.choke_k nodes and links by betweenness
- robustness.png: with run.plot
"""
import argparse
import logging
from typing import Dict, List, Tuple

from IO.graphReader import load_graph
from IO.plotExport import plot_robustness_curves
from analyses.netrisk.cascade import CascadeResult, cascade_simulate, choke_points
from analyses.netrisk.graph import InfraGraph
from analyses.netrisk.robustness import FailureScenario, ScenarioMode, Target, curve_area, robustness_curve
from commands.common import input_files
from core.configuration import RunConfig
from core.errors import InputError
from core.interface import CommandInterface

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ["scenario", "step", "fraction_removed", "giant_fraction"]
SUMMARY_COLUMNS = ["scenario", "mode", "target", "removals", "area", "final_giant_fraction"]
CASCADE_COLUMNS = ["initial", "rounds", "failed_links", "surviving_fraction", "giant_fraction"]
TIMELINE_COLUMNS = ["initial", "round", "link"]
CHOKE_COLUMNS = ["element", "rank", "id", "betweenness"]


def failure_scenarios(config: RunConfig, g: InfraGraph) -> List[FailureScenario]:
    target = Target(config.netrisk.target)
    replays = config.netrisk.random_replays
    scenarios = []
    for i in range(replays):
        label = f"random-{target.value}" if replays == 1 else f"random-{target.value}/{i}"
        scenarios.append(FailureScenario(mode=ScenarioMode.RANDOM, target=target,
                                         rng_seed=config.run.seed + i, label=label))
    scenarios.append(FailureScenario(mode=ScenarioMode.DEGREE_TARGETED, target=target))
    scenarios += [FailureScenario.by_kind(g, kind) for kind in g.kinds()]
    return scenarios


def cascade_runs(config: RunConfig, g: InfraGraph) -> List[Tuple[str, CascadeResult]]:
    n = config.netrisk
    initial = set(n.initial_edge_ids())
    if n.initial_kind:
        kind_edges = g.edges_of_kind(n.initial_kind)
        if not kind_edges:
            raise InputError(f"netrisk.initial_kind {n.initial_kind!r}: no links of that kind")
        initial |= set(kind_edges)
    try:
        if initial:
            return [(";".join(sorted(initial)),
                     cascade_simulate(g, initial, n.alpha, n.rated_capacity))]
        return [(e, cascade_simulate(g, [e], n.alpha, n.rated_capacity)) for e in g.edge_ids()]
    except ValueError as e:
        raise InputError(str(e))


class NetriskCommand(CommandInterface):
    name = "netrisk"
    help = "robustness curves, cascading failures and choke points of a UCI network"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--edges", required=True, help="edge list CSV src,dst,kind,capacity")
        parser.add_argument("--nodes", help="node CSV id,lat,lon")

    def inputs(self, args: argparse.Namespace) -> Dict[str, str]:
        return input_files(edges=args.edges, nodes=args.nodes)

    def run(self, args, config, state) -> None:
        g = load_graph(args.edges, args.nodes)
        out = state.output

        curves = {}
        curve_rows = []
        summary_rows = []
        for scenario in failure_scenarios(config, g):
            curve = robustness_curve(g, scenario)
            curves[scenario.name] = curve
            curve_rows += [[scenario.name, i, x, y] for i, (x, y) in enumerate(curve)]
            summary_rows.append([scenario.name, scenario.mode, scenario.target, len(curve) - 1,
                                 curve_area(curve), curve[-1][1]])
        logger.info(f"{len(curves)} failure scenarios on {g.number_of_nodes()} nodes, {g.number_of_edges()} links")
        out.write_csv("robustness.csv", CURVE_COLUMNS, curve_rows)
        out.write_csv("curve_summary.csv", SUMMARY_COLUMNS, summary_rows)

        cascade_rows = []
        timeline_rows = []
        for label, result in cascade_runs(config, g):
            cascade_rows.append([label, result.rounds, len(result.failed),
                                 result.surviving_fraction, result.giant_fraction])
            timeline_rows += [[label, r, link] for r, step in enumerate(result.timeline) for link in step]
        out.write_csv("cascade.csv", CASCADE_COLUMNS, cascade_rows)
        out.write_csv("cascade_timeline.csv", TIMELINE_COLUMNS, timeline_rows)

        choke_rows = []
        for element in ("node", "edge"):
            ranked = choke_points(g, config.netrisk.choke_k, element)
            choke_rows += [[element, rank, ident, score] for rank, (ident, score) in enumerate(ranked, start=1)]
        out.write_csv("choke_points.csv", CHOKE_COLUMNS, choke_rows)

        if config.run.plot:
            plot_robustness_curves(curves, out.path("robustness.png"),
                                   title=f"Robustness of a {g.number_of_nodes()}-node network")
