"""
anomalies - run every detector over every track.

Normalcy grids (traffic and stationary) come from --history when given. Without
it each vessel is scored against grids of the other analysed vessels, so its
own dwell never makes its position look normal. SAR detections are associated
scene by scene and gap-bracketing leftovers become unassociated_sar events.

Artifacts:
- anomalies.jsonl: one AnomalyEvent per line, at or above anomaly.report_floor
- anomaly_counts.csv: events and highest severity per (mmsi, kind)
"""
import argparse
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from IO.eventStore import event_to_record
from IO.geoReader import load_bathymetry_csv, load_uci_geojson, parse_detections_csv
from analyses.ais.model import Track
from analyses.anomaly.detectors import (
    apply_floor,
    detect_ais_gap,
    detect_loiter,
    detect_route_deviation,
    detect_search_pattern,
    detect_zone_entry,
    status_inconsistency_events,
    unassociated_sar_events,
)
from analyses.anomaly.model import AnomalyEvent, sort_events
from analyses.density.grid import DensityGrid, DensityMode, subtract_grid
from analyses.sar.association import associate, association_report
from analyses.uci.model import DepthGrid, ProtectedArea, UciGeometry
from commands.associate import scene_predictions, scenes
from commands.common import add_ais_arguments, input_files, load_tracks
from commands.density import density_grid
from core.configuration import RunConfig
from core.interface import CommandInterface

logger = logging.getLogger(__name__)

COUNT_COLUMNS = ["mmsi", "kind", "events", "max_severity"]


def track_events(config: RunConfig, track: Track, ucis: Sequence[UciGeometry],
                 areas: Sequence[ProtectedArea], traffic: DensityGrid, stationary: DensityGrid,
                 bathymetry: Optional[DepthGrid] = None) -> List[AnomalyEvent]:
    """Events of every per-track detector."""
    a = config.anomaly
    drift = config.ais.drift_kn
    events = detect_ais_gap(track, a.min_gap_s, ucis, a.full_gap_s, a.corridor_boost)
    crit = config.uci.criteria()
    for uci in ucis:
        events += detect_loiter(track, uci, crit, stationary, a.loiter_normalcy_max, drift,
                                config.ais.turn_deg, bathymetry)
        events += detect_search_pattern(track, uci, None, drift, a.min_cycles, a.full_cycles,
                                        a.range_tolerance_m, a.min_span_s)
    zones = list(ucis) + list(areas)
    if zones:
        events += detect_zone_entry(track, zones, a.kind_weights(), a.zone_base_severity)
    events += detect_route_deviation(track, traffic, a.deviation_normalcy_max,
                                     a.deviation_min_s, a.deviation_full_s)
    events += status_inconsistency_events(track, drift, config.ais.anchored_kn, config.evidential.status_cap)
    return events


def analysis_span(tracks: Sequence[Track]) -> Tuple[int, int]:
    span = (min(t.t_start for t in tracks), max(t.t_end for t in tracks))
    if span[1] <= span[0]:
        span = (span[0], span[0] + 1)
    return span


def normalcy_grids(config: RunConfig, baseline: Sequence[Track],
                   extent: Sequence[Track]) -> Tuple[DensityGrid, DensityGrid]:
    """Traffic and stationary grids of baseline, laid over baseline and extent."""
    span = analysis_span(baseline or extent)
    traffic = density_grid(config, baseline, span, DensityMode.ALL_TRAFFIC, extent=extent)
    stationary = density_grid(config, baseline, span, DensityMode.STATIONARY, extent=extent)
    return traffic, stationary


def excluding_vessel(config: RunConfig, full: Tuple[DensityGrid, DensityGrid], tracks: Sequence[Track],
                     mmsi: int) -> Tuple[DensityGrid, DensityGrid]:
    """Grids of normalcy_grids(config, tracks, tracks) without the tracks of one vessel."""
    own = [t for t in tracks if t.mmsi == mmsi]
    span = analysis_span(tracks)
    traffic = density_grid(config, own, span, DensityMode.ALL_TRAFFIC, extent=tracks)
    stationary = density_grid(config, own, span, DensityMode.STATIONARY, extent=tracks)
    return subtract_grid(full[0], traffic), subtract_grid(full[1], stationary)


def sar_events(config: RunConfig, tracks: Sequence[Track], detections) -> List[AnomalyEvent]:
    events = []
    for scene in scenes(detections):
        t_acq = scene[0].t_acq
        predictions = scene_predictions(config, tracks, t_acq) if config.sar.use_prediction else None
        assocs = associate(scene, tracks, config.sar.gate_km, config.ais.max_gap_s, predictions)
        records = association_report(assocs, scene, tracks, config.sar.review_gap_s,
                                     config.sar.review_radius_km * 1000.0)
        events += unassociated_sar_events(records, config.anomaly.unassociated_sar_severity)
    return events


def count_rows(events: Sequence[AnomalyEvent]) -> List[list]:
    table: Dict[tuple, List[float]] = {}
    for e in events:
        table.setdefault((e.mmsi, e.kind.value), []).append(e.severity)
    return [[mmsi, kind, len(s), max(s)] for (mmsi, kind), s in sorted(table.items())]


class AnomaliesCommand(CommandInterface):
    name = "anomalies"
    help = "detect AIS gaps, loitering, search patterns, zone entries and route deviations"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_ais_arguments(parser)
        parser.add_argument("--uci", help="UCI GeoJSON (corridors and protected areas)")
        parser.add_argument("--history", help="historical AIS CSV for the normalcy grids")
        parser.add_argument("--detections", help="SAR detections CSV")
        parser.add_argument("--bathymetry", help="depth lattice CSV for the loiter depth gate")

    def inputs(self, args: argparse.Namespace) -> Dict[str, str]:
        return input_files(ais=args.ais, vessels=args.vessels, uci=args.uci, history=args.history,
                           detections=args.detections, bathymetry=args.bathymetry)

    def run(self, args, config, state) -> None:
        tracks = load_tracks(config, args.ais, args.vessels)
        ucis, areas = load_uci_geojson(args.uci, config.uci.d_max_km) if args.uci else ([], [])
        bathymetry = load_bathymetry_csv(args.bathymetry) if args.bathymetry else None
        history = load_tracks(config, args.history) if args.history else []
        if not tracks:
            logger.warning("no tracks to analyse")
        events: List[AnomalyEvent] = []
        if tracks:
            if history:
                shared = normalcy_grids(config, history, tracks)
            else:
                logger.info("[RUN] no history, normalcy grids exclude the vessel under analysis")
                full = normalcy_grids(config, tracks, tracks)
            for track in tracks:
                traffic, stationary = shared if history else excluding_vessel(config, full, tracks, track.mmsi)
                events += track_events(config, track, ucis, areas, traffic, stationary, bathymetry)
            if args.detections:
                detections, _ = parse_detections_csv(args.detections)
                events += sar_events(config, tracks, detections)

        events = sort_events(apply_floor(events, config.anomaly.report_floor))
        logger.info(f"{len(events)} anomaly events at or above {config.anomaly.report_floor}")
        out = state.output
        out.write_jsonl("anomalies.jsonl", (event_to_record(e) for e in events))
        out.write_csv("anomaly_counts.csv", COUNT_COLUMNS, count_rows(events))
