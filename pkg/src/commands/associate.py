"""
associate - pair the detections of every SAR scene with AIS tracks.

Detections are grouped into scenes by (acquisition time, image id); scenes are
processed in time order.

Artifacts:
- associations.csv: detection_id, mmsi, distance_m, used_prediction, flag
- scene_report.csv: the annotated scene (vessel names, offsets, review candidates)
- scene_tracks.csv: reports within +/- ais.window_s of each acquisition, for plotting
- rejects.csv: rejected rows of the AIS, vessel and detection files
"""
import argparse
import logging
from itertools import groupby
from typing import Dict, List, Sequence

from IO.geoReader import parse_detections_csv
from analyses.ais.kinematics import interpolate_position, points_in_window
from analyses.ais.model import RecordError, Track
from analyses.prediction.bridge import predict_at
from analyses.prediction.ou import Prediction
from analyses.sar.association import associate, association_report
from analyses.sar.model import SarDetection
from commands.common import REJECT_COLUMNS, add_ais_arguments, input_files, load_tracks, reject_rows
from core.configuration import RunConfig
from core.errors import InputError
from core.interface import CommandInterface
from core.timeutil import format_utc

logger = logging.getLogger(__name__)

ASSOCIATION_COLUMNS = ["detection_id", "mmsi", "distance_m", "used_prediction", "flag"]
SCENE_COLUMNS = ["detection_id", "image_id", "t_acq", "det_lat", "det_lon", "mmsi", "vessel_name",
                 "track_lat", "track_lon", "distance_m", "offset_east_m", "offset_north_m",
                 "used_prediction", "flag", "candidate_mmsi", "candidate_gap_s", "candidate_distance_m"]
SCENE_TRACK_COLUMNS = ["image_id", "mmsi", "timestamp", "lat", "lon", "sog", "cog"]


def scenes(detections: Sequence[SarDetection]) -> List[List[SarDetection]]:
    key = lambda d: (d.t_acq, d.image_id)
    return [list(group) for _, group in groupby(sorted(detections, key=key), key=key)]


def scene_predictions(config: RunConfig, tracks: Sequence[Track], t_acq: int) -> Dict[int, Prediction]:
    """OU predictions at t_acq for every track that cannot be interpolated there."""
    predictions = {}
    for track in tracks:
        if track.t_start > t_acq:
            continue
        if interpolate_position(track, t_acq, config.ais.max_gap_s) is not None:
            continue
        try:
            predictions[track.mmsi] = predict_at(track, t_acq, config.prediction.fit_window_s,
                                                 config.prediction.velocity_source)
        except InputError as e:
            logger.debug(f"mmsi {track.mmsi}: no prediction at {format_utc(t_acq)}: {e}")
    return predictions


class AssociateCommand(CommandInterface):
    name = "associate"
    help = "associate SAR detections with AIS tracks (gated optimal assignment)"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_ais_arguments(parser)
        parser.add_argument("--detections", required=True, help="SAR detections CSV")

    def inputs(self, args: argparse.Namespace) -> Dict[str, str]:
        return input_files(ais=args.ais, vessels=args.vessels, detections=args.detections)

    def run(self, args, config, state) -> None:
        rejects: Dict[str, List[RecordError]] = {}
        tracks = load_tracks(config, args.ais, args.vessels, rejects)
        detections, rejects["detections"] = parse_detections_csv(args.detections)
        gate_km = config.sar.gate_km
        max_gap = config.ais.max_gap_s
        window = config.ais.window_s

        records = []
        scene_tracks = []
        for scene in scenes(detections):
            t_acq = scene[0].t_acq
            image = scene[0].image_id
            predictions = scene_predictions(config, tracks, t_acq) if config.sar.use_prediction else None
            assocs = associate(scene, tracks, gate_km, max_gap, predictions)
            records += association_report(assocs, scene, tracks, config.sar.review_gap_s,
                                          config.sar.review_radius_km * 1000.0)
            for track in tracks:
                for p in points_in_window(track, t_acq - window, t_acq + window):
                    scene_tracks.append([image, p.mmsi, format_utc(p.t), p.pos.lat, p.pos.lon, p.sog, p.cog])

        out = state.output
        out.write_csv("associations.csv", ASSOCIATION_COLUMNS,
                      [[r.detection_id, r.mmsi, r.distance_m, r.used_prediction, r.flag] for r in records])
        out.write_csv("scene_report.csv", SCENE_COLUMNS, [[
            r.detection_id, r.image_id, format_utc(r.t_acq), r.detection_pos.lat, r.detection_pos.lon,
            r.mmsi, r.vessel_name,
            r.track_pos.lat if r.track_pos else None, r.track_pos.lon if r.track_pos else None,
            r.distance_m, r.offset_east_m, r.offset_north_m, r.used_prediction, r.flag,
            r.candidate_mmsi, r.candidate_gap_s, r.candidate_distance_m,
        ] for r in records])
        out.write_csv("scene_tracks.csv", SCENE_TRACK_COLUMNS, scene_tracks)
        out.write_csv("rejects.csv", REJECT_COLUMNS, reject_rows(rejects))
