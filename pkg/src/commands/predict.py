"""
predict - OU long-term prediction.

Two modes:
- --mmsi with one or more --at times: fit the vessel's OU model on the history
  before the earliest requested time (or read it with --model) and predict
  every requested time. Writes predictions.csv and ou_model.txt.
- no --mmsi: bridge every gap of at least prediction.bridge_gap_s in every
  track and score the prediction against the reacquired report.
  Writes gap_bridges.csv.
"""
import argparse
from typing import Dict, List

from IO.modelStore import dump_model, load_model
from analyses.ais.ingest import tracks_by_mmsi
from analyses.prediction.bridge import bridge_gaps, model_at
from analyses.prediction.ou import OuModel, predict
from commands.common import input_files, load_tracks, parse_time_arg
from core.errors import InputError
from core.interface import CommandInterface
from core.timeutil import format_utc

PREDICTION_COLUMNS = ["mmsi", "timestamp", "dt_s", "lat", "lon", "var_east_m2", "var_north_m2",
                      "radius_3sigma_m", "ve_ms", "vn_ms"]
BRIDGE_COLUMNS = ["mmsi", "gap_start", "gap_end", "gap_s", "pred_lat", "pred_lon", "radius_3sigma_m",
                  "reacquired_lat", "reacquired_lon", "error_m", "inside_3sigma", "reason"]


class PredictCommand(CommandInterface):
    name = "predict"
    help = "OU position prediction across AIS gaps"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--ais", help="decoded AIS CSV (required unless --model is given)")
        parser.add_argument("--mmsi", type=int, help="vessel to predict")
        parser.add_argument("--at", action="append", default=[], metavar="TIME",
                            help="prediction time, ISO-8601 UTC (repeatable)")
        parser.add_argument("--model", help="OU model file from an earlier predict run")

    def inputs(self, args: argparse.Namespace) -> Dict[str, str]:
        return input_files(ais=args.ais, model=args.model)

    def params(self, args: argparse.Namespace) -> Dict[str, str]:
        params = {"at": ",".join(args.at)} if args.at else {}
        if args.mmsi is not None:
            params["mmsi"] = str(args.mmsi)
        return params

    def run(self, args, config, state) -> None:
        if args.model or args.mmsi is not None or args.at:
            self._predict_times(args, config, state)
        else:
            self._bridge(args, config, state)

    def _model(self, args, config, times: List[int]) -> OuModel:
        if args.model:
            return load_model(args.model)
        if not args.ais or args.mmsi is None:
            raise InputError("predict needs --ais and --mmsi, or --model")
        track = tracks_by_mmsi(load_tracks(config, args.ais)).get(args.mmsi)
        if track is None:
            raise InputError(f"mmsi {args.mmsi} has no reports in {args.ais}")
        try:
            return model_at(track, min(times), config.prediction.fit_window_s,
                            config.prediction.velocity_source)
        except ValueError as e:
            raise InputError(str(e))

    def _predict_times(self, args, config, state) -> None:
        if not args.at:
            raise InputError("give at least one --at time")
        times = sorted({parse_time_arg(t, "--at") for t in args.at})
        model = self._model(args, config, times)
        if times[0] < model.anchor_t:
            raise InputError(f"--at {format_utc(times[0])} precedes the model anchor "
                             f"{format_utc(model.anchor_t)}")
        mmsi = args.mmsi if args.mmsi is not None else ""
        rows = []
        for t in times:
            p = predict(model, t)
            rows.append([mmsi, format_utc(t), t - model.anchor_t, p.mean_pos.lat, p.mean_pos.lon,
                         float(p.cov[0, 0]), float(p.cov[1, 1]), p.radius_3sigma_m,
                         p.mean_velocity[0], p.mean_velocity[1]])
        out = state.output
        out.write_csv("predictions.csv", PREDICTION_COLUMNS, rows)
        dump_model(model, out.path("ou_model.txt"), out.header_lines())

    def _bridge(self, args, config, state) -> None:
        if not args.ais:
            raise InputError("predict needs --ais")
        rows = []
        for track in load_tracks(config, args.ais):
            for b in bridge_gaps(track, config.prediction.bridge_gap_s, config.prediction.fit_window_s,
                                 config.prediction.velocity_source):
                p = b.prediction
                rows.append([
                    track.mmsi, format_utc(b.gap.t_start), format_utc(b.gap.t_end), b.gap.duration,
                    p.mean_pos.lat if p else None, p.mean_pos.lon if p else None,
                    p.radius_3sigma_m if p else None,
                    b.gap.end_pos.lat, b.gap.end_pos.lon, b.error_m, b.inside_3sigma, b.reason,
                ])
        state.output.write_csv("gap_bridges.csv", BRIDGE_COLUMNS, rows)
