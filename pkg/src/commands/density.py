"""
density - traffic / stationary density map and DBSCAN stationary areas.

Artifacts:
- density.csv: cell_lat, cell_lon, weight (vessel-hours) for every non-empty cell
- density_meta.json: sidecar with box, cell size, lattice shape, mode and interval
- stationary_areas.csv: one row per DBSCAN cluster of drift-speed reports
"""
import argparse
from typing import Dict, Sequence, Tuple

from analyses.ais.model import Track
from analyses.density.clustering import cluster_stationary, low_speed_points
from analyses.density.grid import DensityGrid, DensityMode, bbox_around, build_density
from commands.common import (
    add_ais_arguments,
    add_interval_arguments,
    analysis_interval,
    input_files,
    interval_params,
    load_tracks,
)
from core.configuration import RunConfig
from core.interface import CommandInterface
from core.timeutil import format_utc

DENSITY_COLUMNS = ["cell_lat", "cell_lon", "weight"]
AREA_COLUMNS = ["area_id", "centroid_lat", "centroid_lon", "points", "vessels", "dwell_h"]


def density_grid(config: RunConfig, tracks: Sequence[Track], interval: Tuple[float, float],
                 mode: DensityMode, extent: Sequence[Track] = ()) -> DensityGrid:
    """
    Grid over the configured box, or over the reports of tracks and extent
    padded by one cell when no box is configured.
    """
    cell = config.density.cell_deg
    bbox = config.density.bbox() or bbox_around(list(tracks) + list(extent), cell)
    return build_density(tracks, bbox, cell, interval, mode=mode,
                         drift_threshold=config.ais.drift_kn, max_gap=config.ais.max_gap_s)


class DensityCommand(CommandInterface):
    name = "density"
    help = "density map of traffic or stationary areas"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        add_ais_arguments(parser, vessels=False)
        add_interval_arguments(parser)

    def inputs(self, args: argparse.Namespace) -> Dict[str, str]:
        return input_files(ais=args.ais)

    def params(self, args: argparse.Namespace) -> Dict[str, str]:
        return interval_params(args)

    def run(self, args, config, state) -> None:
        tracks = load_tracks(config, args.ais)
        interval = analysis_interval(args, tracks)
        grid = density_grid(config, tracks, interval, DensityMode(config.density.mode))
        out = state.output

        out.write_csv("density.csv", DENSITY_COLUMNS,
                      [[c.lat, c.lon, w] for c, w in grid.nonzero_cells()])
        rows, cols = grid.spec.shape
        out.write_json("density_meta.json", {
            "lat_min": grid.bbox.lat_min, "lat_max": grid.bbox.lat_max,
            "lon_min": grid.bbox.lon_min, "lon_max": grid.bbox.lon_max,
            "cell_deg": grid.cell_deg, "rows": rows, "cols": cols,
            "mode": grid.mode.value, "weight_unit": "vessel-hours",
            "start": format_utc(interval[0]), "end": format_utc(interval[1]),
            "total": grid.total,
        })

        points, weights = low_speed_points(tracks, config.ais.drift_kn, interval)
        areas = cluster_stationary(points, config.density.eps_m, config.density.min_pts, weights)
        out.write_csv("stationary_areas.csv", AREA_COLUMNS, [
            [a.id, a.centroid.lat, a.centroid.lon, len(a.member_points),
             len({points[i].mmsi for i in a.member_points}), a.dwell_weight]
            for a in areas])
