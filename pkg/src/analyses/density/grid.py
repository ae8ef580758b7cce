"""
Traffic and stationary-area density maps.

A DensityGrid holds vessel-hours per lat/lon cell. Each held track segment
inside the analysis interval is sampled along its great-circle path and its
time is deposited into the cells it traverses, pro-rated by time in cell.

Contains:
- DensityMode: all_traffic or stationary (only dwell below the drift threshold)
- build_density / merge_grids / subtract_grid
- normalcy_score: empirical quantile of a cell among the non-empty cells

External Libraries Used:
- numpy (BSD License) - Cell accumulation (np.add.at) and quantiles
"""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from analyses.ais.model import Track
from geo import BBox, GeoPoint, GridSpec, interpolate_great_circle

logger = logging.getLogger(__name__)

# Minimum samples per cell crossed by a segment.
SAMPLES_PER_CELL = 4


class DensityMode(str, Enum):
    ALL_TRAFFIC = "all_traffic"
    STATIONARY = "stationary"


@dataclass(frozen=True, eq=False)
class DensityGrid:
    spec: GridSpec
    counts: np.ndarray
    mode: DensityMode = DensityMode.ALL_TRAFFIC
    interval: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if self.counts.shape != self.spec.shape:
            raise ValueError(f"counts shape {self.counts.shape} does not match grid {self.spec.shape}")
        if np.any(self.counts < 0):
            raise ValueError("density counts must be non-negative")

    @property
    def bbox(self) -> BBox:
        return self.spec.bbox

    @property
    def cell_deg(self) -> float:
        return self.spec.cell_deg

    @property
    def total(self) -> float:
        return float(self.counts.sum())

    def value_at(self, p: GeoPoint) -> float:
        index = self.spec.cell_index(p.lat, p.lon)
        if index is None:
            raise ValueError(f"({p.lat}, {p.lon}) is outside the grid")
        return float(self.counts[index])

    def nonzero_cells(self) -> List[Tuple[GeoPoint, float]]:
        """(cell centre, weight) for every non-empty cell, row-major."""
        rows, cols = np.nonzero(self.counts)
        return [(self.spec.cell_center(int(r), int(c)), float(self.counts[r, c]))
                for r, c in zip(rows, cols)]


def _cells_spanned(a: GeoPoint, b: GeoPoint, cell_deg: float) -> float:
    dlon = abs(a.lon - b.lon)
    dlon = min(dlon, 360.0 - dlon)
    return (abs(a.lat - b.lat) + dlon) / cell_deg


def build_density(tracks: Iterable[Track], bbox: BBox, cell_deg: float,
                  interval: Tuple[float, float],
                  mode: DensityMode = DensityMode.ALL_TRAFFIC,
                  drift_threshold: float = 3.0,
                  max_gap: Optional[float] = None) -> DensityGrid:
    """
    Deposit in-interval dwell time (vessel-hours) into grid cells.

    Args:
        tracks: vessel tracks
        bbox: analysis area; dwell outside it is not deposited
        cell_deg: cell size in degrees
        interval: (t0, t1) UTC seconds, t1 > t0
        mode: all_traffic or stationary
        drift_threshold: knots; stationary mode keeps only held sog below it
        max_gap: optional; segments spanning a longer report gap deposit nothing
    """
    t0, t1 = interval
    if not t1 > t0:
        raise ValueError("density interval is empty")
    spec = GridSpec(bbox=bbox, cell_deg=cell_deg)
    counts = np.zeros(spec.shape, dtype=float)

    rows: List[int] = []
    cols: List[int] = []
    weights: List[float] = []
    for track in tracks:
        for a, b in zip(track.points, track.points[1:]):
            lo = max(a.t, t0)
            hi = min(b.t, t1)
            if hi <= lo:
                continue
            if max_gap is not None and b.t - a.t > max_gap:
                continue
            if mode == DensityMode.STATIONARY and a.sog >= drift_threshold:
                continue
            n = max(1, math.ceil(SAMPLES_PER_CELL * (_cells_spanned(a.pos, b.pos, cell_deg) + 1.0)))
            step = (hi - lo) / n
            span = b.t - a.t
            for k in range(n):
                t = lo + (k + 0.5) * step
                pos = a.pos if a.pos == b.pos else interpolate_great_circle(a.pos, b.pos, (t - a.t) / span)
                index = spec.cell_index(pos.lat, pos.lon)
                if index is None:
                    continue
                rows.append(index[0])
                cols.append(index[1])
                weights.append(step / 3600.0)

    if weights:
        np.add.at(counts, (np.asarray(rows), np.asarray(cols)), np.asarray(weights))
    grid = DensityGrid(spec=spec, counts=counts, mode=mode, interval=(float(t0), float(t1)))
    logger.info(f"{mode.value} density: {grid.total:.2f} vessel-hours over "
                f"{int(np.count_nonzero(counts))} cells")
    return grid


def merge_grids(grids: Sequence[DensityGrid]) -> DensityGrid:
    """Sum partial grids built on the same lattice."""
    if not grids:
        raise ValueError("no grids to merge")
    first = grids[0]
    for g in grids[1:]:
        if g.spec != first.spec or g.mode != first.mode:
            raise ValueError("grids differ in lattice or mode")
    counts = np.sum([g.counts for g in grids], axis=0)
    return DensityGrid(spec=first.spec, counts=counts, mode=first.mode, interval=first.interval)


def subtract_grid(total: DensityGrid, part: DensityGrid, rel_tol: float = 1e-9) -> DensityGrid:
    """
    total minus a partial grid on the same lattice. Cells left with less than
    rel_tol of their original weight are empty.
    """
    if part.spec != total.spec or part.mode != total.mode:
        raise ValueError("grids differ in lattice or mode")
    diff = total.counts - part.counts
    counts = np.where(diff > rel_tol * total.counts, diff, 0.0)
    return DensityGrid(spec=total.spec, counts=counts, mode=total.mode, interval=total.interval)


def normalcy_score(grid: DensityGrid, p: GeoPoint) -> float:
    """
    Fraction of non-empty cells whose weight is <= the weight at p.
    0 for an empty cell, 1 for the densest.
    """
    value = grid.value_at(p)
    if value <= 0.0:
        return 0.0
    nonzero = np.sort(grid.counts[grid.counts > 0.0])
    return float(np.searchsorted(nonzero, value, side="right")) / float(len(nonzero))


def bbox_around(tracks: Iterable[Track], margin_deg: float) -> BBox:
    """Smallest box holding every report, padded by margin_deg."""
    tracks = list(tracks)
    lats = [p.pos.lat for t in tracks for p in t.points]
    if not lats:
        raise ValueError("no reports to bound")
    lons = [p.pos.lon for t in tracks for p in t.points]
    return BBox(lat_min=max(-90.0, min(lats) - margin_deg), lat_max=min(90.0, max(lats) + margin_deg),
                lon_min=max(-180.0, min(lons) - margin_deg), lon_max=min(180.0, max(lons) + margin_deg))
