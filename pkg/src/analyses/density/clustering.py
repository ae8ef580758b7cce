"""
Stationary-area clustering with DBSCAN under great-circle distance.

Points are put in a documented scan order, sorted by (t, mmsi, lat, lon),
before clustering. In that order clusters are numbered by their lowest core
point, and a border point joins the first cluster whose expansion reaches it.
The output is therefore independent of the caller's input order.

External Libraries Used:
- numpy (BSD License) - Coordinate arrays
- scikit-learn (BSD License) - DBSCAN with the haversine metric on a ball tree
"""
import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sklearn.cluster import DBSCAN

from analyses.ais.model import AisPoint, Track
from geo import EARTH_RADIUS_M, GeoPoint, spherical_centroid

logger = logging.getLogger(__name__)

# Hold weight floor for the last report of a track, in hours.
MIN_HOLD_H = 1.0 / 60.0


@dataclass(frozen=True)
class StationaryArea:
    id: int
    member_points: Tuple[int, ...]
    centroid: GeoPoint
    dwell_weight: float  # vessel-hours


def low_speed_points(tracks: Iterable[Track], drift_threshold: float,
                     interval: Optional[Tuple[float, float]] = None) -> Tuple[List[AisPoint], List[float]]:
    """
    Reports with sog below the drift threshold and their hold time in hours
    (time until the next report, at least one minute).
    """
    points: List[AisPoint] = []
    weights: List[float] = []
    for track in tracks:
        for i, p in enumerate(track.points):
            if p.sog >= drift_threshold:
                continue
            if interval is not None and not interval[0] <= p.t <= interval[1]:
                continue
            hold = (track.points[i + 1].t - p.t) / 3600.0 if i + 1 < len(track.points) else 0.0
            points.append(p)
            weights.append(max(hold, MIN_HOLD_H))
    return points, weights


def scan_order(points: Sequence[AisPoint]) -> List[int]:
    return sorted(range(len(points)),
                  key=lambda i: (points[i].t, points[i].mmsi, points[i].pos.lat, points[i].pos.lon))


def cluster_stationary(points: Sequence[AisPoint], eps_m: float, min_pts: int,
                       weights: Optional[Sequence[float]] = None) -> List[StationaryArea]:
    """
    DBSCAN over report positions.

    Args:
        points: low-speed reports
        eps_m: neighbourhood radius in metres
        min_pts: neighbours (the point itself included) needed for a core point
        weights: optional vessel-hours per point; each point counts one minute otherwise

    Returns:
        Areas numbered 0.. in scan order; member_points index into the input sequence
    """
    if not eps_m > 0:
        raise ValueError("eps_m must be positive")
    if min_pts < 1:
        raise ValueError("min_pts must be >= 1")
    if weights is not None and len(weights) != len(points):
        raise ValueError("weights and points differ in length")
    if not points:
        return []

    order = scan_order(points)
    coords = np.radians([[points[i].pos.lat, points[i].pos.lon] for i in order])
    labels = DBSCAN(eps=eps_m / EARTH_RADIUS_M, min_samples=min_pts,
                    metric="haversine", algorithm="ball_tree").fit(coords).labels_

    areas: List[StationaryArea] = []
    for label in range(int(labels.max()) + 1 if len(labels) else 0):
        members = tuple(sorted(order[k] for k in np.flatnonzero(labels == label)))
        if weights is None:
            dwell = len(members) * MIN_HOLD_H
        else:
            dwell = float(sum(weights[i] for i in members))
        areas.append(StationaryArea(id=label, member_points=members,
                                    centroid=spherical_centroid([points[i].pos for i in members]),
                                    dwell_weight=dwell))
    noise = int(np.count_nonzero(labels == -1))
    logger.info(f"DBSCAN: {len(areas)} stationary areas, {noise} noise points")
    return areas
